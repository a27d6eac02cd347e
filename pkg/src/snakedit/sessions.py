"""Stateful design sessions: current level, play state, undo history, the
gradient sweep, and an append-only event log.

A session is created from level text under one of two conditions: ``full``
(gradient overlay available) or ``half`` (solver only — the gradient
endpoint is disabled and no gradient cell is ever computed). Commands apply
strictly in arrival order; every state-mutating command is appended to the
log with a millisecond timestamp, and replaying the logged load and edit
records reproduces the final level byte for byte.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum

from .gradient import GradientCell, GradientSweep
from .mechanics import (
    Action,
    GameState,
    GameStatus,
    StepKind,
    UndoStack,
    initial_state,
    step,
)
from .model import (
    Cell,
    EditOutcome,
    EditStatus,
    Level,
    PaletteObject,
    TileKind,
    apply_edit,
    parse_level,
    serialize_level,
)
from .solver import SearchBudget, SolveResult, solve


class UnknownSession(KeyError):
    pass


class IllegalCommand(RuntimeError):
    pass


class ConditionDisabled(RuntimeError):
    pass


class Condition(Enum):
    FULL = "full"  # solver readout + gradient overlay
    HALF = "half"  # solver readout only


@dataclass(frozen=True)
class LogRecord:
    t_ms: int
    kind: str
    data: dict

    def to_wire(self) -> dict:
        return {"t_ms": self.t_ms, "kind": self.kind, **self.data}

    @classmethod
    def from_wire(cls, record: dict) -> "LogRecord":
        data = {k: v for k, v in record.items() if k not in ("t_ms", "kind")}
        return cls(t_ms=int(record["t_ms"]), kind=str(record["kind"]), data=data)


class Session:
    """One designer's live editing session. Not thread-safe by itself; the
    store serializes commands through a per-session lock."""

    def __init__(
        self,
        level: Level,
        condition: Condition,
        budget: SearchBudget = SearchBudget(),
        clock=time.monotonic,
    ) -> None:
        self.id = uuid.uuid4().hex
        self.level = level
        self.condition = condition
        self.budget = budget
        self.selected: PaletteObject = TileKind.GROUND
        self.play: GameState = initial_state(level)
        self.undo_stack = UndoStack()
        self.solve_result: SolveResult = solve(level, budget)
        self.sweep: GradientSweep | None = (
            GradientSweep(level=level, selected=self.selected, budget=budget)
            if condition is Condition.FULL
            else None
        )
        self._sweep_restarted = False
        self.log: list[LogRecord] = []
        self._clock = clock
        self._t0 = clock()
        self._last_t_ms = 0
        self._append(
            "load_level",
            {"level": serialize_level(level), "condition": condition.value},
        )

    def _append(self, kind: str, data: dict) -> None:
        t_ms = max(self._last_t_ms, int((self._clock() - self._t0) * 1000))
        self._last_t_ms = t_ms
        self.log.append(LogRecord(t_ms=t_ms, kind=kind, data=data))

    def edit(self, cell: Cell, selected: PaletteObject) -> EditOutcome:
        """Apply an editor click. Effective edits reset play to the edited
        level's initial state, clear undo history (old states reference the
        old level), restart the sweep, and re-solve for the live readout."""
        outcome = apply_edit(self.level, cell, selected)
        if outcome.status is EditStatus.APPLIED:
            self.level = outcome.level
            self.play = initial_state(self.level)
            self.undo_stack.clear()
            self.solve_result = solve(self.level, self.budget)
            if self.sweep is not None:
                self.sweep.restart(level=self.level)
                self._sweep_restarted = True
            self._append(
                "edit",
                {"col": cell.col, "row": cell.row, "selected": selected.name.lower()},
            )
        return outcome

    def act(self, action: Action) -> StepKind:
        if self.play.status is not GameStatus.PLAYING:
            raise IllegalCommand(f"cannot play: state is {self.play.status.value}")
        outcome = step(self.play, self.level, action)
        if outcome.effective:
            self.undo_stack.push(self.play)
            self.play = outcome.state
            self._append("play", {"action": action.value, "outcome": outcome.kind.value})
        return outcome.kind

    def undo(self) -> None:
        self.play = self.undo_stack.undo()
        self._append("undo", {})

    def reset(self) -> None:
        self.play = initial_state(self.level)
        self.undo_stack.clear()
        self._append("reset", {})

    def run_solver(self) -> SolveResult:
        result = self.solve_result  # level unchanged since last solve
        self._append("solve", {"status": result.status.value, "length": result.length})
        return result

    def select(self, selected: PaletteObject) -> None:
        self.selected = selected
        if self.sweep is not None:
            self.sweep.restart(selected=selected)
            self._sweep_restarted = True
        self._append("select_object", {"object": selected.name.lower()})

    def poll_gradient(self, max_cells: int) -> tuple[list[GradientCell], bool]:
        """Advance the sweep by up to ``max_cells``; returns (cells,
        restarted). ``restarted`` is set on the first poll after an
        invalidation so clients drop their stale overlay."""
        if self.sweep is None:
            raise ConditionDisabled("gradient is disabled for this session")
        restarted = self._sweep_restarted
        self._sweep_restarted = False
        return self.sweep.advance(max_cells), restarted

    def export_log(self) -> str:
        """Line-delimited JSON, one record per state-mutating command."""
        return "".join(json.dumps(r.to_wire()) + "\n" for r in self.log)


class SessionStore:
    """In-memory session registry; commands per session run serialized."""

    def __init__(self, budget: SearchBudget = SearchBudget()) -> None:
        self.budget = budget
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def create(self, level_text: str, condition: Condition) -> Session:
        level = parse_level(level_text)
        session = Session(level, condition, budget=self.budget)
        with self._registry_lock:
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()
        return session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id) from None

    def lock(self, session_id: str) -> threading.Lock:
        if session_id not in self._locks:
            raise UnknownSession(session_id)
        return self._locks[session_id]


def parse_log(text: str) -> list[LogRecord]:
    """Parse an exported line-delimited session log."""
    records = []
    for line in text.splitlines():
        if line.strip():
            records.append(LogRecord.from_wire(json.loads(line)))
    return records


def replay_log(records: list[LogRecord]) -> Level:
    """Rebuild the final level from a session log's load and edit records.

    Play, undo, reset, solve, and selection records do not change the level,
    so replay only needs the loads and the effective edits.
    """
    level: Level | None = None
    for record in records:
        if record.kind == "load_level":
            level = parse_level(record.data["level"])
        elif record.kind == "edit":
            if level is None:
                raise ValueError("edit record before any load_level record")
            cell = Cell(int(record.data["col"]), int(record.data["row"]))
            selected = TileKind[record.data["selected"].upper()]
            outcome = apply_edit(level, cell, selected)
            if outcome.status is EditStatus.APPLIED:
                level = outcome.level
    if level is None:
        raise ValueError("log contains no load_level record")
    return level
