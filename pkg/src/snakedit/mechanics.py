"""Deterministic game rules: movement, eating, gravity, death, winning, undo.

One step resolves in a fixed order:

1. The head moves one cell. Moves into ground, spikes, the snake's own body
   (including the tail cell, which has not vacated yet), or out of bounds
   horizontally or upward are blocked. The exit behaves like sky while fruit
   remains.
2. Moving onto uneaten fruit grows the snake (the tail stays); otherwise the
   body shifts.
3. Entering the exit with no fruit left wins immediately, skipping gravity.
4. Gravity: while no snake cell rests on ground or uneaten fruit, the whole
   snake falls one row. Landing on a spike kills; falling until no cell is
   left in bounds kills (there is no floor under the last row); the head
   landing on the active exit wins.

All values are immutable; ``step`` is a pure function.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import Cell, Level, TileKind


class IllegalStatus(RuntimeError):
    """Raised when stepping a state that is not in play."""


class EmptyHistory(RuntimeError):
    """Raised when undoing with no recorded states."""


class Action(Enum):
    """Player moves, in the solver's canonical tie-break order."""

    DOWN = "D"
    UP = "U"
    LEFT = "L"
    RIGHT = "R"

    @property
    def delta(self) -> tuple[int, int]:
        return _DELTAS[self]

    @classmethod
    def from_letter(cls, letter: str) -> "Action":
        return cls(letter.upper())


_DELTAS = {
    Action.DOWN: (0, 1),
    Action.UP: (0, -1),
    Action.LEFT: (-1, 0),
    Action.RIGHT: (1, 0),
}

ACTIONS: tuple[Action, ...] = (Action.DOWN, Action.UP, Action.LEFT, Action.RIGHT)


class GameStatus(Enum):
    PLAYING = "playing"
    DEAD = "dead"
    WON = "won"


@dataclass(frozen=True)
class GameState:
    bird: tuple[Cell, ...]
    fruit_remaining: frozenset[Cell]
    status: GameStatus

    @property
    def head(self) -> Cell:
        return self.bird[0]


class StepKind(Enum):
    MOVED = "moved"
    BLOCKED = "blocked"
    DIED = "died"
    WON = "won"


@dataclass(frozen=True)
class StepOutcome:
    kind: StepKind
    state: GameState

    @property
    def effective(self) -> bool:
        """True when the step changed the state (anything but blocked)."""
        return self.kind is not StepKind.BLOCKED


def _supported(bird: tuple[Cell, ...], fruit: frozenset[Cell], level: Level) -> bool:
    for cell in bird:
        below = Cell(cell.col, cell.row + 1)
        if below in level.ground or below in fruit:
            return True
    return False


def _settle(
    bird: tuple[Cell, ...], fruit: frozenset[Cell], level: Level
) -> tuple[GameStatus, tuple[Cell, ...]]:
    """Resolve gravity: fall one row at a time until resting, dead, or won."""
    while not _supported(bird, fruit, level):
        bird = tuple(Cell(c.col, c.row + 1) for c in bird)
        if any(cell in level.spikes for cell in bird):
            return GameStatus.DEAD, bird
        if all(cell.row >= level.height for cell in bird):
            return GameStatus.DEAD, bird
        if bird[0] == level.exit and not fruit:
            return GameStatus.WON, bird
    return GameStatus.PLAYING, bird


def initial_state(level: Level) -> GameState:
    """Starting state: authored snake with gravity already resolved."""
    fruit = level.fruit
    status, bird = _settle(level.bird, fruit, level)
    return GameState(bird=bird, fruit_remaining=fruit, status=status)


def step(state: GameState, level: Level, action: Action) -> StepOutcome:
    """Apply one player move to a playing state."""
    if state.status is not GameStatus.PLAYING:
        raise IllegalStatus(f"cannot step a state with status {state.status.value}")

    dc, dr = action.delta
    head = state.bird[0]
    tc, tr = head.col + dc, head.row + dr
    if tc < 0 or tc >= level.width or tr < 0:
        return StepOutcome(StepKind.BLOCKED, state)
    target = Cell(tc, tr)
    if target in state.bird:
        return StepOutcome(StepKind.BLOCKED, state)
    if tr < level.height and target in level.blocked:
        return StepOutcome(StepKind.BLOCKED, state)

    if target in state.fruit_remaining:
        bird = (target,) + state.bird
        fruit = state.fruit_remaining - {target}
    else:
        bird = (target,) + state.bird[:-1]
        fruit = state.fruit_remaining

    if target == level.exit and not fruit:
        return StepOutcome(StepKind.WON, GameState(bird, fruit, GameStatus.WON))

    status, bird = _settle(bird, fruit, level)
    new_state = GameState(bird, fruit, status)
    if status is GameStatus.DEAD:
        return StepOutcome(StepKind.DIED, new_state)
    if status is GameStatus.WON:
        return StepOutcome(StepKind.WON, new_state)
    return StepOutcome(StepKind.MOVED, new_state)


@dataclass(frozen=True)
class ReplayResult:
    state: GameState
    outcomes: tuple[StepKind, ...]

    @property
    def blocked_count(self) -> int:
        return sum(1 for k in self.outcomes if k is StepKind.BLOCKED)


def replay_actions(level: Level, actions) -> ReplayResult:
    """Fold ``step`` over ``actions`` from the initial state.

    Blocked moves are skipped (recorded in ``outcomes``); replay stops at the
    first state that is no longer playing.
    """
    state = initial_state(level)
    outcomes: list[StepKind] = []
    for action in actions:
        if state.status is not GameStatus.PLAYING:
            break
        outcome = step(state, level, action)
        outcomes.append(outcome.kind)
        state = outcome.state
    return ReplayResult(state=state, outcomes=tuple(outcomes))


def apply_actions(level: Level, actions) -> GameState:
    return replay_actions(level, actions).state


class UndoStack:
    """History of pre-step states.

    Callers push the current state before an effective step (moved, died, or
    won — blocked steps push nothing). Deaths are pushed too, so the front
    end can restore the state before a fatal move.
    """

    def __init__(self) -> None:
        self._states: list[GameState] = []

    def __len__(self) -> int:
        return len(self._states)

    def push(self, state: GameState) -> None:
        self._states.append(state)

    def undo(self) -> GameState:
        if not self._states:
            raise EmptyHistory("no moves to undo")
        return self._states.pop()

    def clear(self) -> None:
        self._states.clear()
