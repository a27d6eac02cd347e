"""Level metrics and session-log aggregation.

Solution density is the maximum number of times the snake's head occupies
any single cell along the canonical optimal solution (initial position
included) — a proxy for how much careful back-and-forth a level demands.
Session logs aggregate into the four quantitative columns: time spent,
actions taken, solver invocations, and the final level's solution length.
"""

from __future__ import annotations

import csv
import io
import statistics
from collections import Counter
from dataclasses import dataclass

from .mechanics import GameStatus, initial_state, step
from .model import Level
from .sessions import LogRecord, replay_log
from .solver import SearchBudget, solve


class EmptyLog(ValueError):
    pass


# Everything a participant can actively do; load_level is setup, not an action.
ACTION_KINDS = frozenset({"edit", "play", "undo", "reset", "solve", "select_object"})

METRIC_NAMES = ("time_min", "num_actions", "num_solver", "sol_length")


def solution_density(level: Level, budget: SearchBudget = SearchBudget()) -> int | None:
    """Max head-cell visit count along the canonical optimal solution, or
    None when the level is unsolvable or over budget."""
    result = solve(level, budget)
    if not result.solved:
        return None
    state = initial_state(level)
    visits = Counter([state.head])
    for action in result.actions:
        state = step(state, level, action).state
        visits[state.head] += 1
    return max(visits.values())


@dataclass(frozen=True)
class SessionSummary:
    condition: str
    time_minutes: float
    num_actions: int
    num_solver: int
    solution_length: int | None


def summarize_session(
    records: list[LogRecord], budget: SearchBudget = SearchBudget()
) -> SessionSummary:
    """Reduce one session log to the four logged-data metrics."""
    if not records:
        raise EmptyLog("session log has no records")
    condition = "all"
    for record in records:
        if record.kind == "load_level" and "condition" in record.data:
            condition = str(record.data["condition"])
            break
    time_minutes = (records[-1].t_ms - records[0].t_ms) / 60_000
    num_actions = sum(1 for r in records if r.kind in ACTION_KINDS)
    num_solver = sum(1 for r in records if r.kind == "solve")
    final_level = replay_log(records)
    result = solve(final_level, budget)
    return SessionSummary(
        condition=condition,
        time_minutes=time_minutes,
        num_actions=num_actions,
        num_solver=num_solver,
        solution_length=result.length if result.solved else None,
    )


@dataclass(frozen=True)
class SummaryRow:
    metric: str
    condition: str
    mean: float
    std: float
    median: float


@dataclass(frozen=True)
class SummaryTable:
    rows: tuple[SummaryRow, ...]

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["metric", "condition", "mean", "std", "median"])
        for row in self.rows:
            writer.writerow(
                [row.metric, row.condition, _fmt(row.mean), _fmt(row.std), _fmt(row.median)]
            )
        return out.getvalue()


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def _aggregate(values: list[float]) -> tuple[float, float, float]:
    mean = statistics.fmean(values)
    std = statistics.stdev(values) if len(values) > 1 else 0.0
    return mean, std, statistics.median(values)


def summarize_sessions(
    logs, budget: SearchBudget = SearchBudget(), by_condition: bool = True
) -> SummaryTable:
    """Aggregate session logs into metric x condition rows of mean/std/median.

    ``logs`` is a sequence of record lists (one per session). Sessions with
    an unsolvable or over-budget final level contribute no sol_length sample.
    """
    summaries = [summarize_session(records, budget) for records in logs]
    if not summaries:
        raise EmptyLog("no session logs given")
    conditions = sorted({s.condition for s in summaries}) if by_condition else ["all"]

    rows = []
    for metric in METRIC_NAMES:
        for condition in conditions:
            group = summaries if not by_condition else [
                s for s in summaries if s.condition == condition
            ]
            if metric == "time_min":
                values = [s.time_minutes for s in group]
            elif metric == "num_actions":
                values = [float(s.num_actions) for s in group]
            elif metric == "num_solver":
                values = [float(s.num_solver) for s in group]
            else:
                values = [float(s.solution_length) for s in group if s.solution_length is not None]
            if not values:
                continue
            mean, std, median = _aggregate(values)
            rows.append(SummaryRow(metric, condition, mean, std, median))
    return SummaryTable(rows=tuple(rows))
