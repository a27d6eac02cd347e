"""Budgeted breadth-first solver returning the canonical optimal solution.

The search expands states in FIFO order and generates successors in the
fixed action order down, up, left, right. First-discovery parent pointers
therefore make the returned action sequence the unique canonical optimum:
two runs on the same level are byte-identical.

An expansion is one dequeue plus successor generation; the initial state
counts as the first expansion. Goal states are detected when generated, so
a solution found while expanding node k terminates the search immediately.
The expansion budget (default 50,000) bounds both time and memory: at most
4 * budget + 1 states can ever be stored.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .mechanics import ACTIONS, Action, GameState, GameStatus, StepKind, initial_state, step
from .model import Cell, Level

DEFAULT_MAX_EXPANSIONS = 50_000


@dataclass(frozen=True)
class SearchBudget:
    max_expansions: int = DEFAULT_MAX_EXPANSIONS

    def __post_init__(self) -> None:
        if self.max_expansions < 1:
            raise ValueError("max_expansions must be >= 1")


class SolveStatus(Enum):
    SOLVED = "Solved"
    UNSOLVABLE = "Unsolvable"
    BUDGET_EXHAUSTED = "Budget"


@dataclass(frozen=True)
class SolveResult:
    status: SolveStatus
    expansions: int
    length: int | None = None
    actions: tuple[Action, ...] | None = None

    @property
    def solved(self) -> bool:
        return self.status is SolveStatus.SOLVED

    @property
    def action_letters(self) -> str:
        return "".join(a.value for a in self.actions) if self.actions is not None else ""


StateKey = tuple[tuple[Cell, ...], tuple[Cell, ...]]


def state_key(state: GameState) -> StateKey:
    """Canonical hashable key: ordered body plus sorted uneaten fruit."""
    return (state.bird, tuple(sorted(state.fruit_remaining)))


def solve(level: Level, budget: SearchBudget = SearchBudget()) -> SolveResult:
    """Breadth-first search for the shortest action sequence that wins.

    Returns SOLVED with the canonical optimal actions, UNSOLVABLE when the
    reachable space is exhausted, or BUDGET_EXHAUSTED after exactly
    ``budget.max_expansions`` expansions without finding a goal.
    """
    start = initial_state(level)
    if start.status is GameStatus.WON:
        return SolveResult(SolveStatus.SOLVED, expansions=0, length=0, actions=())
    if start.status is GameStatus.DEAD:
        return SolveResult(SolveStatus.UNSOLVABLE, expansions=0)

    start_key = state_key(start)
    parents: dict[StateKey, tuple[StateKey, Action] | None] = {start_key: None}
    queue: deque[tuple[GameState, StateKey]] = deque([(start, start_key)])
    expansions = 0

    while queue:
        if expansions >= budget.max_expansions:
            return SolveResult(SolveStatus.BUDGET_EXHAUSTED, expansions=expansions)
        state, key = queue.popleft()
        expansions += 1
        for action in ACTIONS:
            outcome = step(state, level, action)
            if outcome.kind is StepKind.BLOCKED or outcome.kind is StepKind.DIED:
                continue
            next_key = state_key(outcome.state)
            if next_key in parents:
                continue
            parents[next_key] = (key, action)
            if outcome.kind is StepKind.WON:
                actions = _reconstruct(parents, next_key)
                return SolveResult(
                    SolveStatus.SOLVED,
                    expansions=expansions,
                    length=len(actions),
                    actions=actions,
                )
            queue.append((outcome.state, next_key))
    return SolveResult(SolveStatus.UNSOLVABLE, expansions=expansions)


def _reconstruct(
    parents: dict[StateKey, tuple[StateKey, Action] | None], key: StateKey
) -> tuple[Action, ...]:
    actions: list[Action] = []
    entry = parents[key]
    while entry is not None:
        parent_key, action = entry
        actions.append(action)
        entry = parents[parent_key]
    actions.reverse()
    return tuple(actions)
