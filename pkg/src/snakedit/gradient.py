"""Exhaustive single-edit evaluation: how every possible click would change
the optimal solution length.

For each cell of a level, the engine applies the selected palette object as
if the designer had clicked there, re-solves the edited level, and reports
the difference against the unedited level. Cells are swept starting from the
snake head's row, then alternating rows above and below it (above first at
equal distance), left to right within a row — the rows nearest the snake are
the ones most likely to carry interesting results.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .model import Cell, EditStatus, Level, PaletteObject, apply_edit
from .solver import SearchBudget, SolveResult, SolveStatus, solve


class CursorOutOfRange(IndexError):
    pass


class GradientStatus(Enum):
    UNCHANGED = "unchanged"
    DELTA = "delta"
    UNSOLVABLE = "unsolvable"
    BUDGET = "budget"
    NOT_EDITABLE = "not_editable"
    MAKES_SOLVABLE = "makes_solvable"


# Wire tags: single-key JSON objects, numeric payload where it exists.
_WIRE_TAGS = {
    GradientStatus.UNCHANGED: "u",
    GradientStatus.DELTA: "d",
    GradientStatus.UNSOLVABLE: "x",
    GradientStatus.BUDGET: "b",
    GradientStatus.NOT_EDITABLE: "n",
    GradientStatus.MAKES_SOLVABLE: "s",
}


@dataclass(frozen=True)
class GradientCell:
    cell: Cell
    status: GradientStatus
    delta: int | None = None
    length: int | None = None

    def to_wire(self) -> dict:
        tag = _WIRE_TAGS[self.status]
        if self.status is GradientStatus.DELTA:
            return {tag: self.delta}
        if self.status is GradientStatus.MAKES_SOLVABLE:
            return {tag: self.length}
        return {tag: True}


@dataclass(frozen=True)
class GradientMap:
    base: Level
    selected: PaletteObject
    base_result: SolveResult
    order: tuple[Cell, ...]
    cells: tuple[GradientCell, ...]

    def at(self, cell: Cell) -> GradientCell:
        for gc in self.cells:
            if gc.cell == cell:
                return gc
        raise KeyError(cell)


def evaluation_order(level: Level) -> tuple[Cell, ...]:
    """Sweep order: head row first, then rows above and below alternately
    (above before below at equal distance), columns left to right."""
    rows = [level.bird[0].row]
    for distance in range(1, level.height):
        above = level.bird[0].row - distance
        below = level.bird[0].row + distance
        if above >= 0:
            rows.append(above)
        if below < level.height:
            rows.append(below)
    return tuple(Cell(col, row) for row in rows for col in range(level.width))


def _evaluate_cell(
    level: Level,
    cell: Cell,
    selected: PaletteObject,
    budget: SearchBudget,
    base_result: SolveResult,
) -> GradientCell:
    outcome = apply_edit(level, cell, selected)
    if outcome.status is EditStatus.NOT_EDITABLE:
        return GradientCell(cell, GradientStatus.NOT_EDITABLE)
    if outcome.status is EditStatus.NO_CHANGE:
        return GradientCell(cell, GradientStatus.UNCHANGED)

    edited = solve(outcome.level, budget)
    if not base_result.solved:
        if edited.solved:
            return GradientCell(cell, GradientStatus.MAKES_SOLVABLE, length=edited.length)
        if edited.status is SolveStatus.BUDGET_EXHAUSTED:
            return GradientCell(cell, GradientStatus.BUDGET)
        return GradientCell(cell, GradientStatus.UNSOLVABLE)

    if edited.status is SolveStatus.UNSOLVABLE:
        return GradientCell(cell, GradientStatus.UNSOLVABLE)
    if edited.status is SolveStatus.BUDGET_EXHAUSTED:
        return GradientCell(cell, GradientStatus.BUDGET)
    delta = edited.length - base_result.length
    if delta == 0:
        return GradientCell(cell, GradientStatus.UNCHANGED)
    return GradientCell(cell, GradientStatus.DELTA, delta=delta)


def gradient(
    level: Level, selected: PaletteObject, budget: SearchBudget = SearchBudget()
) -> GradientMap:
    """Evaluate every cell of the level against the selected object."""
    base_result = solve(level, budget)
    order = evaluation_order(level)
    cells = tuple(_evaluate_cell(level, cell, selected, budget, base_result) for cell in order)
    return GradientMap(
        base=level, selected=selected, base_result=base_result, order=order, cells=cells
    )


def gradient_incremental(
    level: Level,
    selected: PaletteObject,
    budget: SearchBudget,
    cursor: int,
    base_result: SolveResult | None = None,
) -> tuple[GradientCell, int] | None:
    """Evaluate only the cursor-th cell of the sweep.

    Returns ``(cell, next_cursor)``, or None once ``cursor`` equals the cell
    count (sweep complete). Folding cursors 0..w*h-1 yields exactly the cells
    of the batch ``gradient`` call. Pass ``base_result`` to avoid re-solving
    the unedited level on every call.
    """
    order = evaluation_order(level)
    if cursor < 0 or cursor > len(order):
        raise CursorOutOfRange(f"cursor {cursor} outside 0..{len(order)}")
    if cursor == len(order):
        return None
    if base_result is None:
        base_result = solve(level, budget)
    cell = _evaluate_cell(level, order[cursor], selected, budget, base_result)
    return cell, cursor + 1


@dataclass
class GradientSweep:
    """Mutable sweep state for the live editor: one invalidation-aware cursor.

    Any level edit, palette change, or level load must call ``restart`` so
    stale cells are never served against a newer base. ``generation`` counts
    restarts; pollers compare it to detect invalidation.
    """

    level: Level
    selected: PaletteObject
    budget: SearchBudget = SearchBudget()
    generation: int = 0
    cursor: int = 0
    results: list[GradientCell] = field(default_factory=list)
    _base_result: SolveResult | None = None
    _order: tuple[Cell, ...] | None = None

    @property
    def total(self) -> int:
        if self._order is None:
            self._order = evaluation_order(self.level)
        return len(self._order)

    @property
    def done(self) -> bool:
        return self.cursor >= self.total

    def restart(self, level: Level | None = None, selected: PaletteObject | None = None) -> None:
        if level is not None:
            self.level = level
        if selected is not None:
            self.selected = selected
        self.generation += 1
        self.cursor = 0
        self.results = []
        self._base_result = None
        self._order = None

    def advance(self, max_cells: int) -> list[GradientCell]:
        """Evaluate up to ``max_cells`` further cells; returns the new ones."""
        if self._base_result is None:
            self._base_result = solve(self.level, self.budget)
        if self._order is None:
            self._order = evaluation_order(self.level)
        produced: list[GradientCell] = []
        while len(produced) < max_cells and self.cursor < len(self._order):
            cell = _evaluate_cell(
                self.level, self._order[self.cursor], self.selected, self.budget, self._base_result
            )
            produced.append(cell)
            self.results.append(cell)
            self.cursor += 1
        return produced
