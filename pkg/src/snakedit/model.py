"""Levels, tiles, edits, and the text level format.

A level is an immutable grid of tiles plus the snake's initial body (an
ordered chain of cells, head first) and the single exit cell. The snake is
not a tile: the grid under it is sky, and editing those cells is refused.

Text format, one line per row, LF endings, single trailing newline:

    '.' sky   '#' ground   '^' spike   'F' fruit   'E' exit
    'A' snake head, then 'B', 'C', ... for successive body segments.
    'E' and 'F' are reserved for tiles, so the segment alphabet skips
    them (A B C D G H ... Z, max length 24); otherwise a five-segment
    snake would be indistinguishable from a second exit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple


class LevelError(ValueError):
    """Base class for level construction and parsing errors."""


class MalformedGrid(LevelError):
    pass


class NoExit(LevelError):
    pass


class MultipleExit(LevelError):
    pass


class NoBird(LevelError):
    pass


class DisconnectedBird(LevelError):
    pass


class BirdOnSolid(LevelError):
    pass


class OutOfBounds(LevelError):
    pass


class TileKind(Enum):
    SKY = "."
    GROUND = "#"
    SPIKE = "^"
    FRUIT = "F"
    EXIT = "E"


# The editor palette offers exactly the tile vocabulary.
PaletteObject = TileKind

_TILE_BY_CHAR = {t.value: t for t in TileKind}
_BIRD_CHARS = "ABCDGHIJKLMNOPQRSTUVWXYZ"
MAX_BIRD_LENGTH = len(_BIRD_CHARS)


class Cell(NamedTuple):
    col: int
    row: int


@dataclass(frozen=True)
class Level:
    """Immutable level: tile grid plus initial snake body and exit.

    ``grid`` is row-major (``grid[row][col]``), row 0 at the top. Validity
    is checked on construction; invalid combinations raise a LevelError
    subclass. The cell sets (``ground``, ``spikes``, ``fruit``, ``blocked``)
    are derived caches for the rules engine and solver.
    """

    grid: tuple[tuple[TileKind, ...], ...]
    bird: tuple[Cell, ...]
    exit: Cell = field(init=False, compare=False)
    ground: frozenset[Cell] = field(init=False, compare=False, repr=False)
    spikes: frozenset[Cell] = field(init=False, compare=False, repr=False)
    fruit: frozenset[Cell] = field(init=False, compare=False, repr=False)
    blocked: frozenset[Cell] = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.grid or not self.grid[0]:
            raise MalformedGrid("level must have positive width and height")
        width = len(self.grid[0])
        for r, row in enumerate(self.grid):
            if len(row) != width:
                raise MalformedGrid(f"row {r} has length {len(row)}, expected {width}")

        by_kind: dict[TileKind, list[Cell]] = {kind: [] for kind in TileKind}
        for r, row in enumerate(self.grid):
            for c, tile in enumerate(row):
                by_kind[tile].append(Cell(c, r))
        exits = by_kind[TileKind.EXIT]
        if not exits:
            raise NoExit("level has no exit tile")
        if len(exits) > 1:
            raise MultipleExit(f"level has {len(exits)} exit tiles")

        if not self.bird:
            raise NoBird("level has no snake")
        if len(self.bird) > MAX_BIRD_LENGTH:
            raise MalformedGrid(f"snake longer than {MAX_BIRD_LENGTH} segments")
        if len(set(self.bird)) != len(self.bird):
            raise DisconnectedBird("snake cells are not distinct")
        for cell in self.bird:
            if not (0 <= cell.col < width and 0 <= cell.row < len(self.grid)):
                raise OutOfBounds(f"snake cell {cell} outside the grid")
            if self.grid[cell.row][cell.col] is not TileKind.SKY:
                raise BirdOnSolid(f"snake cell {cell} is not on a sky tile")
        for a, b in zip(self.bird, self.bird[1:]):
            if abs(a.col - b.col) + abs(a.row - b.row) != 1:
                raise DisconnectedBird(f"snake cells {a} and {b} are not adjacent")

        object.__setattr__(self, "exit", exits[0])
        object.__setattr__(self, "ground", frozenset(by_kind[TileKind.GROUND]))
        object.__setattr__(self, "spikes", frozenset(by_kind[TileKind.SPIKE]))
        object.__setattr__(self, "fruit", frozenset(by_kind[TileKind.FRUIT]))
        object.__setattr__(self, "blocked", self.ground | self.spikes)

    @property
    def width(self) -> int:
        return len(self.grid[0])

    @property
    def height(self) -> int:
        return len(self.grid)

    def in_bounds(self, cell: Cell) -> bool:
        return 0 <= cell.col < self.width and 0 <= cell.row < self.height

    def tile_at(self, cell: Cell) -> TileKind:
        if not self.in_bounds(cell):
            raise OutOfBounds(f"{cell} outside {self.width}x{self.height} grid")
        return self.grid[cell.row][cell.col]


def parse_level(text: str) -> Level:
    """Parse level text into a Level.

    Accepts input with or without the final trailing newline; everything
    else is strict. Raises MalformedGrid, NoExit, MultipleExit, NoBird,
    or DisconnectedBird on bad input.
    """
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines = lines[:-1]
    if not lines:
        raise MalformedGrid("empty level text")

    rows: list[list[TileKind]] = []
    bird_cells: dict[str, Cell] = {}
    for r, line in enumerate(lines):
        row: list[TileKind] = []
        for c, ch in enumerate(line):
            if ch in _TILE_BY_CHAR:
                row.append(_TILE_BY_CHAR[ch])
            elif ch in _BIRD_CHARS:
                if ch in bird_cells:
                    raise DisconnectedBird(f"duplicate snake segment {ch!r}")
                bird_cells[ch] = Cell(c, r)
                row.append(TileKind.SKY)
            else:
                raise MalformedGrid(f"unknown character {ch!r} at row {r}, col {c}")
        rows.append(row)

    if "A" not in bird_cells:
        raise NoBird("no snake head 'A' in level text")
    expected = _BIRD_CHARS[: len(bird_cells)]
    if set(bird_cells) != set(expected):
        missing = sorted(set(expected) - set(bird_cells))
        raise DisconnectedBird(f"snake segment letters have gaps (missing {missing})")
    bird = tuple(bird_cells[ch] for ch in expected)
    return Level(grid=tuple(tuple(row) for row in rows), bird=bird)


def serialize_level(level: Level) -> str:
    """Render a Level as canonical text: rows top to bottom, trailing LF."""
    overlay = {cell: _BIRD_CHARS[i] for i, cell in enumerate(level.bird)}
    lines = []
    for r, row in enumerate(level.grid):
        chars = []
        for c, tile in enumerate(row):
            chars.append(overlay.get(Cell(c, r), tile.value))
        lines.append("".join(chars))
    return "\n".join(lines) + "\n"


class EditStatus(Enum):
    APPLIED = "applied"
    NOT_EDITABLE = "not_editable"
    NO_CHANGE = "no_change"


@dataclass(frozen=True)
class EditOutcome:
    status: EditStatus
    level: Level | None = None
    reason: str | None = None

    @property
    def applied(self) -> bool:
        return self.status is EditStatus.APPLIED


def apply_edit(level: Level, cell: Cell, selected: PaletteObject) -> EditOutcome:
    """Apply one editor click: place ``selected`` at ``cell``.

    Clicking a cell that already holds the selected object clears it to sky
    (toggle rule). Placing the exit relocates the unique exit, turning its
    old cell to sky. Cells under the snake are refused, as is removing the
    unique exit by overwriting it with another object. Edits that leave the
    level identical report NO_CHANGE.
    """
    if not level.in_bounds(cell):
        raise OutOfBounds(f"{cell} outside {level.width}x{level.height} grid")
    if cell in level.bird:
        return EditOutcome(EditStatus.NOT_EDITABLE, reason="cell is under the snake")

    current = level.tile_at(cell)
    if current is TileKind.EXIT:
        if selected is TileKind.EXIT:
            return EditOutcome(EditStatus.NO_CHANGE)
        return EditOutcome(EditStatus.NOT_EDITABLE, reason="the unique exit cannot be removed")

    new_tile = TileKind.SKY if current is selected else selected
    rows = [list(row) for row in level.grid]
    rows[cell.row][cell.col] = new_tile
    if selected is TileKind.EXIT and new_tile is TileKind.EXIT and cell != level.exit:
        rows[level.exit.row][level.exit.col] = TileKind.SKY
    new_grid = tuple(tuple(row) for row in rows)
    if new_grid == level.grid:
        return EditOutcome(EditStatus.NO_CHANGE)
    return EditOutcome(EditStatus.APPLIED, level=Level(grid=new_grid, bird=level.bird))
