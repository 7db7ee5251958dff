"""Cells and rectangular boards."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

Cell = tuple[int, int]


def cell_key(c: Cell) -> tuple[int, int]:
    """Canonical ordering of cells: by row, then by column."""
    return c[1], c[0]


def parity(c: Cell) -> int:
    return (c[0] + c[1]) % 2


@dataclass(frozen=True)
class Board:
    """The board [x_min; x_max] x [y_min; y_max].

    Sizes are written height x width, so ``m`` counts rows and ``n`` columns.
    """

    x_min: int
    x_max: int
    y_min: int
    y_max: int

    def __post_init__(self):
        if self.x_min > self.x_max or self.y_min > self.y_max:
            raise ValueError(f"empty board {self!r}")

    @property
    def m(self) -> int:
        return self.y_max - self.y_min + 1

    @property
    def n(self) -> int:
        return self.x_max - self.x_min + 1

    @property
    def size(self) -> tuple[int, int]:
        return self.m, self.n

    @property
    def is_standard(self) -> bool:
        return self.x_min + self.x_max in (0, 1) and self.y_min + self.y_max in (0, 1)

    def __contains__(self, c) -> bool:
        x, y = c
        return self.x_min <= x <= self.x_max and self.y_min <= y <= self.y_max

    def __len__(self) -> int:
        return self.m * self.n

    def cells(self) -> Iterator[Cell]:
        """Cells in canonical (row-major) order."""
        for y in range(self.y_min, self.y_max + 1):
            for x in range(self.x_min, self.x_max + 1):
                yield x, y

    def transpose(self) -> Board:
        return Board(self.y_min, self.y_max, self.x_min, self.x_max)

    def translate(self, dx: int, dy: int) -> Board:
        return Board(self.x_min + dx, self.x_max + dx, self.y_min + dy, self.y_max + dy)

    def expand(self, margin: int) -> Board:
        return Board(self.x_min - margin, self.x_max + margin, self.y_min - margin, self.y_max + margin)

    def standardized(self) -> Board:
        return standard_board(self.m, self.n)

    def __str__(self):
        return f"{self.m}x{self.n}"


def _standard_interval(k: int) -> tuple[int, int]:
    lo = -((k - 1) // 2)
    return lo, lo + k - 1


def standard_board(m: int, n: int) -> Board:
    """The standard board of height m and width n."""
    if m < 1 or n < 1:
        raise ValueError(f"board sizes must be positive, got {m}x{n}")
    x0, x1 = _standard_interval(n)
    y0, y1 = _standard_interval(m)
    return Board(x0, x1, y0, y1)


def _size(a) -> tuple[int, int]:
    return a.size if isinstance(a, Board) else tuple(a)


def fits(a, b) -> bool:
    """A' fits in A'' (possibly after transposition). Accepts boards or (m, n) sizes."""
    m1, n1 = _size(a)
    m2, n2 = _size(b)
    return (m1 <= m2 and n1 <= n2) or (n1 <= m2 and m1 <= n2)


def le(a, b) -> bool:
    """A' is smaller than or congruent to A'' without transposing."""
    m1, n1 = _size(a)
    m2, n2 = _size(b)
    return m1 <= m2 and n1 <= n2


def bbox(cells: Iterable[Cell]) -> Board:
    cells = list(cells)
    if not cells:
        raise ValueError("bounding box of an empty set")
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    return Board(min(xs), max(xs), min(ys), max(ys))


def ball(c: Cell, r: int) -> Board:
    if r < 0:
        raise ValueError("radius must be nonnegative")
    return Board(c[0] - r, c[0] + r, c[1] - r, c[1] + r)
