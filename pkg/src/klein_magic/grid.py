"""Topology of the m x n Klein bottle grid graph.

Cells are addressed 1-based as ``(i, j)`` with row ``i`` in ``1..m`` and
column ``j`` in ``1..n``.  Columns wrap around (``(i, n) -- (i, 1)``) and the
last row is glued to the first with a twist: ``(m, j) -- (1, n + 1 - j)``.
The natural embedding quadrangulates the Klein bottle, giving ``mn`` faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple

__all__ = ["Cell", "Face", "GridDims", "GridError", "edges", "faces", "face_index_table"]


class GridError(ValueError):
    """Raised for grid dimensions outside the supported range."""


class Cell(NamedTuple):
    i: int
    j: int


Face = tuple[Cell, Cell, Cell, Cell]


@dataclass(frozen=True, order=True)
class GridDims:
    """Grid dimensions plus the constants derived from them.

    ``n >= 3`` keeps the graph simple; ``n = 2`` would duplicate the column
    wrap edge.  Odd ``n`` is accepted so that nonexistence can be checked by
    search, but anything needing ``n / 2`` raises on it.
    """

    m: int
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.m, int) or not isinstance(self.n, int):
            raise GridError(f"dimensions must be integers, got {self.m!r} x {self.n!r}")
        if self.m < 2:
            raise GridError(f"need m >= 2 rows, got {self.m}")
        if self.n < 3:
            raise GridError(f"need n >= 3 columns for a simple graph, got {self.n}")

    @property
    def cells(self) -> int:
        return self.m * self.n

    @property
    def magic(self) -> int:
        """The only possible face sum, 2(mn + 1)."""
        return 2 * (self.m * self.n + 1)

    @property
    def half(self) -> int:
        """mn + 1, the sum of two mirrored cells in a balanced labeling."""
        return self.m * self.n + 1

    @property
    def n1(self) -> int:
        self.require_even_n()
        return self.n // 2

    @property
    def n0(self) -> int:
        return self.n1 - 1

    @property
    def half_m(self) -> int:
        return self.m // 2

    @property
    def half_m_plus(self) -> int:
        return (self.m + 1) // 2

    def require_even_n(self) -> None:
        if self.n % 2:
            raise GridError(
                f"n = {self.n} is odd; magic labelings of the Klein bottle grid need even n"
            )

    def require_odd_m(self) -> None:
        if self.m % 2 == 0:
            raise GridError(f"m = {self.m} is even; path partitions are defined for odd m only")

    def contains(self, cell: tuple[int, int]) -> bool:
        i, j = cell
        return 1 <= i <= self.m and 1 <= j <= self.n

    def index(self, cell: tuple[int, int]) -> int:
        """Row-major 0-based position of a cell."""
        i, j = cell
        if not self.contains(cell):
            raise GridError(f"cell {cell} outside {self.m} x {self.n} grid")
        return (i - 1) * self.n + (j - 1)

    def cell(self, index: int) -> Cell:
        i, j = divmod(index, self.n)
        return Cell(i + 1, j + 1)

    @cached_property
    def all_cells(self) -> tuple[Cell, ...]:
        return tuple(Cell(i, j) for i in range(1, self.m + 1) for j in range(1, self.n + 1))

    def col(self, j: int) -> int:
        """Reduce a column index mod n into 1..n."""
        return (j - 1) % self.n + 1


def edges(dims: GridDims) -> frozenset[frozenset[Cell]]:
    """All edges as unordered cell pairs: 2mn of them.

    The one exception is two rows with odd n, where the seam edge at the
    middle column coincides with a vertical edge and the set holds 2mn - 1.
    """
    m, n = dims.m, dims.n
    out: set[frozenset[Cell]] = set()
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            out.add(frozenset((Cell(i, j), Cell(i, dims.col(j + 1)))))
            if i < m:
                out.add(frozenset((Cell(i, j), Cell(i + 1, j))))
            else:
                out.add(frozenset((Cell(m, j), Cell(1, n + 1 - j))))
    return frozenset(out)


@lru_cache(maxsize=None)
def _faces(m: int, n: int) -> tuple[Face, ...]:
    dims = GridDims(m, n)
    col = dims.col
    out: list[Face] = []
    for i in range(1, m):
        for j in range(1, n + 1):
            out.append(
                (Cell(i, j), Cell(i, col(j + 1)), Cell(i + 1, j), Cell(i + 1, col(j + 1)))
            )
    for j in range(1, n + 1):
        out.append((Cell(m, j), Cell(m, col(j + 1)), Cell(1, col(n - j)), Cell(1, col(n - j + 1))))
    return tuple(out)


def faces(dims: GridDims) -> list[Face]:
    """The mn quadrilateral faces, interior rows first, then the seam row."""
    return list(_faces(dims.m, dims.n))


@lru_cache(maxsize=None)
def face_index_table(dims: GridDims) -> tuple[tuple[int, int, int, int], ...]:
    """Faces as tuples of row-major 0-based cell positions."""
    return tuple(tuple(dims.index(c) for c in f) for f in _faces(dims.m, dims.n))  # type: ignore[misc]
