"""The 4m-element symmetry group of labelings on the Klein bottle grid.

Two generators act on cells:

* ``U`` shifts every row down by one, and the last row wraps to the first
  with its columns reversed: ``U(i, j) = (i + 1, j)`` for ``i < m`` and
  ``U(m, j) = (1, n + 1 - j)``.
* ``H`` rotates columns by half a turn: ``H(i, j) = (i, j + n/2 mod n)``.

``U`` has order 2m with ``U^m`` the column reflection, ``H`` is an involution,
and every element has a unique normal form ``H^h U^u``.  A labeling ``X`` is
moved by ``A`` to the labeling whose entry at ``c`` is ``X[A(c)]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from klein_magic.grid import Cell, GridDims, GridError
from klein_magic.labeling import Labeling

__all__ = [
    "SymmetryElement",
    "SymmetryError",
    "apply",
    "canonical",
    "compose",
    "equivalent",
    "group_elements",
    "identity",
    "orbit",
    "reflection",
]


class SymmetryError(RuntimeError):
    """The normal forms failed to produce 4m distinct permutations."""


@dataclass(frozen=True, order=True)
class SymmetryElement:
    """The map ``H^h U^u`` on a fixed grid."""

    dims: GridDims
    h: int = 0
    u: int = 0

    def __post_init__(self) -> None:
        self.dims.require_even_n()
        object.__setattr__(self, "h", self.h % 2)
        object.__setattr__(self, "u", self.u % (2 * self.dims.m))

    @property
    def permutation(self) -> tuple[int, ...]:
        """Image of each row-major cell position under the map."""
        return _permutation(self.dims, self.h, self.u)

    def __call__(self, cell: tuple[int, int]) -> Cell:
        dims = self.dims
        return dims.cell(self.permutation[dims.index(cell)])

    def __str__(self) -> str:
        parts = (["H"] if self.h else []) + ([f"U^{self.u}"] if self.u else [])
        return "".join(parts) or "I"


def _u(dims: GridDims, cell: Cell) -> Cell:
    i, j = cell
    return Cell(i + 1, j) if i < dims.m else Cell(1, dims.n + 1 - j)


def _h(dims: GridDims, cell: Cell) -> Cell:
    return Cell(cell.i, dims.col(cell.j + dims.n1))


@lru_cache(maxsize=None)
def _permutation(dims: GridDims, h: int, u: int) -> tuple[int, ...]:
    out = []
    for cell in dims.all_cells:
        for _ in range(u):
            cell = _u(dims, cell)
        if h:
            cell = _h(dims, cell)
        out.append(dims.index(cell))
    return tuple(out)


@lru_cache(maxsize=None)
def _table(dims: GridDims) -> dict[tuple[int, ...], SymmetryElement]:
    table: dict[tuple[int, ...], SymmetryElement] = {}
    for h in (0, 1):
        for u in range(2 * dims.m):
            e = SymmetryElement(dims, h, u)
            if e.permutation in table:
                raise SymmetryError(
                    f"{e} and {table[e.permutation]} act identically on {dims.m} x {dims.n}"
                )
            table[e.permutation] = e
    return table


def group_elements(dims: GridDims) -> list[SymmetryElement]:
    """All 4m elements, checked to be pairwise distinct."""
    return list(_table(dims).values())


def identity(dims: GridDims) -> SymmetryElement:
    return SymmetryElement(dims)


def reflection(dims: GridDims) -> SymmetryElement:
    """Column reversal ``(i, j) -> (i, n + 1 - j)``, equal to ``U^m``."""
    return SymmetryElement(dims, 0, dims.m)


def compose(e1: SymmetryElement, e2: SymmetryElement) -> SymmetryElement:
    """Normal form of the cell map ``e1 . e2`` (apply ``e2`` first)."""
    if e1.dims != e2.dims:
        raise GridError("cannot compose symmetries of different grids")
    p1, p2 = e1.permutation, e2.permutation
    composed = tuple(p1[k] for k in p2)
    try:
        return _table(e1.dims)[composed]
    except KeyError:
        raise SymmetryError(f"{e1} . {e2} left the group") from None


def apply(e: SymmetryElement, x: Labeling) -> Labeling:
    if e.dims != x.dims:
        raise GridError("symmetry and labeling live on different grids")
    vals = x.values
    return Labeling(x.dims, tuple(vals[k] for k in e.permutation))


def _images(x: Labeling) -> list[tuple[int, ...]]:
    vals = x.values
    return [tuple(vals[k] for k in perm) for perm in _table(x.dims)]


def orbit(x: Labeling) -> frozenset[Labeling]:
    return frozenset(Labeling(x.dims, v) for v in _images(x))


def canonical(x: Labeling) -> Labeling:
    """Lexicographically least row-major table in the orbit of ``x``."""
    return Labeling(x.dims, min(_images(x)))


def equivalent(x: Labeling, y: Labeling) -> bool:
    if x.dims != y.dims:
        raise GridError("labelings live on different grids")
    return canonical(x) == canonical(y)
