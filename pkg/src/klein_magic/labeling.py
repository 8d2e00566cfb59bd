"""Labelings of the Klein bottle grid and their face-magic checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from klein_magic.grid import Face, GridDims, GridError, face_index_table, faces

__all__ = [
    "Labeling",
    "LabelingError",
    "VerifyReport",
    "is_equatorially_balanced",
    "magic_value",
    "row_pair_sums",
    "satisfies_row_pair_structure",
    "verify",
]


class LabelingError(ValueError):
    """A table that is not a bijection onto 1..mn, or has the wrong shape."""


@dataclass(frozen=True)
class Labeling:
    """A bijection from the cells of the grid onto ``1..mn``, stored row-major."""

    dims: GridDims
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        values = tuple(self.values)
        object.__setattr__(self, "values", values)
        size = self.dims.cells
        if len(values) != size:
            raise LabelingError(f"expected {size} values for {self.dims.m} x {self.dims.n}, got {len(values)}")
        if sorted(values) != list(range(1, size + 1)):
            missing = sorted(set(range(1, size + 1)) - set(values))
            raise LabelingError(f"values are not a permutation of 1..{size}; missing {missing[:8]}")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> Labeling:
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise LabelingError("rows must be non-empty and of equal length")
        try:
            dims = GridDims(len(rows), len(rows[0]))
        except GridError as exc:
            raise LabelingError(str(exc)) from exc
        return cls(dims, tuple(v for r in rows for v in r))

    @property
    def rows(self) -> list[list[int]]:
        n = self.dims.n
        return [list(self.values[k : k + n]) for k in range(0, len(self.values), n)]

    def __getitem__(self, cell: tuple[int, int]) -> int:
        return self.values[self.dims.index(cell)]

    def __str__(self) -> str:
        width = len(str(self.dims.cells))
        return "\n".join(" ".join(f"{v:>{width}}" for v in row) for row in self.rows)


@dataclass(frozen=True)
class VerifyReport:
    is_magic: bool
    magic_value: int
    violations: tuple[tuple[Face, int], ...] = field(default=())


def magic_value(dims: GridDims) -> int:
    """Face sum 2(mn + 1) forced by double counting; only defined for even n."""
    dims.require_even_n()
    return dims.magic


def verify(x: Labeling) -> VerifyReport:
    """Check every face sum against 2(mn + 1), collecting all failures."""
    target = x.dims.magic
    vals = x.values
    bad = []
    for face, idx in zip(faces(x.dims), face_index_table(x.dims)):
        total = vals[idx[0]] + vals[idx[1]] + vals[idx[2]] + vals[idx[3]]
        if total != target:
            bad.append((face, total))
    return VerifyReport(is_magic=not bad, magic_value=target, violations=tuple(bad))


def is_equatorially_balanced(x: Labeling) -> bool:
    """True when every cell and its mirror ``(i, n + 1 - j)`` sum to mn + 1."""
    dims = x.dims
    dims.require_even_n()
    half = dims.half
    return all(
        x[i, j] + x[i, dims.n + 1 - j] == half
        for i in range(1, dims.m + 1)
        for j in range(1, dims.n1 + 1)
    )


def row_pair_sums(x: Labeling) -> tuple[int, ...]:
    """Sums of adjacent labels along the left half of row 1."""
    n0 = x.dims.n0
    return tuple(x[1, j] + x[1, j + 1] for j in range(1, n0 + 1))


def satisfies_row_pair_structure(x: Labeling) -> bool:
    """Row structure every magic labeling with odd m must have.

    Odd rows repeat the adjacent sums of row 1 and are balanced; even rows
    realise the same sums read from the right-hand end.
    """
    dims = x.dims
    dims.require_odd_m()
    n, half = dims.n, dims.half
    a = row_pair_sums(x)
    for i in range(1, dims.m + 1):
        for j in range(1, dims.n1 + 1):
            if x[i, j] + x[i, n + 1 - j] != half:
                return False
        for j, aj in enumerate(a, start=1):
            if i % 2:
                got = x[i, j] + x[i, j + 1]
            else:
                got = x[i, n - j] + x[i, n - j + 1]
            if got != aj:
                return False
    return True

