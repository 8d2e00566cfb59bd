"""Explicit path partitions for odd m, giving many inequivalent magic labelings.

Each family fixes a sum sequence and writes down, for path ``i``, the label at
every position.  The general families come in two orientations per path,
chosen by ``rho(i)``, so one sequence carries ``2^m`` different partitions.
"""

from __future__ import annotations

from enum import Enum
from typing import Callable, Sequence

from klein_magic.grid import GridDims
from klein_magic.search_graph import PathPartition

__all__ = [
    "FamilyId",
    "family_general",
    "family_n6_diagonal",
    "family_n6_middle",
    "family_palindromic",
    "family_sequence",
]


class FamilyId(str, Enum):
    P72_CASE1 = "P72_case1"
    P72_CASE2 = "P72_case2"
    P72_CASE3 = "P72_case3"
    P73_CASE1 = "P73_case1"
    P73_CASE2 = "P73_case2"
    P73_CASE3 = "P73_case3"
    P74_CASE1 = "P74_case1"
    P74_CASE2 = "P74_case2"
    P74_CASE3 = "P74_case3"
    P74_CASE4 = "P74_case4"

    @property
    def group(self) -> str:
        return self.value[:3]


def _require_odd(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be odd and at least 3, got {m}")


def family_n6_middle(m: int, b: int) -> PathPartition:
    """Partition for the sequence ``(6m, b)`` on the ``m x 6`` grid."""
    _require_odd(m)
    paths = []
    if 3 * m + 1 <= b <= 4 * m + 1:
        k = b - 3 * m
        for i in range(1, m + 1):
            if i <= k - 1:
                paths.append((6 * m - 2 * i + 1, 2 * i - 1, 3 * m - 2 * i + k + 1))
            else:
                paths.append((6 * m - 3 * i + k + 1, 3 * i - k - 1, 3 * m - 3 * i + 2 * k + 1))
    elif 8 * m <= b <= 9 * m + 1:
        k = b - 8 * m
        for i in range(1, m + 1):
            if i <= k - 1:
                paths.append((2 * m - 3 * i + k + 1, 4 * m + 3 * i - k - 1, 4 * m - 3 * i + 2 * k + 1))
            else:
                paths.append((2 * m - 2 * i + 1, 4 * m + 2 * i - 1, 4 * m - 2 * i + k + 1))
    else:
        raise ValueError(f"b = {b} outside {3 * m + 1}..{4 * m + 1} and {8 * m}..{9 * m + 1}")
    return PathPartition(GridDims(m, 6), (6 * m, b), tuple(paths))


def family_n6_diagonal(m: int, k: int) -> PathPartition:
    """Partition for the sequence ``(2m + k, 3m + k)`` on the ``m x 6`` grid."""
    _require_odd(m)
    if not 1 <= k <= m + 1:
        raise ValueError(f"k = {k} outside 1..{m + 1}")
    paths = []
    for i in range(1, m + 1):
        if i <= k - 1:
            paths.append((k - i, 2 * m + i, m - i + k))
        else:
            paths.append((2 * m - i + k, i, 3 * m - i + k))
    return PathPartition(GridDims(m, 6), (2 * m + k, 3 * m + k), tuple(paths))


# A formula maps (m, n, n1, i, j) to a label; each orientation has one for
# odd positions 2j - 1 and one for even positions 2j.
Formula = Callable[[int, int, int, int, int], int]

_ORIENTED: dict[FamilyId, tuple[tuple[Formula, Formula], tuple[Formula, Formula]]] = {
    FamilyId.P72_CASE1: (
        (lambda m, n, n1, i, j: n1 * (i - 1) + j, lambda m, n, n1, i, j: m * n - n1 * i + j),
        (lambda m, n, n1, i, j: m * n - n1 * i + j, lambda m, n, n1, i, j: n1 * (i - 1) + j),
    ),
    FamilyId.P72_CASE2: (
        (lambda m, n, n1, i, j: m * (j - 1) + i, lambda m, n, n1, i, j: m * (n1 + j) - i + 1),
        (lambda m, n, n1, i, j: m * (n1 + j) - i + 1, lambda m, n, n1, i, j: m * (j - 1) + i),
    ),
    FamilyId.P72_CASE3: (
        (lambda m, n, n1, i, j: 2 * m * (j - 1) + i, lambda m, n, n1, i, j: 2 * m * j - i + 1),
        (lambda m, n, n1, i, j: 2 * m * j - i + 1, lambda m, n, n1, i, j: 2 * m * (j - 1) + i),
    ),
    FamilyId.P73_CASE1: (
        (lambda m, n, n1, i, j: n1 * (i - 1) + 2 * j - 1, lambda m, n, n1, i, j: m * n - n1 * i + 2 * j),
        (lambda m, n, n1, i, j: m * n - n1 * i + 2 * j - 1, lambda m, n, n1, i, j: n1 * (i - 1) + 2 * j),
    ),
    FamilyId.P73_CASE2: (
        (lambda m, n, n1, i, j: m * (2 * j - 2) + i, lambda m, n, n1, i, j: m * (n1 + 2 * j) - i + 1),
        (lambda m, n, n1, i, j: m * (n1 + 2 * j - 1) - i + 1, lambda m, n, n1, i, j: m * (2 * j - 1) + i),
    ),
    FamilyId.P73_CASE3: (
        (lambda m, n, n1, i, j: 4 * m * (j - 1) + i, lambda m, n, n1, i, j: 4 * m * j - i + 1),
        (lambda m, n, n1, i, j: m * (4 * j - 2) - i + 1, lambda m, n, n1, i, j: m * (4 * j - 2) + i),
    ),
}


def family_sequence(m: int, n: int, fam: FamilyId | str) -> tuple[int, ...]:
    """The sum sequence ``(a_1, ..., a_{n/2 - 1})`` a family realises."""
    fam = FamilyId(fam)
    dims = GridDims(m, n)
    n1, n0 = dims.n1, dims.n0
    mn = m * n
    ks = range(1, n0 + 1)
    if fam is FamilyId.P72_CASE1:
        return tuple(mn - n0 + k for k in ks)
    if fam is FamilyId.P72_CASE2:
        return tuple(m * (n1 + k) + 1 for k in ks)
    if fam is FamilyId.P72_CASE3:
        return tuple(2 * m * k + 1 for k in ks)
    if fam is FamilyId.P73_CASE1:
        return tuple((2 * m - 1) * n1 + 2 * k + 1 for k in ks)
    if fam is FamilyId.P73_CASE2:
        return tuple(m * n1 + 2 * m * k + 1 for k in ks)
    if fam is FamilyId.P73_CASE3:
        return tuple(4 * m * k + 1 for k in ks)
    odd, even = {
        FamilyId.P74_CASE1: (mn, mn + 2),
        FamilyId.P74_CASE2: (mn - 1, mn + 3),
        FamilyId.P74_CASE3: (m * (n - 1) + 1, m * (n + 1) + 1),
        FamilyId.P74_CASE4: (m * (n - 2) + 1, m * (n + 2) + 1),
    }[fam]
    return tuple(odd if k % 2 else even for k in ks)


def _layout(n1: int, odd: Callable[[int], int], even: Callable[[int], int]) -> tuple[int, ...]:
    return tuple(odd((p + 1) // 2) if p % 2 else even(p // 2) for p in range(1, n1 + 1))


def family_general(m: int, n: int, fam: FamilyId | str, rho: Sequence[int]) -> PathPartition:
    """Partition ``K_rho`` for a two-orientation family; ``rho(i)`` picks path i's orientation."""
    fam = FamilyId(fam)
    _require_odd(m)
    dims = GridDims(m, n)
    n1 = dims.n1
    if n < 6:
        raise ValueError(f"{fam.value} needs even n >= 6, got {n}")
    if fam.group == "P74":
        raise ValueError(f"{fam.value} has a single orientation; use family_palindromic")
    if fam.group == "P73" and n1 % 2 == 0:
        raise ValueError(f"{fam.value} needs n/2 odd, got n/2 = {n1}")
    rho = tuple(rho)
    if len(rho) != m or any(r not in (1, 2) for r in rho):
        raise ValueError(f"rho {rho} must give 1 or 2 for each of the {m} paths")
    paths = []
    for i, r in enumerate(rho, start=1):
        odd, even = _ORIENTED[fam][r - 1]
        paths.append(_layout(n1, lambda j: odd(m, n, n1, i, j), lambda j: even(m, n, n1, i, j)))
    return PathPartition(dims, family_sequence(m, n, fam), tuple(paths))


def family_palindromic(m: int, n: int, fam: FamilyId | str) -> PathPartition:
    """Partition for a palindromic family; needs ``n/2`` even."""
    fam = FamilyId(fam)
    _require_odd(m)
    dims = GridDims(m, n)
    n1 = dims.n1
    if fam.group != "P74":
        raise ValueError(f"{fam.value} is not a palindromic family")
    if n1 % 2:
        raise ValueError(f"{fam.value} needs n/2 even, got n/2 = {n1}")
    paths = []
    if fam is FamilyId.P74_CASE2:
        m1 = (m - 1) // 2
        for i in range(1, m1 + 1):
            paths.append(_layout(n1, lambda j: n * (i - 1) + 4 * j - 3, lambda j: n * (m - i + 1) - 4 * j + 2))
            paths.append(_layout(n1, lambda j: n * (i - 1) + 4 * j - 2, lambda j: n * (m - i + 1) - 4 * j + 1))
        paths.append(_layout(n1, lambda j: m1 * n + 4 * j - 3, lambda j: (m1 + 1) * n - 4 * j + 2))
    else:
        odd, even = {
            FamilyId.P74_CASE1: (
                lambda i, j: n1 * (i - 1) + 2 * j - 1,
                lambda i, j: n1 * (2 * m - i + 1) - 2 * j + 1,
            ),
            FamilyId.P74_CASE3: (
                lambda i, j: m * (2 * j - 2) + i,
                lambda i, j: m * (n - 2 * j + 1) - i + 1,
            ),
            FamilyId.P74_CASE4: (
                lambda i, j: m * (4 * j - 4) + i,
                lambda i, j: m * (n - 4 * j + 2) - i + 1,
            ),
        }[fam]
        for i in range(1, m + 1):
            paths.append(_layout(n1, lambda j: odd(i, j), lambda j: even(i, j)))
    return PathPartition(dims, family_sequence(m, n, fam), tuple(paths))
