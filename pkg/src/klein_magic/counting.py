"""Divisor counting and the single-sum search graphs of the n = 4 grids.

With ``n = 4`` a balanced labeling is determined by a perfect matching of
``G(a)``, whose pair vertices each see at most two neighbours, so ``G(a)``
splits into paths.  Writing ``k = 4m + 1 - a``, the path lengths depend only
on how ``k`` relates to the divisors of ``m``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import factorial, isqrt

from klein_magic.grid import GridDims
from klein_magic.search_graph import build

__all__ = [
    "PathDecomposition",
    "count_m4",
    "decompose_single_sum",
    "divisors",
    "nkbl_lower_bound",
    "pms",
    "predicted_path_sizes",
    "tau",
]


def _require_odd(m: int) -> None:
    if m < 3 or m % 2 == 0:
        raise ValueError(f"m must be odd and at least 3, got {m}")


def divisors(m: int) -> list[int]:
    if m < 1:
        raise ValueError(f"divisors of {m} are not defined here")
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    return sorted(set(small) | {m // d for d in small})


def tau(m: int) -> int:
    return len(divisors(m))


def pms(m: int) -> set[int]:
    """Values of ``a`` for which ``G(a)`` on the ``m x 4`` grid has a perfect matching."""
    _require_odd(m)
    return {4 * m + 1 - k for d in divisors(m) for k in (d, 2 * d)}


def count_m4(m: int) -> int:
    """Number of inequivalent magic labelings of the ``m x 4`` grid, m odd."""
    _require_odd(m)
    return 2**m * factorial(m - 1) * tau(m)


def nkbl_lower_bound(m: int, n: int) -> int:
    """Guaranteed number of inequivalent magic labelings for odd m, even n >= 6."""
    _require_odd(m)
    if n % 2 or n < 6:
        raise ValueError(f"the lower bound needs even n >= 6, got {n}; use count_m4 for n = 4")
    per = 6 if n % 4 == 2 else 5
    return per * 2**m * factorial(m - 1)


@dataclass(frozen=True)
class PathDecomposition:
    """Maximal paths of ``G(a)``, each listed from one end to the other."""

    m: int
    a: int
    paths: tuple[tuple[int, ...], ...]
    cycles: tuple[tuple[int, ...], ...] = ()

    @property
    def k(self) -> int:
        return 4 * self.m + 1 - self.a

    @property
    def sizes(self) -> Counter[int]:
        return Counter(len(p) for p in self.paths)

    @property
    def has_perfect_matching(self) -> bool:
        return all(len(c) % 2 == 0 for c in self.paths + self.cycles)


def decompose_single_sum(m: int, a: int) -> PathDecomposition:
    _require_odd(m)
    if not 2 <= a <= 4 * m + 1:
        raise ValueError(f"a = {a} outside 2..{4 * m + 1}")
    g = build(GridDims(m, 4), (a,))
    nbrs = {q: sorted({e.neighbor for e in es}) for q, es in g.adjacency.items()}
    seen: set[int] = set()
    paths, cycles = [], []
    for start in sorted(nbrs, key=lambda q: (len(nbrs[q]) > 1, q)):
        if start in seen:
            continue
        walk = [start]
        seen.add(start)
        while True:
            nxt = [w for w in nbrs[walk[-1]] if w not in seen]
            if not nxt:
                break
            walk.append(nxt[0])
            seen.add(nxt[0])
        closed = len(walk) > 2 and walk[0] in nbrs[walk[-1]]
        (cycles if closed else paths).append(tuple(walk))
    return PathDecomposition(m, a, tuple(sorted(paths)), tuple(sorted(cycles)))


def predicted_path_sizes(m: int, k: int) -> tuple[str, Counter[int]]:
    """Case label and path-size multiset of ``G(4m + 1 - k)`` for ``1 <= k <= 2m``."""
    _require_odd(m)
    if not 1 <= k <= 2 * m:
        raise ValueError(f"k = {k} outside 1..{2 * m}")
    sizes: Counter[int] = Counter()
    if k % 2 and m % k == 0:
        d = k
        case = "1"
        sizes[4 * m // d] += (d - 1) // 2
        sizes[2 * m // d] += 1
    elif k % 4 == 2 and m % (k // 2) == 0:
        d = k // 2
        case = "2"
        sizes[2 * m // d] += d
    elif k % 4 == 0 and m % (k // 4) == 0:
        d = k // 4
        case = "3"
        sizes[m // d] += 2 * d
    elif k % 2 == 0:
        case = "4"
        k1, q = k // 2, 4 * m // k
        r1 = 2 * m - k1 * q
        sizes[q + 1] += r1
        sizes[q] += k1 - r1
    else:
        k1, q = (k - 1) // 2, 4 * m // k
        if q % 2 == 0:
            case, q1 = "5i", q // 2
            r1 = 2 * m - k * q1
        else:
            case, q1 = "5ii", (q + 1) // 2
            r1 = (4 * m - k * q - 1) // 2
        sizes[q + 1] += r1
        sizes[q] += k1 - r1
        sizes[q1] += 1
    return case, +sizes
