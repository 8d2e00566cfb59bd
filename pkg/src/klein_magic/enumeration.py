"""Exhaustive search for magic labelings, independent of the structure theory.

The search knows only the face equations.  Solving them once over the
rationals shows which cells are pinned down by which others, so the search
assigns a short list of free cells (one per dimension of the solution space)
and fills every other cell in as soon as it is determined.  A branch dies as
soon as a determined value is fractional, out of range, or already used.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial, lcm
from multiprocessing import Pool
from typing import Iterator, Sequence

from klein_magic.counting import count_m4, decompose_single_sum, pms
from klein_magic.grid import GridDims, face_index_table
from klein_magic.labeling import Labeling, row_pair_sums
from klein_magic.search_graph import sequence_class_key
from klein_magic.symmetry import canonical, orbit

__all__ = [
    "BudgetExceeded",
    "Census",
    "CountCheck",
    "brute_force_all",
    "census",
    "default_budget",
    "search_plan",
    "verify_count_theorem_m4",
]

DEFAULT_BUDGET = 20
BUDGET_ENV = "KLEIN_MAGIC_BUDGET"


class BudgetExceeded(RuntimeError):
    """The grid has more cells than the search budget allows."""


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_BUDGET


def _check_budget(dims: GridDims, budget: int | None) -> None:
    limit = default_budget() if budget is None else budget
    if dims.cells > limit:
        raise BudgetExceeded(
            f"{dims.m} x {dims.n} has {dims.cells} cells, over the budget of {limit}; "
            f"raise it with --budget or {BUDGET_ENV}"
        )


# -- linear algebra ------------------------------------------------------------


def _affine_solution(dims: GridDims) -> tuple[list[Fraction], list[list[Fraction]]] | None:
    """General solution ``x = base + coef @ t`` of the face equations, or None."""
    size, target = dims.cells, dims.magic
    rows = []
    for face in face_index_table(dims):
        row = [Fraction(0)] * (size + 1)
        for c in face:
            row[c] += 1
        row[size] = Fraction(target)
        rows.append(row)
    pivots: list[int] = []
    r = 0
    for col in range(size):
        pr = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[size] != 0 for row in rows[r:]):
        return None
    params = [c for c in range(size) if c not in pivots]
    base = [Fraction(0)] * size
    coef = [[Fraction(0)] * len(params) for _ in range(size)]
    for k, q in enumerate(params):
        coef[q][k] = Fraction(1)
    for k, p in enumerate(pivots):
        base[p] = rows[k][size]
        for t, q in enumerate(params):
            coef[p][t] = -rows[k][q]
    return base, coef


def _express(target: list[Fraction], basis: list[list[Fraction]]) -> list[Fraction] | None:
    """Coefficients writing ``target`` as a combination of ``basis`` rows, if any."""
    if not basis:
        return None if any(target) else []
    width = len(target)
    # Solve  lam @ basis = target  by eliminating on the transposed system.
    rows = [[basis[k][col] for k in range(len(basis))] + [target[col]] for col in range(width)]
    nvar = len(basis)
    pivots = []
    r = 0
    for col in range(nvar):
        pr = next((k for k in range(r, len(rows)) if rows[k][col] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][col] != 0:
                f = rows[k][col]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(col)
        r += 1
    if any(row[nvar] != 0 for row in rows[r:]):
        return None
    lam = [Fraction(0)] * nvar
    for k, col in enumerate(pivots):
        lam[col] = rows[k][nvar]
    return lam


@dataclass(frozen=True)
class Step:
    """One free cell, followed by the cells its value pins down.

    A determined cell gets ``(const + sum(w * x[f] for f, w)) // den``, where
    the sum runs over the free cells chosen so far.
    """

    cell: int
    determined: tuple[tuple[int, int, tuple[int, ...], int], ...]


@dataclass(frozen=True)
class SearchPlan:
    dims: GridDims
    steps: tuple[Step, ...]
    consistent: bool

    @property
    def free_cells(self) -> tuple[int, ...]:
        return tuple(s.cell for s in self.steps)


@lru_cache(maxsize=None)
def search_plan(dims: GridDims, start: int = 0) -> SearchPlan:
    """Order of free cells for the search, beginning at row-major cell ``start``.

    Each next free cell is the undetermined one that pins down the most
    further cells, ties going to the lowest position.
    """
    solved = _affine_solution(dims)
    if solved is None:
        return SearchPlan(dims, (), False)
    base, coef = solved
    size = dims.cells
    chosen: list[int] = []
    known: set[int] = set()

    def determined_by(cells: list[int]) -> dict[int, list[Fraction]]:
        basis = [coef[c] for c in cells]
        out = {}
        for c in range(size):
            lam = _express(coef[c], basis)
            if lam is not None:
                out[c] = lam
        return out

    steps = []
    nxt = start
    while True:
        chosen.append(nxt)
        found = determined_by(chosen)
        fresh = []
        for c in sorted(found):
            if c in known or c in chosen:
                continue
            lam = found[c]
            const = base[c] - sum(l * base[f] for l, f in zip(lam, chosen))
            den = lcm(const.denominator, *(l.denominator for l in lam))
            weights = tuple(int(l * den) for l in lam)
            fresh.append((c, int(const * den), weights, den))
        known.update(found)
        steps.append(Step(nxt, tuple(fresh)))
        if len(known) == size:
            break
        best = None
        for c in range(size):
            if c in known:
                continue
            gain = len(determined_by(chosen + [c]))
            if best is None or gain > best[0]:
                best = (gain, c)
        nxt = best[1]
    return SearchPlan(dims, tuple(steps), True)


# -- search ----------------------------------------------------------------------


def _solve(plan: SearchPlan, prefix: Sequence[int] = (), fix: dict[int, int] | None = None) -> list[tuple[int, ...]]:
    """All solutions whose first free cells take the values in ``prefix``.

    ``fix`` restricts chosen labels: it maps a label to the only cell that
    may receive it.
    """
    dims = plan.dims
    if not plan.consistent:
        return []
    size = dims.cells
    vals = [0] * size
    used = [False] * (size + 1)
    free_vals: list[int] = []
    out: list[tuple[int, ...]] = []
    steps = plan.steps
    depth = len(steps)
    fix = fix or {}

    def fill(step: Step) -> list[int] | None:
        placed = []
        for c, const, weights, den in step.determined:
            num = const
            for w, v in zip(weights, free_vals):
                num += w * v
            v, rem = divmod(num, den)
            if rem or not 1 <= v <= size or used[v] or fix.get(v, c) != c:
                for p in placed:
                    used[vals[p]] = False
                    vals[p] = 0
                return None
            vals[c] = v
            used[v] = True
            placed.append(c)
        return placed

    def descend(t: int) -> None:
        if t == depth:
            out.append(tuple(vals))
            return
        step = steps[t]
        c = step.cell
        choices = (prefix[t],) if t < len(prefix) else range(1, size + 1)
        for v in choices:
            if used[v] or fix.get(v, c) != c:
                continue
            vals[c] = v
            used[v] = True
            free_vals.append(v)
            placed = fill(step)
            if placed is not None:
                descend(t + 1)
                for p in placed:
                    used[vals[p]] = False
                    vals[p] = 0
            free_vals.pop()
            used[v] = False
            vals[c] = 0

    descend(0)
    return out


def _solve_task(args: tuple[GridDims, int, tuple[int, ...], tuple[tuple[int, int], ...]]) -> list[tuple[int, ...]]:
    dims, start, prefix, fix = args
    return _solve(search_plan(dims, start), prefix, dict(fix))


def _tasks(dims: GridDims, pin_one: bool) -> list[tuple[GridDims, int, tuple[int, ...], tuple[tuple[int, int], ...]]]:
    """Independent subtrees, split on the values of the first free cells."""
    size = dims.cells
    if not pin_one:
        return [(dims, 0, (v,), ()) for v in range(1, size + 1)]
    tasks = []
    for r in orbit_representatives(dims):
        if len(search_plan(dims, r).steps) > 1:
            tasks.extend((dims, r, (1, v), ((1, r),)) for v in range(2, size + 1))
        else:
            tasks.append((dims, r, (1,), ((1, r),)))
    return tasks


def _run(dims: GridDims, pin_one: bool, jobs: int) -> Iterator[tuple[int, ...]]:
    tasks = _tasks(dims, pin_one)
    if jobs > 1:
        with Pool(jobs) as pool:
            for chunk in pool.imap(_solve_task, tasks):
                yield from chunk
    else:
        for task in tasks:
            yield from _solve_task(task)


def orbit_representatives(dims: GridDims) -> tuple[int, ...]:
    """One row-1 cell from each orbit of cells under the symmetry group.

    Row shifts reach every row, and the half-turn and the seam reflection
    identify columns ``j``, ``n + 1 - j``, ``j + n/2`` and ``n/2 + 1 - j``.
    Worked out directly from the two generating cell maps, so the search
    does not depend on the group code it is used to check.
    """
    n = dims.n
    n1 = dims.n1
    reps, seen = [], set()
    for j in range(1, n + 1):
        if j in seen:
            continue
        cls = {j, n + 1 - j, dims.col(j + n1), dims.col(n1 + 1 - j)}
        seen |= cls
        reps.append(dims.index((1, j)))
    return tuple(reps)


def brute_force_all(
    dims: GridDims, budget: int | None = None, jobs: int = 1, pin_one: bool = False
) -> Iterator[Labeling]:
    """Every magic labeling of the grid, in lexicographic order of free-cell values.

    With ``pin_one`` only labelings carrying label 1 on an orbit
    representative cell are produced; every symmetry class still appears.
    """
    _check_budget(dims, budget)
    if pin_one:
        dims.require_even_n()
    target = dims.magic
    faces = face_index_table(dims)
    for values in _run(dims, pin_one, jobs):
        # the linear plan already forces every face; re-check as a safeguard
        if any(values[a] + values[b] + values[c] + values[d] != target for a, b, c, d in faces):
            raise AssertionError(f"search produced a non-magic table {values}")
        yield Labeling(dims, values)


# -- census -----------------------------------------------------------------------


@dataclass(frozen=True)
class Census:
    dims: GridDims
    total_raw: int
    classes: int
    by_sequence: dict[tuple[int, ...], int] = field(default_factory=dict)
    representatives: tuple[Labeling, ...] = ()
    orbit_sizes: Counter[int] = field(default_factory=Counter)


def census(dims: GridDims, budget: int | None = None, jobs: int = 1, pin_one: bool = False) -> Census:
    """Count magic labelings and their symmetry classes by exhaustive search.

    In ``pin_one`` mode the raw total is reconstructed from orbit sizes.
    """
    raw = 0
    reps: set[tuple[int, ...]] = set()
    for x in brute_force_all(dims, budget, jobs, pin_one):
        raw += 1
        reps.add(canonical(x).values)
    labelings = tuple(Labeling(dims, v) for v in sorted(reps))
    orbit_sizes = Counter(len(orbit(x)) for x in labelings)
    total = sum(size * count for size, count in orbit_sizes.items())
    if not pin_one and total != raw:
        raise AssertionError(f"orbit sizes add to {total}, search found {raw}")
    by_sequence: Counter[tuple[int, ...]] = Counter()
    if dims.m % 2 and dims.n % 2 == 0:
        for x in labelings:
            by_sequence[sequence_class_key(dims, row_pair_sums(x))] += 1
    return Census(dims, total, len(labelings), dict(sorted(by_sequence.items())), labelings, orbit_sizes)


@dataclass(frozen=True)
class CountCheck:
    expected: int
    observed: int | None
    structured: int

    @property
    def match(self) -> bool:
        return self.observed == self.expected and self.structured == self.expected


def verify_count_theorem_m4(
    m: int, budget: int | None = None, jobs: int = 1, search: bool = True, pin_one: bool = False
) -> CountCheck:
    """Compare the closed-form count for ``m x 4`` with search and with matchings.

    The structured count adds ``2^(m-1) (m-1)!`` for each sum ``a`` whose
    graph has a perfect matching, found here by decomposing every ``G(a)``.
    """
    expected = count_m4(m)
    matching = [a for a in range(2 * m + 1, 4 * m + 1) if decompose_single_sum(m, a).has_perfect_matching]
    if set(matching) != pms(m):
        raise AssertionError(f"matching sums {matching} differ from {sorted(pms(m))}")
    structured = len(matching) * 2 ** (m - 1) * factorial(m - 1)
    observed = census(GridDims(m, 4), budget, jobs, pin_one).classes if search else None
    return CountCheck(expected, observed, structured)

