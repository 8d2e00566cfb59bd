"""Closed-form magic labelings for every m >= 2 and even n >= 4."""

from __future__ import annotations

from klein_magic.grid import GridDims, GridError
from klein_magic.labeling import Labeling

__all__ = ["construct", "construct_even", "construct_odd"]


def _dims(m: int, n: int) -> GridDims:
    dims = GridDims(m, n)
    dims.require_even_n()
    return dims


def construct_odd(m: int, n: int) -> Labeling:
    """Balanced labeling for odd m: left half by formula, right half mirrored."""
    dims = _dims(m, n)
    if m % 2 == 0:
        raise GridError(f"construct_odd needs odd m, got {m}")
    n1 = dims.n1
    mp, mm = dims.half_m_plus, dims.half_m
    n1p, n1m = (n1 + 1) // 2, n1 // 2
    x = [[0] * (n + 1) for _ in range(m + 1)]
    for j in range(1, n1p + 1):
        for i in range(1, mp + 1):
            x[2 * i - 1][2 * j - 1] = (j - 1) * m + i
        for i in range(1, mm + 1):
            x[2 * i][2 * j - 1] = (n + 1 - j) * m + 1 - mp - i
    for j in range(1, n1m + 1):
        for i in range(1, mp + 1):
            x[2 * i - 1][2 * j] = (n1 - j + 1) * m + 1 - i
        for i in range(1, mm + 1):
            x[2 * i][2 * j] = (n1 + j - 1) * m + mp + i
    half = dims.half
    for i in range(1, m + 1):
        for j in range(1, n1 + 1):
            x[i][n + 1 - j] = half - x[i][j]
    return Labeling.from_rows(row[1:] for row in x[1:])


def construct_even(m: int, n: int) -> Labeling:
    """Labeling for even m: odd rows by formula, each even row complements the one above."""
    dims = _dims(m, n)
    if m % 2:
        raise GridError(f"construct_even needs even m, got {m}")
    n1 = dims.n1
    n1p, n1m = (n1 + 1) // 2, n1 // 2
    half = dims.half
    x = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m // 2 + 1):
        row = x[2 * i - 1]
        for j in range(1, n1p + 1):
            row[2 * j - 1] = 2 * m * (j - 1) + i
        for j in range(1, n1m + 1):
            row[2 * j] = 2 * m * j + 1 - i
        for j in range(n1p + 1, n1 + 1):
            row[2 * j - 1] = m * (n + 1 - 2 * j) + i
        for j in range(n1m + 1, n1 + 1):
            row[2 * j] = m * (n + 1 - 2 * j) + 1 - i
        x[2 * i] = [0] + [half - v for v in row[1:]]
    return Labeling.from_rows(row[1:] for row in x[1:])


def construct(m: int, n: int) -> Labeling:
    return construct_odd(m, n) if m % 2 else construct_even(m, n)
