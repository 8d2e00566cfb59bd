from collections import Counter

import pytest
from hypothesis import given, strategies as st

from klein_magic.counting import (
    count_m4,
    decompose_single_sum,
    divisors,
    nkbl_lower_bound,
    pms,
    predicted_path_sizes,
    tau,
)


@pytest.mark.parametrize("m, t", [(3, 2), (9, 3), (15, 4), (1, 1), (36, 9)])
def test_tau(m, t):
    assert tau(m) == t


@given(st.integers(1, 2000))
def test_divisors_by_trial_division(m):
    assert divisors(m) == [d for d in range(1, m + 1) if m % d == 0]


def test_pms_values():
    assert pms(3) == {12, 11, 10, 7}
    assert pms(5) == {20, 19, 16, 11} and 16 in pms(5)
    for m in (3, 5, 7, 9, 15):
        assert len(pms(m)) == 2 * tau(m)


def test_pms_rejects_even():
    with pytest.raises(ValueError):
        pms(4)


@pytest.mark.parametrize("m, c", [(3, 32), (5, 1536), (7, 184320)])
def test_count_m4(m, c):
    assert count_m4(m) == c


@pytest.mark.parametrize("m, n, b", [(3, 6, 96), (3, 8, 80), (5, 10, 4608)])
def test_lower_bound(m, n, b):
    assert nkbl_lower_bound(m, n) == b


def test_lower_bound_rejects_n4():
    with pytest.raises(ValueError):
        nkbl_lower_bound(3, 4)


def matching_exists(m, a):
    """Perfect matching search on G(a) built straight from its definition."""
    half = 4 * m + 1
    verts = range(1, 2 * m + 1)
    adj = {q: set() for q in verts}
    for q in verts:
        for z in (q, half - q):
            w = a - z
            if 1 <= w <= 4 * m and min(w, half - w) != q:
                adj[q].add(min(w, half - w))

    def match(free):
        if not free:
            return True
        v = min(free)
        return any(match(free - {v, w}) for w in adj[v] & free)

    return match(frozenset(verts))


def test_decompose_example_m5():
    d = decompose_single_sum(5, 16)
    assert d.sizes == Counter({4: 2, 2: 1}) and d.has_perfect_matching


def test_decompose_example_m3_no_matching():
    d = decompose_single_sum(3, 9)
    assert d.k == 4 and not d.has_perfect_matching
    assert any(len(p) % 2 for p in d.paths)


def test_decompose_pms3():
    assert all(decompose_single_sum(3, a).has_perfect_matching for a in (7, 10, 11, 12))


def test_decompose_range():
    with pytest.raises(ValueError):
        decompose_single_sum(3, 14)
    decompose_single_sum(3, 13)


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_matching_characterization(m):
    good = {k for d in divisors(m) for k in (d, 2 * d)}
    for k in range(1, 2 * m + 1):
        d = decompose_single_sum(m, 4 * m + 1 - k)
        assert not d.cycles
        assert sorted(v for p in d.paths for v in p) == list(range(1, 2 * m + 1))
        assert d.has_perfect_matching == (k in good) == matching_exists(m, 4 * m + 1 - k)
        assert d.has_perfect_matching == all(len(p) % 2 == 0 for p in d.paths)
        _, predicted = predicted_path_sizes(m, k)
        assert d.sizes == predicted


def test_case_labels_m9():
    # worked by hand from the divisors 1, 3, 9 and q = 36 // k
    cases = [predicted_path_sizes(9, k)[0] for k in range(1, 19)]
    assert cases == [
        "1", "2", "1", "3", "5ii", "2", "5ii", "4", "1",
        "4", "5ii", "3", "5i", "4", "5i", "4", "5i", "2",
    ]
