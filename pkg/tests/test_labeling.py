import pytest
from hypothesis import given, strategies as st

from klein_magic.grid import GridDims, GridError, faces
from klein_magic.labeling import (
    Labeling,
    LabelingError,
    is_equatorially_balanced,
    magic_value,
    row_pair_sums,
    satisfies_row_pair_structure,
    verify,
)


def face_sums(x):
    return [sum(x[c] for c in face) for face in faces(x.dims)]


@pytest.mark.parametrize("m, n, s", [(7, 10, 142), (6, 10, 122), (2, 4, 18)])
def test_magic_value(m, n, s):
    assert magic_value(GridDims(m, n)) == s


def test_magic_value_rejects_odd_n():
    with pytest.raises(GridError):
        magic_value(GridDims(3, 5))


def test_table_face_sums(tables):
    t1, t2 = tables[1], tables[2]
    assert t1[1, 1] + t1[1, 2] + t1[2, 1] + t1[2, 2] == 142
    assert t2[1, 1] + t2[1, 2] + t2[2, 1] + t2[2, 2] == 122
    for t in tables.values():
        report = verify(t)
        assert report.is_magic and not report.violations
        assert set(face_sums(t)) == {report.magic_value}


def test_swap_breaks_magic(tables):
    rows = tables[1].rows
    rows[0][0], rows[1][-1] = rows[1][-1], rows[0][0]
    bad = Labeling.from_rows(rows)
    report = verify(bad)
    assert not report.is_magic
    expected = [(f, s) for f, s in zip(faces(bad.dims), face_sums(bad)) if s != 142]
    assert list(report.violations) == expected and expected


def test_non_bijection_is_structural():
    with pytest.raises(LabelingError):
        Labeling.from_rows([[1, 1, 2, 3], [4, 5, 6, 7]])
    with pytest.raises(LabelingError):
        Labeling.from_rows([[1, 2, 3], [4, 5]])


def test_balance(tables):
    assert is_equatorially_balanced(tables[1])
    assert not is_equatorially_balanced(tables[2])
    assert tables[2][1, 1] + tables[2][1, 10] == 7
    assert is_equatorially_balanced(tables[3])


def test_row_pair_sums(tables):
    assert row_pair_sums(tables[3]) == (22, 28, 34, 40)
    assert row_pair_sums(tables[4]) == (16,)
    assert row_pair_sums(tables[1]) == (36, 43, 36, 43)


def test_row_structure_on_tables(tables):
    assert satisfies_row_pair_structure(tables[1])
    assert satisfies_row_pair_structure(tables[3])
    assert satisfies_row_pair_structure(tables[4])


@given(st.permutations(range(1, 13)))
def test_verify_matches_direct_sums(perm):
    x = Labeling(GridDims(3, 4), tuple(perm))
    sums = face_sums(x)
    report = verify(x)
    assert report.is_magic == all(s == 26 for s in sums)
    assert report.is_magic == (not report.violations)
    assert [s for _, s in report.violations] == [s for s in sums if s != 26]


def test_odd_n_faces_checked():
    x = Labeling.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
    report = verify(x)
    assert report.magic_value == 20 and not report.is_magic
