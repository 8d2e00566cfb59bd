from collections import Counter
import pytest
from hypothesis import given, strategies as st

from klein_magic.grid import Cell, GridDims, GridError, edges, faces


def test_dims_constants():
    d = GridDims(7, 10)
    assert (d.magic, d.half, d.n1, d.n0, d.half_m, d.half_m_plus) == (142, 71, 5, 4, 3, 4)


@pytest.mark.parametrize("m, n", [(1, 4), (3, 2), (0, 6)])
def test_rejects_small_grids(m, n):
    with pytest.raises(GridError):
        GridDims(m, n)


def test_odd_n_has_no_half():
    with pytest.raises(GridError):
        GridDims(3, 5).n1


def test_seam_edge_present():
    e = edges(GridDims(3, 4))
    assert frozenset({Cell(3, 1), Cell(1, 4)}) in e
    assert len(e) == 24


def test_two_row_seam_distinct_from_vertical():
    e = edges(GridDims(2, 4))
    assert frozenset({Cell(2, 1), Cell(1, 4)}) in e
    assert frozenset({Cell(1, 1), Cell(2, 1)}) in e
    assert frozenset({Cell(2, 1), Cell(1, 4)}) != frozenset({Cell(1, 1), Cell(2, 1)})


def test_seam_face_at_first_column():
    f = faces(GridDims(7, 10))
    seam = [face for face in f if Cell(7, 1) in face and Cell(7, 2) in face and Cell(1, 9) in face]
    assert seam and set(seam[0]) == {Cell(7, 1), Cell(7, 2), Cell(1, 9), Cell(1, 10)}


grids = st.tuples(st.integers(2, 7), st.integers(3, 10)).map(lambda t: GridDims(*t))


def boundary(dims, face):
    """Boundary walk of a face: interior faces go a-b-d-c, seam faces a-b-c-d."""
    a, b, c, d = face
    if a.i < dims.m:
        return [(a, b), (b, d), (d, c), (c, a)]
    return [(a, b), (b, c), (c, d), (d, a)]


def simple(dims):
    # with two rows and odd n the middle seam edge doubles a vertical edge
    return not (dims.m == 2 and dims.n % 2)


@given(grids)
def test_quadrangulation(dims):
    f = faces(dims)
    e = edges(dims)
    assert len(f) == dims.cells
    assert len(e) == (2 * dims.cells if simple(dims) else 2 * dims.cells - 1)
    cell_inc = Counter(c for face in f for c in face)
    assert set(cell_inc.values()) == {4} and len(cell_inc) == dims.cells
    edge_inc = Counter()
    for face in f:
        assert len(set(face)) == 4
        cycle = [frozenset(p) for p in boundary(dims, face)]
        assert all(side in e for side in cycle)
        edge_inc.update(cycle)
    if simple(dims):
        assert set(edge_inc.values()) == {2} and len(edge_inc) == len(e)


def test_two_row_odd_grid_doubles_one_edge():
    e = edges(GridDims(2, 3))
    assert frozenset({Cell(2, 2), Cell(1, 2)}) in e
    assert len(e) == 11


@given(grids)
def test_edges_are_4_regular(dims):
    e = edges(dims)
    deg = Counter(c for pair in e for c in pair)
    assert all(len(pair) == 2 for pair in e)
    if simple(dims):
        assert set(deg.values()) == {4}


def test_index_round_trip():
    d = GridDims(3, 5)
    assert [d.index(d.cell(k)) for k in range(d.cells)] == list(range(d.cells))
    with pytest.raises(GridError):
        d.index((4, 1))
