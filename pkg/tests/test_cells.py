import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridtopo import CubicalCell, boundary_cells, build_ambient
from gridtopo.errors import DegenerateExtent


def test_build_ambient_examples():
    amb = build_ambient(2, [(0, 8), (0, 8)])
    assert amb.n == 2
    assert amb.extent == ((0, 8), (0, 8))
    amb3 = build_ambient(3, [(0, 4)] * 3)
    assert amb3.n == 3


def test_build_ambient_degenerate():
    with pytest.raises(DegenerateExtent):
        build_ambient(2, [(0, 0), (0, 5)])


def test_edge_boundary():
    e = CubicalCell.make((0, 0), (0,))
    assert boundary_cells(e) == {
        CubicalCell.make((0, 0)),
        CubicalCell.make((1, 0)),
    }


def test_square_boundary():
    sq = CubicalCell.make((0, 0), (0, 1))
    bd = boundary_cells(sq)
    assert len(bd) == 4
    assert all(c.dim == 1 for c in bd)
    assert CubicalCell.make((0, 0), (0,)) in bd
    assert CubicalCell.make((0, 1), (0,)) in bd


def test_voxel_boundary():
    vx = CubicalCell.make((0, 0, 0), (0, 1, 2))
    bd = boundary_cells(vx)
    assert len(bd) == 6
    assert all(c.dim == 2 for c in bd)


def test_vertices_count():
    sq = CubicalCell.make((2, 3), (0, 1))
    assert len(list(sq.vertices())) == 4
    assert (2, 3) in sq.vertices()
    assert (3, 4) in sq.vertices()


def test_boundary_rejects_vertices():
    with pytest.raises(ValueError):
        boundary_cells(CubicalCell.make((0, 0)))


def test_contains_and_touches():
    sq = CubicalCell.make((0, 0), (0, 1))
    assert sq.contains(CubicalCell.make((1, 1)))
    assert sq.contains(CubicalCell.make((0, 0), (0,)))
    assert not sq.contains(CubicalCell.make((2, 0)))
    assert sq.touches(CubicalCell.make((1, 1), (0, 1)))
    assert not sq.touches(CubicalCell.make((2, 2), (0, 1)))


@settings(max_examples=60, deadline=None)
@given(
    base=st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)),
    dim=st.integers(2, 3),
)
def test_boundary_of_boundary_vanishes(base, dim):
    """Every (dim-2)-cell appears exactly twice among boundary boundaries."""
    axes = tuple(range(dim))
    cell = CubicalCell.make(base[: max(dim, 2) if dim > 2 else 3][:3], axes)
    counts = {}
    for f in cell.faces():
        for g in f.faces():
            counts[g] = counts.get(g, 0) + 1
    assert all(k == 2 for k in counts.values())


def test_cofaces_inverse_of_faces():
    amb = build_ambient(2, [(0, 4), (0, 4)])
    e = CubicalCell.make((1, 1), (0,))
    ups = list(amb.cofaces(e))
    assert len(ups) == 2
    for u in ups:
        assert e in u.faces()


def test_canonical_ordering():
    a = CubicalCell.make((0, 3), (0,))
    b = CubicalCell.make((1, 1), (0,))
    v = CubicalCell.make((9, 9))
    assert v < a < b
