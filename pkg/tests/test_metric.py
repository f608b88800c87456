import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gridtopo import CubicalCell, all_pairs, ball, build_ambient, cell_distance, diameter
from gridtopo.corpus import random_connected_subcomplex
from gridtopo.errors import Unreachable
from gridtopo.metric import ambient_distance, vertex_distances

from util import bfs_levels, edge_graph_of_complex, grid_graph, oracle_chain_distance


def test_sq1_opposite_corners(sq1):
    assert cell_distance(sq1, (0, 0), (1, 1), k=1) == 2


def test_square_chain_distance_oracle():
    """Frozen from the chain-enumeration oracle: two squares suffice for
    vertices (0,0) and (2,1), the second square owning (2,1) as a corner."""
    amb = build_ambient(2, [(0, 4), (0, 4)])
    expected = oracle_chain_distance(None, (0, 0), (2, 1), 2, extent=amb.extent)
    assert expected == 2
    assert cell_distance(amb, (0, 0), (2, 1), k=2) == expected


def test_chain_distance_matches_oracle_samples():
    amb = build_ambient(2, [(0, 4), (0, 4)])
    pairs = [((0, 0), (4, 4)), ((0, 0), (3, 1)), ((1, 1), (1, 1)), ((0, 2), (4, 2))]
    for p, q in pairs:
        assert cell_distance(amb, p, q, k=2) == oracle_chain_distance(
            None, p, q, 2, extent=amb.extent
        )


def test_ushape_tip_distances(ushape):
    ap = all_pairs(ushape)
    assert ap.d_m((1, 3), (2, 3)) == 5
    assert ap.d_u((1, 3), (2, 3)) == 1
    # the (8, 2) pattern appears in the table, at the inner-bottom corner pair
    assert ap.d_m((1, 0), (2, 1)) == 8
    assert ap.d_u((1, 0), (2, 1)) == 2


def test_all_pairs_against_bfs_oracle(ushape):
    adjacency = edge_graph_of_complex(ushape)
    ap = all_pairs(ushape)
    for u in sorted(ushape.vertices):
        levels = bfs_levels(adjacency, u)
        for v in sorted(ushape.vertices):
            assert ap.d_m(u, v) == levels[v]


def test_diameters(sq1, rect12, box111):
    assert diameter(sq1)[0] == 2
    d, witness = diameter(rect12)
    assert d == 3 and witness == ((0, 0), (2, 1))
    assert diameter(box111)[0] == 3


def test_ball_examples(sq1, ushape):
    corner = CubicalCell.make((0, 0))
    assert len(ball(sq1, corner, 1)) == 2
    tip = CubicalCell.make((1, 3))
    b = ball(ushape, tip, 2)
    # frozen by the BFS oracle: two inner-arm edges plus two outer edges
    assert b == {
        CubicalCell.make((0, 2), (1,)),
        CubicalCell.make((0, 3), (0,)),
        CubicalCell.make((1, 2), (1,)),
        CubicalCell.make((1, 1), (1,)),
    }
    d, _ = diameter(ushape)
    assert ball(ushape, tip, d) == ushape.cells


def test_ball_monotone(ushape):
    tip = CubicalCell.make((1, 3))
    prev = frozenset()
    for g in range(1, 9):
        cur = ball(ushape, tip, g)
        assert prev <= cur
        prev = cur


def test_unreachable():
    amb = build_ambient(2, [(0, 6), (0, 6)])
    cells = [CubicalCell.make((0, 0), (0,)), CubicalCell.make((4, 4), (0,))]
    from gridtopo import ManifoldComplex

    M = ManifoldComplex.make(amb, 1, cells)
    with pytest.raises(Unreachable):
        cell_distance(M, (0, 0), (4, 4), k=1)


def test_manhattan_closed_form():
    amb = build_ambient(2, [(0, 9), (0, 9)])
    adjacency = grid_graph(amb.extent)
    rng = random.Random(7)
    for _ in range(20):
        u = (rng.randint(0, 9), rng.randint(0, 9))
        v = (rng.randint(0, 9), rng.randint(0, 9))
        levels = bfs_levels(adjacency, u)
        assert cell_distance(amb, u, v, k=1) == levels[v] == ambient_distance(amb, u, v)


def test_du_never_exceeds_dm(ushape, rect12, box211):
    for M in (ushape, rect12, box211):
        ap = all_pairs(M)
        for u, v, dm, du in ap.pairs():
            assert du <= dm


def test_chain_distance_axioms_sampled():
    """Symmetry holds exactly; the triangle bound needs a join allowance.

    Chains meeting at a vertex need not share a square, so concatenation
    can cost up to two extra cells to walk around the join vertex.  The
    unmodified inequality genuinely fails: (0,0)->(4,4) needs 7 squares
    while routing through (2,1) gives 2+4.
    """
    amb = build_ambient(2, [(0, 4), (0, 4)])
    pts = [(0, 0), (2, 1), (4, 4), (1, 3)]
    d = {(p, q): cell_distance(amb, p, q, k=2) for p in pts for q in pts}
    for p in pts:
        assert d[(p, p)] == 1  # a single square already contains the pair
        for q in pts:
            assert d[(p, q)] == d[(q, p)]
            for r in pts:
                assert d[(p, r)] <= d[(p, q)] + d[(q, r)] + 2
    assert d[((0, 0), (4, 4))] == 7
    assert d[((0, 0), (2, 1))] + d[((2, 1), (4, 4))] == 6


@settings(max_examples=15, deadline=None)
@given(seed=st.integers(0, 10_000))
def test_metric_axioms_random_complexes(seed):
    rng = random.Random(seed)
    amb = build_ambient(2, [(0, 9), (0, 9)])
    M = random_connected_subcomplex(amb, 1, 12, rng)
    verts = sorted(M.vertices)
    tables = {v: vertex_distances(M, [v]).dist for v in verts}
    for u in verts:
        assert tables[u][u] == 0
        for v in verts:
            assert tables[u][v] == tables[v][u]
    sample = verts[:6]
    for a in sample:
        for b in sample:
            for c in sample:
                assert tables[a][c] <= tables[a][b] + tables[b][c]
