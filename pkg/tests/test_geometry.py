from fractions import Fraction
from itertools import product

import pytest

from newtonhodge.errors import OutsideError
from newtonhodge.geometry import (Polytope, cayley_polytope, convex_hull, lattice_points,
                                  locate_cell, lower_hull_subdivision, minkowski_sum,
                                  mixed_volume, normalized_volume)

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]


def test_segment_face_lattice():
    P = convex_hull([(0,), (3,)])
    assert P.dim == 1
    assert set(P.lattice.elements) == {frozenset(), frozenset({0}), frozenset({1}), frozenset({0, 1})}


def test_square_face_lattice():
    P = convex_hull(SQUARE)
    dims = sorted(P.lattice.dim(f) for f in P.lattice.elements)
    assert dims == [-1, 0, 0, 0, 0, 1, 1, 1, 1, 2]
    assert P.lattice.is_eulerian(frozenset(), P.full)


def test_point_and_interior_points():
    P = convex_hull([(2, 2)])
    assert P.dim == 0 and len(P.lattice.elements) == 2
    Q = convex_hull(SQUARE + [(Fraction(1, 2), Fraction(1, 2))])
    assert len(Q.vertices) == 4


def test_facets_are_inequalities():
    P = convex_hull(TRIANGLE)
    for a, b, _ in P.facets:
        for x in TRIANGLE:
            assert sum(ai * xi for ai, xi in zip(a, x)) >= b
    assert P.contains((Fraction(1, 3), Fraction(1, 3)))
    assert not P.contains((1, 1))


def test_lower_hull_single_edge():
    S = lower_hull_subdivision({(0,): 0, (3,): 1})
    assert S.base.dim == 1
    assert [c for c in S.cells if len(c) == 2] == [frozenset({0, 1})]
    assert S.nu((Fraction(3, 2),)) == Fraction(1, 2)


def test_lower_hull_flat_heights():
    S = lower_hull_subdivision({(0,): 0, (1,): 0, (2,): 0})
    assert [c for c in S.cells if S.lattice.dim(c) == 1] == [frozenset({0, 2})]
    assert all(S.nu((x,)) == 0 for x in range(3))


def test_lower_hull_kink():
    S = lower_hull_subdivision({(0,): 0, (1,): -1, (2,): 0})
    assert {c for c in S.cells if S.lattice.dim(c) == 1} == {frozenset({0, 1}), frozenset({1, 2})}
    assert [S.nu((Fraction(x, 2),)) for x in range(5)] == [0, Fraction(-1, 2), -1, Fraction(-1, 2), 0]


def test_lattice_points():
    assert lattice_points(convex_hull([(0,), (3,)]), 2) == [(i,) for i in range(7)]
    assert lattice_points(Polytope.empty(1), 4) == []
    assert len(lattice_points(convex_hull(TRIANGLE), 1)) == 3
    assert lattice_points(convex_hull(TRIANGLE), 0) == [(0, 0)]


def test_lattice_points_match_bounding_box_filter():
    P = convex_hull([(0, 0), (3, 1), (1, 3)])
    box = [x for x in product(range(0, 7), repeat=2) if P.contains(tuple(Fraction(c, 2) for c in x))]
    assert sorted(lattice_points(P, 2)) == sorted(box)


def test_locate_cell():
    S = lower_hull_subdivision({(0,): 0, (1,): -1, (2,): 0})
    assert locate_cell(S, (Fraction(1, 2),)) == frozenset({0, 1})
    assert locate_cell(S, (1,)) == frozenset({1})
    with pytest.raises(OutsideError):
        locate_cell(S, (5,))


def test_normalized_volumes():
    assert normalized_volume(convex_hull([(0, 0), (3, 1)])) == 1
    assert normalized_volume(convex_hull([(0,), (3,)])) == 3
    assert normalized_volume(convex_hull(TRIANGLE)) == 1
    assert normalized_volume(convex_hull([(4, 4)])) == 1
    assert normalized_volume(convex_hull([(0, 0), (2, 0), (0, 2)])) == 4


def test_mixed_volumes():
    tri = convex_hull(TRIANGLE)
    assert mixed_volume([tri, tri]) == normalized_volume(tri)
    e1, e2 = convex_hull([(0, 0), (1, 0)]), convex_hull([(0, 0), (0, 1)])
    assert mixed_volume([e1, e2]) == 1
    sq = convex_hull(SQUARE)
    assert mixed_volume([sq, sq]) == 2


def test_minkowski_and_cayley():
    seg = convex_hull([(0,), (1,)])
    assert minkowski_sum([seg, convex_hull([(0,), (2,)])]).vertex_points() == [(0,), (3,)]
    single = cayley_polytope([seg], {1})
    assert single.dim == 1 and sorted(single.vertex_points()) == [(1, 0), (1, 1)]
    both = cayley_polytope([seg, seg], {1, 2})
    assert both.dim == 2
    assert sorted(both.vertex_points()) == [(0, 1, 0), (0, 1, 1), (1, 0, 0), (1, 0, 1)]
