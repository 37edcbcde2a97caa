from fractions import Fraction

from hypothesis import assume, given, settings, strategies as st

from newtonhodge.exact import (IntPoly, RootOfUnity, affine_rank, det_int, hnf_basis,
                               reverse, solve_in_span)
from newtonhodge.geometry import convex_hull, lattice_points, normalized_volume
from newtonhodge.newton import NewtonData
from newtonhodge.oracle import ehrhart_series_bruteforce, weighted_counts_bruteforce
from newtonhodge.polyinput import TPolynomial, parse_poly

SETTINGS = settings(max_examples=60, deadline=None)

coeffs = st.lists(st.integers(-5, 5), min_size=1, max_size=5)


def poly(cs):
    return IntPoly.from_coeffs(cs)


def points(dim, lo=-2, hi=3, min_size=1, max_size=8):
    return st.lists(st.tuples(*[st.integers(lo, hi)] * dim), min_size=min_size,
                    max_size=max_size, unique=True)


@SETTINGS
@given(coeffs, coeffs, coeffs)
def test_polynomial_ring_laws(a, b, c):
    a, b, c = poly(a), poly(b), poly(c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - b) + b == a


@SETTINGS
@given(coeffs)
def test_reversal_is_an_involution(cs):
    p = poly(cs)
    d = len(cs) + 1
    assert reverse(reverse(p, d), d) == p


@SETTINGS
@given(points(2, -4, 4, 1, 4))
def test_hnf_spans_the_same_lattice(gens):
    basis = hnf_basis(gens)
    assert len(basis) == affine_rank([(0, 0)] + gens)
    for g in gens:
        coords = solve_in_span(g, basis)
        assert coords is not None and all(Fraction(x).denominator == 1 for x in coords)


unimodular = st.sampled_from([((1, 0), (0, 1)), ((1, 1), (0, 1)), ((0, 1), (-1, 0)),
                              ((2, 1), (1, 1)), ((1, -3), (0, 1))])


@SETTINGS
@given(points(2, min_size=3), unimodular, st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_volume_is_unimodular_invariant(pts, mat, shift):
    assume(affine_rank(pts) == 2)
    assert abs(det_int(mat)) == 1
    moved = [tuple(sum(mat[i][j] * p[j] for j in range(2)) + shift[i] for i in range(2)) for p in pts]
    assert normalized_volume(convex_hull(pts)) == normalized_volume(convex_hull(moved))


@SETTINGS
@given(points(3, 0, 2, 4, 10))
def test_face_lattices_are_eulerian(pts):
    assume(affine_rank(pts) == 3)
    P = convex_hull(pts)
    assert P.lattice.is_eulerian(frozenset(), P.full)
    euler = sum((-1) ** P.lattice.dim(f) for f in P.lattice.elements if f and f != P.full)
    assert euler == 2


@SETTINGS
@given(points(2, 0, 3, 3, 8), st.integers(0, 3))
def test_lattice_points_match_bruteforce(pts, m):
    assume(affine_rank(pts) == 2)
    P = convex_hull(pts)
    assert len(lattice_points(P, m)) == ehrhart_series_bruteforce(pts, m)[m]


@SETTINGS
@given(st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(0, 4),
                       min_size=3, max_size=8))
def test_subdivision_invariants(lifted):
    assume(affine_rank(list(lifted)) == 2)
    nd = NewtonData(lifted, "torus", 2)
    S = nd.S
    for p, h in lifted.items():
        assert S.nu(p) <= h
    for cell, m in nd.m.items():
        for i in cell:
            assert S.nu(S.points[i]) == S.heights[i]
        for face in S.lattice.elements:
            if face and face < cell:
                assert m % nd.m[face] == 0
    phases = {RootOfUnity(q) for q in weighted_counts_bruteforce(lifted, 2)}
    assert phases <= set(nd.supported_spectrum())


@SETTINGS
@given(st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(0, 2)),
                       st.dictionaries(st.integers(-2, 3), st.integers(-4, 4).filter(bool),
                                       min_size=1, max_size=2),
                       min_size=1, max_size=5))
def test_text_round_trip(terms):
    p = TPolynomial(terms, 2, "torus")
    assume(p.terms)
    assert parse_poly(str(p), "torus", 2) == p
