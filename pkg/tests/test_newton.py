from fractions import Fraction

import pytest

from newtonhodge.errors import DegenerateError, EmptyCellError
from newtonhodge.newton import (CayleyData, build_cayley_data, build_newton_data, cell_m_index,
                                predicates)
from newtonhodge.polyinput import CISystem, parse_poly

from conftest import lam


def test_cubic_newton_data(cubic_data):
    nd = cubic_data
    assert nd.P.vertex_points() == [(0,), (3,)]
    assert sorted(map(sorted, nd.cells())) == [[], [0], [0, 1], [1]]
    assert nd.S.nu((3,)) == 1 and nd.S.nu((1,)) == Fraction(1, 3)
    assert cell_m_index(nd, frozenset({0, 1})) == 3
    assert cell_m_index(nd, frozenset({0})) == cell_m_index(nd, frozenset({1})) == 1
    assert nd.bad_set() == {1}
    assert not nd.is_bad(lam("1/3"))
    assert [str(x) for x in nd.spectrum()] == ["0/1", "1/3", "2/3"]


def test_square_root_newton_data(square_root_data):
    nd = square_root_data
    assert nd.S.nu((0,)) == 1 and nd.S.nu((2,)) == 0
    assert nd.m[frozenset({0, 1})] == 2
    assert [sorted(nd.S.points[i] for i in f) for f in nd.region_facets] == [[(2,)]]
    assert nd.bad_set() == {1}
    assert not nd.is_bad(lam("1/2"))
    assert [str(x) for x in nd.spectrum()] == ["0/1", "1/2"]


def test_cell_lookup_by_points(cubic_data):
    assert cell_m_index(cubic_data, [(0,), (3,)]) == 3
    with pytest.raises(EmptyCellError):
        cell_m_index(cubic_data, frozenset())


def test_flat_weight_has_trivial_spectrum():
    nd = build_newton_data(parse_poly("1 + x1 + x2 + x1*x2", "torus", 2))
    assert set(nd.m.values()) == {1}
    assert [str(x) for x in nd.spectrum()] == ["0/1"]


def test_single_term_is_degenerate():
    with pytest.raises(DegenerateError) as err:
        build_newton_data(parse_poly("x1", "torus", 1))
    assert err.value.code == "E_DEGENERATE"


def test_lower_dimensional_polytope_is_degenerate():
    with pytest.raises(DegenerateError):
        build_newton_data(parse_poly("x1*x2 - t", "affine", 2))


def test_affine_predicates(square_root_data):
    pred = predicates(square_root_data)
    assert pred["is_convenient"] is True
    assert pred["satisfies_condition_S"] is True
    assert pred["p_infinity_cells"] == {frozenset({1})}


def test_non_convenient_polynomial():
    nd = build_newton_data(parse_poly("x1^2 + x1*x2^2 - t*x1", "affine", 2))
    assert predicates(nd)["is_convenient"] is False


def test_bad_set_comes_from_boundary_cells():
    # the boundary edge from 0 to 2 x1 carries nu = x1/2 on the torus
    nd = build_newton_data(parse_poly("1 + t*x1^2 + x2", "torus", 2))
    assert 2 in nd.bad_set()
    assert nd.is_bad(lam("1/2")) and nd.is_bad(lam("0/1"))


def test_single_equation_system_matches_hypersurface(cubic):
    cd = build_cayley_data(CISystem((cubic,)))
    nd = build_newton_data(cubic)
    assert cd.R_f == cd.R_tilde == nd.R_orders
    assert cd.cayley.P.vertex_points() == [(1, 0), (1, 3)]
    assert cd.spectrum() == nd.spectrum()


def test_two_equation_cayley_polytope():
    f = parse_poly("x1 + x2 + t", "torus", 2)
    cd = CayleyData(CISystem((f, f)))
    assert cd.cayley.P.dim == 3
    assert len(cd.cayley.P.vertices) == 6
    assert cd.R_f == cd.R_tilde
    assert cd.face_P_J({1}) != cd.face_P_J({1, 2})


def test_too_many_equations():
    f = parse_poly("x1 + t", "torus", 1)
    with pytest.raises(ValueError):
        CISystem((f, f))
