from fractions import Fraction

import pytest

from newtonhodge.errors import (BadVariableError, EmptySupportError, NegativeExponentError,
                                ParseError)
from newtonhodge.newton import build_newton_data
from newtonhodge.polyinput import CISystem, initial_poly, parse_poly, poly_from_json, valuations


def test_parse_torus_cubic(cubic):
    assert cubic.terms == {(0,): {0: 1}, (3,): {1: -1}}


def test_parse_affine_square_root(square_root):
    assert square_root.terms == {(2,): {0: 1}, (0,): {1: -1}}


def test_negative_exponent_rejected_in_affine_space():
    with pytest.raises(NegativeExponentError) as err:
        parse_poly("x1^-1", "affine", 1)
    assert err.value.code == "E_NEGATIVE_EXPONENT"


def test_laurent_monomials_allowed_on_the_torus():
    p = parse_poly("x1^-1 + x1", "torus", 1)
    assert sorted(p.terms) == [(-1,), (1,)]


def test_valuations():
    assert valuations(parse_poly("1 - t*x1^3")) == {(0,): 0, (3,): 1}
    assert valuations(parse_poly("(t^2+t^3)*x1")) == {(1,): 2}


def test_cancellation_leaves_empty_support():
    with pytest.raises(EmptySupportError) as err:
        valuations(parse_poly("x1 - x1"))
    assert err.value.code == "E_EMPTY"


def test_rational_coefficients_and_products():
    p = parse_poly("3/2*t^-1*x1*x2^2 - (t - t^2)*x2", "torus", 2)
    assert p.terms[(1, 2)] == {-1: Fraction(3, 2)}
    assert p.terms[(0, 1)] == {1: -1, 2: 1}


@pytest.mark.parametrize("text, position", [("1 + * x1", 4), ("x1^", 3), ("(1 + t", 6)])
def test_syntax_errors_carry_a_position(text, position):
    with pytest.raises(ParseError) as err:
        parse_poly(text, "torus", 1)
    assert err.value.code == "E_SYNTAX"
    assert err.value.position == position


def test_unknown_variable():
    with pytest.raises(BadVariableError):
        parse_poly("x3 + 1", "torus", 2)


def test_json_round_trip():
    p = parse_poly("2*x1^2*x2 - t^3*x2 + 1/3*t", "affine", 2)
    assert poly_from_json(p.to_json()) == p


def test_malformed_json():
    with pytest.raises(ParseError):
        poly_from_json('{"n": 1, "terms": [{"exp": [1]}]}')


def test_initial_forms(cubic, cubic_data, square_root, square_root_data):
    edge = frozenset({0, 1})
    assert initial_poly(cubic, cubic_data, edge) == {(0,): 1, (3,): -1}
    assert initial_poly(cubic, cubic_data, frozenset({0})) == {(0,): 1}
    assert initial_poly(square_root, square_root_data, edge) == {(2,): 1, (0,): -1}


def test_system_size_bounded_by_n():
    f = parse_poly("x1 + x2 + t", "torus", 2)
    assert CISystem((f, f)).k == 2
    with pytest.raises(ValueError):
        CISystem((f, f, f))
