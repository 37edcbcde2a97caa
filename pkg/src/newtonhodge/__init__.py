"""Exact combinatorics of limit mixed Hodge structures for families
f(t, x) = 0 degenerating at t = 0, computed from Newton polytopes and the
regular subdivisions cut out by the t-valuations of the coefficients."""

__version__ = "0.1.0"

from .exact import IntPoly, RootOfUnity
from .polyinput import CISystem, TPolynomial, parse_poly, poly_from_json
from .newton import CayleyData, NewtonData, build_cayley_data, build_newton_data
from .monodromy import (concentrated_E, jordan_via_E, jordan_via_formula,
                        monodromy_report, multiplicity_product, refined_E_affine,
                        refined_E_ci, refined_E_torus)
