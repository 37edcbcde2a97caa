"""Newton data of a polynomial family: the Newton polytope, the regular
subdivision cut out by the t-valuations, the lattice indices m_F, the bad
eigenvalue set and the spectrum. Complete intersections are handled through
their Minkowski sum and their Cayley polytope.
"""
from fractions import Fraction
from itertools import combinations
from math import lcm

from .errors import CayleyMismatchError, DegenerateError, EmptyCellError
from .exact import affine_lattice_basis, affine_rank, roots_of_order_dividing
from .geometry import lower_hull_subdivision
from .polyinput import CISystem, valuations

ASSUMPTION_DIM = ("the upper-half polyhedron of f must have dimension n+1, "
                  "i.e. the Newton polytope must be n-dimensional")


def _divisor_closure(ms):
    return frozenset(d for m in ms for d in range(1, m + 1) if m % d == 0)


class NewtonData:
    """Subdivided Newton polytope with the per-cell lattice data.

    points/heights
        lattice points carrying the lift (the support with its valuations,
        Minkowski sums of lifted supports, or Cayley points)
    subdivision
        the regular subdivision (``S``); cells are frozensets of point indices
    m
        cell -> m_F for every non-empty cell
    region
        non-empty cells lying in the boundary part that defines R_f:
        the boundary of P (torus) or its part at infinity (affine)
    """

    def __init__(self, lifted, ambient, n, k=1, expected_dim=None, region_facet=None,
                 label="hypersurface"):
        self.ambient = ambient
        self.n = n
        self.k = k
        self.label = label
        if len(lifted) < 2:
            raise DegenerateError(f"{ASSUMPTION_DIM}; the support has a single point")
        S = lower_hull_subdivision(lifted)
        expected = n if expected_dim is None else expected_dim
        if S.dim != expected:
            raise DegenerateError(f"{ASSUMPTION_DIM}; got dim P = {S.dim}, expected {expected}")
        self.subdivision = S
        self.P = S.base
        self.m = {}
        for cell in S.lattice.elements:
            if cell:
                self.m[cell] = self._m_index(cell)
        if region_facet is None:
            region_facet = _torus_region if ambient == "torus" else _affine_region(n)
        self.region_facets = [vs for a, b, vs in self.P.facets
                              if region_facet([S.points[i] for i in sorted(vs)])]
        self.region = frozenset(c for c in self.m if self._in_region(S.sigma(c)))
        self.R_orders = frozenset({1} | {self.m[c] for c in self.region})
        self.bad_orders = _divisor_closure(self.R_orders)
        self.period = lcm(*self.m.values())

    @property
    def S(self):
        return self.subdivision

    def _in_region(self, face):
        return any(face <= r for r in self.region_facets)

    def _m_index(self, cell):
        c = self.subdivision.cells[cell]
        pts = self.subdivision.cell_points(cell)
        for i in cell:
            if c.nu(self.subdivision.points[i]) != self.subdivision.heights[i]:
                raise AssertionError("nu disagrees with the lift at a cell vertex")
        base, basis = affine_lattice_basis(pts)
        if Fraction(c.nu(base)).denominator != 1:
            raise AssertionError("nu is not integral at a cell vertex")
        return lcm(1, *(Fraction(sum(g * b for g, b in zip(c.gradient, B))).denominator
                        for B in basis))

    # -- queries -------------------------------------------------------------
    def cell_m_index(self, cell):
        cell = self.subdivision.resolve_cell(cell)
        if not cell:
            raise EmptyCellError("m_F is undefined for the empty cell")
        return self.m[cell]

    def is_bad(self, lam):
        return lam.order in self.bad_orders

    def bad_set(self):
        return self.R_orders

    def spectrum(self):
        return roots_of_order_dividing(self.period)

    def supported_spectrum(self):
        """Eigenvalues whose order divides some m_F; every other lambda in the
        spectrum has vanishing weighted counts on all cells."""
        roots = set()
        for m in set(self.m.values()):
            roots.update(roots_of_order_dividing(m))
        return sorted(roots)

    def twist(self, cell):
        """nu_F on a basis of the cell's lattice, reduced mod 1."""
        c = self.subdivision.cells[cell]
        _, basis = affine_lattice_basis(self.subdivision.cell_points(cell))
        return tuple(Fraction(sum(g * b for g, b in zip(c.gradient, B))) % 1 for B in basis)

    def lifted_cell(self, cell):
        return self.subdivision.lifted_cell_points(cell)

    def cells(self, include_empty=True):
        return [c for c in self.subdivision.lattice.elements if c or include_empty]


def _torus_region(vertices):
    return True


def _affine_region(n, offset=0):
    """A facet lies in the part at infinity unless it sits in a coordinate hyperplane."""
    def test(vertices):
        return all(any(v[offset + i] != 0 for v in vertices) for i in range(n))
    return test


def build_newton_data(p):
    vals = valuations(p)
    return NewtonData(vals, p.ambient, p.n)


def bad_set(nd):
    return nd.bad_set()


def is_bad(nd, lam):
    return nd.is_bad(lam)


def spectrum(nd):
    return nd.spectrum()


def cell_m_index(nd, cell):
    return nd.cell_m_index(cell)


def predicates(nd):
    S = nd.subdivision
    P = nd.P
    out = {
        "p_infinity_cells": frozenset(nd.region) if nd.ambient == "affine" else None,
        "boundary_cells": frozenset(nd.region) if nd.ambient == "torus" else None,
    }
    if nd.ambient == "affine":
        n = nd.n
        convenient = True
        for r in range(n + 1):
            for I in combinations(range(n), r):
                inside = [p for p in S.points if all(p[i] == 0 for i in range(n) if i not in I)]
                if affine_rank(inside) != r:
                    convenient = False
        out["is_convenient"] = convenient
        vals = {S.heights[i] for c in nd.region for i in c}
        out["satisfies_condition_S"] = len(vals) <= 1
        out["relevant_faces"] = frozenset(q for q in P.lattice.elements
                                          if q and not nd._in_region(q))
    else:
        out["is_convenient"] = None
        out["satisfies_condition_S"] = None
        out["relevant_faces"] = frozenset(c for c in nd.m if S.sigma(c) == P.full)
    return out


# ---------------------------------------------------------------------------
# complete intersections
# ---------------------------------------------------------------------------


def _lower_vertices(vals):
    """Lifted points that are vertices of the lower hull."""
    if len(vals) == 1:
        return dict(vals)
    S = lower_hull_subdivision(vals)
    keep = {i for c in S.cells for i in c}
    return {S.points[i]: int(S.heights[i]) for i in keep}


class CayleyData:
    """Minkowski and Cayley data of a complete intersection f_1 = ... = f_k = 0."""

    def __init__(self, system):
        self.system = system
        self.k, self.n, self.ambient = system.k, system.n, system.ambient
        self.parts = [valuations(p) for p in system.polys]
        k, n = self.k, self.n
        # Minkowski side: lower hull of sums of lifted supports
        sums = {(0,) * n: 0}
        for vals in self.parts:
            low = _lower_vertices(vals)
            nxt = {}
            for v, h in sums.items():
                for w, o in low.items():
                    s = tuple(a + b for a, b in zip(v, w))
                    if s not in nxt or h + o < nxt[s]:
                        nxt[s] = h + o
            sums = _lower_vertices(nxt)
        self.minkowski = NewtonData(sums, self.ambient, n, k=1, label="minkowski")
        # Cayley side
        lifted = {}
        for j, vals in enumerate(self.parts):
            e = tuple(int(i == j) for i in range(k))
            for v, o in vals.items():
                lifted[e + v] = o
        if self.ambient == "torus":
            region = _cayley_side(k)
        else:
            side = _cayley_side(k)
            infinity = _affine_region(n, offset=k)
            region = lambda vs: side(vs) and infinity(vs)
        self.cayley = NewtonData(lifted, self.ambient, n, k=k, expected_dim=n + k - 1,
                                 region_facet=region, label="cayley")
        self.R_f = self.minkowski.R_orders
        self.R_tilde = self.cayley.R_orders
        if self.minkowski.bad_orders != self.cayley.bad_orders:
            raise CayleyMismatchError(
                f"bad sets differ: Minkowski orders {sorted(self.R_f)} vs Cayley orders {sorted(self.R_tilde)}")

    def is_bad(self, lam):
        return self.cayley.is_bad(lam)

    def spectrum(self):
        return self.cayley.spectrum()

    def supported_spectrum(self):
        return self.cayley.supported_spectrum()

    def face_P_J(self, J):
        """Vertex set of the face conv(union_{j in J} {e_j} x P_j) of the Cayley polytope."""
        S = self.cayley.subdivision
        J = set(J)
        keep = frozenset(i for i in self.cayley.P.vertices
                         if any(S.points[i][j - 1] == 1 for j in J))
        if keep not in self.cayley.P.lattice:
            raise AssertionError("P_J is not a face")
        return keep


def _cayley_side(k):
    def test(vertices):
        return all(any(v[j] == 1 for v in vertices) for j in range(k))
    return test


def build_cayley_data(system):
    if not isinstance(system, CISystem):
        system = CISystem(tuple(system))
    return CayleyData(system)
