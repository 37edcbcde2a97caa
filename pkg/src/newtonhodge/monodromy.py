"""Equivariant limit mixed Hodge polynomials E_lambda(u, v, w), Jordan block
tables and multiplicity factorizations of the monodromy of the
family Y_t as t circles the origin.

Three settings are covered: hypersurfaces in the torus, hypersurfaces in
affine space, and complete intersections (through the Cayley polytope).
"""
from dataclasses import dataclass, field
from itertools import combinations, product

from .errors import (BadLambdaError, InconsistentError, NonPolynomialError,
                     NotApplicableError)
from .exact import IntPoly, affine_lattice_basis, epsilon, lattice_coordinates
from .geometry import convex_hull, mixed_volume, normalized_volume
from .kspoly import (WeightedPolytope, active_cells, cell_lstar, hstar_uvw, local_h, lstar_uv,
                     ltilde)
from .newton import CayleyData, NewtonData

X = IntPoly.monomial({"u": 1, "v": 1, "w": 2})


@dataclass
class HodgeResult:
    lam: object
    E_uvw: IntPoly
    center: int
    concentrated: bool
    route: str
    bad: bool = False

    @property
    def E_uv(self):
        return self.E_uvw.subs({"w": 1})

    @property
    def E_diag(self):
        """(-1)^center E(s, s, 1)."""
        e = self.E_uvw.subs({"u": {"s": 1}, "v": {"s": 1}, "w": 1})
        return e if self.center % 2 == 0 else -e

    def w_degrees(self):
        if not self.E_uvw:
            return set()
        if "w" not in self.E_uvw.vars:
            return {0}
        i = self.E_uvw.vars.index("w")
        return {e[i] for e in self.E_uvw.terms}

    def dimension(self):
        """Dimension of the lambda-eigenspace when E is concentrated."""
        return abs(self.E_diag.evaluate({"s": 1})) if self.E_diag else 0


@dataclass
class JordanTable:
    lam: object
    blocks: dict            # size m -> number of blocks J_{lambda,m}, m = 1..center+1
    route: str
    special: int = None     # J_{lambda,n} from edge cells (hypersurfaces only)

    def total_dimension(self):
        return sum(m * j for m, j in self.blocks.items())

    def nonzero(self):
        return {m: j for m, j in self.blocks.items() if j}


@dataclass
class MultiplicityFactorization:
    """prod (t^m - 1)^exponent, stored as sorted (m, exponent) pairs.

    Factors with m = 1 only involve the eigenvalue 1, which always lies in
    the bad set, so they are not recorded.
    """
    factors: list = field(default_factory=list)

    def multiplicity_of(self, lam):
        return sum(e for m, e in self.factors if lam.divides(m))

    def __str__(self):
        if not self.factors:
            return "1"
        return " ".join(f"(t^{m}-1)^{e}" for m, e in self.factors)


def _data(obj):
    return obj.cayley if isinstance(obj, CayleyData) else obj


def _divide(p, k=1):
    """p / (u v w^2)^k with exactness asserted."""
    q = p * IntPoly.monomial({"u": -k, "v": -k, "w": -2 * k})
    if not q.is_polynomial():
        raise NonPolynomialError(f"{p} is not divisible by (uvw^2)^{k}")
    return q


def _sign(k):
    return 1 if k % 2 == 0 else -1


def _make(lam, E, center, route, bad, concentrated=None):
    res = HodgeResult(lam, E, center, False, route, bad)
    res.concentrated = res.w_degrees() <= {center} if concentrated is None else concentrated
    return res


# ---------------------------------------------------------------------------
# E polynomials
# ---------------------------------------------------------------------------


def refined_E_torus(nd, lam):
    """E_lambda(u, v, w) of a torus hypersurface family, valid for every lambda."""
    nd = _data(nd)
    if nd.ambient != "torus":
        raise NotApplicableError("the refined formula applies to torus hypersurfaces")
    n = nd.n
    h = hstar_uvw(WeightedPolytope(nd.subdivision), lam)
    num = epsilon(lam) * (X - 1) ** n + _sign(n - 1) * h
    return _make(lam, _divide(num), n - 1, "refined", nd.is_bad(lam))


def refined_E_ci(cd, lam):
    """E_lambda(u, v, w) of a torus complete intersection, valid for every lambda."""
    if cd.ambient != "torus":
        raise NotApplicableError("the refined formula applies in the torus")
    nd = cd.cayley
    S = nd.subdivision
    n, k = cd.n, cd.k
    num = epsilon(lam) * (X - 1) ** n
    for r in range(1, k + 1):
        for J in _subsets(range(1, k + 1), r):
            face = cd.face_P_J(J)
            dJ = nd.P.lattice.dim(face)
            h = hstar_uvw(WeightedPolytope(S, face), lam)
            if h:
                num = num + _sign(dJ - 1) * (X - 1) ** (n + r - 1 - dJ) * h
    return _make(lam, _divide(num, k), n - k, "refined", cd.is_bad(lam))


def refined_E_affine(nd, lam):
    """E_lambda(u, v, w) of an affine hypersurface for lambda outside R_f, as a
    sum of torus contributions over the relevant coordinate faces."""
    nd = _data(nd)
    if nd.ambient != "affine" or nd.k != 1:
        raise NotApplicableError("coordinate-face decomposition applies to affine hypersurfaces")
    if nd.is_bad(lam):
        raise BadLambdaError(f"lambda = {lam} lies in R_f")
    S = nd.subdivision
    L = nd.P.lattice
    num = IntPoly.const(0, ("u", "v", "w"))
    for r in range(0, nd.n + 1):
        for I in _subsets(range(nd.n), r):
            face = frozenset(i for i in nd.P.vertices
                             if all(S.points[i][j] == 0 for j in range(nd.n) if j not in I))
            if not face or face not in L or L.dim(face) != r or nd._in_region(face):
                continue
            num = num + _sign(r - 1) * hstar_uvw(WeightedPolytope(S, face), lam)
    return _make(lam, _divide(num), nd.n - 1, "refined-affine", False)


def concentrated_E(data, lam):
    """E_lambda for lambda outside R_f from the single polynomial l*_lambda(P; u, v)."""
    nd = _data(data)
    if nd.is_bad(lam):
        raise BadLambdaError(f"lambda = {lam} lies in R_f")
    n, k = nd.n, nd.k
    center = n - k
    l = lstar_uv(WeightedPolytope(nd.subdivision), lam)
    E = l * IntPoly.monomial({"u": -k, "v": -k, "w": center})
    if not E.is_polynomial():
        raise NonPolynomialError(f"l* = {l} is not divisible by (uv)^{k}")
    if center % 2:
        E = -E
    return HodgeResult(lam, E, center, True, "concentrated")


def _subsets(items, r):
    return combinations(list(items), r)


# ---------------------------------------------------------------------------
# Jordan blocks
# ---------------------------------------------------------------------------


def jordan_via_E(h):
    """Peel the staircase E~(s) = sum_i q_i (s^i + s^(i+2) + ... + s^(2c-i))."""
    if h.bad:
        raise NotApplicableError(f"lambda = {h.lam} lies in R_f; Jordan data is not determined by E")
    if not h.concentrated:
        raise NotApplicableError("E is not concentrated in the middle weight")
    c = h.center
    diag = h.E_diag
    coeffs = diag.coeffs("s") if diag else []
    if len(coeffs) > 2 * c + 1:
        raise NotApplicableError(f"E~ = {diag} exceeds degree {2 * c}")
    coeffs = coeffs + [0] * (2 * c + 1 - len(coeffs))
    if coeffs != coeffs[::-1] or any(x < 0 for x in coeffs):
        raise NotApplicableError(f"E~ = {diag} is not symmetric and non-negative")
    q = [coeffs[i] - (coeffs[i - 2] if i >= 2 else 0) for i in range(c + 1)]
    if any(x < 0 for x in q):
        raise NotApplicableError(f"E~ = {diag} is not a sum of centered strings")
    blocks = {m: q[c + 1 - m] for m in range(1, c + 2)}
    return JordanTable(h.lam, blocks, "via_E")


def jordan_via_formula(data, lam):
    """Jordan blocks directly from l*_lambda(F; 1) and the staircase of local h."""
    nd = _data(data)
    if nd.is_bad(lam):
        raise BadLambdaError(f"lambda = {lam} lies in R_f")
    S = nd.subdivision
    n, k = nd.n, nd.k
    D = nd.P.dim
    rhs = {}
    special = 0
    for F in active_cells(S, lam):
        weight = cell_lstar(S, F, lam).evaluate({"u": 1})
        if not weight:
            continue
        dF = S.lattice.dim(F)
        lt = ltilde(local_h(S, F), D - dF)
        coeffs = lt.coeffs("t") if lt else []
        for i, c in enumerate(coeffs):
            if c:
                p = dF + 1 + 2 * i
                rhs[p] = rhs.get(p, 0) + weight * c
        if dF == 1 and coeffs:
            special += weight * coeffs[0]
    blocks = {m: 0 for m in range(1, n - k + 2)}
    for p, c in rhs.items():
        m = p - 2 * k
        if c and not 0 <= m <= n - k:
            raise InconsistentError(f"power s^{p} outside the admissible range")
        if c:
            blocks[n - k + 1 - m] += c
    table = JordanTable(lam, blocks, "via_formula", special if k == 1 else None)
    if k == 1 and table.special != blocks.get(n, 0):
        raise InconsistentError("edge-cell count of maximal blocks disagrees with the formula")
    return table


# ---------------------------------------------------------------------------
# multiplicities
# ---------------------------------------------------------------------------


def _merge(pairs):
    acc = {}
    for m, e in pairs:
        if m > 1:
            acc[m] = acc.get(m, 0) + e
    return MultiplicityFactorization(sorted((m, e) for m, e in acc.items() if e))


def _lifted_volume(nd, F):
    return normalized_volume(convex_hull(nd.lifted_cell(F)))


def _selected_cells(nd):
    """Cells entering the product, with their sign."""
    S = nd.subdivision
    n = nd.n
    out = []
    for F, m in nd.m.items():
        dF = S.lattice.dim(F)
        if nd.ambient == "torus":
            if dF == n:
                out.append((F, 1))
        elif F not in nd.region and dF == nd.P.lattice.dim(S.sigma(F)):
            out.append((F, _sign(n - dF)))
    return out


def _supporting_faces(cd, F):
    """Faces of the lifted supports minimizing an interior normal of F's lifted face."""
    nd = cd.minkowski
    S = nd.subdivision
    n = cd.n
    xi = [0] * n
    height = 0
    for G in S.full_cells:
        if F <= G:
            for i, g in enumerate(S.cells[G].gradient):
                xi[i] -= g
            height += 1
    for a, b, vs in nd.P.facets:
        if F <= S.base_face_points(vs):
            for i in range(n):
                xi[i] += a[i]
    faces = []
    for vals in cd.parts:
        score = {v: sum(x * y for x, y in zip(xi, v)) + height * o for v, o in vals.items()}
        best = min(score.values())
        faces.append([v + (vals[v],) for v, s in score.items() if s == best])
    return faces


def _K(cd, F):
    nd = cd.minkowski
    dF = nd.subdivision.lattice.dim(F)
    lifted = nd.lifted_cell(F)
    _, basis = affine_lattice_basis(lifted)
    polys = []
    for pts in _supporting_faces(cd, F):
        base = pts[0]
        coords = [lattice_coordinates(p, base, basis) for p in pts]
        polys.append(convex_hull(coords))
    total = 0
    k = len(polys)
    for ms in product(range(1, dF + 1), repeat=k):
        if sum(ms) != dF:
            continue
        args = [P for P, m in zip(polys, ms) for _ in range(m)]
        total += mixed_volume(args)
    return total


def multiplicity_product(data):
    """Factorization prod (t^{m_F} - 1)^{e_F} of the characteristic polynomial
    of the monodromy on the middle cohomology, valid at lambda outside R_f."""
    if isinstance(data, CayleyData):
        nd = data.minkowski
        pairs = [(nd.m[F], sgn * _K(data, F)) for F, sgn in _selected_cells(nd)]
    else:
        nd = data
        pairs = [(nd.m[F], sgn * _lifted_volume(nd, F)) for F, sgn in _selected_cells(nd)]
    return _merge(pairs)


# ---------------------------------------------------------------------------
# whole-spectrum report
# ---------------------------------------------------------------------------


def monodromy_report(data):
    """Every route for every eigenvalue in the spectrum, with agreement flags."""
    nd = _data(data)
    ci = isinstance(data, CayleyData)
    mult = multiplicity_product(data)
    rows = []
    for lam in nd.supported_spectrum():
        row = {"lambda": lam, "bad": nd.is_bad(lam)}
        if nd.ambient == "torus":
            row["refined"] = refined_E_ci(data, lam) if ci else refined_E_torus(nd, lam)
        if not row["bad"]:
            conc = concentrated_E(data, lam)
            row["concentrated"] = conc
            via_e = jordan_via_E(conc)
            via_f = jordan_via_formula(data, lam)
            row["jordan"] = via_f
            row["routes_agree"] = via_e.blocks == via_f.blocks
            if "refined" in row:
                row["refined_agrees"] = row["refined"].E_uvw == conc.E_uvw
            elif not ci:
                row["refined"] = refined_E_affine(nd, lam)
                row["refined_agrees"] = row["refined"].E_uvw == conc.E_uvw
            row["multiplicity"] = mult.multiplicity_of(lam)
            row["multiplicity_agrees"] = row["multiplicity"] == via_f.total_dimension()
        rows.append(row)
    return {"multiplicity": mult, "rows": rows}
