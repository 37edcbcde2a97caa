"""Slow reference implementations for cross-checking the main pipeline.

Nothing here calls into geometry, newton, kspoly or monodromy except
consistency_suite, which compares the two sides. The reference routines
only rely on the exact arithmetic helpers.
"""
import copy
import hashlib
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, gcd

import numpy as np

from .errors import TooLargeError, UnsupportedDimensionError
from .exact import IntPoly, RootOfUnity, det_int

MAX_BOX = 10 ** 5


@dataclass
class OracleReport:
    name: str
    digest: str
    expected: object
    actual: object
    passed: bool

    def to_json(self):
        return {"name": self.name, "digest": self.digest, "expected": _plain(self.expected),
                "actual": _plain(self.actual), "passed": self.passed}


def _plain(x):
    if isinstance(x, (int, bool, str)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


def _report(name, digest, expected, actual):
    return OracleReport(name, digest, expected, actual, expected == actual)


# ---------------------------------------------------------------------------
# brute-force halfspaces and lattice point counts
# ---------------------------------------------------------------------------


def _hyperplane(pts):
    """Integer normal of the hyperplane through d points in Z^d (zero if degenerate)."""
    base = pts[0]
    rows = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    d = len(base)
    normal = []
    for j in range(d):
        minor = [[r[c] for c in range(d) if c != j] for r in rows]
        normal.append((-1) ** j * det_int(minor) if minor else 1)
    return normal


def _halfspaces(points):
    """All facet inequalities a.x >= b of a full-dimensional conv(points)."""
    points = [tuple(p) for p in points]
    d = len(points[0])
    found = set()
    for subset in combinations(points, d):
        a = _hyperplane(list(subset))
        if not any(a):
            continue
        g = 0
        for x in a:
            g = gcd(g, x)
        a = [x // g for x in a]
        vals = [sum(x * y for x, y in zip(a, p)) for p in points]
        b = sum(x * y for x, y in zip(a, subset[0]))
        if all(v >= b for v in vals):
            found.add((tuple(a), b))
        if all(v <= b for v in vals):
            found.add((tuple(-x for x in a), -b))
    return sorted(found)


def _full_dimensional(points):
    d = len(points[0])
    base = points[0]
    diffs = [[Fraction(a - b) for a, b in zip(p, base)] for p in points[1:]]
    r = 0
    for col in range(d):
        piv = next((i for i in range(r, len(diffs)) if diffs[i][col]), None)
        if piv is None:
            continue
        diffs[r], diffs[piv] = diffs[piv], diffs[r]
        for i in range(len(diffs)):
            if i != r and diffs[i][col]:
                f = diffs[i][col] / diffs[r][col]
                diffs[i] = [x - f * y for x, y in zip(diffs[i], diffs[r])]
        r += 1
    return r == d


def _box_points(points, m, halfspaces):
    lo = [m * min(p[i] for p in points) for i in range(len(points[0]))]
    hi = [m * max(p[i] for p in points) for i in range(len(points[0]))]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > MAX_BOX:
        raise TooLargeError(f"dilate {m} has a bounding box of {size} points")
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))
    keep = np.ones(len(grid), dtype=bool)
    for a, b in halfspaces:
        keep &= grid @ np.array(a, dtype=np.int64) >= m * b
    return grid[keep]


def ehrhart_series_bruteforce(P, upto):
    """[|mP ∩ Z^d| for m = 0..upto] for a full-dimensional polytope (or a
    point list); the empty polytope gives zeros."""
    points = _point_list(P)
    if not points:
        return [0] * (upto + 1)
    if len(points[0]) == 0 or len(set(points)) == 1:
        return [1] * (upto + 1)
    if not _full_dimensional(points):
        raise ValueError("brute-force counting needs a full-dimensional polytope")
    hs = _halfspaces(points)
    return [1] + [len(_box_points(points, m, hs)) for m in range(1, upto + 1)]


def _point_list(P):
    if hasattr(P, "vertex_points"):
        return [tuple(int(x) for x in p) for p in P.vertex_points()] if P.dim >= 0 else []
    return sorted({tuple(int(x) for x in p) for p in P})


def weighted_counts_bruteforce(lifted, upto):
    """{phase: [f(0), ..., f(upto)]} for the lower-hull weight of a lifted point set,
    with f(0) counted at phase 0."""
    points = sorted(lifted)
    d = len(points[0])
    lifted_pts = [p + (lifted[p],) for p in points]
    # a point high above keeps the lifted set full-dimensional without touching the lower hull
    lifted_pts.append(points[0] + (max(lifted.values()) + 1,))
    lower = []
    for a, b in _halfspaces(lifted_pts):
        if a[-1] > 0:
            lower.append((a, b))
    hs = _halfspaces(points)
    out = {Fraction(0): [1] + [0] * upto}
    for m in range(1, upto + 1):
        for x in _box_points(points, m, hs):
            x = [int(c) for c in x]
            # m * nu(x / m) = max over lower facets of (m b - a'.x) / a_last
            val = max(Fraction(m * b - sum(c * y for c, y in zip(a[:d], x)), a[-1])
                      for a, b in lower)
            out.setdefault(val % 1, [0] * (upto + 1))[m] += 1
    return out


def hstar_bruteforce(lifted, lam):
    """h*_lambda(u) of the weighted full polytope from brute-force counts."""
    d = len(next(iter(lifted)))
    f = weighted_counts_bruteforce(lifted, d + 2).get(lam.q)
    if f is None:
        return IntPoly.const(0, ("u",))
    h = [sum((-1) ** (i - j) * comb(d + 1, i - j) * f[j] for j in range(i + 1))
         for i in range(d + 3)]
    return IntPoly.from_coeffs(h[:d + 2], "u")


# ---------------------------------------------------------------------------
# definition-level recursions
# ---------------------------------------------------------------------------


@dataclass
class FinitePoset:
    """Explicit graded poset: elements with ranks and an order predicate."""
    elements: list
    rank: dict
    leq: object = None

    def le(self, a, b):
        return self.leq(a, b) if self.leq else a <= b

    def interval(self, lo, hi):
        return [x for x in self.elements if self.le(lo, x) and self.le(x, hi)]


def _tpoly(coeffs):
    return IntPoly.from_coeffs(list(coeffs), "t")


def recursion_eval_g(poset, lo, hi, dual=False):
    """g([lo, hi]; t) (or of the reversed interval) straight from the defining
    identity t^r g(1/t) = sum over the interval, solved coefficientwise."""
    r = poset.rank[hi] - poset.rank[lo]
    if r == 0:
        return IntPoly.const(1)
    t = IntPoly.var("t")
    rest = IntPoly.const(0)
    for mid in poset.interval(lo, hi):
        if dual and mid != lo:
            rest = rest + (t - 1) ** (poset.rank[mid] - poset.rank[lo]) * recursion_eval_g(poset, mid, hi, True)
        elif not dual and mid != hi:
            rest = rest + (t - 1) ** (poset.rank[hi] - poset.rank[mid]) * recursion_eval_g(poset, lo, mid)
    c = rest.coeffs("t") if rest else []
    c = c + [0] * (r + 1 - len(c))
    # unknowns g_0..g_{r//2}; coefficient j: g_{r-j} - g_j = c_j
    g = [0] * (r + 1)
    for j in range(r + 1):
        if 2 * j < r:
            g[j] = -c[j]
    for j in range(r + 1):
        if g[r - j] - g[j] != c[j]:
            raise ArithmeticError("interval is not Eulerian")
    return _tpoly(g)


@dataclass
class SubdivisionData:
    """Plain description of a subdivided polytope.

    faces: {face key: (set of point labels on the face, dim)} for the base
    cells: {cell key: (set of vertex labels, dim)} including the empty cell
    """
    faces: dict
    cells: dict

    def face_poset(self):
        keys = list(self.faces)
        return FinitePoset(keys, {q: self.faces[q][1] + 1 for q in keys},
                           lambda a, b: self.faces[a][0] <= self.faces[b][0])

    def cell_poset(self):
        keys = list(self.cells)
        return FinitePoset(keys, {c: self.cells[c][1] + 1 for c in keys},
                           lambda a, b: self.cells[a][0] <= self.cells[b][0])


def recursion_eval_local_h(data, F, P=None):
    """l_P(S, F; t) from its definition as an alternating sum of link
    h-polynomials against dual g-polynomials."""
    faces = data.face_poset()
    cells = data.cell_poset()
    if P is None:
        P = max(faces.elements, key=lambda q: faces.rank[q])
    cF = data.cells[F][0]
    dF = data.cells[F][1]
    dP = data.faces[P][1]
    containing = [q for q in faces.elements if cF <= data.faces[q][0]]
    sigma = min(containing, key=lambda q: faces.rank[q])
    t = IntPoly.var("t")
    total = IntPoly.const(0)
    for Q in faces.interval(sigma, P):
        on_Q, dQ = data.faces[Q]
        link = IntPoly.const(0)
        for G in cells.elements:
            vG, dG = data.cells[G]
            if cF <= vG and vG <= on_Q:
                link = link + recursion_eval_g(cells, F, G) * (t - 1) ** (dQ - dG)
        c = link.coeffs("t") if link else []
        c = c + [0] * (dQ - dF + 1 - len(c))
        h = _tpoly(c[::-1])
        term = h * recursion_eval_g(faces, Q, P, dual=True)
        total = total + term if (dP - dQ) % 2 == 0 else total - term
    return total


def polygon_poset(m):
    """Face lattice of an m-gon, built by hand: vertices 0..m-1."""
    elements = [frozenset()]
    elements += [frozenset({i}) for i in range(m)]
    elements += [frozenset({i, (i + 1) % m}) for i in range(m)]
    elements.append(frozenset(range(m)))
    rank = {e: (len(e) if len(e) < 3 else 3) for e in elements}
    return FinitePoset(elements, rank)


def split_segment():
    """[0, 2] subdivided at 1; labels are the lattice points 0, 1, 2."""
    faces = {"empty": (frozenset(), -1), "0": (frozenset({0}), 0),
             "2": (frozenset({2}), 0), "P": (frozenset({0, 1, 2}), 1)}
    cells = {"empty": (frozenset(), -1), "0": (frozenset({0}), 0), "1": (frozenset({1}), 0),
             "2": (frozenset({2}), 0), "01": (frozenset({0, 1}), 1), "12": (frozenset({1, 2}), 1)}
    return SubdivisionData(faces, cells)


# ---------------------------------------------------------------------------
# root tracking for one variable
# ---------------------------------------------------------------------------


@dataclass
class RootTracking:
    permutation: tuple      # root index -> image under monodromy
    cycles: list            # cycle lengths
    eigenvalues: Counter    # RootOfUnity -> multiplicity on H^0

    def multiplicity(self, lam):
        return self.eigenvalues.get(lam, 0)


def _lower_chain(pairs):
    """Lower convex chain of (x, height) pairs sorted by x."""
    chain = []
    for p in sorted(pairs):
        while len(chain) >= 2:
            (x1, y1), (x2, y2) = chain[-2], chain[-1]
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                chain.pop()
            else:
                break
        chain.append(p)
    return chain


def monodromy_n1(p):
    """Monodromy of the roots of f(t, x) as t circles 0, from Puiseux leading exponents."""
    if p.n != 1:
        raise UnsupportedDimensionError(f"root tracking needs n = 1, got n = {p.n}")
    pairs = {}
    for exp, coeff in p.terms.items():
        pairs[exp[0]] = min(coeff)
    chain = _lower_chain(list(pairs.items()))
    perm = []
    cycles = []
    for (x1, y1), (x2, y2) in zip(chain, chain[1:]):
        length, drop = x2 - x1, y2 - y1
        g = gcd(length, abs(drop))
        q = length // g
        for _ in range(g):
            start = len(perm)
            perm.extend(start + (i + 1) % q for i in range(q))
            cycles.append(q)
    if p.ambient == "affine" and min(pairs) > 0:
        perm.append(len(perm))
        cycles.append(1)
    eig = Counter()
    for q in cycles:
        for a in range(q):
            eig[RootOfUnity(Fraction(a, q))] += 1
    return RootTracking(tuple(perm), cycles, eig)


# ---------------------------------------------------------------------------
# cross-checks against the main pipeline
# ---------------------------------------------------------------------------


def digest_of(instance):
    text = repr(instance) if not hasattr(instance, "polys") else " ; ".join(repr(p) for p in instance.polys)
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def subdivision_data(S):
    """Read a main-path subdivision into the plain description used here."""
    faces = {q: (frozenset(S.base_face_points(q)), S.base.lattice.dim(q))
             for q in S.base.lattice.elements}
    cells = {c: (c, S.lattice.dim(c)) for c in S.lattice.elements}
    return SubdivisionData(faces, cells)


def _corrupt(data):
    from .newton import CayleyData
    bad = copy.copy(data)
    nd = bad.minkowski if isinstance(bad, CayleyData) else bad
    nd = copy.copy(nd)
    nd.m = dict(nd.m)
    target = max(nd.subdivision.full_cells, key=lambda c: (nd.m[c], sorted(c)))
    nd.m[target] += 1
    if isinstance(bad, CayleyData):
        bad.minkowski = nd
        return bad
    return nd


def consistency_suite(instance, inject_fault=False, kernels=True):
    """Run every cross-route and oracle comparison on one instance.

    With inject_fault the multiplicity factorization is computed from a copy
    whose largest full-cell m_F is bumped by one, so those checks should fail.
    """
    from .kspoly import WeightedPolytope, g_of, local_h, lstar_uv, phase_counts
    from .monodromy import (concentrated_E, jordan_via_E, jordan_via_formula,
                            multiplicity_product, refined_E_ci, refined_E_torus)
    from .newton import CayleyData, build_newton_data
    from .polyinput import CISystem

    digest = digest_of(instance)
    ci = isinstance(instance, CISystem)
    data = CayleyData(instance) if ci else build_newton_data(instance)
    nd = data.cayley if ci else data
    S = nd.subdivision
    reports = []

    if kernels:
        fp = subdivision_data(S).face_poset()
        top = S.base.full
        reports.append(_report("g_full", digest, recursion_eval_g(fp, frozenset(), top),
                               g_of(S.base.lattice, frozenset(), top)))
        sd = subdivision_data(S)
        for F in S.lattice.elements:
            reports.append(_report(f"local_h[{sorted(F)}]", digest,
                                   recursion_eval_local_h(sd, F), local_h(S, F)))
        if not ci and S.base.dim == S.base.ambient_dim:
            d = S.dim
            counts = phase_counts(S, S.base.full, False)
            totals = [sum(v[m] for v in counts.values()) for m in range(d + 3)]
            reports.append(_report("ehrhart_total", digest,
                                   ehrhart_series_bruteforce(S.base, d + 2), totals))
            lifted = dict(zip(S.points, S.heights))
            brute = weighted_counts_bruteforce(lifted, d + 2)
            reports.append(_report("weighted_counts", digest,
                                   {str(k): v for k, v in sorted(brute.items())},
                                   {str(k): v for k, v in sorted(counts.items())}))

    mult = multiplicity_product(_corrupt(data) if inject_fault else data)
    for lam in nd.supported_spectrum():
        key = str(lam)
        if nd.ambient == "torus":
            refined = refined_E_ci(data, lam) if ci else refined_E_torus(nd, lam)
        else:
            refined = None
        if nd.is_bad(lam):
            continue
        conc = concentrated_E(data, lam)
        via_e = jordan_via_E(conc)
        via_f = jordan_via_formula(data, lam)
        reports.append(_report(f"jordan_routes[{key}]", digest, via_e.blocks, via_f.blocks))
        reports.append(_report(f"multiplicity[{key}]", digest, via_f.total_dimension(),
                               mult.multiplicity_of(lam)))
        if refined is not None:
            reports.append(_report(f"refined_vs_concentrated[{key}]", digest,
                                   conc.E_uvw, refined.E_uvw))
            reports.append(_report(f"w_concentration[{key}]", digest, True,
                                   refined.w_degrees() <= {refined.center}))
        c = conc.E_diag.coeffs("s") if conc.E_diag else []
        c = c + [0] * (2 * conc.center + 1 - len(c))
        reports.append(_report(f"symmetry[{key}]", digest, c, c[::-1]))

    if nd.period not in set(nd.m.values()):
        lam = RootOfUnity(Fraction(1, nd.period))
        zero = IntPoly.const(0, ("u", "v"))
        reports.append(_report(f"unsupported_vanishes[{lam}]", digest, zero,
                               lstar_uv(WeightedPolytope(S), lam)))

    if not ci and instance.n == 1:
        track = monodromy_n1(instance)
        for lam in nd.supported_spectrum():
            if nd.ambient == "torus":
                actual = refined_E_torus(nd, lam).E_uvw.evaluate({"u": 1, "v": 1, "w": 1})
            elif not nd.is_bad(lam):
                actual = concentrated_E(nd, lam).E_uvw.evaluate({"u": 1, "v": 1, "w": 1})
            else:
                continue
            reports.append(_report(f"root_tracking[{lam}]", digest, track.multiplicity(lam), actual))
    return reports


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def random_support(rng, n, npoints, box=3, ambient="torus"):
    lo = 0 if ambient == "affine" else -1
    npoints = min(npoints, (box - lo + 1) ** n)
    pts = set()
    while len(pts) < npoints:
        pts.add(tuple(rng.randint(lo, box) for _ in range(n)))
    return sorted(pts)


def random_instance(rng, n=None, ambient=None, max_points=12, max_height=5, box=3):
    """A random family with an n-dimensional Newton polytope; only the support
    and the t-valuations matter, so coefficients are t^height."""
    from .polyinput import TPolynomial
    n = n or rng.randint(1, 3)
    ambient = ambient or rng.choice(["torus", "affine"])
    while True:
        pts = random_support(rng, n, rng.randint(n + 1, max_points), box, ambient)
        if _full_dimensional(pts):
            break
    terms = {p: {rng.randint(0, max_height): 1} for p in pts}
    return TPolynomial(terms, n, ambient)


def random_system(rng, n, k, ambient="torus", max_points=6, max_height=3, box=2):
    """k random families whose Cayley polytope has full dimension n+k-1."""
    from .polyinput import CISystem
    while True:
        polys = [random_instance(rng, n, ambient, max_points, max_height, box) for _ in range(k)]
        # the Cayley points lie in sum(e) = 1, so drop the first unit coordinate
        cay = [tuple(int(i == j) for i in range(1, k)) + p for j, q in enumerate(polys) for p in q.terms]
        if _full_dimensional(cay):
            return CISystem(tuple(polys))
