"""Polynomials attached to face posets and weighted subdivided polytopes:
toric g-polynomials, h-polynomials of links, local h-polynomials, the
lambda-weighted Ehrhart counts and the h*/l* family in one, two and three
variables.

Results are memoized on the lattice or subdivision they were computed from.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import InternalError, NonPolynomialError, NotEulerianError, NotUnimodalError
from .exact import IntPoly, epsilon, reverse
from .geometry import FaceLattice, lattice_points

T = IntPoly.var("t")
ONE = IntPoly.const(1)


@dataclass(frozen=True)
class PosetInterval:
    """The interval [bottom, top] of a face lattice, optionally order-reversed."""
    lattice: FaceLattice
    bottom: frozenset
    top: frozenset
    reversed: bool = False

    def elements(self):
        return self.lattice.interval(self.bottom, self.top)

    @property
    def rank(self):
        return self.lattice.dim(self.top) - self.lattice.dim(self.bottom)


@dataclass(frozen=True)
class WeightedPolytope:
    """A face of the subdivided polytope (face=None for all of it) or a cell,
    carrying the restricted subdivision and weight function."""
    subdivision: object
    face: frozenset = None
    is_cell: bool = False

    @property
    def vertices(self):
        return self.subdivision.base.full if self.face is None else self.face


def _memo(S):
    try:
        return S._kspoly_memo
    except AttributeError:
        S._kspoly_memo = {}
        return S._kspoly_memo


# ---------------------------------------------------------------------------
# g-polynomials
# ---------------------------------------------------------------------------


def g_of(lattice, lo, hi, dual=False):
    """g([lo, hi]; t), or of the order-reversed interval when dual is set."""
    key = ("g", lo, hi, dual)
    if key in lattice.cache:
        return lattice.cache[key]
    r = lattice.dim(hi) - lattice.dim(lo)
    if r == 0:
        result = ONE
    else:
        rhs = IntPoly.const(0)
        for mid in lattice.interval(lo, hi):
            if dual:
                if mid == lo:
                    continue
                rhs = rhs + (T - 1) ** (lattice.dim(mid) - lattice.dim(lo)) * g_of(lattice, mid, hi, True)
            else:
                if mid == hi:
                    continue
                rhs = rhs + (T - 1) ** (lattice.dim(hi) - lattice.dim(mid)) * g_of(lattice, lo, mid)
        c = rhs.coeffs("t") if rhs else []
        c = c + [0] * (r + 1 - len(c))
        if len(c) > r + 1:
            raise NotEulerianError(f"interval of rank {r} produced degree {len(c) - 1}")
        # t^r g(1/t) - g(t) = rhs with deg g < r/2
        g = [-c[j] for j in range(r) if 2 * j < r]
        for j in range(r + 1):
            expected = g[r - j] if 2 * j > r else (0 if 2 * j == r else -g[j])
            if c[j] != expected:
                raise NotEulerianError(f"interval of rank {r} fails the Euler recursion")
        result = IntPoly.from_coeffs(g)
    lattice.cache[key] = result
    return result


def g_poly(B):
    return g_of(B.lattice, B.bottom, B.top, B.reversed)


# ---------------------------------------------------------------------------
# links and local h-polynomials
# ---------------------------------------------------------------------------


def h_link(S, Q, F):
    """h(LK_{S|Q}(F); t) for a base face Q and a cell F inside it."""
    memo = _memo(S)
    key = ("hlink", Q, F)
    if key not in memo:
        dQ = S.base.lattice.dim(Q)
        rhs = IntPoly.const(0)
        for G in S.cells_in(Q):
            if F <= G:
                rhs = rhs + g_of(S.lattice, F, G) * (T - 1) ** (dQ - S.lattice.dim(G))
        memo[key] = reverse(rhs, dQ - S.lattice.dim(F))
    return memo[key]


def local_h(S, F, Q=None):
    """l_Q(S|Q, F; t); Q defaults to the whole polytope."""
    Q = S.base.full if Q is None else Q
    memo = _memo(S)
    key = ("local", Q, F)
    if key not in memo:
        L = S.base.lattice
        low = S.sigma(F)
        dQ = L.dim(Q)
        total = IntPoly.const(0)
        for mid in L.interval(low, Q):
            term = h_link(S, mid, F) * g_of(L, mid, Q, dual=True)
            total = total + term if (dQ - L.dim(mid)) % 2 == 0 else total - term
        c = total.coeffs("t") if total else []
        span = dQ - S.lattice.dim(F)
        c = c + [0] * (span + 1 - len(c))
        if len(c) > span + 1 or any(x < 0 for x in c) or c != c[::-1]:
            raise InternalError(f"local h-polynomial {total} is not symmetric and non-negative")
        memo[key] = total
    return memo[key]


def ltilde(l, codim):
    """Coefficients l_{F,i} of the staircase decomposition of a symmetric unimodal l."""
    a = l.coeffs("t") if l else []
    a = a + [0] * (codim + 1 - len(a))
    if len(a) > codim + 1 or a != a[::-1]:
        raise NotUnimodalError(f"{l} is not symmetric of span {codim}")
    out = []
    for i in range(codim // 2 + 1):
        out.append(a[i] - (a[i - 1] if i else 0))
    if any(x < 0 for x in out):
        raise NotUnimodalError(f"{l} is not unimodal")
    return IntPoly.from_coeffs(out)


# ---------------------------------------------------------------------------
# weighted Ehrhart data
# ---------------------------------------------------------------------------


def _resolve(W):
    S = W.subdivision
    G = W.vertices
    is_cell = W.is_cell or (W.face is not None and G in S.cells and G not in S.base.lattice)
    return S, G, is_cell


def _lattice_for(S, G, is_cell):
    return S.lattice if is_cell else S.base.lattice


def phase_counts(S, G, is_cell):
    """{phase q: [f_q(0), ..., f_q(dim+2)]} for the face or cell G."""
    memo = _memo(S)
    key = ("counts", G, is_cell)
    if key in memo:
        return memo[key]
    if not G:
        memo[key] = {}
        return memo[key]
    # m * nu(v / m) = max over pieces of (grad . v + m * const), on a common denominator
    pieces = [S.cells[G]] if is_cell else [S.cells[c] for c in S.full_cells]
    poly = S.cell_polytope(G) if is_cell else S.base.face_polytope(G)
    den = 1
    for c in pieces:
        for x in list(c.gradient) + [c.constant]:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
    scaled = [([int(x * den) for x in c.gradient], int(c.constant * den)) for c in pieces]

    def phase(v, m):
        top = max(sum(a * b for a, b in zip(grad, v)) + const * m for grad, const in scaled)
        return Fraction(top % den, den)
    d = poly.dim
    table = {Fraction(0): [1] + [0] * (d + 2)}
    for m in range(1, d + 3):
        for v in lattice_points(poly, m):
            q = phase(v, m)
            table.setdefault(q, [0] * (d + 3))[m] += 1
    memo[key] = table
    return table


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _dim(S, G, is_cell):
    return _lattice_for(S, G, is_cell).dim(G)


def weighted_ehrhart(W, lam, m):
    """f_lambda(m): lattice points v of mQ with m*nu(v/m) = q(lambda) mod 1."""
    S, G, is_cell = _resolve(W)
    if m == 0:
        return epsilon(lam) if G else 0
    if not G:
        return 0
    d = _dim(S, G, is_cell)
    if m <= d + 2:
        return phase_counts(S, G, is_cell).get(lam.q, [0] * (d + 3))[m]
    poly = S.cell_polytope(G) if is_cell else S.base.face_polytope(G)
    return sum(1 for v in lattice_points(poly, m)
               if (m * S.nu(tuple(Fraction(x, m) for x in v))) % 1 == lam.q)


def _hstar_from_counts(f, d):
    h = []
    for i in range(d + 3):
        h.append(sum((-1) ** (i - j) * comb(d + 1, i - j) * f[j] for j in range(i + 1)))
    if h[d + 2] != 0:
        raise NonPolynomialError(f"weighted counts {f} are not polynomial of degree <= {d + 1}")
    return h[:d + 2]


def _hstar(S, G, is_cell, lam):
    if not G:
        return IntPoly.const(epsilon(lam), ("u",))
    d = _dim(S, G, is_cell)
    f = phase_counts(S, G, is_cell).get(lam.q)
    if f is None:
        return IntPoly.const(0, ("u",))
    return IntPoly.from_coeffs(_hstar_from_counts(f, d), "u")


def hstar_u(W, lam):
    S, G, is_cell = _resolve(W)
    return _hstar(S, G, is_cell, lam)


def _lstar(S, G, is_cell, lam):
    memo = _memo(S)
    key = ("lstar_u", G, is_cell, lam)
    if key in memo:
        return memo[key]
    if not G:
        result = IntPoly.const(epsilon(lam), ("u",))
    elif lam.q not in phase_counts(S, G, is_cell):
        # no lattice point of G's dilates has this phase, nor of any face of G
        result = IntPoly.const(0, ("u",))
    else:
        L = _lattice_for(S, G, is_cell)
        dG = L.dim(G)
        result = IntPoly.const(0, ("u",))
        for Q in L.faces_of(G):
            h = _hstar(S, Q, is_cell, lam)
            if not h:
                continue
            term = h * g_of(L, Q, G, dual=True).subs({"t": {"u": 1}})
            result = result + term if (dG - L.dim(Q)) % 2 == 0 else result - term
    memo[key] = result
    return result


def lstar_u(W, lam):
    S, G, is_cell = _resolve(W)
    return _lstar(S, G, is_cell, lam)


def cell_lstar(S, F, lam):
    return _lstar(S, F, True, lam)


# ---------------------------------------------------------------------------
# two and three variables
# ---------------------------------------------------------------------------


def _homogenize(p, top):
    """sum c_i u^i v^(top - i) from sum c_i u^i."""
    out = {}
    for i, c in enumerate(p.coeffs("u") if p else []):
        if c:
            if top - i < 0:
                raise NonPolynomialError(f"{p} has degree above {top}")
            out[(i, top - i)] = c
    return IntPoly(out, ("u", "v"))


def _in_uv(p):
    return IntPoly({(i, i): c for i, c in enumerate(p.coeffs("t") if p else []) if c}, ("u", "v"))


def _in_uvw2(p):
    return IntPoly({(i, i, 2 * i): c for i, c in enumerate(p.coeffs("t") if p else []) if c},
                   ("u", "v", "w"))


def _face_of(W):
    S = W.subdivision
    Q = S.base.full if W.face is None else W.face
    if Q not in S.base.lattice:
        raise ValueError("two- and three-variable polynomials need a face of the base polytope")
    return S, Q


def active_cells(S, lam):
    """Cells whose l*_lambda can be non-zero, i.e. the phase of lambda occurs
    on their dilates (the empty cell only for lambda = 1)."""
    memo = _memo(S)
    if "phase_index" not in memo:
        index = {}
        for F in S.lattice.elements:
            if F:
                for q in phase_counts(S, F, True):
                    index.setdefault(q, []).append(F)
        memo["phase_index"] = index
    cells = memo["phase_index"].get(lam.q, [])
    return [frozenset()] + cells if lam.is_one else cells


def _cell_sum(S, Q, lam, weight):
    total = IntPoly.const(0, ("u", "v"))
    on = S.base_face_points(Q)
    for F in active_cells(S, lam):
        if not F <= on:
            continue
        ls = _lstar(S, F, True, lam)
        if not ls:
            continue
        total = total + _homogenize(ls, S.lattice.dim(F) + 1) * _in_uv(weight(F))
    return total.assert_polynomial()


def lstar_uv(W, lam):
    S, Q = _face_of(W)
    memo = _memo(S)
    key = ("lstar_uv", Q, lam)
    if key not in memo:
        memo[key] = _cell_sum(S, Q, lam, lambda F: local_h(S, F, Q))
    return memo[key]


def hstar_uv(W, lam):
    S, Q = _face_of(W)
    memo = _memo(S)
    key = ("hstar_uv", Q, lam)
    if key not in memo:
        memo[key] = _cell_sum(S, Q, lam, lambda F: h_link(S, Q, F))
    return memo[key]


def hstar_uvw(W, lam):
    S, Q = _face_of(W)
    memo = _memo(S)
    key = ("hstar_uvw", Q, lam)
    if key not in memo:
        L = S.base.lattice
        total = IntPoly.const(0, ("u", "v", "w"))
        for face in (L.faces_of(Q) if active_cells(S, lam) else []):
            part = lstar_uv(WeightedPolytope(S, face), lam)
            if not part:
                continue
            w = IntPoly.monomial({"w": L.dim(face) + 1})
            total = total + w * part * _in_uvw2(g_of(L, face, Q))
        memo[key] = total.assert_polynomial()
    return memo[key]
