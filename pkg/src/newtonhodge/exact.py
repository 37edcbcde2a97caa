"""Exact integer/rational kernels: lattice normal forms, sparse integer
polynomials with Laurent exponents, and roots of unity written as q in [0, 1).
"""
from fractions import Fraction
from math import gcd, lcm

from .errors import NonPolynomialError, BadLambdaError

# ---------------------------------------------------------------------------
# Linear algebra over Q and Z
# ---------------------------------------------------------------------------


def _echelon(rows):
    """Row echelon form over Q. Returns (reduced rows, pivot columns)."""
    mat = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    if not mat:
        return mat, pivots
    ncols = len(mat[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        lead = mat[r][col]
        mat[r] = [x / lead for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] != 0:
                f = mat[i][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows):
    return len(_echelon(rows)[1])


def pivot_columns(rows):
    """Columns on which the row space projects isomorphically."""
    return _echelon(rows)[1]


def affine_rank(points):
    """Dimension of the affine span; -1 for no points."""
    points = list(points)
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def solve_in_span(vec, basis):
    """Coefficients c with sum c_i basis_i = vec, or None if vec is outside the span."""
    if not basis:
        return [] if not any(vec) else None
    k = len(basis)
    # columns are basis vectors; augment with vec
    rows = [[Fraction(b[j]) for b in basis] + [Fraction(vec[j])] for j in range(len(vec))]
    red, piv = _echelon(rows)
    if k in piv:
        return None
    coeffs = [Fraction(0)] * k
    for row, col in zip(red, piv):
        coeffs[col] = row[k]
    return coeffs


def _reduce_column(mat, r, col, ncols=None):
    """Euclid on column `col` among rows r.. so that only row r is nonzero there."""
    while True:
        nz = [i for i in range(r, len(mat)) if mat[i][col] != 0]
        if not nz:
            return False
        i0 = min(nz, key=lambda i: abs(mat[i][col]))
        mat[r], mat[i0] = mat[i0], mat[r]
        clean = True
        for i in range(r + 1, len(mat)):
            if mat[i][col]:
                q = mat[i][col] // mat[r][col]
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
                if mat[i][col]:
                    clean = False
        if clean:
            if mat[r][col] < 0:
                mat[r] = [-a for a in mat[r]]
            return True


def hnf_basis(vectors):
    """Hermite normal form basis of the lattice generated by integer vectors."""
    mat = [list(map(int, v)) for v in vectors if any(v)]
    if not mat:
        return []
    r = 0
    for col in range(len(mat[0])):
        if r == len(mat):
            break
        if not _reduce_column(mat, r, col):
            continue
        for i in range(r):
            q = mat[i][col] // mat[r][col]
            if q:
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        r += 1
    return [tuple(row) for row in mat[:r] if any(row)]


def integer_kernel(rows, ncols):
    """Basis of {x in Z^ncols : A x = 0}; the result is saturated."""
    rows = [list(map(int, r)) for r in rows]
    m = len(rows)
    # one augmented row per coordinate: (column j of A | e_j)
    aug = [[rows[i][j] for i in range(m)] + [int(j == k) for k in range(ncols)]
           for j in range(ncols)]
    r = 0
    for col in range(m):
        if r == len(aug):
            break
        if _reduce_column(aug, r, col):
            r += 1
    return hnf_basis([row[m:] for row in aug[r:]])


def saturate(vectors, dim):
    """Basis of span_Q(vectors) ∩ Z^dim."""
    orth = integer_kernel(vectors, dim)
    return integer_kernel(orth, dim)


def affine_lattice_basis(points):
    """(base point, basis) with Aff(points) ∩ Z^d = base + Z-span(basis)."""
    points = [tuple(map(int, p)) for p in points]
    base = points[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    diffs = [d for d in diffs if any(d)]
    if not diffs:
        return base, []
    return base, saturate(diffs, len(base))


def lattice_coordinates(x, base, basis):
    """Integer coordinates of x - base in the given lattice basis."""
    coeffs = solve_in_span([a - b for a, b in zip(x, base)], basis)
    if coeffs is None or any(c.denominator != 1 for c in coeffs):
        raise ValueError(f"{x} is not in the affine lattice")
    return tuple(int(c) for c in coeffs)


def det_int(mat):
    """Determinant of a square integer matrix (fraction-free Bareiss)."""
    a = [list(map(int, r)) for r in mat]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def primitive(vec):
    g = 0
    for x in vec:
        g = gcd(g, int(x))
    if g <= 1:
        return tuple(int(x) for x in vec)
    return tuple(int(x) // g for x in vec)


def common_denominator(values):
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


# ---------------------------------------------------------------------------
# Sparse integer polynomials
# ---------------------------------------------------------------------------

VAR_ORDER = ("t", "s", "u", "v", "w")


def _var_key(name):
    return (VAR_ORDER.index(name), "") if name in VAR_ORDER else (len(VAR_ORDER), name)


class IntPoly:
    """Sparse polynomial with integer coefficients and (possibly negative)
    integer exponents. Immutable by convention.

    >>> t = IntPoly.var("t")
    >>> (1 + t) * (1 - t)
    IntPoly('1 - t^2')
    """

    __slots__ = ("vars", "terms")

    def __init__(self, terms=None, vars=("t",)):
        self.vars = tuple(vars)
        self.terms = {}
        for e, c in (terms or {}).items():
            if c:
                e = tuple(e)
                if len(e) != len(self.vars):
                    raise ValueError("exponent length does not match variables")
                self.terms[e] = int(c)

    # -- construction -----------------------------------------------------
    @classmethod
    def const(cls, c, vars=("t",)):
        vars = tuple(vars)
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def var(cls, name, power=1):
        return cls({(power,): 1}, (name,))

    @classmethod
    def monomial(cls, exps, coeff=1):
        """exps: mapping var -> exponent."""
        names = tuple(sorted(exps, key=_var_key))
        return cls({tuple(exps[v] for v in names): coeff}, names)

    @classmethod
    def from_coeffs(cls, coeffs, var="t"):
        return cls({(i,): c for i, c in enumerate(coeffs)}, (var,))

    # -- alignment ----------------------------------------------------------
    def _lift(self, names):
        if names == self.vars:
            return self.terms
        idx = [self.vars.index(v) if v in self.vars else None for v in names]
        out = {}
        for e, c in self.terms.items():
            out[tuple(e[i] if i is not None else 0 for i in idx)] = c
        return out

    @staticmethod
    def _union(a, b):
        if a == b:
            return a
        return tuple(sorted(set(a) | set(b), key=_var_key))

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return cls.const(other, ())
        if isinstance(other, Fraction) and other.denominator == 1:
            return cls.const(int(other), ())
        return NotImplemented

    def with_vars(self, names):
        names = self._union(self.vars, tuple(names))
        return IntPoly(self._lift(names), names)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        names = self._union(self.vars, other.vars)
        out = dict(self._lift(names))
        for e, c in other._lift(names).items():
            out[e] = out.get(e, 0) + c
        return IntPoly(out, names)

    __radd__ = __add__

    def __neg__(self):
        return IntPoly({e: -c for e, c in self.terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        names = self._union(self.vars, other.vars)
        a, b = self._lift(names), other._lift(names)
        out = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return IntPoly(out, names)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        if k == 0:
            return IntPoly.const(1, self.vars)
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        names = self._union(self.vars, other.vars)
        return self._lift(names) == other._lift(names)

    def __hash__(self):
        live = [i for i, v in enumerate(self.vars)
                if any(e[i] for e in self.terms)]
        return hash(frozenset(
            (tuple((self.vars[i], e[i]) for i in live if e[i]), c)
            for e, c in self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def is_polynomial(self):
        return all(x >= 0 for e in self.terms for x in e)

    def assert_polynomial(self, what="result"):
        if not self.is_polynomial():
            raise NonPolynomialError(f"{what} is not a polynomial: {self}")
        return self

    def degree(self, var):
        if not self.terms:
            return -1
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    def low_degree(self, var):
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return min(e[i] for e in self.terms) if self.terms else 0

    def coeffs(self, var=None):
        """Dense coefficient list of a univariate polynomial."""
        live = [v for v in self.vars if any(e[self.vars.index(v)] for e in self.terms)]
        if var is None:
            if len(live) > 1:
                raise ValueError(f"not univariate: {self}")
            var = live[0] if live else (self.vars[0] if self.vars else "t")
        elif any(v != var for v in live):
            raise ValueError(f"not univariate in {var}: {self}")
        if not self.terms:
            return []
        self.assert_polynomial()
        i = self.vars.index(var) if var in self.vars else None
        deg = max(e[i] for e in self.terms) if i is not None else 0
        out = [0] * (deg + 1)
        for e, c in self.terms.items():
            out[e[i] if i is not None else 0] += c
        return out

    def coefficient(self, exps):
        """Coefficient of the monomial given as mapping var -> exponent."""
        for v in exps:
            if v not in self.vars and exps[v]:
                return 0
        key = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(key, 0)

    # -- substitution -------------------------------------------------------
    def subs(self, assignments):
        """Substitute variables by Laurent monomials or integer values.

        assignments maps a variable name to either an int (evaluation) or a
        mapping var -> exponent describing a monomial with coefficient 1.
        """
        images = {}
        for v in self.vars:
            a = assignments.get(v, {v: 1})
            images[v] = a
        names = []
        for v, a in images.items():
            if not isinstance(a, int):
                names.extend(a)
        names = tuple(sorted(set(names), key=_var_key))
        out = {}
        for e, c in self.terms.items():
            coeff = c
            exp = dict.fromkeys(names, 0)
            for v, k in zip(self.vars, e):
                a = images[v]
                if isinstance(a, int):
                    if k < 0 and a not in (1, -1):
                        raise NonPolynomialError(f"cannot evaluate {v}^{k} at {a}")
                    coeff *= a ** k if k >= 0 else a ** (-k)
                else:
                    for w, j in a.items():
                        exp[w] += j * k
            key = tuple(exp[w] for w in names)
            out[key] = out.get(key, 0) + coeff
        return IntPoly(out, names)

    def evaluate(self, values):
        """Integer value at integer point; values maps every variable to an int."""
        result = self.subs({v: values[v] for v in self.vars})
        return result.terms.get((), 0)

    def shift(self, exps):
        """Multiply by the Laurent monomial var -> exponent."""
        return self * IntPoly.monomial(exps)

    # -- output -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"IntPoly({str(self)!r})"

    def to_json(self):
        live = [v for v in self.vars if any(e[self.vars.index(v)] for e in self.terms)]
        idx = [self.vars.index(v) for v in live]
        return {
            "vars": live,
            "terms": [[[e[i] for i in idx], c] for e, c in self.sorted_terms()],
            "text": str(self),
        }


def poly_arith(a, b, op):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_substitute(p, assignments):
    return p.subs(assignments)


def reverse(p, degree, var="t"):
    """t^degree * p(1/t), asserted to be a polynomial."""
    q = p.subs({var: {var: -1}}) * IntPoly.var(var, degree)
    return q.assert_polynomial("reversal")


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------


class RootOfUnity:
    """exp(2*pi*i*q) with q a reduced fraction in [0, 1)."""

    __slots__ = ("q", "_hash")

    def __init__(self, q):
        q = Fraction(q)
        q = q - (q.numerator // q.denominator)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "_hash", hash(("root", q.numerator, q.denominator)))

    def __setattr__(self, name, value):
        raise AttributeError("RootOfUnity is immutable")

    @classmethod
    def parse(cls, text):
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                num, den = int(num), int(den)
            else:
                num, den = int(text), 1
        except ValueError:
            raise BadLambdaError(f"cannot read eigenvalue {text!r}; expected a/b") from None
        if den <= 0:
            raise BadLambdaError(f"denominator must be positive in {text!r}")
        return cls(Fraction(num, den))

    @property
    def order(self):
        return self.q.denominator

    @property
    def is_one(self):
        return self.q == 0

    def divides(self, m):
        """True when lambda^m = 1."""
        return m % self.order == 0

    def sort_key(self):
        return (self.order, self.q.numerator)

    def __eq__(self, other):
        return isinstance(other, RootOfUnity) and self.q == other.q

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return f"{self.q.numerator}/{self.q.denominator}"

    def __repr__(self):
        return f"RootOfUnity({str(self)!r})"


def epsilon(lam):
    return 1 if lam.is_one else 0


def roots_of_order_dividing(m):
    """All lambda with lambda^m = 1, sorted by (order, numerator)."""
    return sorted({RootOfUnity(Fraction(a, m)) for a in range(m)}, key=RootOfUnity.sort_key)
