"""Reading polynomials over Q[t, 1/t] in variables x1..xn.

Grammar (whitespace is ignored)::

    poly     := term (('+'|'-') term)*
    term     := [coef '*'?] monom | coef
    coef     := rational | '(' tlaurent ')' | 't' ('^' int)?
    monom    := var ('^' int)? ('*' var ('^' int)?)*
    var      := 'x' positive-int
    rational := int ('/' positive-int)?

The reader is slightly more permissive than this: a term may be any product of
coefficients and variables, e.g. ``2*t*x1``.
"""
import json
from dataclasses import dataclass
from fractions import Fraction

from .errors import (BadVariableError, EmptySupportError, NegativeExponentError,
                     ParseError)

AMBIENTS = ("torus", "affine")


class TPolynomial:
    """f(t, x) = sum_v a_v(t) x^v with each a_v a Laurent polynomial in t.

    ``terms`` maps exponent tuples to {power of t: Fraction}.
    """

    def __init__(self, terms, n, ambient="torus"):
        if ambient not in AMBIENTS:
            raise ValueError(f"ambient must be one of {AMBIENTS}")
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.ambient = ambient
        self.terms = {}
        for exp, coeff in terms.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise BadVariableError(f"exponent {exp} has length {len(exp)}, expected {n}")
            if ambient == "affine" and any(e < 0 for e in exp):
                raise NegativeExponentError(f"negative exponent {exp} in the affine setting")
            coeff = {int(j): Fraction(c) for j, c in coeff.items() if c}
            if coeff:
                self.terms[exp] = coeff

    def support(self):
        return sorted(self.terms)

    def __eq__(self, other):
        return (isinstance(other, TPolynomial) and self.n == other.n
                and self.ambient == other.ambient and self.terms == other.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(_format_term(exp, coeff) for exp, coeff in sorted(self.terms.items()))

    def __repr__(self):
        return f"TPolynomial({str(self)!r}, n={self.n}, ambient={self.ambient!r})"

    def to_json(self):
        return {
            "n": self.n,
            "ambient": self.ambient,
            "terms": [{"exp": list(exp),
                       "coeff": [[j, f"{c.numerator}/{c.denominator}"] for j, c in sorted(coeff.items())]}
                      for exp, coeff in sorted(self.terms.items())],
        }


def _format_term(exp, coeff):
    body = ""
    for j, c in sorted(coeff.items()):
        a = abs(c)
        num = f"{a.numerator}" if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        piece = num if j == 0 else f"{num}*t^{j}"
        if body:
            body += (" - " if c < 0 else " + ") + piece
        else:
            body = ("-" if c < 0 else "") + piece
    body = f"({body})"
    mono = "*".join(f"x{i + 1}^{e}" for i, e in enumerate(exp) if e)
    return f"{body}*{mono}" if mono else body


# ---------------------------------------------------------------------------
# tokenizer and recursive-descent reader
# ---------------------------------------------------------------------------


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
        elif ch == "x":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable name must be x followed by an index", i)
            tokens.append(("var", int(text[i + 1:j]), i))
            i = j
        elif ch == "t":
            tokens.append(("t", None, i))
            i += 1
        elif ch in "+-*/^()":
            tokens.append((ch, None, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


def _laurent_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _laurent_add(a, b, sign=1):
    out = dict(a)
    for j, y in b.items():
        out[j] = out.get(j, 0) + sign * y
    return {k: v for k, v in out.items() if v}


class _Reader:
    def __init__(self, text, n, ambient):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.n = n
        self.ambient = ambient

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.pos += 1
        return tok

    def integer(self):
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        return sign * self.take("num")[1]

    def rational(self):
        num = self.take("num")[1]
        if self.peek()[0] == "/":
            self.take()
            tok = self.take("num")
            if tok[1] == 0:
                raise ParseError("zero denominator", tok[2])
            return Fraction(num, tok[1])
        return Fraction(num)

    def exponent(self):
        if self.peek()[0] == "^":
            self.take()
            if self.peek()[0] == "(":
                self.take()
                e = self.integer()
                self.take(")")
                return e
            return self.integer()
        return 1

    def starts_factor(self):
        return self.peek()[0] in ("num", "var", "t", "(")

    # poly := signed sum of terms; returns {exp: {j: c}}
    def poly(self, laurent_only=False):
        total = {}
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        while True:
            exp, coeff = self.term(laurent_only)
            coeff = {j: sign * c for j, c in coeff.items()}
            total[exp] = _laurent_add(total.get(exp, {}), coeff)
            if self.peek()[0] in "+-":
                sign = -1 if self.take()[0] == "-" else 1
                continue
            break
        return total

    def term(self, laurent_only):
        if not self.starts_factor():
            tok = self.peek()
            raise ParseError(f"expected a term, found {tok[0]!r}", tok[2])
        coeff = {0: Fraction(1)}
        exp = [0] * self.n
        first = True
        while True:
            if not first:
                if self.peek()[0] == "*":
                    self.take()
                    if not self.starts_factor():
                        tok = self.peek()
                        raise ParseError("dangling '*'", tok[2])
                elif not self.starts_factor():
                    break
            first = False
            kind, value, where = self.peek()
            if kind == "num":
                coeff = _laurent_mul(coeff, {0: self.rational()})
            elif kind == "t":
                self.take()
                coeff = _laurent_mul(coeff, {self.exponent(): Fraction(1)})
            elif kind == "(":
                self.take()
                inner = self.poly(laurent_only=True)
                self.take(")")
                coeff = _laurent_mul(coeff, inner.get((0,) * self.n, {}))
            elif kind == "var":
                if laurent_only:
                    raise ParseError("variables are not allowed inside a t-coefficient", where)
                self.take()
                if value < 1 or value > self.n:
                    raise BadVariableError(f"variable x{value} outside x1..x{self.n} (at position {where})")
                e = self.exponent()
                if self.ambient == "affine" and e < 0:
                    raise NegativeExponentError(
                        f"x{value}^{e} has a negative exponent in the affine setting (at position {where})")
                exp[value - 1] += e
        return tuple(exp), coeff


def parse_poly(text, ambient="torus", n=1):
    """Read a polynomial in the documented grammar."""
    if ambient not in AMBIENTS:
        raise ValueError(f"ambient must be one of {AMBIENTS}")
    reader = _Reader(text, n, ambient)
    terms = reader.poly()
    tok = reader.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[0]!r}", tok[2])
    poly = TPolynomial(terms, n, ambient)
    if ambient == "affine":
        for exp in poly.terms:
            if any(e < 0 for e in exp):
                raise NegativeExponentError(f"negative exponent {exp} in the affine setting")
    return poly


def poly_from_json(data, ambient=None, n=None):
    """Read the JSON form {"n", "ambient", "terms": [{"exp", "coeff"}]}."""
    if isinstance(data, str):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    try:
        n = data.get("n", n)
        ambient = data.get("ambient", ambient) or "torus"
        terms = {}
        for entry in data["terms"]:
            exp = tuple(int(e) for e in entry["exp"])
            coeff = {}
            for tpow, value in entry["coeff"]:
                coeff[int(tpow)] = coeff.get(int(tpow), 0) + Fraction(value)
            terms[exp] = _laurent_add(terms.get(exp, {}), coeff)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"malformed polynomial JSON: {exc}") from None
    if n is None:
        raise ParseError("JSON polynomial lacks 'n'")
    return TPolynomial(terms, int(n), ambient)


def valuations(p):
    """o(v) = lowest power of t in a_v(t), for each v in the support."""
    if not p.terms:
        raise EmptySupportError("the polynomial has empty support")
    return {exp: min(coeff) for exp, coeff in p.terms.items()}


@dataclass(frozen=True)
class CISystem:
    polys: tuple

    def __post_init__(self):
        polys = tuple(self.polys)
        object.__setattr__(self, "polys", polys)
        if not polys:
            raise ValueError("a system needs at least one polynomial")
        n, ambient = polys[0].n, polys[0].ambient
        if any(p.n != n or p.ambient != ambient for p in polys):
            raise ValueError("all polynomials must share n and the ambient space")
        if len(polys) > n:
            raise ValueError(f"k={len(polys)} polynomials exceed n={n}")

    @property
    def k(self):
        return len(self.polys)

    @property
    def n(self):
        return self.polys[0].n

    @property
    def ambient(self):
        return self.polys[0].ambient


def initial_poly(p, nd, cell):
    """Coefficients a_{v,o(v)} of the support points lifted onto the face above `cell`."""
    cell = nd.subdivision.resolve_cell(cell)
    vals = valuations(p)
    out = {}
    for v, o in vals.items():
        if nd.subdivision.on_lifted_cell(cell, v, o):
            out[v] = p.terms[v][o]
    return out
