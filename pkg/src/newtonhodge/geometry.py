"""Exact convex geometry: hulls with face lattices, regular subdivisions from
lower hulls, lattice point enumeration, and normalized/mixed volumes.

Hulls are computed by the double description method on the homogenized cone
of the input points, in integer arithmetic, after projecting the points
isomorphically onto coordinates that parametrize their affine span.
"""
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, factorial

from .errors import DimensionMismatchError, OutsideError, UnknownCellError
from .exact import (affine_lattice_basis, affine_rank, common_denominator, det_int,
                    integer_kernel, lattice_coordinates, pivot_columns, primitive,
                    rank, solve_in_span)


def _as_point(p):
    return tuple(x if isinstance(x, int) else Fraction(x) for x in p)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# face lattices
# ---------------------------------------------------------------------------


class FaceLattice:
    """Faces (as frozensets of vertex indices) graded by dimension.

    Also used for polyhedral complexes: there every interval [F, F'] is the
    face lattice of the cell F'.
    """

    def __init__(self, dims):
        self.dims = dict(dims)
        self.elements = sorted(self.dims, key=lambda f: (self.dims[f], sorted(f)))
        self.cache = {}

    def __contains__(self, face):
        return face in self.dims

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def dim(self, face):
        return self.dims[face]

    def faces_of(self, top):
        return [f for f in self.elements if f <= top]

    def interval(self, lo, hi):
        return [f for f in self.elements if lo <= f and f <= hi]

    def cofaces(self, lo):
        return [f for f in self.elements if lo <= f]

    def is_eulerian(self, lo, hi):
        if lo == hi:
            return True
        return sum((-1) ** self.dims[f] for f in self.interval(lo, hi)) == 0


def _face_closure(facet_sets, full, dim_of):
    faces = {full: dim_of(full)}
    frontier = [full]
    while frontier:
        nxt = []
        for face in frontier:
            for fs in facet_sets:
                g = face & fs
                if g != face and g not in faces:
                    faces[g] = dim_of(g)
                    nxt.append(g)
        frontier = nxt
    faces[frozenset()] = -1
    return faces


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------


def _inverse(mat):
    n = len(mat)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        lead = aug[col][col]
        aug[col] = [x / lead for x in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


def _primitive_int(vec):
    den = common_denominator(vec)
    return primitive([int(x * den) for x in vec])


def _dd_facets(points, d):
    """Facet inequalities (a, b), a.x >= b, of the hull of integer points
    spanning R^d (d >= 1)."""
    gens = [(1,) + tuple(p) for p in points]
    dim = d + 1
    chosen = []
    for i, g in enumerate(gens):
        if rank([gens[j] for j in chosen] + [g]) > len(chosen):
            chosen.append(i)
            if len(chosen) == dim:
                break
    inv = _inverse([gens[i] for i in chosen])
    # column j of the inverse is tight on every chosen generator except j
    ineqs = [_primitive_int([inv[r][j] for r in range(dim)]) for j in range(dim)]
    zeros = [frozenset(chosen[:j] + chosen[j + 1:]) for j in range(dim)]
    chosen_set = set(chosen)
    for gi, g in enumerate(gens):
        if gi in chosen_set:
            continue
        vals = [_dot(h, g) for h in ineqs]
        neg = [i for i, s in enumerate(vals) if s < 0]
        if not neg:
            continue
        pos = [i for i, s in enumerate(vals) if s > 0]
        zer = [i for i, s in enumerate(vals) if s == 0]
        new_h, new_z = [], []
        for p in pos:
            for q in neg:
                common = zeros[p] & zeros[q]
                if len(common) < dim - 2:
                    continue
                if any(common <= zeros[r] for r in range(len(ineqs)) if r != p and r != q):
                    continue
                h = [vals[p] * a - vals[q] * b for a, b in zip(ineqs[q], ineqs[p])]
                new_h.append(primitive(h))
                new_z.append(common | {gi})
        ineqs_next = [ineqs[i] for i in pos] + [ineqs[i] for i in zer] + new_h
        zeros = [zeros[i] for i in pos] + [zeros[i] | {gi} for i in zer] + new_z
        ineqs = ineqs_next
    return [(tuple(h[1:]), -h[0]) for h in ineqs]


# ---------------------------------------------------------------------------
# polytopes
# ---------------------------------------------------------------------------


class Polytope:
    """Convex hull of finitely many points with its full face lattice.

    Faces are frozensets of indices into ``points`` (vertex indices only).
    ``facets`` holds triples (normal, offset, vertex set) meaning
    normal . x >= offset with equality exactly on that facet;
    ``equations`` holds pairs (normal, offset) cutting out the affine span.
    """

    def __init__(self, points, dim, vertices, facets, equations, lattice):
        self.points = tuple(points)
        self.dim = dim
        self.vertices = tuple(sorted(vertices))
        self.facets = facets
        self.equations = equations
        self.lattice = lattice
        self.ambient_dim = len(points[0]) if points else 0

    @property
    def full(self):
        return frozenset(self.vertices)

    def __repr__(self):
        return f"Polytope(dim={self.dim}, vertices={[self.points[i] for i in self.vertices]})"

    def vertex_points(self, face=None):
        face = self.full if face is None else face
        return [self.points[i] for i in sorted(face)]

    def contains(self, x):
        if not self.points:
            return False
        return (all(_dot(a, x) == b for a, b in self.equations)
                and all(_dot(a, x) >= b for a, b, _ in self.facets))

    def face_equations(self, face):
        """Equations whose common zero set in the polytope is exactly `face`."""
        return list(self.equations) + [(a, b) for a, b, vs in self.facets if face <= vs]

    def points_on(self, face):
        """Indices of all stored points (vertices or not) lying on `face`."""
        if not face:
            return frozenset()
        eqs = [(a, b) for a, b, vs in self.facets if face <= vs]
        return frozenset(i for i, p in enumerate(self.points)
                         if all(_dot(a, p) == b for a, b in eqs))

    def facets_of(self, face):
        d = self.lattice.dim(face)
        return [g for g in self.lattice.faces_of(face) if self.lattice.dim(g) == d - 1]

    def face_polytope(self, face):
        return convex_hull(self.vertex_points(face))

    @cached_property
    def lattice_frame(self):
        """(base point, basis) of Aff(P) ∩ Z^N; requires integer vertices."""
        pts = self.vertex_points()
        if any(not isinstance(x, int) and Fraction(x).denominator != 1 for p in pts for x in p):
            raise ValueError("lattice data requested for a non-lattice polytope")
        return affine_lattice_basis([tuple(int(x) for x in p) for p in pts])

    @classmethod
    def empty(cls, ambient_dim=0):
        return cls((), -1, (), [], [], FaceLattice({frozenset(): -1}))


def convex_hull(points):
    """Exact hull of a non-empty list of rational points."""
    uniq = []
    seen = set()
    for p in points:
        p = _as_point(p)
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    if not uniq:
        raise ValueError("convex hull of no points")
    den = common_denominator(x for p in uniq for x in p)
    ints = [tuple(int(x * den) for x in p) for p in uniq]
    p0 = ints[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in ints]
    nonzero = [r for r in diffs if any(r)]
    ambient = len(p0)
    orth = integer_kernel(nonzero, ambient) if nonzero else [
        tuple(int(i == j) for j in range(ambient)) for i in range(ambient)]
    equations = [(tuple(y), Fraction(_dot(y, p0), den)) for y in orth]
    if not nonzero:
        lattice = FaceLattice({frozenset(): -1, frozenset({0}): 0})
        return Polytope(uniq, 0, [0], [], equations, lattice)
    piv = pivot_columns(nonzero)
    d = len(piv)
    proj = [tuple(p[c] for c in piv) for p in ints]
    raw = _dd_facets(proj, d)
    facets = []
    incid = []
    for a, b in raw:
        tight = frozenset(i for i, q in enumerate(proj) if _dot(a, q) == b)
        normal = [0] * ambient
        for c, x in zip(piv, a):
            normal[c] = x
        facets.append((tuple(normal), Fraction(b, den), tight))
        incid.append(tight)
    everything = frozenset(range(len(uniq)))
    vertices = []
    for i in range(len(uniq)):
        meet = everything
        for s in incid:
            if i in s:
                meet = meet & s
        if meet == {i}:
            vertices.append(i)
    vset = frozenset(vertices)
    facets = [(a, b, s & vset) for a, b, s in facets]

    def dim_of(face):
        return affine_rank([proj[i] for i in face])

    faces = _face_closure([s for _, _, s in facets], vset, dim_of)
    return Polytope(uniq, d, vertices, facets, equations, FaceLattice(faces))


def minkowski_sum(polys):
    """Hull of all sums of vertices."""
    current = [tuple(p) for p in polys[0].vertex_points()]
    for poly in polys[1:]:
        sums = {tuple(a + b for a, b in zip(p, q)) for p in current for q in poly.vertex_points()}
        hull = convex_hull(sorted(sums))
        current = hull.vertex_points()
    return convex_hull(current)


def cayley_polytope(polys, J=None):
    """conv of {e_j} x P_j for j in J (1-based), inside R^k x R^n."""
    k = len(polys)
    J = sorted(J) if J is not None else list(range(1, k + 1))
    if not J:
        raise ValueError("J must be non-empty")
    pts = []
    for j in J:
        e = tuple(int(i == j - 1) for i in range(k))
        pts.extend(e + tuple(v) for v in polys[j - 1].vertex_points())
    return convex_hull(pts)


# ---------------------------------------------------------------------------
# lattice points and volumes
# ---------------------------------------------------------------------------


def lattice_points(P, m):
    """All integer points of the dilate m*P."""
    if P.dim < 0:
        return []
    if m == 0:
        return [(0,) * P.ambient_dim]
    base, basis = P.lattice_frame
    start = tuple(m * x for x in base)
    if not basis:
        return [start]
    coords = [lattice_coordinates(p, base, basis) for p in P.vertex_points()]
    lo = [m * min(c[i] for c in coords) for i in range(len(basis))]
    hi = [m * max(c[i] for c in coords) for i in range(len(basis))]
    # facet tests in lattice coordinates: m*a.base - ceil(m*b) + sum c_i (a.B_i) >= 0
    tests = [(m * _dot(a, base) - ceil(m * b), [_dot(a, B) for B in basis]) for a, b, _ in P.facets]
    out = []
    for c in product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if all(off + _dot(alpha, c) >= 0 for off, alpha in tests):
            out.append(tuple(s + sum(ci * B[j] for ci, B in zip(c, basis))
                             for j, s in enumerate(start)))
    return out


def _pulling_triangulation(P, face):
    d = P.lattice.dim(face)
    if d == 0:
        return [tuple(face)]
    apex = min(face)
    out = []
    for g in P.facets_of(face):
        if apex in g:
            continue
        for simplex in _pulling_triangulation(P, g):
            out.append((apex,) + simplex)
    return out


def normalized_volume(P):
    """dim! times the volume relative to the lattice Aff(P) ∩ Z^N."""
    if P.dim < 0:
        raise ValueError("volume of the empty polytope is undefined")
    if P.dim == 0:
        return 1
    base, basis = P.lattice_frame
    coords = {i: lattice_coordinates(P.points[i], base, basis) for i in P.vertices}
    total = 0
    for simplex in _pulling_triangulation(P, P.full):
        apex = coords[simplex[0]]
        mat = [[a - b for a, b in zip(coords[i], apex)] for i in simplex[1:]]
        total += abs(det_int(mat))
    return total


def mixed_volume(polys):
    """Normalized mixed volume of d lattice polytopes in Z^d."""
    d = len(polys)
    if d == 0 or any(P.ambient_dim != d for P in polys):
        raise DimensionMismatchError(
            f"mixed volume needs d polytopes in Z^d; got {d} in dims {[P.ambient_dim for P in polys]}")
    total = 0
    cache = {}
    for k in range(1, d + 1):
        for subset in combinations(range(d), k):
            key = tuple(sorted(id(polys[i]) for i in subset))
            if key not in cache:
                S = minkowski_sum([polys[i] for i in subset])
                cache[key] = normalized_volume(S) if S.dim == d else 0
            total += (-1) ** (d - k) * cache[key]
    value, rem = divmod(total, factorial(d))
    if rem:
        raise ArithmeticError("mixed volume sum not divisible by d!")
    return value


# ---------------------------------------------------------------------------
# regular subdivisions
# ---------------------------------------------------------------------------


class Cell:
    """A cell of a regular subdivision with an affine extension of nu."""

    __slots__ = ("vertices", "dim", "gradient", "constant")

    def __init__(self, vertices, dim, gradient, constant):
        self.vertices = vertices
        self.dim = dim
        self.gradient = gradient
        self.constant = constant

    def nu(self, x):
        return _dot(self.gradient, x) + self.constant

    def __repr__(self):
        return f"Cell({sorted(self.vertices)}, dim={self.dim})"


class RegularSubdivision:
    """Subdivision of conv(points) by the projected bounded lower faces of the
    lifted point set.

    Cells and faces of the base are frozensets of indices into ``points``.
    """

    def __init__(self, points, heights, base, cells, full_cells):
        self.points = tuple(points)
        self.heights = tuple(heights)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.base = base
        self.cells = cells
        self.lattice = FaceLattice({f: c.dim for f, c in cells.items()})
        self.full_cells = full_cells
        self._cell_polytopes = {}
        self._on_cache = {}
        self._sigma = {}

    @property
    def dim(self):
        return self.base.dim

    def cell_points(self, cell):
        return [self.points[i] for i in sorted(cell)]

    def resolve_cell(self, cell):
        """Accept a frozenset of indices or an iterable of vertex coordinates."""
        if isinstance(cell, frozenset) and all(isinstance(i, int) for i in cell):
            key = cell
        else:
            try:
                key = frozenset(self.index[tuple(p)] for p in cell)
            except (KeyError, TypeError):
                raise UnknownCellError(f"{cell} is not a cell") from None
        if key not in self.cells:
            raise UnknownCellError(f"{sorted(self.points[i] for i in key)} is not a cell")
        return key

    def nu(self, x):
        """The convex piecewise affine function: max of the full-cell pieces."""
        return max(self.cells[f].nu(x) for f in self.full_cells)

    def cell_polytope(self, cell):
        if cell not in self._cell_polytopes:
            self._cell_polytopes[cell] = (convex_hull(self.cell_points(cell))
                                          if cell else Polytope.empty())
        return self._cell_polytopes[cell]

    def base_face_points(self, face):
        """Indices of the points lying on a face of the base polytope."""
        if face not in self._on_cache:
            self._on_cache[face] = self.base.points_on(face)
        return self._on_cache[face]

    def cells_in(self, face):
        on = self.base_face_points(face)
        return [f for f in self.lattice.elements if f <= on]

    def sigma(self, cell):
        """Smallest face of the base containing the cell."""
        if cell not in self._sigma:
            best = None
            for face in self.base.lattice.elements:
                if cell <= self.base_face_points(face):
                    best = face
                    break
            self._sigma[cell] = best
        return self._sigma[cell]

    def contains_point(self, cell, x):
        return self.cell_polytope(cell).contains(x)

    def on_lifted_cell(self, cell, v, height):
        """True when (v, height) lies on the lifted face above `cell`."""
        return self.contains_point(cell, v) and self.cells[cell].nu(v) == height

    def lifted_cell_points(self, cell):
        return [tuple(self.points[i]) + (self.heights[i],) for i in sorted(cell)]


def locate_cell(S, x):
    """Minimal cell containing x."""
    x = _as_point(x)
    if not S.base.contains(x):
        raise OutsideError(f"{x} lies outside the subdivided polytope")
    for cell in S.lattice.elements:
        if cell and S.contains_point(cell, x):
            return cell
    raise OutsideError(f"{x} not covered by any cell")


def _affine_interpolant(points, heights):
    """(gradient, constant) of the affine function through the lifted points,
    assumed to exist; gradient is supported on pivot coordinates."""
    p0 = points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in points[1:]]
    piv = pivot_columns(diffs) if any(any(r) for r in diffs) else []
    ambient = len(p0)
    if not piv:
        return (Fraction(0),) * ambient, Fraction(heights[0])
    # choose independent rows to solve for the gradient on pivot columns
    rows, rhs = [], []
    for r, h in zip(diffs, heights[1:]):
        cand = rows + [[r[c] for c in piv]]
        if rank(cand) > len(rows):
            rows.append([r[c] for c in piv])
            rhs.append(Fraction(h) - Fraction(heights[0]))
        if len(rows) == len(piv):
            break
    # solve rows * g = rhs
    cols = [[row[j] for row in rows] for j in range(len(piv))]
    g_piv = solve_in_span(rhs, cols)
    grad = [Fraction(0)] * ambient
    for c, val in zip(piv, g_piv):
        grad[c] = val
    const = Fraction(heights[0]) - _dot(grad, p0)
    return tuple(grad), const


def lower_hull_subdivision(lifted):
    """Regular subdivision from a mapping point -> height."""
    points = sorted(tuple(int(x) for x in p) for p in lifted)
    heights = [Fraction(lifted[p]) for p in points]
    base = convex_hull(points)
    lifted_pts = [p + (h,) for p, h in zip(points, heights)]
    top = convex_hull(lifted_pts)
    ambient = len(points[0])
    cells = {}
    full = []
    if top.dim == base.dim:
        grad, const = _affine_interpolant(points, heights)
        for face in base.lattice.elements:
            cells[face] = Cell(face, base.lattice.dim(face), grad, const)
        full = [base.full]
        return RegularSubdivision(points, heights, base, cells, full)
    lower = []
    for a, b, vs in top.facets:
        if a[-1] > 0:
            grad = tuple(Fraction(-x) / a[-1] for x in a[:-1])
            lower.append((vs, grad, Fraction(b) / a[-1]))
    for face in top.lattice.elements:
        for vs, grad, const in lower:
            if face <= vs:
                cells[face] = Cell(face, top.lattice.dim(face), grad, const)
                break
    full = [vs for vs, _, _ in lower]
    return RegularSubdivision(points, heights, base, cells, full)
