"""Vertex-presented rational polytopes: facets, lattice points, containment, volume.

Everything is exact. Facets are found by the exhaustive hyperplane search
(every ``n``-subset of points that spans a supporting hyperplane), which is
plenty at the sizes toric diagrams come in (tens of vertices, ``n <= 5``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations, product
from math import ceil, factorial, floor
from typing import List, Sequence, Tuple

from .linalg import DimensionError, RankError, det, kernel_vector, rank

Point = Tuple  # tuple of int or Fraction


class PolytopeError(ValueError):
    """Invalid vertex input. ``code`` names the violated condition."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _point(p) -> Point:
    out = []
    for x in p:
        f = Fraction(x)
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


def affine_rank(points: Sequence[Point]) -> int:
    """Dimension of the affine hull of ``points`` (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


@dataclass(frozen=True)
class Facet:
    """A facet: ``<inward_normal, x> >= offset`` on the polytope, with equality
    exactly at ``vertex_indices``."""

    vertex_indices: Tuple[int, ...]
    inward_normal: Tuple[int, ...]
    offset: Fraction

    def evaluate(self, x: Sequence) -> Fraction:
        """Signed slack ``<u, x> - c``; zero on the facet hyperplane."""
        return sum(u * Fraction(xi) for u, xi in zip(self.inward_normal, x)) - self.offset


def supporting_hyperplanes(points: Sequence[Point]) -> List[Facet]:
    """All facets of ``conv(points)``, for a full-dimensional point set.

    ``vertex_indices`` index into ``points`` and list *every* input point on
    the facet (non-vertices included). Facets come out sorted by that index
    tuple.
    """
    n = len(points[0])
    centroid = tuple(sum(Fraction(p[i]) for p in points) / len(points) for i in range(n))
    found = {}
    for subset in combinations(range(len(points)), n):
        if any(set(subset) <= set(idx) for idx in found):
            continue
        base = points[subset[0]]
        diffs = [[a - b for a, b in zip(points[i], base)] for i in subset[1:]]
        if n == 1:
            normal = (1,)
        else:
            try:
                normal = kernel_vector(diffs)
            except RankError:
                continue  # affinely dependent subset
        c = sum(u * Fraction(x) for u, x in zip(normal, base))
        if sum(u * x for u, x in zip(normal, centroid)) < c:
            normal = tuple(-u for u in normal)
            c = -c
        vals = [sum(u * Fraction(x) for u, x in zip(normal, p)) - c for p in points]
        if any(v < 0 for v in vals):
            continue
        on = tuple(i for i, v in enumerate(vals) if v == 0)
        found[on] = Facet(on, tuple(int(u) for u in normal), c)
    return [found[k] for k in sorted(found)]


def diagnose_points(points: Sequence[Sequence]) -> List[Tuple[str, str]]:
    """Every reason ``points`` fail to be the vertex list of a full-dimensional polytope.

    Returns ``(code, message)`` pairs; codes are ``empty``, ``ragged``,
    ``duplicate-vertex``, ``not-full-dimensional`` and ``non-extreme-vertex``.
    """
    if not points:
        return [("empty", "no vertices given")]
    pts = [_point(p) for p in points]
    n = len(pts[0])
    if n == 0 or any(len(p) != n for p in pts):
        return [("ragged", "vertices must all have the same positive dimension")]
    problems = []
    seen = {}
    for i, p in enumerate(pts):
        if p in seen:
            problems.append(("duplicate-vertex", f"vertex {i} repeats vertex {seen[p]}: {list(p)}"))
        else:
            seen[p] = i
    uniq = list(seen)
    if affine_rank(uniq) < n:
        problems.append(("not-full-dimensional", f"affine hull has dimension {affine_rank(uniq)} < {n}"))
        return problems
    facets = supporting_hyperplanes(uniq)
    for i, p in enumerate(uniq):
        normals = [f.inward_normal for f in facets if i in f.vertex_indices]
        if len(normals) < n or rank(normals) < n:
            problems.append(("non-extreme-vertex", f"point {list(p)} is not a vertex of the convex hull"))
    return problems


@dataclass(frozen=True)
class VertexPolytope:
    """Full-dimensional convex polytope given by its vertices."""

    vertices: Tuple[Point, ...]
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(_point(v) for v in self.vertices))
        if not self._checked:
            problems = diagnose_points(self.vertices)
            if problems:
                code, msg = problems[0]
                raise PolytopeError(code, "; ".join(m for _, m in problems))

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def is_integral(self) -> bool:
        return all(isinstance(x, int) for v in self.vertices for x in v)

    @cached_property
    def facets(self) -> Tuple[Facet, ...]:
        return tuple(supporting_hyperplanes(self.vertices))

    def contains(self, x: Sequence, strict: bool = False) -> bool:
        return contains(self, x, strict)


def facets(P: VertexPolytope) -> Tuple[Facet, ...]:
    return P.facets


def contains(P: VertexPolytope, x: Sequence, strict: bool = False) -> bool:
    """Whether ``x`` satisfies every facet inequality (strictly, if ``strict``)."""
    if len(x) != P.dim:
        raise DimensionError(f"point of dimension {len(x)} tested against a {P.dim}-polytope")
    for f in P.facets:
        s = f.evaluate(x)
        if s < 0 or (strict and s == 0):
            return False
    return True


@dataclass(frozen=True)
class LatticePoints:
    """Integer points of a polytope split into vertices, other boundary points, and interior."""

    vertices: Tuple[Tuple[int, ...], ...]
    boundary: Tuple[Tuple[int, ...], ...]
    interior: Tuple[Tuple[int, ...], ...]

    @property
    def all(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(sorted(self.vertices + self.boundary + self.interior))

    @property
    def n_boundary(self) -> int:
        return len(self.vertices) + len(self.boundary)


def lattice_points(P: VertexPolytope) -> LatticePoints:
    """Enumerate integer points by scanning the integer bounding box."""
    n = P.dim
    lo = [ceil(min(Fraction(v[i]) for v in P.vertices)) for i in range(n)]
    hi = [floor(max(Fraction(v[i]) for v in P.vertices)) for i in range(n)]
    vset = set(P.vertices)
    verts, bdry, inner = [], [], []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        slacks = [f.evaluate(x) for f in P.facets]
        if any(s < 0 for s in slacks):
            continue
        if x in vset:
            verts.append(x)
        elif all(s > 0 for s in slacks):
            inner.append(x)
        else:
            bdry.append(x)
    return LatticePoints(tuple(verts), tuple(bdry), tuple(inner))


def simplex_normalized_volume(simplex: Sequence[Sequence]) -> Fraction:
    """``n! vol`` of an ``n``-simplex given by its ``n + 1`` vertices."""
    base = simplex[0]
    return abs(det([[Fraction(a) - Fraction(b) for a, b in zip(p, base)] for p in simplex[1:]]))


def _face_triangulation(P: VertexPolytope, face: Tuple[int, ...], dim: int) -> List[Tuple[int, ...]]:
    """Pulling triangulation of the ``dim``-face with vertex indices ``face``."""
    if len(face) == dim + 1:
        return [face]
    apex = face[0]
    fset = set(face)
    subfaces = set()
    for f in P.facets:
        inter = tuple(sorted(fset & set(f.vertex_indices)))
        if apex in inter or len(inter) < dim:
            continue
        if affine_rank([P.vertices[i] for i in inter]) == dim - 1:
            subfaces.add(inter)
    simplices = []
    for sub in sorted(subfaces):
        for s in _face_triangulation(P, sub, dim - 1):
            simplices.append((apex,) + s)
    return simplices


def star_triangulation(P: VertexPolytope, apex: int = 0) -> List[Tuple[int, ...]]:
    """Triangulate ``P`` by coning from vertex ``apex`` over the facets missing it.

    Non-simplicial facets are triangulated recursively the same way, pulling
    their smallest vertex index.
    """
    n = P.dim
    simplices = []
    for f in P.facets:
        if apex in f.vertex_indices:
            continue
        face = tuple(sorted(f.vertex_indices))
        for s in _face_triangulation(P, face, n - 1):
            simplices.append((apex,) + s)
    return simplices


def normalized_volume(P: VertexPolytope, apex: int = 0):
    """``n! vol(P)``: an ``int`` for lattice polytopes, otherwise a ``Fraction``."""
    total = sum(
        (simplex_normalized_volume([P.vertices[i] for i in s]) for s in star_triangulation(P, apex)),
        Fraction(0),
    )
    if P.is_integral:
        assert total.denominator == 1
        return int(total)
    return total


def volume(P: VertexPolytope) -> Fraction:
    return Fraction(normalized_volume(P)) / factorial(P.dim)


def barycenter(points: Sequence[Sequence]) -> Tuple[Fraction, ...]:
    return tuple(sum(Fraction(p[i]) for p in points) / len(points) for i in range(len(points[0])))


def polygon_vertices_ccw(P: VertexPolytope) -> List[Tuple[int, ...]]:
    """Vertices of a 2-D polytope in counterclockwise order, starting from the
    lexicographically smallest."""
    if P.dim != 2:
        raise DimensionError("counterclockwise ordering needs a polygon")
    adj = {i: [] for i in range(len(P.vertices))}
    for f in P.facets:
        a, b = f.vertex_indices
        adj[a].append(b)
        adj[b].append(a)
    start = min(range(len(P.vertices)), key=lambda i: P.vertices[i])
    order = [start]
    # the CCW successor of the lowest-left vertex has the smaller turning angle
    a, b = adj[start]
    va, vb, s = P.vertices[a], P.vertices[b], P.vertices[start]
    cross = (va[0] - s[0]) * (vb[1] - s[1]) - (va[1] - s[1]) * (vb[0] - s[0])
    nxt = a if cross > 0 else b
    prev = start
    while nxt != start:
        order.append(nxt)
        prev, nxt = nxt, next(j for j in adj[nxt] if j != prev)
    return [P.vertices[i] for i in order]


def shoelace_area(polygon: Sequence[Sequence]) -> Fraction:
    """Area of a simple polygon from its vertices in cyclic order."""
    s = Fraction(0)
    for (x1, y1), (x2, y2) in zip(polygon, list(polygon[1:]) + [polygon[0]]):
        s += Fraction(x1) * Fraction(y2) - Fraction(x2) * Fraction(y1)
    return abs(s) / 2
