"""Toric diagrams and good cones, their validation, and topological invariants.

A toric diagram is an integral simplicial polytope whose facets are all
unimodular simplices. Lifting its vertices ``v`` to ``(v, 1)`` gives the
defining normals of the moment cone of the associated Gorenstein toric contact
manifold; ``cone_to_diagram`` goes back the other way whenever the first Chern
class vanishes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .linalg import FiniteAbelianGroup, Matrix
from .polytope import Facet, VertexPolytope, diagnose_points, lattice_points

IntVector = Tuple[int, ...]


@dataclass(frozen=True)
class Diagnostic:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidDiagramError(ValueError):
    """Raised with the complete list of violated toric-diagram conditions."""

    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class NonGorensteinError(ValueError):
    """The cone has nonzero first Chern class, so it has no toric diagram."""


def lift(v: Sequence[int]) -> IntVector:
    return tuple(v) + (1,)


def _facet_problems(vertices, facet: Facet) -> List[Diagnostic]:
    n = len(vertices[0])
    pts = [list(vertices[i]) for i in facet.vertex_indices]
    if len(pts) != n:
        return [Diagnostic("non-simplicial-facet", f"facet {pts} has {len(pts)} vertices, expected {n}")]
    factors = linalg.invariant_factors(linalg.from_columns([lift(p) for p in pts]))
    if any(f != 1 for f in factors):
        return [Diagnostic("non-unimodular-facet", f"facet {pts} is not unimodular (invariant factors {list(factors)})")]
    return []


def diagnose_diagram(vertices: Sequence[Sequence[int]]) -> List[Diagnostic]:
    """All reasons ``vertices`` do not span a toric diagram; empty when valid."""
    out = []
    if any(not isinstance(x, int) or isinstance(x, bool) for v in vertices for x in v):
        return [Diagnostic("not-integral", "toric diagram vertices must be integers")]
    for code, msg in diagnose_points(vertices):
        out.append(Diagnostic(code, msg))
    if out:
        return out
    P = VertexPolytope(tuple(map(tuple, vertices)), _checked=True)
    for f in P.facets:
        out.extend(_facet_problems(P.vertices, f))
    return out


@dataclass(frozen=True)
class ToricDiagram:
    """A validated toric diagram ``D = conv(v_1, ..., v_d)`` in ``R^n``.

    Vertices keep the order they were given in; facets are sorted by vertex
    index tuple and that order is the facet index used everywhere else.
    """

    vertices: Tuple[IntVector, ...]

    def __post_init__(self):
        verts = tuple(tuple(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        problems = diagnose_diagram(verts)
        if problems:
            raise InvalidDiagramError(problems)

    @cached_property
    def polytope(self) -> VertexPolytope:
        return VertexPolytope(self.vertices, _checked=True)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def facets(self) -> Tuple[Facet, ...]:
        return self.polytope.facets

    def facet_vertices(self, index: int) -> Tuple[IntVector, ...]:
        return tuple(self.vertices[i] for i in self.facets[index].vertex_indices)

    @cached_property
    def lattice_points(self):
        return lattice_points(self.polytope)

    def sorted_vertices(self) -> Tuple[IntVector, ...]:
        return tuple(sorted(self.vertices))

    def same_vertex_set(self, other: "ToricDiagram") -> bool:
        return self.sorted_vertices() == other.sorted_vertices()

    def to_json(self) -> dict:
        return {"dim": self.dim, "vertices": [list(v) for v in self.vertices]}


def validate_diagram(vertices: Sequence[Sequence[int]]) -> ToricDiagram:
    """Build a :class:`ToricDiagram`, raising :class:`InvalidDiagramError` on failure."""
    return ToricDiagram(tuple(tuple(v) for v in vertices))


# ---------------------------------------------------------------------------
# good cones


@dataclass(frozen=True)
class GoodCone:
    """Candidate good cone ``{x : <x, nu_j> >= 0}`` given by primitive integer normals.

    Construction only checks shape and primitivity; :func:`validate_good_cone`
    checks the geometric conditions.
    """

    normals: Tuple[IntVector, ...]

    def __post_init__(self):
        normals = tuple(tuple(int(x) for x in v) for v in self.normals)
        object.__setattr__(self, "normals", normals)
        if not normals:
            raise ValueError("a cone needs at least one normal")
        m = len(normals[0])
        if m < 2 or any(len(v) != m for v in normals):
            raise ValueError("normals must all have the same dimension >= 2")
        for v in normals:
            if linalg.gcd_list(v) != 1:
                raise ValueError(f"normal {list(v)} is not primitive")
        if len(set(normals)) != len(normals):
            raise ValueError("repeated normal")

    @property
    def dim(self) -> int:
        return len(self.normals[0])

    def to_json(self) -> dict:
        return {"dim": self.dim, "normals": [list(v) for v in self.normals]}


def diagram_to_cone(D: ToricDiagram) -> GoodCone:
    return GoodCone(tuple(lift(v) for v in D.vertices))


def cone_rays(C: GoodCone) -> List[IntVector]:
    """Primitive generators of the extreme rays of ``C`` (pointed cones only)."""
    m = C.dim
    rays = set()
    for subset in combinations(C.normals, m - 1):
        try:
            r = linalg.kernel_vector(subset)
        except linalg.RankError:
            continue
        for cand in (r, tuple(-x for x in r)):
            if all(sum(a * b for a, b in zip(cand, nu)) >= 0 for nu in C.normals):
                rays.add(cand)
    return sorted(rays)


@dataclass(frozen=True)
class ConeFace:
    rays: Tuple[int, ...]      # indices into cone_rays(C)
    normals: Tuple[int, ...]   # indices of the defining normals vanishing on the face
    codim: int


def cone_faces(C: GoodCone) -> List[ConeFace]:
    """Nonzero proper faces of a pointed full-dimensional cone.

    Faces are closed under intersection, so they are generated from the
    facets ``C ∩ nu_j^perp`` by pairwise intersection of their ray sets.
    """
    rays = cone_rays(C)
    m = C.dim
    zero = [{i for i, r in enumerate(rays) if sum(a * b for a, b in zip(r, nu)) == 0} for nu in C.normals]
    faces = {frozenset(z) for z in zero if z}
    frontier = set(faces)
    while frontier:
        new = set()
        for a in frontier:
            for b in faces:
                c = a & b
                if c and c not in faces and c not in new:
                    new.add(c)
        faces |= new
        frontier = new
    out = []
    for f in faces:
        ray_idx = tuple(sorted(f))
        dim = linalg.rank([rays[i] for i in ray_idx])
        if dim == m:
            continue
        normals = tuple(j for j, z in enumerate(zero) if f <= z)
        out.append(ConeFace(ray_idx, normals, m - dim))
    return sorted(out, key=lambda f: (f.codim, f.normals, f.rays))


@dataclass(frozen=True)
class ConeReport:
    good: bool
    diagnostics: Tuple[Diagnostic, ...]
    rays: Tuple[IntVector, ...] = ()


def validate_good_cone(C: GoodCone) -> ConeReport:
    """Check strict convexity, minimality of the normals, and the face condition.

    The face condition: every codimension-``k`` face (``1 <= k <= n``) lies on
    exactly ``k`` of the defining hyperplanes, and those ``k`` normals extend
    to a basis of ``Z^{n+1}``.
    """
    m = C.dim
    diags = []
    if len(C.normals) < m or linalg.rank(C.normals) < m:
        diags.append(Diagnostic("not-strictly-convex", "normals do not span; the cone contains a line"))
        return ConeReport(False, tuple(diags))
    rays = cone_rays(C)
    if not rays or linalg.rank(rays) < m:
        diags.append(Diagnostic("not-full-dimensional", "the cone has empty interior"))
        return ConeReport(False, tuple(diags), tuple(rays))
    faces = cone_faces(C)
    facet_normals = {f.normals for f in faces if f.codim == 1}
    for j, nu in enumerate(C.normals):
        if (j,) not in facet_normals:
            diags.append(Diagnostic("redundant-normal", f"normal {list(nu)} does not define a facet"))
    for f in faces:
        normals = [C.normals[j] for j in f.normals]
        if len(normals) != f.codim:
            diags.append(Diagnostic(
                "face-not-simple",
                f"codimension-{f.codim} face with rays {[list(rays[i]) for i in f.rays]} "
                f"lies on {len(normals)} facets {[list(v) for v in normals]}",
            ))
        elif any(x != 1 for x in linalg.invariant_factors(linalg.from_columns(normals))):
            diags.append(Diagnostic(
                "face-not-unimodular",
                f"normals {[list(v) for v in normals]} do not extend to a basis of Z^{m}",
            ))
    return ConeReport(not diags, tuple(diags), tuple(rays))


def c1_is_zero(C: GoodCone) -> Optional[IntVector]:
    """Integral covector taking the value 1 on every normal, or ``None``."""
    return linalg.solve_integer_linear(C.normals, [1] * len(C.normals))


def _basis_with_last_row(row: Sequence[int]) -> Matrix:
    """An ``SL(m, Z)`` matrix whose last row is the primitive vector ``row``.

    Returns the identity when ``row`` is the last standard basis vector.
    """
    M = linalg.complete_to_unimodular([tuple(reversed(row))])
    if M is None:
        raise ValueError(f"{list(row)} is not primitive")
    # reverse rows and columns so the completed column lands last, then transpose
    A = [list(r) for r in linalg.transpose(tuple(tuple(reversed(r)) for r in reversed(M)))]
    if linalg.det(A) < 0:
        A[0] = [-x for x in A[0]]
    return linalg.as_matrix(A)


def cone_to_diagram(C: GoodCone) -> Tuple[ToricDiagram, Matrix]:
    """Toric diagram of a cone with vanishing first Chern class.

    Returns ``(D, A)`` where ``A`` lies in ``SL(n+1, Z)``, its last row is the
    covector from :func:`c1_is_zero`, and ``A @ nu_j == (v_j, 1)`` for the
    vertices ``v_j`` of ``D`` (in the order of the normals).
    """
    nu_star = c1_is_zero(C)
    if nu_star is None:
        raise NonGorensteinError("first Chern class is nonzero: no covector takes value 1 on all normals")
    A = _basis_with_last_row(nu_star)
    images = [linalg.matvec(A, nu) for nu in C.normals]
    assert all(w[-1] == 1 for w in images)
    return ToricDiagram(tuple(tuple(w[:-1]) for w in images)), A


# ---------------------------------------------------------------------------
# topology


def fundamental_group(D: ToricDiagram) -> FiniteAbelianGroup:
    """``Z^{n+1}`` modulo the lattice spanned by the lifted vertices."""
    G = FiniteAbelianGroup.quotient([lift(v) for v in D.vertices])
    if G.free_rank:
        raise AssertionError("lifted vertices of a full-dimensional diagram must span R^{n+1}")
    return G


def pi2_rank(D: ToricDiagram) -> int:
    return D.n_vertices - D.dim - 1


def diffeo_type_dim5(D: ToricDiagram) -> str:
    """Diffeomorphism type of a simply connected 5-dimensional manifold from its diagram."""
    if D.dim != 2:
        raise ValueError("diffeomorphism type is only classified for 2-dimensional diagrams")
    if not fundamental_group(D).is_trivial:
        raise ValueError("manifold is not simply connected")
    d = D.n_vertices
    return "S5" if d == 3 else f"#_{d - 3} S2xS3"


# ---------------------------------------------------------------------------
# JSON shapes


def diagram_from_json(data: Dict) -> ToricDiagram:
    """Parse ``{"dim": n, "vertices": [[...], ...]}``; unknown keys are rejected."""
    _check_keys(data, {"dim", "vertices"})
    verts = _int_rows(data["vertices"], data["dim"], "vertices")
    return validate_diagram(verts)


def cone_from_json(data: Dict) -> GoodCone:
    """Parse ``{"dim": n+1, "normals": [[...], ...]}``; unknown keys are rejected."""
    _check_keys(data, {"dim", "normals"})
    return GoodCone(tuple(_int_rows(data["normals"], data["dim"], "normals")))


def _check_keys(data, expected):
    if not isinstance(data, dict):
        raise TypeError("expected a JSON object")
    keys = set(data)
    if keys != expected:
        extra, missing = sorted(keys - expected), sorted(expected - keys)
        raise KeyError(f"bad keys: unknown {extra}, missing {missing}")


def _int_rows(rows, dim, name):
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise TypeError("dim must be a positive integer")
    if not isinstance(rows, list) or not rows:
        raise TypeError(f"{name} must be a non-empty list")
    out = []
    for r in rows:
        if not isinstance(r, list) or len(r) != dim:
            raise TypeError(f"each entry of {name} must be a list of {dim} integers")
        if any(not isinstance(x, int) or isinstance(x, bool) for x in r):
            raise TypeError(f"{name} entries must be integers")
        out.append(tuple(r))
    return out
