"""Unimodular lattice triangulations of toric diagrams.

A triangulation of ``D`` into lattice simplices of normalized volume 1 is the
combinatorial shadow of a crepant toric resolution, hence of a crepant toric
symplectic filling; its simplex count is the Euler characteristic of the
filling. Regularity of the triangulation is not checked.

Dimension 1 and 2 always succeed and are built directly. Dimension 3 uses an
exhaustive advancing-front search, so ``None`` there is a proof that no
unimodular triangulation on the lattice points of ``D`` exists. Higher
dimensions are only handled when the vertices are the only lattice points,
where the search space is a handful of simplices.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .polytope import normalized_volume, polygon_vertices_ccw
from .reeb import mean_euler_characteristic
from .toric import ToricDiagram, lift

IntPoint = Tuple[int, ...]


class UnsupportedDimensionError(ValueError):
    pass


@dataclass(frozen=True)
class UnimodularTriangulation:
    """Simplices (index tuples into ``points``) tiling a toric diagram."""

    points: Tuple[IntPoint, ...]
    simplices: Tuple[Tuple[int, ...], ...]

    @property
    def n_simplices(self) -> int:
        return len(self.simplices)

    def to_json(self) -> dict:
        return {"points": [list(p) for p in self.points], "simplices": [list(s) for s in self.simplices]}

    @classmethod
    def from_json(cls, data: dict) -> "UnimodularTriangulation":
        if set(data) != {"points", "simplices"}:
            raise KeyError("triangulation JSON needs exactly the keys 'points' and 'simplices'")
        return cls(tuple(tuple(p) for p in data["points"]), tuple(tuple(s) for s in data["simplices"]))


def _orient(pts: Sequence[IntPoint]) -> int:
    """Sign of the lifted determinant: orientation of ``n + 1`` points in ``R^n``."""
    d = linalg.det([lift(p) for p in pts])
    return (d > 0) - (d < 0)


def _simplex_det(pts: Sequence[IntPoint]) -> int:
    return linalg.det([lift(p) for p in pts])


# ---------------------------------------------------------------------------
# proper intersection of two simplices


def _kernel(cols: Sequence[Sequence[int]]) -> Optional[Tuple[int, ...]]:
    """Generator of a one-dimensional kernel of the matrix with ``cols`` as columns."""
    rows = linalg.from_columns(cols)
    k = len(cols)
    if linalg.rank(rows) != k - 1:
        return None
    chosen = []
    for i, r in enumerate(rows):
        if linalg.rank([rows[j] for j in chosen] + [r]) > len(chosen):
            chosen.append(i)
    return linalg.kernel_vector([rows[i] for i in chosen])


def _subsets(items, min_size=0):
    return chain.from_iterable(combinations(items, r) for r in range(min_size, len(items) + 1))


def _separated_by_facet(S, T, common, pts) -> bool:
    n = len(S) - 1
    for face in combinations(S, n):
        apex = next(i for i in S if i not in face)
        fpts = [pts[i] for i in face]
        s_side = _orient(fpts + [pts[apex]])
        on_plane = set()
        ok = True
        for j in T:
            o = _orient(fpts + [pts[j]])
            if o == s_side:
                ok = False
                break
            if o == 0:
                on_plane.add(j)
        if ok and on_plane <= common:
            return True
    return False


def intersect_properly(S: Sequence[int], T: Sequence[int], pts: Sequence[IntPoint]) -> bool:
    """Whether ``conv(S) ∩ conv(T) = conv(S ∩ T)`` for full-dimensional simplices.

    A violation is exactly a circuit of ``S ∪ T`` whose positive part lies in
    ``S`` and negative part in ``T``; the circuit search only runs when no
    facet hyperplane of either simplex separates them.
    """
    common = set(S) & set(T)
    n = len(S) - 1
    if len(common) == n + 1:
        return True
    if len(common) == n:
        face = sorted(common)
        a = next(i for i in S if i not in common)
        b = next(i for i in T if i not in common)
        fp = [pts[i] for i in face]
        return _orient(fp + [pts[a]]) * _orient(fp + [pts[b]]) < 0
    if _separated_by_facet(S, T, common, pts) or _separated_by_facet(T, S, common, pts):
        return True
    only_s = [i for i in S if i not in common]
    only_t = [i for i in T if i not in common]
    for za in _subsets(only_s, 1):
        for zb in _subsets(only_t, 1):
            for zc in _subsets(sorted(common)):
                Z = list(za) + list(zb) + list(zc)
                if len(Z) > n + 2:
                    continue
                ker = _kernel([lift(pts[i]) for i in Z])
                if ker is None or any(x == 0 for x in ker):
                    continue
                sa = {(x > 0) for x in ker[:len(za)]}
                sb = {(x > 0) for x in ker[len(za):len(za) + len(zb)]}
                if len(sa) == 1 and len(sb) == 1 and sa != sb:
                    return False
    return True


# ---------------------------------------------------------------------------
# constructions


def _triangulate_1d(D: ToricDiagram) -> UnimodularTriangulation:
    pts = D.lattice_points.all
    return UnimodularTriangulation(pts, tuple((i, i + 1) for i in range(len(pts) - 1)))


def _orient2(a, b, c) -> int:
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _triangulate_2d(D: ToricDiagram) -> UnimodularTriangulation:
    """Fan from the first vertex, then insert every other lattice point.

    A point inside a triangle splits it in three; a point on an edge splits
    both triangles sharing that edge in two. Once every lattice point is a
    vertex, each triangle is lattice-point free and so has area 1/2.
    """
    ring = polygon_vertices_ccw(D.polytope)
    tris = [(ring[0], ring[i], ring[i + 1]) for i in range(1, len(ring) - 1)]
    lp = D.lattice_points
    for p in sorted(lp.boundary + lp.interior):
        new_tris = []
        for t in tris:
            o = [_orient2(t[i], t[(i + 1) % 3], p) for i in range(3)]
            if min(o) < 0:
                new_tris.append(t)
            elif min(o) > 0:
                a, b, c = t
                new_tris += [(a, b, p), (b, c, p), (c, a, p)]
            else:
                i = o.index(0)
                x, y, z = t[i], t[(i + 1) % 3], t[(i + 2) % 3]
                new_tris += [(x, p, z), (p, y, z)]
        tris = new_tris
    pts = lp.all
    index = {p: i for i, p in enumerate(pts)}
    simplices = sorted(tuple(sorted(index[q] for q in t)) for t in tris)
    return UnimodularTriangulation(pts, tuple(simplices))


def search_unimodular_triangulation(D: ToricDiagram) -> Optional[UnimodularTriangulation]:
    """Exhaustive search for a unimodular triangulation on the lattice points of ``D``.

    Advancing front: after a first simplex through the smallest vertex, the
    smallest interior face covered only once must be covered from its other
    side, and every candidate for that is tried. Candidates are tried in
    lexicographic order, so the result is the first triangulation in that
    order. Works in any dimension; cost grows quickly with the point count.
    """
    n = D.dim
    pts = D.lattice_points.all
    target = normalized_volume(D.polytope)
    on_facet = [frozenset(i for i, p in enumerate(pts) if f.evaluate(p) == 0) for f in D.facets]
    cands = [s for s in combinations(range(len(pts)), n + 1) if abs(_simplex_det([pts[i] for i in s])) == 1]
    by_face: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = defaultdict(list)
    for s in cands:
        for face in combinations(s, n):
            by_face[face].append(s)

    def interior_face(face) -> bool:
        fs = set(face)
        return not any(fs <= F for F in on_facet)

    chosen: List[Tuple[int, ...]] = []
    owners: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = defaultdict(list)

    def add(s):
        chosen.append(s)
        for face in combinations(s, n):
            owners[face].append(s)

    def remove(s):
        chosen.pop()
        for face in combinations(s, n):
            owners[face].pop()

    def open_face():
        best = None
        for s in chosen:
            for face in combinations(s, n):
                if len(owners[face]) == 1 and interior_face(face) and (best is None or face < best):
                    best = face
        return best

    def extend() -> bool:
        face = open_face()
        if face is None:
            return len(chosen) == target
        if len(chosen) >= target:
            return False
        owner = owners[face][0]
        fpts = [pts[i] for i in face]
        old_apex = next(i for i in owner if i not in face)
        old_side = _orient(fpts + [pts[old_apex]])
        for s in by_face[face]:
            if s == owner:
                continue
            apex = next(i for i in s if i not in face)
            if _orient(fpts + [pts[apex]]) != -old_side:
                continue
            if all(intersect_properly(s, t, pts) for t in chosen):
                add(s)
                if extend():
                    return True
                remove(s)
        return False

    start = pts.index(min(D.vertices))
    for s in cands:
        if start in s:
            add(s)
            if extend():
                return _reindexed(pts, chosen)
            remove(s)
    return None


def _reindexed(pts, simplices) -> UnimodularTriangulation:
    used = sorted({i for s in simplices for i in s})
    new = {old: k for k, old in enumerate(used)}
    return UnimodularTriangulation(
        tuple(pts[i] for i in used),
        tuple(sorted(tuple(sorted(new[i] for i in s)) for s in simplices)),
    )


def unimodular_triangulation(D: ToricDiagram) -> Optional[UnimodularTriangulation]:
    """A unimodular triangulation of ``D``, or ``None`` if provably none exists.

    Raises :class:`UnsupportedDimensionError` for ``n >= 4`` unless the
    vertices are the only lattice points of ``D``.
    """
    n = D.dim
    if n == 1:
        T = _triangulate_1d(D)
    elif n == 2:
        T = _triangulate_2d(D)
    else:
        lp = D.lattice_points
        if n >= 4 and (lp.boundary or lp.interior):
            raise UnsupportedDimensionError(
                f"triangulation search in dimension {n} is only supported when the vertices are the only lattice points"
            )
        T = search_unimodular_triangulation(D)
    if T is not None:
        problems = check_triangulation(D, T)
        assert not problems, problems
    return T


# ---------------------------------------------------------------------------
# checks and derived quantities


def check_triangulation(D: ToricDiagram, T: UnimodularTriangulation, pairwise: bool = True) -> List[str]:
    """Problems with ``T`` as a unimodular triangulation of ``D``; empty when valid."""
    problems = []
    n = D.dim
    lattice = set(D.lattice_points.all)
    for p in T.points:
        if tuple(p) not in lattice:
            problems.append(f"point {list(p)} is not a lattice point of the diagram")
    if len(set(T.simplices)) != len(T.simplices):
        problems.append("repeated simplex")
    for s in T.simplices:
        if len(s) != n + 1:
            problems.append(f"simplex {list(s)} does not have {n + 1} vertices")
            continue
        if abs(_simplex_det([T.points[i] for i in s])) != 1:
            problems.append(f"simplex {list(s)} is not unimodular")
    if problems:
        return problems
    if len(T.simplices) != normalized_volume(D.polytope):
        problems.append(f"{len(T.simplices)} simplices but normalized volume {normalized_volume(D.polytope)}")
    # barycenters scaled by n + 1 stay integral
    centers = [tuple(sum(T.points[i][k] for i in s) for k in range(n)) for s in T.simplices]
    for a, s in enumerate(T.simplices):
        spts = [T.points[i] for i in s]
        lo = [(n + 1) * min(p[k] for p in spts) for k in range(n)]
        hi = [(n + 1) * max(p[k] for p in spts) for k in range(n)]
        for b, c in enumerate(centers):
            if a == b or any(not lo[k] < c[k] < hi[k] for k in range(n)):
                continue
            if _strictly_inside(spts, c, n + 1):
                problems.append(f"barycenter of simplex {list(T.simplices[b])} lies inside simplex {list(s)}")
    if pairwise and not problems:
        for s, t in combinations(T.simplices, 2):
            if not intersect_properly(s, t, T.points):
                problems.append(f"simplices {list(s)} and {list(t)} do not meet in a common face")
    return problems


def _strictly_inside(simplex, x, scale: int = 1) -> bool:
    """Whether the point ``x / scale`` lies in the open simplex."""
    pts = [tuple(scale * c for c in p) + (scale,) for p in simplex]
    signs = []
    for i in range(len(pts)):
        rows = list(pts)
        rows[i] = tuple(x) + (scale,)
        signs.append(linalg.det(rows))
    return all(t > 0 for t in signs) or all(t < 0 for t in signs)


def filling_euler_characteristic(T: UnimodularTriangulation, D: Optional[ToricDiagram] = None) -> int:
    """Euler characteristic of the crepant filling: the number of simplices."""
    chi = len(T.simplices)
    if D is not None:
        assert chi == normalized_volume(D.polytope) == 2 * mean_euler_characteristic(D)
    return chi


def graded_colex_key(p: Sequence[int]):
    """Order by coordinate sum, ties broken comparing coordinates from the last."""
    return (sum(p), tuple(reversed(p)))


def crepant_filling_normals(D: ToricDiagram, T: UnimodularTriangulation) -> List[Tuple[int, ...]]:
    """Primitive normals ``(w, 1)`` for every lattice point ``w`` used by ``T``."""
    return [lift(p) for p in sorted(set(map(tuple, T.points)), key=graded_colex_key)]
