"""Named families of toric diagrams, their closed-form mean Euler
characteristics, and planar volume bounds.

All 2-D families are simply connected 5-manifolds; the family id says which
polygon shape, ``p`` (and ``k``) the member.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from .polytope import polygon_vertices_ccw, shoelace_area
from .reeb import mean_euler_characteristic
from .toric import ToricDiagram, pi2_rank, validate_diagram

FAMILIES = (
    "lens",
    "sphere",
    "sphere_quotient",
    "monotone_prequant",
    "s2s3",
    "pentagon",
    "hexagon",
    "octagon",
    "nonagon",
    "gon4k4",
    "gon4k4_clipped",
)

_PARAMS = {
    "lens": {"p"},
    "sphere": {"n"},
    "sphere_quotient": {"n"},
    "monotone_prequant": {"normals"},
    "s2s3": {"p"},
    "pentagon": {"p"},
    "hexagon": {"p"},
    "octagon": {"p"},
    "nonagon": {"p"},
    "gon4k4": {"k", "p"},
    "gon4k4_clipped": {"k", "p", "clips"},
}

# Known minimal area of a toric 16-gon, and the minimum inside the (4k+4)-gon family at k = 3.
MINIMAL_16GON_AREA = 59
FAMILY_16GON_AREA = 63


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: Dict = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in _PARAMS:
            raise FamilyError(f"unknown family {self.family!r}; known: {', '.join(FAMILIES)}")
        expected = _PARAMS[self.family]
        if set(self.params) != expected:
            raise FamilyError(f"family {self.family} takes parameters {sorted(expected)}, got {sorted(self.params)}")
        for key in expected - {"normals"}:
            val = self.params[key]
            if not isinstance(val, int) or isinstance(val, bool) or val < 1:
                raise FamilyError(f"parameter {key} must be a positive integer, got {val!r}")
        if self.family == "gon4k4_clipped":
            c, k = self.params["clips"], self.params["k"]
            if c > 3:
                raise FamilyError("at most three vertices can be clipped")
            if c >= 2 and k < 2:
                # with k = 1 the second clip can leave a non-primitive vertex lattice (pi1 = Z/2 at p = 2)
                raise FamilyError("clipping more than one vertex needs k >= 2")

    def __hash__(self):
        return hash((self.family, tuple(sorted((k, str(v)) for k, v in self.params.items()))))

    @classmethod
    def from_json(cls, data: dict) -> "FamilySpec":
        if not isinstance(data, dict) or set(data) != {"family", "params"}:
            raise FamilyError('family spec JSON needs exactly the keys "family" and "params"')
        return cls(data["family"], dict(data["params"]))

    def to_json(self) -> dict:
        return {"family": self.family, "params": dict(self.params)}


def _gon4k4_vertices(k: int, p: int) -> List[Tuple[int, int]]:
    verts = [(0, 0), (1, 0), (0, 2 * k + 1), (1, 2 * k + 1)]
    for j in range(k):
        w = (k - j) * (k + j + 1) // 2
        verts += [(-w, k - j), (-w, k + j + 1), (w + p, k - j), (w + p, k + j + 1)]
    return verts


def clipped_vertices(k: int) -> List[Tuple[int, int]]:
    """The vertices removed, in order, by successive clips of the (4k+4)-gon."""
    return [(0, 0), (0, 2 * k + 1), (-k * (k + 1) // 2, k)]


def family_vertices(spec: FamilySpec) -> List[Tuple[int, ...]]:
    f, q = spec.family, spec.params
    if f == "lens":
        return [(0,), (q["p"],)]
    if f == "sphere":
        n = q["n"]
        return [tuple(int(i == j) for i in range(n)) for j in range(n)] + [(0,) * n]
    if f == "sphere_quotient":
        n = q["n"]
        return [tuple(int(i == j) for i in range(n)) for j in range(n)] + [(-1,) * n]
    if f == "monotone_prequant":
        return [tuple(v) for v in q["normals"]]
    p = q.get("p")
    if f == "s2s3":
        return [(0, 0), (1, 0), (0, 1), (p, p)]
    if f == "pentagon":
        return [(0, -1), (-1, 0), (1, 0), (0, 1), (p, p)]
    if f == "hexagon":
        return [(-1, -1), (0, -1), (-1, 0), (1, 0), (0, 1), (p, p)]
    if f == "octagon":
        return [(0, 0), (1, 0), (0, 3), (1, 3), (-1, 1), (-1, 2), (1 + p, 1), (1 + p, 2)]
    if f == "nonagon":
        return [(-2, -3), (-3, -2), (-1, -3), (-3, -1), (0, -2), (-2, 0), (p, p - 1), (p - 1, p), (p, p)]
    if f == "gon4k4":
        return _gon4k4_vertices(q["k"], p)
    if f == "gon4k4_clipped":
        removed = set(clipped_vertices(q["k"])[: q["clips"]])
        return [v for v in _gon4k4_vertices(q["k"], p) if v not in removed]
    raise FamilyError(f"unknown family {f!r}")


def generate(spec: FamilySpec) -> ToricDiagram:
    return validate_diagram(family_vertices(spec))


def family_chi_formula(spec: FamilySpec) -> Fraction:
    """Closed-form mean Euler characteristic of a family member."""
    f, q = spec.family, spec.params
    p = q.get("p")
    if f == "lens":
        return Fraction(p, 2)
    if f == "sphere":
        return Fraction(1, 2)
    if f == "sphere_quotient":
        return Fraction(q["n"] + 1, 2)
    if f == "monotone_prequant":
        # normalized volume equals the number of facets for these diagrams
        return Fraction(len(generate(spec).facets), 2)
    if f == "s2s3":
        return Fraction(p)
    if f == "pentagon":
        return Fraction(3, 2) + p
    if f == "hexagon":
        return Fraction(2) + p
    if f == "octagon":
        return Fraction(5 + 2 * p)
    if f == "nonagon":
        return Fraction(9, 2) + 3 * (1 + p)
    k = q["k"]
    common = Fraction(2 * k * (k + 1) * (2 * k + 1), 3) + (p - 1) * 2 * k
    if f == "gon4k4":
        return 2 * k + 1 + common
    if f == "gon4k4_clipped":
        return 2 * k + Fraction(1, 2) - Fraction(q["clips"] - 1, 2) + common
    raise FamilyError(f"unknown family {f!r}")


# ---------------------------------------------------------------------------
# real projective spaces, used as the standard obstruction examples


def real_projective_cone(n: int) -> List[Tuple[int, ...]]:
    """Defining normals of the moment cone of the standard ``RP^(2n+1)``."""
    normals = [tuple(int(i == j) for i in range(n)) + (0,) for j in range(n)]
    return normals + [(-1,) * n + (2,)]


def real_projective_diagram(m: int) -> ToricDiagram:
    """Toric diagram of ``RP^(4m+3)`` (``m >= 1``), a simplex in ``R^(2m+1)``."""
    if m < 0:
        raise FamilyError("m must be nonnegative")
    if m == 0:
        return validate_diagram([(0,), (2,)])
    dim = 2 * m + 1
    verts = [(0,) * dim]
    verts += [tuple(int(i == j) for i in range(2 * m)) + (0,) for j in range(2 * m)]
    verts.append((1,) * (2 * m) + (2,))
    return validate_diagram(verts)


# ---------------------------------------------------------------------------
# planar invariants


def _require_2d(D: ToricDiagram):
    if D.dim != 2:
        raise ValueError("this invariant is defined for 2-dimensional diagrams only")


@dataclass(frozen=True)
class PickReport:
    interior: int
    boundary: int
    area: Fraction

    @property
    def holds(self) -> bool:
        return self.area == self.interior + Fraction(self.boundary, 2) - 1


def pick_identity(D: ToricDiagram) -> PickReport:
    _require_2d(D)
    lp = D.lattice_points
    return PickReport(len(lp.interior), lp.n_boundary, mean_euler_characteristic(D))


@dataclass(frozen=True)
class BoundsReport:
    d: int
    interior: int
    boundary: int
    area: Fraction
    chi: Fraction
    pi2_rank: int

    @property
    def d_equals_b(self) -> bool:
        return self.d == self.boundary

    @property
    def coleman(self) -> bool:
        return self.boundary <= 2 * self.interior + 10 - self.d

    @property
    def lower(self) -> bool:
        return self.area >= Fraction(3 * (self.d - 4), 2)

    @property
    def cor19(self) -> bool:
        return self.chi >= Fraction(3, 2) * (self.pi2_rank - 1)

    @property
    def coleman_tight(self) -> bool:
        return self.boundary == 2 * self.interior + 10 - self.d

    @property
    def lower_tight(self) -> bool:
        return self.area == Fraction(3 * (self.d - 4), 2)

    @property
    def all_hold(self) -> bool:
        return self.d_equals_b and self.coleman and self.lower and self.cor19


def bounds_2d(D: ToricDiagram) -> BoundsReport:
    _require_2d(D)
    pick = pick_identity(D)
    return BoundsReport(
        D.n_vertices, pick.interior, pick.boundary, pick.area, mean_euler_characteristic(D), pi2_rank(D)
    )


# ---------------------------------------------------------------------------
# minimal area search


@dataclass(frozen=True)
class MinVolumeResult:
    """Smallest-area toric ``d``-gon with vertices in ``[lo, hi]^2``.

    Minimal only among polygons inside the box.
    """

    d: int
    box: Tuple[int, int]
    area: Optional[Fraction]
    witness: Optional[Tuple[Tuple[int, int], ...]]
    minima: Tuple[Tuple[Tuple[int, int], ...], ...] = ()


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _primitive_edge(a, b) -> bool:
    return gcd(b[0] - a[0], b[1] - a[1]) == 1


def convex_toric_polygons(d: int, lo: int, hi: int, bound: Optional[Callable[[], Optional[Fraction]]] = None):
    """Yield ``(area, ccw_vertices)`` for every toric ``d``-gon with vertices in ``[lo, hi]^2``.

    Each polygon appears once, listed counterclockwise from its
    lexicographically smallest vertex. In the plane a lattice polygon is a
    toric diagram exactly when it is strictly convex with primitive edges.
    ``bound`` is read at every node; chains whose fan area plus 1/2 per fan
    triangle still to come exceeds it are cut.
    """
    pts = [(x, y) for x in range(lo, hi + 1) for y in range(lo, hi + 1)]

    def rec(s, chain, twice_area):
        k = len(chain)
        b = bound() if bound is not None else None
        # each remaining fan triangle has doubled area >= 1
        if b is not None and twice_area + (d - k) > 2 * b:
            return
        last = chain[-1]
        if k == d:
            if _primitive_edge(last, s) and _cross(chain[-2], last, s) > 0 and _cross(last, s, chain[1]) > 0:
                yield Fraction(twice_area, 2), tuple(chain)
            return
        for q in pts:
            if q <= s or q in chain:
                continue
            if k >= 2 and (_cross(s, last, q) <= 0 or _cross(chain[-2], last, q) <= 0):
                continue
            if not _primitive_edge(last, q):
                continue
            add = _cross(s, last, q) if k >= 2 else 0
            yield from rec(s, chain + [q], twice_area + add)

    for s in pts:
        yield from rec(s, [s], 0)


def min_volume_search(d: int, box: Tuple[int, int], collect_all: bool = False) -> MinVolumeResult:
    """Exhaustive minimal-area search over toric ``d``-gons in ``[lo, hi]^2``.

    Cost: depth-first over counterclockwise vertex chains, at most
    ``(side^2)^d`` before pruning; the running-best area bound keeps boxes of
    side 5 and ``d <= 6`` to seconds.
    """
    if d < 3:
        raise ValueError("a polygon needs at least 3 vertices")
    lo, hi = box
    if lo > hi:
        raise ValueError("box lower end exceeds upper end")
    best: Optional[Fraction] = None
    minima: List[Tuple[Tuple[int, int], ...]] = []
    for area, poly in convex_toric_polygons(d, lo, hi, lambda: best):
        key = tuple(sorted(poly))
        if best is None or area < best:
            best, minima = area, [key]
        elif area == best:
            minima.append(key)
    if best is None:
        return MinVolumeResult(d, (lo, hi), None, None)
    minima.sort()
    witness = minima[0]
    D = validate_diagram(witness)
    assert mean_euler_characteristic(D) == best == shoelace_area(polygon_vertices_ccw(D.polytope))
    return MinVolumeResult(d, (lo, hi), best, witness, tuple(minima) if collect_all else ())
