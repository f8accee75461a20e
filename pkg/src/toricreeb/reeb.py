"""Mean indices of toric closed Reeb orbits and the mean Euler characteristic.

A normalized toric Reeb vector is ``(v, 1)`` with ``v`` strictly inside the
diagram ``D``. Each facet ``F`` of ``D`` carries one simple closed orbit; its
mean index is ``2 / n! vol(conv(v, F))``. The same number comes out of the
basis-completion route: extend the lifted facet vertices by ``(eta, 1)`` to a
basis of ``Z^{n+1}``, expand ``(v, 1)`` in that basis, and read off the last
coefficient ``b``; then ``|b|`` equals the pyramid volume.

Reeb points are rational. For rational ``v`` the actual flow is degenerate;
the index sequences below are those of the nondegenerate model and the mean
index is the continuous extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import floor
from typing import List, Sequence, Tuple

from . import linalg
from .polytope import barycenter, contains, normalized_volume
from .toric import ToricDiagram, lift


class NotInteriorError(ValueError):
    """The Reeb point is not strictly inside the toric diagram."""


def _as_point(D: ToricDiagram, v: Sequence) -> Tuple[Fraction, ...]:
    pt = tuple(Fraction(x) for x in v)
    if len(pt) != D.dim:
        raise linalg.DimensionError(f"Reeb point has dimension {len(pt)}, diagram has {D.dim}")
    if not contains(D.polytope, pt, strict=True):
        raise NotInteriorError(f"point {[str(x) for x in pt]} is not strictly inside the diagram")
    return pt


@dataclass(frozen=True)
class ReebVector:
    """Normalized toric Reeb vector ``(point, 1)`` on the manifold of ``diagram``."""

    diagram: ToricDiagram
    point: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "point", _as_point(self.diagram, self.point))

    @property
    def vector(self) -> Tuple[Fraction, ...]:
        return self.point + (Fraction(1),)


def barycentric_representation(D: ToricDiagram, v: Sequence) -> Tuple[Fraction, ...]:
    """Positive weights ``a_j`` on the vertices with ``sum a_j = 1`` and ``sum a_j v_j = v``.

    Construction: follow the ray from the vertex barycenter ``c`` through
    ``v`` to its exit point ``q`` on a facet, write ``v = (1 - t) c + t q``,
    and mix the uniform weights with ``q``'s coordinates in the facet simplex.
    """
    v = _as_point(D, v)
    d = D.n_vertices
    c = barycenter(D.vertices)
    if v == c:
        return tuple(Fraction(1, d) for _ in range(d))
    direction = tuple(a - b for a, b in zip(v, c))
    best = None
    for f in D.facets:
        rate = sum(u * x for u, x in zip(f.inward_normal, direction))
        if rate < 0:
            s = f.evaluate(c) / -rate
            if best is None or s < best[0]:
                best = (s, f)
    s, facet = best
    t = 1 / s
    q = tuple(a + s * b for a, b in zip(c, direction))
    idx = facet.vertex_indices
    lam = _affine_coordinates([D.vertices[i] for i in idx], q)
    weights = [(1 - t) / d for _ in range(d)]
    for i, lm in zip(idx, lam):
        weights[i] += t * lm
    out = tuple(weights)
    assert all(w > 0 for w in out) and sum(out) == 1
    assert all(sum(w * vx[k] for w, vx in zip(out, D.vertices)) == v[k] for k in range(D.dim))
    return out


def _affine_coordinates(simplex: Sequence[Sequence[int]], q: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    """Coordinates of ``q`` with respect to the affinely independent points ``simplex``."""
    k = len(simplex)
    rows = [list(col) for col in zip(*[lift(p) for p in simplex])]
    rhs = list(q) + [Fraction(1)]
    # choose k independent rows of the (n+1) x k system
    chosen = []
    for i in range(len(rows)):
        if linalg.rank([rows[j] for j in chosen + [i]]) > len(chosen):
            chosen.append(i)
        if len(chosen) == k:
            break
    sol = linalg.solve_rational([rows[i] for i in chosen], [rhs[i] for i in chosen])
    assert all(sum(r[j] * sol[j] for j in range(k)) == rhs[i] for i, r in enumerate(rows))
    return sol


@lru_cache(maxsize=None)
def facet_basis(D: ToricDiagram, facet: int) -> Tuple[Tuple[int, ...], linalg.Matrix]:
    """``(eta, B)``: ``B`` has the lifted facet vertices then ``(eta, 1)`` as columns, ``det B == 1``.

    ``eta`` comes from the Hermite-form completion of the lifted facet
    vertices; the completing column is negated if needed to make the
    determinant +1 and then shifted by a multiple of the first lifted vertex
    to put a 1 in its last coordinate.
    """
    cols = [lift(v) for v in D.facet_vertices(facet)]
    M = linalg.complete_to_unimodular(cols)
    if M is None:
        raise AssertionError("facet of a valid toric diagram is not unimodular")
    w = [row[-1] for row in M]
    if linalg.det(M) < 0:
        w = [-x for x in w]
    shift = 1 - w[-1]
    w = [x + shift * y for x, y in zip(w, cols[0])]
    B = linalg.from_columns(cols + [tuple(w)])
    assert linalg.det(B) == 1 and w[-1] == 1
    return tuple(w[:-1]), B


@dataclass(frozen=True)
class OrbitIndexReport:
    """Mean index data for the simple closed orbit of one facet."""

    facet_index: int
    facet_vertices: Tuple[Tuple[int, ...], ...]
    pyramid_normalized_volume: Fraction
    mean_index: Fraction
    eta: Tuple[int, ...]
    b_coefficients: Tuple[Fraction, ...]
    b: Fraction

    @property
    def inverse_mean_index(self) -> Fraction:
        return 1 / self.mean_index


def pyramid_normalized_volume(D: ToricDiagram, v: Sequence, facet: int) -> Fraction:
    """``n! vol(conv(v, F))`` for the facet ``F``."""
    return abs(linalg.det([[Fraction(a) - b for a, b in zip(p, v)] for p in D.facet_vertices(facet)]))


def facet_mean_index(D: ToricDiagram, v: Sequence, facet: int) -> OrbitIndexReport:
    v = _as_point(D, v)
    if not 0 <= facet < len(D.facets):
        raise IndexError(f"facet index {facet} out of range (diagram has {len(D.facets)} facets)")
    pyramid = pyramid_normalized_volume(D, v, facet)
    eta, B = facet_basis(D, facet)
    coeffs = linalg.solve_rational(B, v + (Fraction(1),))
    b_j, b = tuple(coeffs[:-1]), coeffs[-1]
    assert b == 1 - sum(b_j)
    assert abs(b) == pyramid, "pyramid volume and basis coefficient disagree"
    return OrbitIndexReport(facet, D.facet_vertices(facet), pyramid, 2 / pyramid, eta, b_j, b)


def mean_indices(D: ToricDiagram, v: Sequence) -> List[OrbitIndexReport]:
    return [facet_mean_index(D, v, i) for i in range(len(D.facets))]


def cz_index_sequence(D: ToricDiagram, v: Sequence, facet: int, n_max: int, order: int = 1) -> List[int]:
    """Conley-Zehnder indices of the iterates ``gamma^(order*N)`` for ``N = 1..n_max``.

    ``order`` is the order of the orbit class in the fundamental group; it is
    not determined here and must be supplied (1 is right when the group is
    trivial).
    """
    if order < 1 or n_max < 0:
        raise ValueError("order must be positive and n_max nonnegative")
    rep = facet_mean_index(D, v, facet)
    b = rep.b
    assert b != 0
    n = D.dim
    sign = 1 if b > 0 else -1
    ratios = [bj / abs(b) for bj in rep.b_coefficients]
    out = []
    for N in range(1, n_max + 1):
        kN = order * N
        out.append(2 * (sum(floor(kN * r) for r in ratios) + kN * sign) + n)
    return out


def mean_euler_characteristic(D: ToricDiagram) -> Fraction:
    """``n! vol(D) / 2``."""
    chi = Fraction(normalized_volume(D.polytope), 2)
    assert (2 * chi).denominator == 1
    return chi


@dataclass(frozen=True)
class ResonanceReport:
    inverse_mean_indices: Tuple[Fraction, ...]
    total: Fraction
    chi: Fraction

    @property
    def holds(self) -> bool:
        return self.total == self.chi


def resonance_check(D: ToricDiagram, v: Sequence) -> ResonanceReport:
    """Sum of ``1 / mean index`` over the facet orbits, next to the mean Euler characteristic."""
    inv = tuple(r.inverse_mean_index for r in mean_indices(D, v))
    return ResonanceReport(inv, sum(inv, Fraction(0)), mean_euler_characteristic(D))


def normalized_pyramid_sum(D: ToricDiagram, v: Sequence) -> Fraction:
    """Sum of the pyramid volumes over all facets; equals ``n! vol(D)``."""
    v = _as_point(D, v)
    return sum((pyramid_normalized_volume(D, v, i) for i in range(len(D.facets))), Fraction(0))
