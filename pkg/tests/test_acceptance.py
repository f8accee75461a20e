"""Acceptance suite: one marker per criterion, summarized as PASS/FAIL lines after the run.

Expected values are closed forms written out here or come from the brute-force
oracles in ``oracles.py``; none of them are read back from the package.
"""

import json
import random
from fractions import Fraction as F

import pytest

from conftest import CORPUS, family_specs, generated
from oracles import (
    brute_min_area,
    convex_hull,
    determinantal_factors,
    lattice_points_in_polygon,
    minors_gcd,
    perm_det,
    random_interior_point,
    shoelace,
)
from toricreeb import linalg
from toricreeb.cli import main
from toricreeb.crepant import check_triangulation, crepant_filling_normals, unimodular_triangulation
from toricreeb.families import (
    FamilySpec,
    bounds_2d,
    min_volume_search,
    pick_identity,
    real_projective_cone,
    real_projective_diagram,
)
from toricreeb.polytope import VertexPolytope, normalized_volume
from toricreeb.reeb import cz_index_sequence, mean_euler_characteristic, mean_indices, resonance_check
from toricreeb.toric import GoodCone, c1_is_zero, fundamental_group, pi2_rank, validate_diagram

SPECS_2D = family_specs(5, 3)


def corpus(name):
    return validate_diagram(CORPUS[name])


def all_valid_diagrams():
    out = {name: corpus(name) for name in CORPUS}
    out.update({str(s): generated(s) for s in SPECS_2D})
    for n in (1, 2, 3):
        out[f"sphere_{n}"] = generated(FamilySpec("sphere", {"n": n}))
    out["rp11"] = real_projective_diagram(2)
    return out


# 1 -----------------------------------------------------------------------


@pytest.mark.criterion(1, "chi of the standard five-sphere is 1/2")
def test_c01_sphere_chi():
    assert mean_euler_characteristic(corpus("unit_simplex")) == F(1, 2)


# 2 -----------------------------------------------------------------------


def _closed_form(spec):
    p = spec.params["p"]
    fam = spec.family
    if fam == "s2s3":
        return F(p)
    if fam == "pentagon":
        return F(3, 2) + p
    if fam == "hexagon":
        return 2 + F(p)
    if fam == "octagon":
        return 5 + F(2 * p)
    if fam == "nonagon":
        return F(9, 2) + 3 * (1 + p)
    k = spec.params["k"]
    base = 2 * k + 1 + F(2 * k * (k + 1) * (2 * k + 1), 3) + (p - 1) * 2 * k
    return base - F(spec.params.get("clips", 0), 2)


CRIT2 = [FamilySpec("s2s3", {"p": p}) for p in range(1, 11)] + [
    s for s in family_specs(3, 3) if s.family != "s2s3"
]


@pytest.mark.criterion(2, "family chi values match their closed forms")
@pytest.mark.parametrize("spec", CRIT2, ids=str)
def test_c02_family_chi(spec):
    assert mean_euler_characteristic(generated(spec)) == _closed_form(spec)


@pytest.mark.criterion(2, "family chi values match their closed forms")
def test_c02_clip_variants_present():
    clipped = {(s.params["k"], s.params["clips"]) for s in CRIT2 if s.family == "gon4k4_clipped"}
    assert {c for _, c in clipped} == {1, 2, 3}
    assert (3, 3) in clipped and all(k <= 3 for k, _ in clipped)


# 3 -----------------------------------------------------------------------

CRIT3 = ["unit_simplex", "square", "s5_z3"] + [f"xi_{p}" for p in range(1, 6)] + [f"lens_{p}" for p in range(1, 6)]
CRIT3_SPECS = [FamilySpec(f, {"p": 1}) for f in ("pentagon", "hexagon", "octagon", "nonagon")] + [
    FamilySpec("gon4k4", {"k": k, "p": p}) for k in (1, 2) for p in (1, 2, 3)
]


def _crit3_diagrams():
    out = [(name, corpus(name)) for name in CRIT3]
    out += [(str(s), generated(s)) for s in CRIT3_SPECS]
    return out


@pytest.mark.criterion(3, "resonance identity at 50 random Reeb points per diagram")
@pytest.mark.parametrize("name,D", _crit3_diagrams(), ids=[n for n, _ in _crit3_diagrams()])
def test_c03_resonance(name, D):
    rng = random.Random(name)
    chi = F(normalized_volume(D.polytope), 2)
    for _ in range(50):
        v = random_interior_point(rng, D.vertices)
        rep = resonance_check(D, v)
        assert rep.total == chi
        assert sum(1 / r.mean_index for r in mean_indices(D, v)) == chi


# 4 -----------------------------------------------------------------------

CRIT4 = ["unit_simplex", "square", "s5_z3", "hexagon_min", "xi_3", "lens_4", "simplex_3d", "octahedron", "rp7"]


@pytest.mark.criterion(4, "pyramid determinant equals |b| from the basis completion")
@pytest.mark.parametrize("name", CRIT4)
def test_c04_two_routes(name):
    D = corpus(name)
    rng = random.Random(name)
    for _ in range(25):
        v = random_interior_point(rng, D.vertices)
        for r in mean_indices(D, v):
            edges = [[F(p[k]) - v[k] for k in range(D.dim)] for p in r.facet_vertices]
            oracle = abs(perm_det(edges))
            assert r.pyramid_normalized_volume == oracle == abs(r.b)
            assert r.mean_index == 2 / oracle


@pytest.mark.criterion(4, "pyramid determinant equals |b| from the basis completion")
def test_c04_family_members():
    rng = random.Random(4)
    for spec in CRIT3_SPECS:
        D = generated(spec)
        v = random_interior_point(rng, D.vertices)
        for r in mean_indices(D, v):
            edges = [[F(p[k]) - v[k] for k in range(2)] for p in r.facet_vertices]
            assert abs(perm_det(edges)) == abs(r.b)


# 5 -----------------------------------------------------------------------

CRIT5 = ["lens_1", "lens_3", "lens_5", "unit_simplex", "square", "s5_z3", "xi_2", "hexagon_min"]


@pytest.mark.criterion(5, "CZ parity and Cesaro bound up to N = 200")
@pytest.mark.parametrize("name", CRIT5)
def test_c05_cz(name):
    D = corpus(name)
    n = D.dim
    rng = random.Random(name)
    points = [random_interior_point(rng, D.vertices) for _ in range(3)]
    for v in points:
        for i, r in enumerate(mean_indices(D, v)):
            for order in (1, 2):
                seq = cz_index_sequence(D, v, i, 200, order)
                assert len(seq) == 200
                for N, mu in enumerate(seq, 1):
                    assert (mu - n) % 2 == 0
                    assert abs(F(mu, order * N) - r.mean_index) <= F(2 * n + 1, order * N)


@pytest.mark.criterion(5, "CZ parity and Cesaro bound up to N = 200")
def test_c05_closed_form_segment():
    seg = validate_diagram([(0,), (1,)])
    assert cz_index_sequence(seg, (F(1, 3),), 1, 200) == [2 * (N // 2 + N) + 1 for N in range(1, 201)]


# 6 -----------------------------------------------------------------------


@pytest.mark.criterion(6, "fundamental and second homotopy groups")
@pytest.mark.parametrize("p", range(2, 8))
def test_c06_lens(p):
    D = validate_diagram([(0,), (p,)])
    lifted = [[0, p], [1, 1]]
    assert determinantal_factors(lifted) == [1, p]
    assert fundamental_group(D).invariant_factors == (p,)
    assert str(fundamental_group(D)) == f"Z/{p}"


@pytest.mark.criterion(6, "fundamental and second homotopy groups")
def test_c06_quotient_sphere():
    lifted = [[1, 0, -1], [0, 1, -1], [1, 1, 1]]
    assert determinantal_factors(lifted) == [1, 1, 3]
    assert fundamental_group(corpus("s5_z3")).invariant_factors == (3,)


@pytest.mark.criterion(6, "fundamental and second homotopy groups")
@pytest.mark.parametrize("spec", SPECS_2D, ids=str)
def test_c06_families(spec):
    D = generated(spec)
    lifted = [[v[0] for v in D.vertices], [v[1] for v in D.vertices], [1] * D.n_vertices]
    assert minors_gcd(lifted, 3) == 1
    assert fundamental_group(D).is_trivial
    assert pi2_rank(D) == D.n_vertices - 3


@pytest.mark.criterion(6, "fundamental and second homotopy groups")
def test_c06_pi2_corpus():
    for name in CORPUS:
        D = corpus(name)
        if D.dim == 2:
            assert pi2_rank(D) == D.n_vertices - 3


# 7 -----------------------------------------------------------------------


@pytest.mark.criterion(7, "first Chern class of real projective cones vanishes iff n is odd")
@pytest.mark.parametrize("n", range(1, 7))
def test_c07_real_projective(n):
    nu = c1_is_zero(GoodCone(tuple(real_projective_cone(n))))
    if n % 2:
        # pairing with every e_j forces ones; the last normal then forces (n+1)/2
        assert nu == (1,) * n + ((n + 1) // 2,)
    else:
        assert nu is None


# 8 -----------------------------------------------------------------------


def _unimodular(T):
    n = len(T.points[0])
    return all(
        abs(perm_det([[T.points[i][k] - T.points[s[0]][k] for k in range(n)] for i in s[1:]])) == 1
        for s in T.simplices
    )


FILLABLE = [f"lens_{p}" for p in range(1, 6)] + ["unit_simplex", "square", "s5_z3", "hexagon_min"] + [
    f"xi_{p}" for p in range(1, 6)]


@pytest.mark.criterion(8, "crepant fillings from unimodular triangulations")
@pytest.mark.parametrize("key", FILLABLE + [str(s) for s in SPECS_2D])
def test_c08_every_low_dimensional_diagram(key):
    D = corpus(key) if key in CORPUS else generated(next(s for s in SPECS_2D if str(s) == key))
    T = unimodular_triangulation(D)
    assert T is not None
    assert _unimodular(T)
    assert check_triangulation(D, T) == []
    twice_area = 2 * shoelace(convex_hull(D.vertices)) if D.dim == 2 else D.vertices[1][0] - D.vertices[0][0]
    assert T.n_simplices == abs(twice_area) == 2 * mean_euler_characteristic(D)


@pytest.mark.criterion(8, "crepant fillings from unimodular triangulations")
def test_c08_counts():
    for p in range(1, 6):
        assert unimodular_triangulation(corpus(f"lens_{p}")).n_simplices == p
        assert unimodular_triangulation(corpus(f"xi_{p}")).n_simplices == 2 * p
    assert unimodular_triangulation(corpus("s5_z3")).n_simplices == 3


@pytest.mark.criterion(8, "crepant fillings from unimodular triangulations")
def test_c08_normals_exact(tmp_path, capsys):
    D = corpus("lens_3")
    assert crepant_filling_normals(D, unimodular_triangulation(D)) == [(0, 1), (1, 1), (2, 1), (3, 1)]
    D = corpus("xi_3")
    assert crepant_filling_normals(D, unimodular_triangulation(D)) == [
        (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]
    expected = {
        "lens_3": "normals: (0,1) (1,1) (2,1) (3,1)",
        "xi_3": "normals: (0,0,1) (1,0,1) (0,1,1) (1,1,1) (2,2,1) (3,3,1)",
    }
    for name, line in expected.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps({"dim": len(CORPUS[name][0]), "vertices": CORPUS[name]}))
        assert main(["filling", str(path)]) == 0
        assert line in capsys.readouterr().out.splitlines()


@pytest.mark.criterion(8, "crepant fillings from unimodular triangulations")
def test_c08_real_projective_has_none():
    assert unimodular_triangulation(corpus("rp7")) is None
    assert unimodular_triangulation(real_projective_diagram(2)) is None


# 9 -----------------------------------------------------------------------


@pytest.mark.criterion(9, "twice chi is an integer")
def test_c09_half_integrality():
    diagrams = all_valid_diagrams()
    assert len(diagrams) > 70
    for D in diagrams.values():
        assert (2 * mean_euler_characteristic(D)).denominator == 1


# 10 ----------------------------------------------------------------------


@pytest.mark.criterion(10, "planar inequality chain")
@pytest.mark.parametrize("spec", SPECS_2D, ids=str)
def test_c10_chain(spec):
    D = generated(spec)
    hull = convex_hull(D.vertices)
    g, b = lattice_points_in_polygon(hull)
    area = shoelace(hull)
    d = D.n_vertices
    chi = mean_euler_characteristic(D)
    assert d == b
    assert area == g + F(b, 2) - 1
    assert b <= 2 * g + 10 - d
    assert area >= F(3 * (d - 4), 2)
    assert chi >= F(3, 2) * (pi2_rank(D) - 1)
    rep = bounds_2d(D)
    assert (rep.interior, rep.boundary, rep.area) == (g, b, area) and rep.all_hold
    assert pick_identity(D).holds


@pytest.mark.criterion(10, "planar inequality chain")
def test_c10_minimal_hexagon_tight():
    D = corpus("hexagon_min")
    hull = convex_hull(D.vertices)
    g, b = lattice_points_in_polygon(hull)
    assert (g, b) == (1, 6)
    assert b == 2 * g + 10 - 6
    assert shoelace(hull) == F(3 * (6 - 4), 2)
    rep = bounds_2d(D)
    assert rep.coleman_tight and rep.lower_tight


# 11 ----------------------------------------------------------------------


@pytest.mark.criterion(11, "box-restricted minimal areas")
@pytest.mark.parametrize("d,area", [(4, F(1)), (5, F(5, 2)), (6, F(3))])
def test_c11_min_volume(d, area):
    res = min_volume_search(d, (-2, 2))
    assert res.area == area
    assert (res.area, res.witness) == brute_min_area(d, -2, 2)


# 12 ----------------------------------------------------------------------


@pytest.mark.criterion(12, "determinant, Smith form and volume against brute-force oracles")
def test_c12_det():
    rng = random.Random(12)
    for _ in range(1000):
        n = rng.randint(1, 5)
        M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert linalg.det(M) == perm_det(M)


@pytest.mark.criterion(12, "determinant, Smith form and volume against brute-force oracles")
def test_c12_smith():
    rng = random.Random(1212)
    for _ in range(1000):
        r, c = rng.randint(1, 3), rng.randint(1, 4)
        M = [[rng.randint(-6, 6) for _ in range(c)] for _ in range(r)]
        if rng.random() < 0.3:
            M[-1] = [2 * x for x in M[0]]  # force some rank drops and shared factors
        assert list(linalg.invariant_factors(M)) == determinantal_factors(M)


@pytest.mark.criterion(12, "determinant, Smith form and volume against brute-force oracles")
def test_c12_volume():
    rng = random.Random(121212)
    done = 0
    while done < 1000:
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(rng.randint(3, 8))]
        hull = convex_hull(pts)
        if len(hull) < 3:
            continue
        assert normalized_volume(VertexPolytope(hull)) == 2 * shoelace(hull)
        done += 1
