import pytest

from conftest import CORPUS
from oracles import perm_det
from toricreeb.crepant import (
    UnimodularTriangulation,
    UnsupportedDimensionError,
    check_triangulation,
    crepant_filling_normals,
    filling_euler_characteristic,
    graded_colex_key,
    intersect_properly,
    search_unimodular_triangulation,
    unimodular_triangulation,
)
from toricreeb.families import real_projective_diagram
from toricreeb.polytope import normalized_volume
from toricreeb.toric import validate_diagram

THREE_D = {
    "simplex": ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)], 1),
    "octahedron": (CORPUS["octahedron"], 8),
    "cone_over_p2": ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (2, 2, 2)], 6),
    "cone_over_p3": ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (3, 3, 3)], 9),
    "bipyramid_p2": ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1), (2, 2, 2)], 9),
}


def unimodular(T):
    n = len(T.points[0])
    return all(
        abs(perm_det([[T.points[i][k] - T.points[s[0]][k] for k in range(n)] for i in s[1:]])) == 1
        for s in T.simplices
    )


def test_lens_segments():
    T = unimodular_triangulation(validate_diagram([(0,), (3,)]))
    assert T.points == ((0,), (1,), (2,), (3,))
    assert T.simplices == ((0, 1), (1, 2), (2, 3))


def test_s5_z3_star():
    T = unimodular_triangulation(validate_diagram(CORPUS["s5_z3"]))
    assert T.n_simplices == 3
    origin = T.points.index((0, 0))
    assert all(origin in s for s in T.simplices)


def test_rp7_has_no_filling():
    D = validate_diagram(CORPUS["rp7"])
    assert len(D.lattice_points.all) == 4 and normalized_volume(D.polytope) == 2
    assert unimodular_triangulation(D) is None


def test_rp11_has_no_filling():
    assert unimodular_triangulation(real_projective_diagram(2)) is None


def test_unsupported_dimension():
    # the 4-D simplex conv(e_1, ..., e_4, -sum e_i) contains the origin
    verts = [tuple(int(i == j) for i in range(4)) for j in range(4)] + [(-1, -1, -1, -1)]
    with pytest.raises(UnsupportedDimensionError):
        unimodular_triangulation(validate_diagram(verts))


def test_filling_chi_examples():
    for verts, chi in [([(0,), (3,)], 3), (CORPUS["s5_z3"], 3), (CORPUS["xi_3"], 6)]:
        D = validate_diagram(verts)
        assert filling_euler_characteristic(unimodular_triangulation(D), D) == chi


def test_filling_normals_examples():
    D = validate_diagram([(0,), (3,)])
    assert crepant_filling_normals(D, unimodular_triangulation(D)) == [(0, 1), (1, 1), (2, 1), (3, 1)]
    D = validate_diagram(CORPUS["xi_3"])
    assert crepant_filling_normals(D, unimodular_triangulation(D)) == [
        (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]
    D = validate_diagram(CORPUS["unit_simplex"])
    assert sorted(crepant_filling_normals(D, unimodular_triangulation(D))) == sorted(
        tuple(v) + (1,) for v in D.vertices)


def test_graded_colex_order():
    pts = [(1, 1), (0, 0), (3, 3), (0, 1), (2, 2), (1, 0)]
    assert sorted(pts, key=graded_colex_key) == [(0, 0), (1, 0), (0, 1), (1, 1), (2, 2), (3, 3)]


@pytest.mark.parametrize("name", sorted(THREE_D))
def test_three_dimensional(name):
    verts, count = THREE_D[name]
    D = validate_diagram(verts)
    T = unimodular_triangulation(D)
    assert T is not None and T.n_simplices == count == normalized_volume(D.polytope)
    assert unimodular(T)
    assert check_triangulation(D, T) == []


@pytest.mark.parametrize("name", ["square", "xi_3", "hexagon_min", "s5_z3", "xi_5"])
def test_search_agrees_with_insertion_in_the_plane(name):
    D = validate_diagram(CORPUS[name])
    a = unimodular_triangulation(D)
    b = search_unimodular_triangulation(D)
    assert a.n_simplices == b.n_simplices and check_triangulation(D, b) == []


def test_check_rejects_overlap():
    D = validate_diagram(CORPUS["square"])
    pts = ((0, 0), (0, 1), (1, 0), (1, 1))
    bad = UnimodularTriangulation(pts, ((0, 1, 2), (0, 1, 3)))
    assert check_triangulation(D, bad)


def test_check_rejects_non_unimodular_and_foreign_points():
    D = validate_diagram(CORPUS["xi_3"])
    big = UnimodularTriangulation(((0, 0), (1, 0), (3, 3)), ((0, 1, 2),))
    assert any("not unimodular" in p for p in check_triangulation(D, big))
    outside = UnimodularTriangulation(((0, 0), (1, 0), (5, 5)), ((0, 1, 2),))
    assert any("not a lattice point" in p for p in check_triangulation(D, outside))
    short = UnimodularTriangulation(((0, 0), (1, 0), (0, 1)), ((0, 1, 2),))
    assert any("normalized volume" in p for p in check_triangulation(D, short))


def test_intersect_properly_plane():
    pts = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]
    assert intersect_properly((0, 1, 2), (1, 2, 3), pts)      # shared edge, opposite sides
    assert not intersect_properly((0, 1, 2), (0, 1, 3), pts)  # shared edge, same side
    assert intersect_properly((0, 1, 2), (1, 3, 4), pts)      # shared vertex only
    assert not intersect_properly((0, 1, 3), (0, 2, 4), pts)  # crossing diagonals


def test_intersect_properly_space():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (0, 0, -1)]
    assert intersect_properly((0, 1, 2, 3), (0, 1, 2, 5), pts)
    assert intersect_properly((0, 1, 2, 3), (1, 2, 3, 4), pts)
    assert not intersect_properly((0, 1, 2, 3), (0, 1, 2, 4), pts)


def test_triangulation_json_roundtrip():
    T = unimodular_triangulation(validate_diagram(CORPUS["xi_2"]))
    assert UnimodularTriangulation.from_json(T.to_json()) == T
    with pytest.raises(KeyError):
        UnimodularTriangulation.from_json({"points": [], "simplices": [], "x": 1})


def test_deterministic():
    D = validate_diagram(THREE_D["octahedron"][0])
    assert unimodular_triangulation(D) == unimodular_triangulation(validate_diagram(THREE_D["octahedron"][0]))
