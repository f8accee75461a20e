"""Exact invariants of Gorenstein toric contact manifolds.

A toric diagram (an integral simplicial polytope with unimodular facets)
determines the manifold. From it this package computes mean indices of the
toric closed Reeb orbits, the mean Euler characteristic, homotopy data, and
crepant fillings, all in exact integer and rational arithmetic.
"""

from .crepant import (
    UnimodularTriangulation,
    UnsupportedDimensionError,
    check_triangulation,
    crepant_filling_normals,
    filling_euler_characteristic,
    unimodular_triangulation,
)
from .families import FamilySpec, bounds_2d, family_chi_formula, generate, min_volume_search, pick_identity
from .linalg import (
    FiniteAbelianGroup,
    complete_to_unimodular,
    det,
    hermite_normal_form,
    invariant_factors,
    smith_normal_form,
    solve_integer_linear,
    solve_rational,
)
from .polytope import VertexPolytope, contains, facets, lattice_points, normalized_volume
from .reeb import (
    OrbitIndexReport,
    ReebVector,
    cz_index_sequence,
    facet_mean_index,
    mean_euler_characteristic,
    mean_indices,
    resonance_check,
)
from .toric import (
    GoodCone,
    InvalidDiagramError,
    NonGorensteinError,
    ToricDiagram,
    c1_is_zero,
    cone_to_diagram,
    diagram_to_cone,
    diffeo_type_dim5,
    fundamental_group,
    pi2_rank,
    validate_diagram,
    validate_good_cone,
)

__version__ = "0.1.0"

__all__ = [
    "FamilySpec",
    "FiniteAbelianGroup",
    "GoodCone",
    "InvalidDiagramError",
    "NonGorensteinError",
    "OrbitIndexReport",
    "ReebVector",
    "ToricDiagram",
    "UnimodularTriangulation",
    "UnsupportedDimensionError",
    "VertexPolytope",
    "bounds_2d",
    "c1_is_zero",
    "check_triangulation",
    "complete_to_unimodular",
    "cone_to_diagram",
    "contains",
    "crepant_filling_normals",
    "cz_index_sequence",
    "det",
    "diagram_to_cone",
    "diffeo_type_dim5",
    "facet_mean_index",
    "facets",
    "family_chi_formula",
    "filling_euler_characteristic",
    "fundamental_group",
    "generate",
    "hermite_normal_form",
    "invariant_factors",
    "lattice_points",
    "mean_euler_characteristic",
    "mean_indices",
    "min_volume_search",
    "normalized_volume",
    "pi2_rank",
    "pick_identity",
    "resonance_check",
    "smith_normal_form",
    "solve_integer_linear",
    "solve_rational",
    "unimodular_triangulation",
    "validate_diagram",
    "validate_good_cone",
]
