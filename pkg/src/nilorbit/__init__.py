"""Exact torus-equivariant cohomology of minimal and regular nilpotent orbits.

The package builds the GKM graph of the relevant partial flag variety for
any simple type, solves the edge divisibility conditions over exact
rationals, and presents the minimal orbit's equivariant cohomology as the
quotient by the Euler-class ideal.  See README.md for a tour.
"""

from .errors import (
    CapExceededError,
    InternalInvariantError,
    InvalidLieTypeError,
    NilorbitError,
    RankMismatchError,
)
from .lie import (
    DEFAULT_CAP,
    Coset,
    LieType,
    RootSystem,
    Weight,
    WeylWord,
    apply_word,
    build_root_system,
    coset_poincare_polynomial,
    coset_representatives,
    fundamental_weights,
    inner_product,
    reflect,
    weyl_orbit,
)
from .poly import (
    MultiPoly,
    RationalMatrix,
    RationalSpan,
    column_space_complement,
    divides_linear,
    monomial_basis,
    nullspace,
    poly_add,
    poly_mul,
    poly_scale,
)
from .gkm import (
    GKMClass,
    GKMEdge,
    GKMGraph,
    GKMVertex,
    build_gkm_graph,
    equivariant_basis,
    ones_class,
    pointwise_product,
    predicted_equiv_betti,
    satisfies_gkm_conditions,
)
from .orbit import (
    AbelianGroup,
    BettiTable,
    CenterGroup,
    QuotientRing,
    center_group,
    center_group_cohomology,
    euler_class,
    minimal_orbit_betti,
    minimal_orbit_cohomology,
    regular_orbit_betti,
    smith_invariant_factors,
)
from .moment import Polytope, moment_polytope, projective_fixed_points

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup", "BettiTable", "CapExceededError", "CenterGroup", "Coset",
    "DEFAULT_CAP", "GKMClass", "GKMEdge", "GKMGraph", "GKMVertex",
    "InternalInvariantError", "InvalidLieTypeError", "LieType", "MultiPoly",
    "NilorbitError", "Polytope", "QuotientRing", "RankMismatchError",
    "RationalMatrix", "RationalSpan", "RootSystem", "Weight", "WeylWord",
    "apply_word", "build_gkm_graph", "build_root_system", "center_group",
    "center_group_cohomology", "column_space_complement",
    "coset_poincare_polynomial", "coset_representatives", "divides_linear",
    "equivariant_basis", "euler_class", "fundamental_weights", "inner_product",
    "minimal_orbit_betti", "minimal_orbit_cohomology", "moment_polytope",
    "monomial_basis", "nullspace", "ones_class", "pointwise_product",
    "poly_add", "poly_mul", "poly_scale", "predicted_equiv_betti",
    "projective_fixed_points", "reflect", "regular_orbit_betti",
    "satisfies_gkm_conditions", "smith_invariant_factors", "weyl_orbit",
]
