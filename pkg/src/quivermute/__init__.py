"""quivermute: computing with bound quivers of n-translation algebras.

Exact rational arithmetic throughout: quadratic duals, tau-hammocks,
windowed Z|_{n-1}Q ambients, tau-mutations of complete tau-slices and
n-APR tilt reports, plus a homological verifier for the tilting
conditions at desk scale.
"""

from .quiver import Arrow, BoundQuiver, LinComb, make_lincomb, canonical_quiver, validate
from .basis import GradedBasis, graded_basis, grade_to_top, is_properly_graded, max_bound_paths
from .dual import pairing, quadratic_dual
from .iso import quiver_isomorphism
from .translation import (
    TranslationData,
    detect_translation,
    hammock,
    koszul_profile,
    verify_n_translation,
)
from .extension import (
    build_zq,
    embed_base_slice,
    returning_arrow_quiver,
    tilde_relations,
    trivial_extension,
)
from .mutation import (
    SliceEmbedding,
    enumerate_slices,
    is_complete_slice,
    is_convex,
    movable_vertices,
    mutate,
    mutation_path,
    tau_tilt,
    truncation,
    truncation_algebras_agree,
)

__all__ = [
    "Arrow",
    "BoundQuiver",
    "LinComb",
    "make_lincomb",
    "canonical_quiver",
    "validate",
    "GradedBasis",
    "graded_basis",
    "grade_to_top",
    "is_properly_graded",
    "max_bound_paths",
    "pairing",
    "quadratic_dual",
    "quiver_isomorphism",
    "TranslationData",
    "detect_translation",
    "hammock",
    "koszul_profile",
    "verify_n_translation",
    "build_zq",
    "embed_base_slice",
    "returning_arrow_quiver",
    "tilde_relations",
    "trivial_extension",
    "SliceEmbedding",
    "enumerate_slices",
    "is_complete_slice",
    "is_convex",
    "movable_vertices",
    "mutate",
    "mutation_path",
    "tau_tilt",
    "truncation",
    "truncation_algebras_agree",
]
