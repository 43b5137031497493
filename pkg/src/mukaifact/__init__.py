"""Exact Mukai-lattice computations and factoriality verdicts for moduli of sheaves on K3 and abelian surfaces."""

from .factoriality import (
    DefectGroup,
    GammaExtension,
    Outcome,
    Target,
    TraceStep,
    Verdict,
    b2_of_resolution,
    beauville_lattice,
    classify,
    criterion_beta,
    criterion_gamma,
    defect_group,
    gamma_extension,
    hv_overlattice,
)
from .lattice import (
    DegenerateFormError,
    GlueError,
    Lattice,
    PreconditionError,
    SublatticeEmbedding,
    determinant,
    direct_sum,
    discriminant_group,
    divisibility,
    dual_lattice,
    fingerprint,
    is_primitive,
    mod2_radical,
    orthogonal_complement,
    overlattice_from_glue,
    saturation,
    signature,
    standard_lattice,
)
from .intmat import smith_normal_form
from .mukai import (
    ChernCharacter,
    MukaiVector,
    SurfaceKind,
    SurfaceModel,
    algebraic_mukai_lattice,
    check_ols,
    is_mukai_vector,
    mukai_pairing,
    mukai_vector_of_sheaf,
    primitive_decomposition,
    rank_one_model,
    v_perp_algebraic,
    v_perp_full,
)

__version__ = "0.1.0"

__all__ = [
    "ChernCharacter",
    "DefectGroup",
    "DegenerateFormError",
    "GammaExtension",
    "GlueError",
    "Lattice",
    "MukaiVector",
    "Outcome",
    "PreconditionError",
    "SublatticeEmbedding",
    "SurfaceKind",
    "SurfaceModel",
    "Target",
    "TraceStep",
    "Verdict",
    "algebraic_mukai_lattice",
    "b2_of_resolution",
    "beauville_lattice",
    "check_ols",
    "classify",
    "criterion_beta",
    "criterion_gamma",
    "defect_group",
    "determinant",
    "direct_sum",
    "discriminant_group",
    "divisibility",
    "dual_lattice",
    "fingerprint",
    "gamma_extension",
    "hv_overlattice",
    "is_mukai_vector",
    "is_primitive",
    "mod2_radical",
    "mukai_pairing",
    "mukai_vector_of_sheaf",
    "orthogonal_complement",
    "overlattice_from_glue",
    "primitive_decomposition",
    "rank_one_model",
    "saturation",
    "signature",
    "smith_normal_form",
    "standard_lattice",
    "v_perp_algebraic",
    "v_perp_full",
]
