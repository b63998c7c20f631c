"""surjkit: constructive continuous surjections R^m -> R^n with certificates.

The package builds explicit plane-filling maps from an exact Hilbert-curve
codec, lifts them to arbitrary finite dimensions, spans a large family of
surjections from sinh-type homeomorphisms, and certifies surjectivity and
independence numerically on compact boxes.
"""

from .curve import (
    CellAddress,
    CurveParam,
    PlanePoint,
    curve_trace,
    hilbert_decode,
    hilbert_encode,
    modulus_bound,
)
from .errors import (
    DegenerateMemberError,
    DomainError,
    NoSolutionError,
    RefinementError,
    ResourceError,
    StructuralError,
)
from .spans import (
    Asymptotics,
    ScalarSpan,
    VectorSpanMember,
    classify_asymptotics,
    combine_members,
    component_reduce,
    make_diagonal_family,
    make_scalar_span,
    phi_eval,
    phi_inverse,
    scalar_solve,
)
from .surjections import (
    DimLift,
    EvalRequest,
    EvalResult,
    FunctionExpr,
    PeanoLine,
    PhiCompose,
    ProjectLift,
    compose_with_base,
    evaluate,
    evaluate_at,
    evaluate_to_precision,
    expr_from_dict,
    expr_to_dict,
    extend_to_line,
    lift_dimension,
    member_as_expr,
    preimage,
    project_lift,
)
from .certify import (
    BoxSpec,
    CompositionRankReport,
    CoverageCertificate,
    IndependenceReport,
    Witness,
    certify_surjective_on_box,
    composition_preserves_rank,
    default_sample_points,
    detect_degenerate,
    equispaced_points,
    independence_report,
)

__version__ = "0.1.0"

__all__ = [
    "Asymptotics",
    "BoxSpec",
    "CellAddress",
    "CompositionRankReport",
    "CoverageCertificate",
    "CurveParam",
    "DegenerateMemberError",
    "DimLift",
    "DomainError",
    "EvalRequest",
    "EvalResult",
    "FunctionExpr",
    "IndependenceReport",
    "NoSolutionError",
    "PeanoLine",
    "PhiCompose",
    "PlanePoint",
    "ProjectLift",
    "RefinementError",
    "ResourceError",
    "ScalarSpan",
    "StructuralError",
    "VectorSpanMember",
    "Witness",
    "certify_surjective_on_box",
    "classify_asymptotics",
    "combine_members",
    "component_reduce",
    "compose_with_base",
    "composition_preserves_rank",
    "curve_trace",
    "default_sample_points",
    "detect_degenerate",
    "equispaced_points",
    "evaluate",
    "evaluate_at",
    "evaluate_to_precision",
    "expr_from_dict",
    "expr_to_dict",
    "extend_to_line",
    "hilbert_decode",
    "hilbert_encode",
    "independence_report",
    "lift_dimension",
    "make_diagonal_family",
    "make_scalar_span",
    "member_as_expr",
    "modulus_bound",
    "phi_eval",
    "phi_inverse",
    "preimage",
    "project_lift",
    "scalar_solve",
]
