"""Exact-arithmetic toolkit for C*-surfaces given by pairs of Q-divisors.

The core objects are a divisor pair (D_+, D_-) on the affine line, the
standard boundary zigzag it induces, and the extended divisor (zigzag
plus the feathers of the degenerate fiber). On top of those the package
decides distinguishedness and rigidity of the extended divisor and
answers classification questions: uniqueness of the C*-action and the
number of conjugacy classes of fibrations by affine lines.
"""

from .classify import (
    AffineMap,
    BadParameters,
    BadToricType,
    ClassificationReport,
    EmptyPolynomial,
    classify_pair,
    cond_alpha_plus,
    cond_alpha_star,
    cond_beta,
    cstar_uniqueness,
    danilov_gizatullin,
    fibration_classes,
    find_psi,
    smooth_exceptional_zigzag,
    surface_xy_p,
    toric_classes,
    toric_iso,
    toric_type,
    toric_zigzag,
)
from .dpd import (
    DpdPair,
    InvalidPair,
    NotGizatullin,
    QDivisor,
    ToricInput,
    boundary_zigzag,
    canonicalize,
    extended_divisor,
    extended_divisor_vee,
    fiber_graph,
    is_gizatullin,
    is_smooth,
    is_toric,
    point_data,
    singular_points,
    swap,
)
from .dualgraph import (
    ExtendedDivisor,
    Feather,
    FiberGraph,
    InvalidFiber,
    NotStandard,
    Zigzag,
    contracts_to_zero_fiber,
    render_ascii,
    reverse_zigzag,
    to_dot,
)
from .exactmath import (
    BoxLabel,
    chain_to_label,
    dual_label,
    eval_chain,
    hj_chain,
    parse_rational,
)
from .rigidity import (
    RigidityReport,
    generalization_moves,
    is_distinguished,
    is_rigid,
    jump_closure,
    jump_pairs,
    mother_component,
)

__all__ = [
    "AffineMap",
    "BadParameters",
    "BadToricType",
    "BoxLabel",
    "ClassificationReport",
    "DpdPair",
    "EmptyPolynomial",
    "ExtendedDivisor",
    "Feather",
    "FiberGraph",
    "InvalidFiber",
    "InvalidPair",
    "NotGizatullin",
    "NotStandard",
    "QDivisor",
    "RigidityReport",
    "ToricInput",
    "Zigzag",
    "boundary_zigzag",
    "canonicalize",
    "chain_to_label",
    "classify_pair",
    "cond_alpha_plus",
    "cond_alpha_star",
    "cond_beta",
    "contracts_to_zero_fiber",
    "cstar_uniqueness",
    "danilov_gizatullin",
    "dual_label",
    "eval_chain",
    "extended_divisor",
    "extended_divisor_vee",
    "fiber_graph",
    "fibration_classes",
    "find_psi",
    "generalization_moves",
    "hj_chain",
    "is_distinguished",
    "is_gizatullin",
    "is_rigid",
    "is_smooth",
    "is_toric",
    "jump_closure",
    "jump_pairs",
    "mother_component",
    "parse_rational",
    "point_data",
    "render_ascii",
    "reverse_zigzag",
    "singular_points",
    "smooth_exceptional_zigzag",
    "surface_xy_p",
    "swap",
    "to_dot",
    "toric_classes",
    "toric_iso",
    "toric_type",
    "toric_zigzag",
]
