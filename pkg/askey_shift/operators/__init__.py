"""Shift operators: exact operator algebra and per-framework builders."""

from askey_shift.operators.builders import (
    CoordinateMaps,
    NoNewFactorizationError,
    OperatorKind,
    SplitFactors,
    build_operator,
    classic_kinds,
    coordinate_maps,
    jackson_scale,
    new_kinds,
    potential_functions,
    resolve_variant,
    split_factors,
    variant_sigma,
    x_shift,
)
from askey_shift.operators.core import (
    DEFAULT_OPERATOR_DEGREE,
    DegreeBoundError,
    OperatorError,
    OperatorMismatch,
    OperatorTerm,
    ShiftOperator,
    add_identity,
    apply_operator,
    compose_all,
    compose_operators,
    conjugate_by,
    first_disagreement,
    format_operator,
    format_substitution,
    identity_operator,
    make_operator,
    multiply_operator,
    operator_difference,
    operators_equal,
    required_operator_degree,
    scale_operator,
    star_operator,
    substitution_operator,
    sum_operators,
    transport,
)

__all__ = [
    "DEFAULT_OPERATOR_DEGREE",
    "CoordinateMaps",
    "DegreeBoundError",
    "NoNewFactorizationError",
    "OperatorError",
    "OperatorKind",
    "OperatorMismatch",
    "OperatorTerm",
    "ShiftOperator",
    "SplitFactors",
    "add_identity",
    "apply_operator",
    "build_operator",
    "classic_kinds",
    "compose_all",
    "compose_operators",
    "conjugate_by",
    "coordinate_maps",
    "jackson_scale",
    "first_disagreement",
    "format_operator",
    "format_substitution",
    "identity_operator",
    "make_operator",
    "multiply_operator",
    "new_kinds",
    "potential_functions",
    "operator_difference",
    "operators_equal",
    "required_operator_degree",
    "resolve_variant",
    "scale_operator",
    "split_factors",
    "star_operator",
    "substitution_operator",
    "sum_operators",
    "transport",
    "variant_sigma",
    "x_shift",
]
