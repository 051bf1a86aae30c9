"""Step-by-step expansion of one new shift relation for ``askey-shift explain``."""

from __future__ import annotations

from askey_shift.algebra import GaussianRational, RationalFunction, format_scalar, normalize_equal
from askey_shift.families import (
    FamilyDescriptor,
    ParameterPoint,
    build_polynomial,
    new_scalars,
    resolve_family,
)
from askey_shift.models import ExplainTrace, TraceSection, TraceTerm
from askey_shift.operators import (
    ShiftOperator,
    build_operator,
    format_operator,
    format_substitution,
    new_kinds,
    variant_sigma,
)
from askey_shift.relations.base import SHIFT_NEW
from askey_shift.relations.new import require_variant, shifted_point


def _section(
    name: str,
    operator: ShiftOperator,
    source: RationalFunction,
    scalar: GaussianRational,
    target: RationalFunction,
) -> TraceSection:
    derivatives = [source]
    terms = []
    result = RationalFunction.zero(operator.tag)
    for term in operator.terms:
        while len(derivatives) <= term.order:
            derivatives.append(derivatives[-1].derivative())
        contribution = term.coeff * derivatives[term.order].substitute(term.sub)
        result = result + contribution
        terms.append(
            TraceTerm(
                coefficient=str(term.coeff),
                substitution=format_substitution(term.sub, operator.tag),
                order=term.order,
                contribution=str(contribution),
            )
        )
    scaled = target * scalar
    return TraceSection(
        name=name,
        operator=format_operator(operator),
        input=str(source),
        terms=terms,
        result=str(result),
        result_json=result.to_json(),
        scalar=format_scalar(scalar),
        target=str(scaled),
        target_json=scaled.to_json(),
        holds=normalize_equal(result, scaled),
    )


def explain_shift(
    family: FamilyDescriptor | str, variant: str, n: int, point: ParameterPoint
) -> ExplainTrace:
    """Expand F~ P_n = f~_n P_n(lambda') o sigma and B~ P_n(lambda') o sigma = b~_n P_n term by term.

    Raises:
        NotApplicableError: If the family has no new factorization
        ParameterError: If lambda' or degree n is inadmissible
    """
    family = resolve_family(family)
    resolved = require_variant(SHIFT_NEW, family, variant)
    lowered = shifted_point(family, resolved, point)
    sigma = variant_sigma(family, resolved, point)
    fwd, bwd = new_kinds(family.framework)
    p = build_polynomial(family, n, point)
    moved = build_polynomial(family, n, lowered).substitute(sigma)
    f_n, b_n = new_scalars(family, resolved, n, point)
    sections = [
        _section("forward", build_operator(family, resolved, point, fwd), p, f_n, moved),
        _section("backward", build_operator(family, resolved, point, bwd), moved, b_n, p),
    ]
    return ExplainTrace(
        family=family.id,
        variant=resolved.label,
        n=n,
        point=point.to_json(),
        shifted_point=lowered.to_json(),
        sigma=format_substitution(sigma, family.coordinate),
        sections=sections,
    )
