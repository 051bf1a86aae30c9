"""
Checkers for the new factorizations of a family variant.

- split: the variant's factors multiply back to the potentials
- cross_identity: the cross terms of the split reproduce f~_0 b~_0 - V - V* (idQM)
  or f~_0 b~_0 - B - D (rdQM, rdQMJ)
- factorization_new: H from B~ F~ with the framework's sign and factor
- shift_new: F~ P_n(lambda) = f~_n P_n(lambda') o sigma and back
- star_invariance: idQM polynomials and operators are fixed by the *-operation

Here lambda' = lambda - delta_bar and sigma is the variant's coordinate map
(x -> x + s on rdQM, eta -> r' eta on rdQMJ, the identity otherwise).
"""

from __future__ import annotations

from askey_shift.algebra import GaussianRational, RationalFunction
from askey_shift.families import (
    FamilyDescriptor,
    Framework,
    ParameterPoint,
    VariantDescriptor,
    build_polynomial,
    new_scalars,
    resolve_family,
    shift_parameters,
)
from askey_shift.models import RelationReport
from askey_shift.operators import (
    DEFAULT_OPERATOR_DEGREE,
    OperatorKind,
    add_identity,
    apply_operator,
    build_operator,
    compose_operators,
    coordinate_maps,
    new_kinds,
    potential_functions,
    resolve_variant,
    scale_operator,
    split_factors,
    star_operator,
    variant_sigma,
)
from askey_shift.relations.base import (
    CROSS_IDENTITY,
    FACTORIZATION_NEW,
    SHIFT_NEW,
    SPLIT,
    STAR_INVARIANCE,
    NotApplicableError,
    Verification,
)


def require_variant(
    relation: str, family: FamilyDescriptor, variant: VariantDescriptor | str | None
) -> VariantDescriptor:
    """Resolve ``variant`` or raise NotApplicableError for families without new data."""
    if not family.has_new_factorization:
        raise NotApplicableError(relation, family.id, "no new factorization")
    resolved = resolve_variant(family, variant)
    if resolved is None:
        raise NotApplicableError(relation, family.id, "relation needs a variant")
    return resolved


def shifted_point(family: FamilyDescriptor, variant: VariantDescriptor, point: ParameterPoint) -> ParameterPoint:
    """lambda' = lambda - delta_bar."""
    return shift_parameters(point, variant.delta_bar, -1, family)


def zero_energy_term(
    family: FamilyDescriptor, variant: VariantDescriptor, point: ParameterPoint
) -> GaussianRational:
    f_0, b_0 = new_scalars(family, variant, 0, point)
    return f_0 * b_0


def check_split(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor | str,
    point: ParameterPoint,
    *,
    trial: int = 0,
) -> RelationReport:
    family = resolve_family(family)
    variant = require_variant(SPLIT, family, variant)
    if family.framework is Framework.OQM:
        raise NotApplicableError(SPLIT, family.id, "differential families have no potential split")
    v = Verification(SPLIT, family, point, variant=variant.label, trial=trial)
    with v.guard("split"):
        split = split_factors(family, variant, point)
        first, second = potential_functions(family, point)
        if family.framework is Framework.IDQM:
            v.functions("V1 V2 = V", split.first * split.second, first)
        else:
            v.functions("B1 B2 = B", split.first * split.second, first)
            v.functions("D1 D2 = D", split.death_first * split.death_second, second)
    return v.report()


def cross_terms(
    family: FamilyDescriptor, variant: VariantDescriptor, point: ParameterPoint
) -> RationalFunction:
    """The cross terms of the split at ``point``, minus f~_0 b~_0.

    idQM: V1(x + i) V2*(x) + V1*(x - i) V2(x) - f~_0 b~_0
    rdQM, rdQMJ: B1(step^-1 v) D2(v) + D1(step v) B2(v) - f~_0 b~_0
    """
    split = split_factors(family, variant, point)
    maps = coordinate_maps(family, point)
    f0b0 = zero_energy_term(family, variant, point)
    if family.framework is Framework.IDQM:
        full = maps.full
        return (
            split.first.substitute(full.inverse()) * split.second.star()
            + split.first.star().substitute(full) * split.second
            - f0b0
        )
    step = maps.step
    return (
        split.first.substitute(step.inverse()) * split.death_second
        + split.death_first.substitute(step) * split.second
        - f0b0
    )


def check_cross_identity(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor | str,
    point: ParameterPoint,
    *,
    trial: int = 0,
) -> RelationReport:
    family = resolve_family(family)
    variant = require_variant(CROSS_IDENTITY, family, variant)
    if family.framework is Framework.OQM:
        raise NotApplicableError(CROSS_IDENTITY, family.id, "differential families have no potential split")
    v = Verification(CROSS_IDENTITY, family, point, variant=variant.label, trial=trial)
    with v.guard("cross_identity"):
        first, second = potential_functions(family, point)
        label = "cross terms - f~_0 b~_0 = -(V + V*)" if family.framework is Framework.IDQM else (
            "cross terms - f~_0 b~_0 = -(B + D)"
        )
        v.functions(label, cross_terms(family, variant, point), -(first + second))
    return v.report()


def check_factorization_new(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor | str,
    point: ParameterPoint,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    """H = 4(B~ F~ - f~_0 b~_0) on oQM, B~ F~ - f~_0 b~_0 on idQM and
    f~_0 b~_0 - B~ F~ on the real-shift frameworks."""
    family = resolve_family(family)
    variant = require_variant(FACTORIZATION_NEW, family, variant)
    v = Verification(FACTORIZATION_NEW, family, point, variant=variant.label, trial=trial, degree=degree)
    with v.guard("factorization_new"):
        fwd, bwd = new_kinds(family.framework)
        product = compose_operators(
            build_operator(family, variant, point, bwd), build_operator(family, variant, point, fwd)
        )
        f0b0 = zero_energy_term(family, variant, point)
        hamiltonian = build_operator(family, None, point, OperatorKind.HAMILTONIAN)
        if family.framework is Framework.OQM:
            v.operators("H = 4(B~ F~ - f~_0 b~_0)", hamiltonian, scale_operator(add_identity(product, -f0b0), 4))
        elif family.framework is Framework.IDQM:
            v.operators("H = B~ F~ - f~_0 b~_0", hamiltonian, add_identity(product, -f0b0))
        else:
            v.operators("H = f~_0 b~_0 - B~ F~", hamiltonian, add_identity(scale_operator(product, -1), f0b0))
    return v.report()


def check_shift_new(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor | str,
    n: int,
    point: ParameterPoint,
    *,
    trial: int = 0,
) -> RelationReport:
    """Forward and backward new shift relations at degree n.

    The degree is not lowered: both sides carry P_n, the right side at
    lambda' and read through sigma.
    """
    family = resolve_family(family)
    variant = require_variant(SHIFT_NEW, family, variant)
    v = Verification(SHIFT_NEW, family, point, variant=variant.label, n=n, trial=trial)
    with v.guard("shift_new"):
        lowered = shifted_point(family, variant, point)
        sigma = variant_sigma(family, variant, point)
        fwd, bwd = new_kinds(family.framework)
        p = build_polynomial(family, n, point)
        moved = build_polynomial(family, n, lowered).substitute(sigma)
        f_n, b_n = new_scalars(family, variant, n, point)
        forward = build_operator(family, variant, point, fwd)
        backward = build_operator(family, variant, point, bwd)
        v.functions("F~ P_n = f~_n P_n(lambda') o sigma", apply_operator(forward, p), moved * f_n)
        v.functions("B~ P_n(lambda') o sigma = b~_n P_n", apply_operator(backward, moved), p * b_n)
    return v.report()


def check_star_invariance(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor | str | None,
    n: int,
    point: ParameterPoint,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    """*-invariance of P_n and of the idQM operators.

    Without a variant the check covers P_n and H; with one it covers
    P_n(lambda), P_n(lambda'), F~ and B~, and that F~ commutes with *.
    """
    family = resolve_family(family)
    if family.framework is not Framework.IDQM:
        raise NotApplicableError(STAR_INVARIANCE, family.id, "the *-operation belongs to idQM")
    resolved = resolve_variant(family, variant)
    v = Verification(
        STAR_INVARIANCE,
        family,
        point,
        variant=resolved.label if resolved else None,
        n=n,
        trial=trial,
        degree=degree,
    )
    with v.guard("star_invariance"):
        p = build_polynomial(family, n, point)
        v.functions("P_n* = P_n", p.star(), p)
        if resolved is None:
            hamiltonian = build_operator(family, None, point, OperatorKind.HAMILTONIAN)
            v.operators("H* = H", star_operator(hamiltonian), hamiltonian)
        else:
            lowered = build_polynomial(family, n, shifted_point(family, resolved, point))
            v.functions("P_n(lambda')* = P_n(lambda')", lowered.star(), lowered)
            fwd, bwd = new_kinds(family.framework)
            forward = build_operator(family, resolved, point, fwd)
            backward = build_operator(family, resolved, point, bwd)
            v.operators("F~* = F~", star_operator(forward), forward)
            v.operators("B~* = B~", star_operator(backward), backward)
            v.functions("(F~ P_n)* = F~ P_n*", apply_operator(forward, p).star(), apply_operator(forward, p.star()))
    return v.report()
