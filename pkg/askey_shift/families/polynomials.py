"""
Polynomials, energies and shift scalars of a family at a parameter point.

P_n is built from the catalog's terminating series by the term-ratio
recurrence, so each step multiplies by one rational factor and the sum stays
an exact RationalFunction of the family's coordinate.
"""

from __future__ import annotations

from fractions import Fraction

from askey_shift.algebra import (
    ONE,
    ZERO,
    AlgebraError,
    GaussianRational,
    RationalFunction,
    Value,
    gaussian,
)
from askey_shift.expressions import (
    add_values,
    div_values,
    evaluate_expression,
    evaluate_function,
    evaluate_scalar,
    mul_values,
    sub_values,
)
from askey_shift.families.models import FamilyDescriptor, VariantDescriptor
from askey_shift.families.parameters import ParameterError, ParameterPoint, point_scope
from askey_shift.families.registry import resolve_family


def origin(family: FamilyDescriptor) -> GaussianRational:
    """Coordinate value of the lowest lattice point (x = 0, so t = z = 1)."""
    return ONE if family.coordinate in ("z", "t") else ZERO


def energy(family: FamilyDescriptor | str, n: int, point: ParameterPoint) -> GaussianRational:
    family = resolve_family(family)
    return evaluate_scalar(family.energy, point_scope(family, point, n=n))


def eta_function(family: FamilyDescriptor, point: ParameterPoint) -> RationalFunction:
    """The sinusoidal coordinate eta as a function of the family's coordinate."""
    if family.eta is None:
        return RationalFunction.variable(family.coordinate)
    return evaluate_function(family.eta, point_scope(family, point), family.coordinate)


def build_polynomial(family: FamilyDescriptor | str, n: int, point: ParameterPoint) -> RationalFunction:
    """P_n(coordinate; lambda) for n >= 0; the zero function for n < 0.

    Args:
        family: Descriptor or id
        n: Degree
        point: Parameter point lambda

    Raises:
        ParameterError: If n > N for a finite family, or a normalized series
            vanishes at the origin
    """
    family = resolve_family(family)
    tag = family.coordinate
    if n < 0:
        return RationalFunction.zero(tag)
    if point.N is not None and family.is_finite and n > point.N:
        raise ParameterError(family.id, f"degree {n} exceeds N = {point.N}")

    scope = point_scope(family, point, n=n)
    series = family.series
    upper = [evaluate_expression(text, scope) for text in series.upper]
    lower = [evaluate_expression(text, scope) for text in series.lower]
    argument = evaluate_expression(series.argument, scope)

    total = RationalFunction.one(tag)
    term: Value = ONE
    if series.kind == "hyper":
        for k in range(n):
            ratio = argument
            for value in upper:
                ratio = mul_values(ratio, add_values(value, gaussian(k)))
            for value in lower:
                ratio = div_values(ratio, add_values(value, gaussian(k)))
            ratio = div_values(ratio, gaussian(k + 1))
            term = mul_values(term, ratio)
            total = total + term
    else:
        base = evaluate_expression(series.base, scope) if series.base else scope.values["q"]
        balance = 1 + len(lower) - len(upper)
        power = ONE
        for _ in range(n):
            ratio = argument
            for value in upper:
                ratio = mul_values(ratio, sub_values(ONE, mul_values(value, power)))
            for value in lower:
                ratio = div_values(ratio, sub_values(ONE, mul_values(value, power)))
            ratio = div_values(ratio, sub_values(ONE, mul_values(base, power)))
            sign_power = mul_values(gaussian(-1), power)
            for _ in range(abs(balance)):
                ratio = mul_values(ratio, sign_power) if balance > 0 else div_values(ratio, sign_power)
            term = mul_values(term, ratio)
            total = total + term
            power = mul_values(power, base)

    if series.prefactor:
        total = total * evaluate_function(series.prefactor, scope, tag)
    if series.normalize:
        try:
            at_origin = total.evaluate(origin(family))
        except AlgebraError as e:
            raise ParameterError(family.id, f"normalization undefined: {e}") from e
        if not at_origin:
            raise ParameterError(family.id, "normalization vanishes at the origin")
        total = total * (ONE / at_origin)
    return total


def classic_scalars(
    family: FamilyDescriptor | str, n: int, point: ParameterPoint
) -> tuple[GaussianRational, GaussianRational]:
    """(f_n, b_n) of the classic forward/backward shift relations.

    Real-shift frameworks normalize P_n(origin) = 1, which gives f_n = E_n
    and b_n = 1.
    """
    family = resolve_family(family)
    if family.framework.is_discrete:
        return energy(family, n, point), ONE
    if family.f is None or family.b is None:
        raise ParameterError(family.id, "catalog entry has no classic f/b")
    scope = point_scope(family, point, n=n)
    return evaluate_scalar(family.f, scope), evaluate_scalar(family.b, scope)


def new_scalars(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor,
    n: int,
    point: ParameterPoint,
) -> tuple[GaussianRational, GaussianRational]:
    """(f~_n, b~_n) of a new factorization."""
    family = resolve_family(family)
    scope = point_scope(family, point, n=n)
    return evaluate_scalar(variant.f_tilde, scope), evaluate_scalar(variant.b_tilde, scope)


def kappa(family: FamilyDescriptor, point: ParameterPoint) -> GaussianRational:
    return evaluate_scalar(family.kappa, point_scope(family, point))


def polynomial_degree_in_eta(
    family: FamilyDescriptor | str, polynomial: RationalFunction, point: ParameterPoint
) -> int:
    """Degree of ``polynomial`` as a polynomial in eta(coordinate).

    Read off the Laurent span: a degree-n polynomial in eta spans n times the
    span of eta on each side where eta has one.

    Raises:
        AlgebraError: If the polynomial is not a Laurent polynomial or its
            span is not a whole multiple of the span of eta
    """
    family = resolve_family(family)
    eta = eta_function(family, point)
    low, high = polynomial.laurent_span()
    eta_low, eta_high = eta.laurent_span()
    degrees = []
    if eta_high > 0:
        degrees.append(Fraction(high, eta_high))
    if eta_low < 0:
        degrees.append(Fraction(low, eta_low))
    if not degrees:
        raise AlgebraError("eta is constant")
    degree = max(degrees)
    if degree.denominator != 1:
        raise AlgebraError(f"span {low}..{high} is not a power of eta")
    return int(degree)
