"""
Exact shift operators.

A ShiftOperator is a finite sum of terms ``c(v) * f^(k)(a*v + b)``: a
coefficient function, an affine substitution and a derivative order. Terms
with the same (substitution, order) are merged, zero terms dropped, and the
rest kept in a canonical order, so two operators built differently compare
structurally once normalized.

Operator equality is decided on test monomials v^k, k = -K..K. A nonzero
operator in normal form with m distinct substitutions and derivative order at
most d cannot annihilate all of them once K >= d + m, which is enforced.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from math import comb

from sympy.polys.rings import PolyElement

from askey_shift.algebra import (
    ONE,
    POLY_RING,
    LaurentPoly,
    RationalFunction,
    Substitution,
    TagMismatchError,
    Value,
    compose_substitutions,
    conjugate,
    difference_numerator,
    format_scalar,
    gaussian,
    scalar_power,
)

MAX_ORDER = 2
DEFAULT_OPERATOR_DEGREE = 12


class OperatorError(Exception):
    """Raised when an operator cannot be built or combined."""


class DegreeBoundError(OperatorError):
    """Raised when the degree bound is too small to decide equality."""

    def __init__(self, bound: int, needed: int):
        self.bound = bound
        self.needed = needed
        super().__init__(f"operator degree {bound} below the required {needed}")


@dataclass(frozen=True, eq=False)
class OperatorTerm:
    """``coeff(v) * f^(order)(sub(v))``."""

    coeff: RationalFunction
    sub: Substitution = Substitution()
    order: int = 0


class ShiftOperator:
    """Normalized finite sum of OperatorTerms over one coordinate."""

    __slots__ = ("terms", "tag")

    def __init__(self, terms: Iterable[OperatorTerm], tag: str):
        merged: dict[tuple[Substitution, int], RationalFunction] = {}
        for term in terms:
            if term.coeff.tag != tag:
                raise TagMismatchError(tag, term.coeff.tag)
            if term.order < 0:
                raise OperatorError(f"negative derivative order {term.order}")
            key = (term.sub, term.order)
            merged[key] = merged[key] + term.coeff if key in merged else term.coeff
        self.terms = tuple(
            OperatorTerm(coeff, sub, order)
            for (sub, order), coeff in sorted(merged.items(), key=lambda item: (item[0][1], item[0][0].sort_key()))
            if not coeff.is_zero
        )
        self.tag = tag

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def max_order(self) -> int:
        return max((term.order for term in self.terms), default=0)

    def substitutions(self) -> set[Substitution]:
        return {term.sub for term in self.terms}

    def __call__(self, f: RationalFunction) -> RationalFunction:
        return apply_operator(self, f)

    def __str__(self) -> str:
        return format_operator(self)

    def __repr__(self) -> str:
        return f"ShiftOperator[{self.tag}]({len(self.terms)} terms)"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _as_function(value: Value, tag: str) -> RationalFunction:
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction.constant(value, tag)


def make_operator(terms: Iterable[tuple[Value, Substitution, int]], tag: str) -> ShiftOperator:
    return ShiftOperator((OperatorTerm(_as_function(c, tag), sub, order) for c, sub, order in terms), tag)


def identity_operator(tag: str) -> ShiftOperator:
    return ShiftOperator([OperatorTerm(RationalFunction.one(tag))], tag)


def multiply_operator(f: Value, tag: str) -> ShiftOperator:
    """Multiplication by ``f``."""
    return ShiftOperator([OperatorTerm(_as_function(f, tag))], tag)


def substitution_operator(sub: Substitution, tag: str) -> ShiftOperator:
    """``f -> f o sub``."""
    return ShiftOperator([OperatorTerm(RationalFunction.one(tag), sub)], tag)


# ---------------------------------------------------------------------------
# Algebra
# ---------------------------------------------------------------------------


def _check_tags(o1: ShiftOperator, o2: ShiftOperator) -> None:
    if o1.tag != o2.tag:
        raise TagMismatchError(o1.tag, o2.tag)


def apply_operator(o: ShiftOperator, f: RationalFunction) -> RationalFunction:
    """Exact ``(O f)(v) = sum c(v) f^(k)(a v + b)``."""
    if f.tag != o.tag:
        raise TagMismatchError(o.tag, f.tag)
    derivatives = [f]
    result = RationalFunction.zero(o.tag)
    for term in o.terms:
        while len(derivatives) <= term.order:
            derivatives.append(derivatives[-1].derivative())
        result = result + term.coeff * derivatives[term.order].substitute(term.sub)
    return result


def sum_operators(*operators: ShiftOperator) -> ShiftOperator:
    if not operators:
        raise OperatorError("sum of no operators")
    tag = operators[0].tag
    for o in operators[1:]:
        _check_tags(operators[0], o)
    return ShiftOperator((term for o in operators for term in o.terms), tag)


def scale_operator(o: ShiftOperator, factor: Value) -> ShiftOperator:
    """Left multiplication ``factor * O`` by a scalar or a function."""
    factor = _as_function(factor, o.tag)
    return ShiftOperator((OperatorTerm(factor * t.coeff, t.sub, t.order) for t in o.terms), o.tag)


def add_identity(o: ShiftOperator, c: Value) -> ShiftOperator:
    """``O + c`` (c times the identity)."""
    return sum_operators(o, multiply_operator(c, o.tag))


def operator_difference(o1: ShiftOperator, o2: ShiftOperator) -> ShiftOperator:
    _check_tags(o1, o2)
    return sum_operators(o1, scale_operator(o2, gaussian(-1)))


def compose_operators(o1: ShiftOperator, o2: ShiftOperator) -> ShiftOperator:
    """``O1 o O2`` in normal form.

    For terms (c1, s1, k1) and (c2, s2, k2), the Leibniz rule with the chain
    factor a2 of s2 gives ``sum_j C(k1, j) c1 * (c2^(k1-j) o s1) * a2^j * f^(k2+j) o s2 o s1``.

    Raises:
        OperatorError: If a product term exceeds derivative order 2
    """
    _check_tags(o1, o2)
    terms = []
    for t1 in o1.terms:
        for t2 in o2.terms:
            if t1.order + t2.order > MAX_ORDER:
                raise OperatorError(f"composition reaches derivative order {t1.order + t2.order}")
            sub = compose_substitutions(t2.sub, t1.sub)
            c2_derivs = [t2.coeff]
            for _ in range(t1.order):
                c2_derivs.append(c2_derivs[-1].derivative())
            for j in range(t1.order + 1):
                c2_part = c2_derivs[t1.order - j]
                if c2_part.is_zero:
                    continue
                factor = gaussian(comb(t1.order, j)) * scalar_power(t2.sub.scale, j)
                coeff = t1.coeff * c2_part.substitute(t1.sub) * factor
                terms.append(OperatorTerm(coeff, sub, t2.order + j))
    return ShiftOperator(terms, o1.tag)


def compose_all(*operators: ShiftOperator) -> ShiftOperator:
    """``O1 o O2 o ... o On``."""
    if not operators:
        raise OperatorError("composition of no operators")
    result = operators[-1]
    for o in reversed(operators[:-1]):
        result = compose_operators(o, result)
    return result


def conjugate_by(o: ShiftOperator, sigma: Substitution) -> ShiftOperator:
    """The operator ``f -> O(f o sigma) o sigma^-1``.

    Each term (c, s, k) becomes (a^k * c o sigma^-1, sigma o s o sigma^-1, k)
    with a the scale of sigma.
    """
    if sigma.is_identity:
        return o
    inverse = sigma.inverse()
    return ShiftOperator(
        (
            OperatorTerm(
                t.coeff.substitute(inverse) * scalar_power(sigma.scale, t.order),
                compose_substitutions(sigma, compose_substitutions(t.sub, inverse)),
                t.order,
            )
            for t in o.terms
        ),
        o.tag,
    )


def transport(o: ShiftOperator, sigma: Substitution, tag: str) -> ShiftOperator:
    """Conjugate by ``sigma`` and relabel the coordinate as ``tag``."""
    moved = conjugate_by(o, sigma)
    return ShiftOperator((OperatorTerm(t.coeff.retag(tag), t.sub, t.order) for t in moved.terms), tag)


def star_operator(o: ShiftOperator) -> ShiftOperator:
    """``star o O o star`` for the idQM star of the operator's coordinate.

    On x (star f(v) = conj f(conj v)) a term (c, v -> a v + b, k) becomes
    (c*, v -> conj(a) v + conj(b), k). On z (star f(z) = conj f(1/conj z))
    only pure scalings occur and v -> a v becomes v -> v / conj(a).

    Raises:
        OperatorError: For z-terms with an offset or a derivative
    """
    terms = []
    for t in o.terms:
        if o.tag == "z":
            if t.sub.offset or t.order:
                raise OperatorError("star on z applies to pure scaling terms only")
            sub = Substitution.scaling(ONE / conjugate(t.sub.scale))
        else:
            sub = Substitution(conjugate(t.sub.scale), conjugate(t.sub.offset))
        terms.append(OperatorTerm(t.coeff.star(), sub, t.order))
    return ShiftOperator(terms, o.tag)


# ---------------------------------------------------------------------------
# Equality on test monomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class OperatorMismatch:
    """First monomial v^k on which two operators disagree."""

    exponent: int
    lhs: RationalFunction
    rhs: RationalFunction
    difference: LaurentPoly


def required_operator_degree(o1: ShiftOperator, o2: ShiftOperator) -> int:
    subs = o1.substitutions() | o2.substitutions()
    return max(o1.max_order, o2.max_order) + len(subs)


def _falling(k: int, order: int) -> int:
    result = 1
    for j in range(order):
        result *= k - j
    return result


def _linear(sub: Substitution) -> PolyElement:
    return POLY_RING.from_dict({(1,): sub.scale, (0,): sub.offset})


def _common_denominator(coeffs: list[RationalFunction]) -> PolyElement:
    common = POLY_RING.one
    for c in coeffs:
        _, _, cofactor = common.cofactors(c.den_poly)
        common = common * cofactor
    return common


def _monomial_numerator(diff: ShiftOperator, scaled: list[PolyElement], k: int) -> PolyElement:
    """Numerator of ``diff(v^k)`` over the common denominator, up to a unit."""
    groups: dict[Substitution, list[tuple[PolyElement, int]]] = {}
    for term, poly in zip(diff.terms, scaled):
        falling = _falling(k, term.order)
        if falling:
            groups.setdefault(term.sub, []).append((poly * gaussian(falling), k - term.order))
    if not groups:
        return POLY_RING.zero

    lifts = {sub: max(0, max(-e for _, e in entries)) for sub, entries in groups.items()}
    linears = {sub: _linear(sub) for sub in groups}
    total = POLY_RING.zero
    for sub, entries in groups.items():
        ell = linears[sub]
        part = POLY_RING.zero
        for poly, exponent in entries:
            part += poly * ell ** (exponent + lifts[sub])
        for other, lift in lifts.items():
            if other != sub and lift:
                part *= linears[other] ** lift
        total += part
    return total


def first_disagreement(
    o1: ShiftOperator, o2: ShiftOperator, bound: int = DEFAULT_OPERATOR_DEGREE
) -> OperatorMismatch | None:
    """Smallest monomial v^k, k in [-bound, bound], with O1(v^k) != O2(v^k).

    Raises:
        DegreeBoundError: If bound is below the order-plus-substitutions bound
    """
    _check_tags(o1, o2)
    needed = required_operator_degree(o1, o2)
    if bound < needed:
        raise DegreeBoundError(bound, needed)
    diff = operator_difference(o1, o2)
    if diff.is_zero:
        return None
    common = _common_denominator([t.coeff for t in diff.terms])
    scaled = [t.coeff.num_poly * common.exquo(t.coeff.den_poly) for t in diff.terms]
    for k in range(-bound, bound + 1):
        if _monomial_numerator(diff, scaled, k):
            monomial = RationalFunction.monomial(k, o1.tag)
            lhs, rhs = apply_operator(o1, monomial), apply_operator(o2, monomial)
            return OperatorMismatch(k, lhs, rhs, difference_numerator(lhs, rhs))
    return None


def operators_equal(o1: ShiftOperator, o2: ShiftOperator, bound: int = DEFAULT_OPERATOR_DEGREE) -> bool:
    """Exact operator equality decided on monomials v^k, k in [-bound, bound]."""
    return first_disagreement(o1, o2, bound) is None


# ---------------------------------------------------------------------------
# Text
# ---------------------------------------------------------------------------


def format_substitution(sub: Substitution, tag: str) -> str:
    return f"{tag} ↦ {format_scalar(sub.scale)}·{tag} + {format_scalar(sub.offset)}"


def format_operator(o: ShiftOperator) -> str:
    """One line per term: ``(coeff) · [v ↦ a·v + b] · (d/dv)^k``."""
    if o.is_zero:
        return "0"
    lines = []
    for t in o.terms:
        line = f"({t.coeff}) · [{format_substitution(t.sub, o.tag)}]"
        if t.order:
            line += f" · (d/d{o.tag})^{t.order}"
        lines.append(line)
    return "\n".join(lines)


__all__ = [
    "DEFAULT_OPERATOR_DEGREE",
    "DegreeBoundError",
    "OperatorError",
    "OperatorMismatch",
    "OperatorTerm",
    "ShiftOperator",
    "add_identity",
    "apply_operator",
    "compose_all",
    "compose_operators",
    "conjugate_by",
    "first_disagreement",
    "format_operator",
    "format_substitution",
    "identity_operator",
    "make_operator",
    "multiply_operator",
    "operator_difference",
    "operators_equal",
    "required_operator_degree",
    "scale_operator",
    "star_operator",
    "substitution_operator",
    "sum_operators",
    "transport",
]
