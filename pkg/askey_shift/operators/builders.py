"""
Hamiltonians and shift operators of a family at a parameter point.

Each framework fixes how the coordinate moves under a shift:
- oQM: derivatives in eta, no substitutions
- idQM: imaginary half steps, x -> x -+ i/2 on x and z -> s^+-1 z on z
- rdQM: unit steps, x -> x + 1 on x and t -> q t on t
- rdQMJ: eta -> q eta

The classic operators come from the catalog's potential data (c2/c1/cF, V and
phi, B and D, BJ/DJ/A); the new operators from a variant's split factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import structlog

from askey_shift.algebra import (
    IMAG,
    ONE,
    GaussianRational,
    RationalFunction,
    Substitution,
    gaussian,
    scalar_power,
)
from askey_shift.expressions import evaluate_function, evaluate_scalar
from askey_shift.families import (
    FamilyDescriptor,
    Framework,
    ParameterPoint,
    VariantDescriptor,
    origin,
    point_scope,
    resolve_family,
)
from askey_shift.operators.core import (
    OperatorError,
    ShiftOperator,
    compose_operators,
    make_operator,
    multiply_operator,
)

log = structlog.get_logger(__name__)


class OperatorKind(str, Enum):
    HAMILTONIAN = "hamiltonian"
    FWD = "fwd"
    BWD = "bwd"
    FWD_NEW = "fwd_new"
    BWD_NEW = "bwd_new"
    FWD_J = "fwdJ"
    BWD_J = "bwdJ"
    FWD_J_NEW = "fwdJ_new"
    BWD_J_NEW = "bwdJ_new"

    @property
    def is_new(self) -> bool:
        return self in (OperatorKind.FWD_NEW, OperatorKind.BWD_NEW, OperatorKind.FWD_J_NEW, OperatorKind.BWD_J_NEW)

    @property
    def is_jackson(self) -> bool:
        return self in (OperatorKind.FWD_J, OperatorKind.BWD_J, OperatorKind.FWD_J_NEW, OperatorKind.BWD_J_NEW)


class NoNewFactorizationError(OperatorError):
    """Raised when new operators are requested for a family without variants."""

    def __init__(self, family: str):
        self.family = family
        super().__init__(f"family {family!r} has no new factorization")


def classic_kinds(framework: Framework) -> tuple[OperatorKind, OperatorKind]:
    if framework is Framework.RDQMJ:
        return OperatorKind.FWD_J, OperatorKind.BWD_J
    return OperatorKind.FWD, OperatorKind.BWD


def new_kinds(framework: Framework) -> tuple[OperatorKind, OperatorKind]:
    if framework is Framework.RDQMJ:
        return OperatorKind.FWD_J_NEW, OperatorKind.BWD_J_NEW
    return OperatorKind.FWD_NEW, OperatorKind.BWD_NEW


@dataclass(frozen=True)
class CoordinateMaps:
    """Coordinate substitutions of one family at one point.

    ``half`` is the idQM half step (e^{gamma p / 2}), ``full`` its square,
    ``step`` the real-shift unit step (e^{d}).
    """

    half: Substitution | None = None
    full: Substitution | None = None
    step: Substitution | None = None


def coordinate_maps(family: FamilyDescriptor, point: ParameterPoint) -> CoordinateMaps:
    if family.framework is Framework.IDQM:
        if family.coordinate == "z":
            return CoordinateMaps(half=Substitution.scaling(point.s), full=Substitution.scaling(point.q))
        return CoordinateMaps(
            half=Substitution.translation(-IMAG * gaussian("1/2")),
            full=Substitution.translation(-IMAG),
        )
    if family.framework.is_rdqm:
        if family.coordinate == "t":
            return CoordinateMaps(step=Substitution.scaling(point.q))
        return CoordinateMaps(step=Substitution.translation(1))
    if family.framework is Framework.RDQMJ:
        return CoordinateMaps(step=Substitution.scaling(point.q))
    return CoordinateMaps()


def x_shift(family: FamilyDescriptor, point: ParameterPoint, amount: int) -> Substitution:
    """The lattice shift x -> x + amount in the family's coordinate."""
    if family.coordinate == "t":
        return Substitution.scaling(scalar_power(point.q, amount))
    return Substitution.translation(amount)


def variant_sigma(family: FamilyDescriptor, variant: VariantDescriptor, point: ParameterPoint) -> Substitution:
    """Coordinate map sigma of the new forward relation F~ P_n = f~ P_n(lambda') o sigma."""
    if family.framework.is_rdqm:
        return x_shift(family, point, variant.shift or 0)
    if family.framework is Framework.RDQMJ and variant.scale is not None:
        return Substitution.scaling(evaluate_scalar(variant.scale, point_scope(family, point)))
    return Substitution.identity()


def resolve_variant(family: FamilyDescriptor, variant: VariantDescriptor | str | None) -> VariantDescriptor | None:
    if variant is None or isinstance(variant, VariantDescriptor):
        return variant
    return family.variant(variant)


class _Formulas:
    """Evaluates one family's formulas at one point as functions or scalars."""

    def __init__(self, family: FamilyDescriptor, point: ParameterPoint):
        self.family = family
        self.tag = family.coordinate
        self.scope = point_scope(family, point)

    def function(self, text: str | None, what: str) -> RationalFunction:
        if text is None:
            raise OperatorError(f"{self.family.id}: catalog entry has no {what}")
        return evaluate_function(text, self.scope, self.tag)

    def scalar(self, text: str | None, what: str) -> GaussianRational:
        if text is None:
            raise OperatorError(f"{self.family.id}: catalog entry has no {what}")
        return evaluate_scalar(text, self.scope)


# ---------------------------------------------------------------------------
# Classic operators
# ---------------------------------------------------------------------------


def _classic_oqm(formulas: _Formulas, kind: OperatorKind) -> ShiftOperator:
    family, tag, ident = formulas.family, formulas.tag, Substitution.identity()
    c2 = formulas.function(family.c2, "c2")
    c1 = formulas.function(family.c1, "c1")
    if kind is OperatorKind.HAMILTONIAN:
        return make_operator([(c2 * -4, ident, 2), (c1 * -4, ident, 1)], tag)
    c_f = formulas.scalar(family.c_f, "cF")
    if kind is OperatorKind.FWD:
        return make_operator([(c_f, ident, 1)], tag)
    factor = gaussian(-4) / c_f
    return make_operator([(c2 * factor, ident, 1), (c1 * factor, ident, 0)], tag)


def _classic_idqm(formulas: _Formulas, maps: CoordinateMaps, kind: OperatorKind) -> ShiftOperator:
    family, tag, ident = formulas.family, formulas.tag, Substitution.identity()
    potential = formulas.function(family.potential, "V")
    potential_star = potential.star()
    if kind is OperatorKind.HAMILTONIAN:
        return make_operator(
            [
                (potential, maps.full, 0),
                (-(potential + potential_star), ident, 0),
                (potential_star, maps.full.inverse(), 0),
            ],
            tag,
        )
    phi = formulas.function(family.phi, "phi")
    if kind is OperatorKind.FWD:
        return make_operator(
            [(phi.reciprocal() * IMAG, maps.half, 0), (phi.reciprocal() * -IMAG, maps.half.inverse(), 0)], tag
        )
    lowering = make_operator(
        [(potential * -IMAG, maps.half, 0), (potential_star * IMAG, maps.half.inverse(), 0)], tag
    )
    return compose_operators(lowering, multiply_operator(phi, tag))


def _classic_rdqm(formulas: _Formulas, maps: CoordinateMaps, kind: OperatorKind) -> ShiftOperator:
    family, tag, ident = formulas.family, formulas.tag, Substitution.identity()
    birth = formulas.function(family.birth, "B")
    death = formulas.function(family.death, "D")
    if kind is OperatorKind.HAMILTONIAN:
        return _birth_death(birth, death, maps, tag)
    eta = formulas.function(family.eta, "eta")
    start = origin(family)
    birth_0 = birth.evaluate(start)
    phi = (eta.substitute(maps.step) - eta) * (ONE / eta.evaluate(maps.step(start)))
    if kind is OperatorKind.FWD:
        return make_operator(
            [(phi.reciprocal() * birth_0, ident, 0), (phi.reciprocal() * -birth_0, maps.step, 0)], tag
        )
    lowering = make_operator(
        [(birth * (ONE / birth_0), ident, 0), (death * (-ONE / birth_0), maps.step.inverse(), 0)], tag
    )
    return compose_operators(lowering, multiply_operator(phi, tag))


def _classic_rdqmj(formulas: _Formulas, maps: CoordinateMaps, kind: OperatorKind) -> ShiftOperator:
    family, tag, ident = formulas.family, formulas.tag, Substitution.identity()
    birth = formulas.function(family.birth_j, "BJ")
    death = formulas.function(family.death_j, "DJ")
    if kind is OperatorKind.HAMILTONIAN:
        return _birth_death(birth, death, maps, tag)
    factor = formulas.scalar(family.jackson_factor, "A")
    eta = RationalFunction.variable(tag)
    if kind is OperatorKind.FWD_J:
        return make_operator(
            [(eta.reciprocal() * factor, ident, 0), (eta.reciprocal() * -factor, maps.step, 0)], tag
        )
    lowering = make_operator(
        [(birth * (ONE / factor), ident, 0), (death * (-ONE / factor), maps.step.inverse(), 0)], tag
    )
    return compose_operators(lowering, multiply_operator(eta, tag))


def _birth_death(
    birth: RationalFunction, death: RationalFunction, maps: CoordinateMaps, tag: str
) -> ShiftOperator:
    return make_operator(
        [
            (birth + death, Substitution.identity(), 0),
            (-birth, maps.step, 0),
            (-death, maps.step.inverse(), 0),
        ],
        tag,
    )


# ---------------------------------------------------------------------------
# New operators
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SplitFactors:
    """Split factors of a variant as functions: V1, V2 (idQM) or B1, B2, D1, D2."""

    first: RationalFunction
    second: RationalFunction
    death_first: RationalFunction | None = None
    death_second: RationalFunction | None = None


def split_factors(
    family: FamilyDescriptor | str, variant: VariantDescriptor | str, point: ParameterPoint
) -> SplitFactors:
    """Evaluate a variant's split of the potential at ``point``.

    Raises:
        OperatorError: For oQM families, which have no potential split
    """
    family = resolve_family(family)
    variant = resolve_variant(family, variant)
    formulas = _Formulas(family, point)
    if family.framework is Framework.IDQM:
        return SplitFactors(formulas.function(variant.v1, "V1"), formulas.function(variant.v2, "V2"))
    if family.framework.is_rdqm:
        return SplitFactors(
            formulas.function(variant.b1, "B1"),
            formulas.function(variant.b2, "B2"),
            formulas.function(variant.d1, "D1"),
            formulas.function(variant.d2, "D2"),
        )
    if family.framework is Framework.RDQMJ:
        return SplitFactors(
            formulas.function(variant.bj1, "BJ1"),
            formulas.function(variant.bj2, "BJ2"),
            formulas.function(variant.dj1, "DJ1"),
            formulas.function(variant.dj2, "DJ2"),
        )
    raise OperatorError(f"{family.id}: differential families have no potential split")


def potential_functions(
    family: FamilyDescriptor | str, point: ParameterPoint
) -> tuple[RationalFunction, RationalFunction]:
    """The potentials a variant splits: (V, V*) on idQM, (B, D) on rdQM, (BJ, DJ) on rdQMJ.

    Raises:
        OperatorError: For oQM families
    """
    family = resolve_family(family)
    formulas = _Formulas(family, point)
    if family.framework is Framework.IDQM:
        potential = formulas.function(family.potential, "V")
        return potential, potential.star()
    if family.framework.is_rdqm:
        return formulas.function(family.birth, "B"), formulas.function(family.death, "D")
    if family.framework is Framework.RDQMJ:
        return formulas.function(family.birth_j, "BJ"), formulas.function(family.death_j, "DJ")
    raise OperatorError(f"{family.id}: differential families have no potential split")


def jackson_scale(family: FamilyDescriptor | str, point: ParameterPoint) -> Substitution:
    """eta -> r eta of the classic rdQMJ shift relations; the identity elsewhere."""
    family = resolve_family(family)
    if family.framework is not Framework.RDQMJ:
        return Substitution.identity()
    return Substitution.scaling(_Formulas(family, point).scalar(family.r, "r"))


def _new_operator(
    family: FamilyDescriptor,
    variant: VariantDescriptor,
    point: ParameterPoint,
    maps: CoordinateMaps,
    forward: bool,
) -> ShiftOperator:
    tag, ident = family.coordinate, Substitution.identity()
    if family.framework is Framework.OQM:
        formulas = _Formulas(family, point)
        spec = variant.forward if forward else variant.backward
        if spec is None:
            raise OperatorError(f"{family.id}/{variant.label}: missing first-order operator")
        return make_operator(
            [(formulas.function(spec.d1, "d1"), ident, 1), (formulas.function(spec.d0, "d0"), ident, 0)], tag
        )
    split = split_factors(family, variant, point)
    if family.framework is Framework.IDQM:
        half, half_inverse = maps.half, maps.half.inverse()
        if forward:
            v1 = split.first
            return make_operator([(v1.substitute(half_inverse), half, 0), (v1.star().substitute(half), half_inverse, 0)], tag)
        v2 = split.second
        return make_operator([(v2, half, 0), (v2.star(), half_inverse, 0)], tag)
    step = maps.step
    if forward:
        return make_operator([(split.death_first.substitute(step), ident, 0), (split.first, step, 0)], tag)
    return make_operator([(split.second, ident, 0), (split.death_second, step.inverse(), 0)], tag)


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------


def build_operator(
    family: FamilyDescriptor | str,
    variant: VariantDescriptor | str | None,
    point: ParameterPoint,
    kind: OperatorKind | str,
) -> ShiftOperator:
    """Build a Hamiltonian or shift operator of ``family`` at ``point``.

    Args:
        family: Descriptor or id
        variant: Variant (or label) for the new kinds, ignored otherwise
        point: Parameter point lambda
        kind: One of OperatorKind; the Jackson kinds belong to rdQMJ only

    Returns:
        The operator in normal form

    Raises:
        NoNewFactorizationError: If a new kind is requested for a family
            without variants
        OperatorError: If the kind does not fit the framework
    """
    family = resolve_family(family)
    kind = OperatorKind(kind)
    framework = family.framework
    if kind is not OperatorKind.HAMILTONIAN and kind.is_jackson != (framework is Framework.RDQMJ):
        raise OperatorError(f"operator kind {kind.value} does not apply to {framework.value}")
    maps = coordinate_maps(family, point)

    if kind.is_new:
        if not family.has_new_factorization:
            raise NoNewFactorizationError(family.id)
        resolved = resolve_variant(family, variant)
        if resolved is None:
            raise OperatorError(f"{family.id}: kind {kind.value} needs a variant")
        forward = kind in (OperatorKind.FWD_NEW, OperatorKind.FWD_J_NEW)
        return _new_operator(family, resolved, point, maps, forward)

    formulas = _Formulas(family, point)
    if framework is Framework.OQM:
        return _classic_oqm(formulas, kind)
    if framework is Framework.IDQM:
        return _classic_idqm(formulas, maps, kind)
    if framework.is_rdqm:
        return _classic_rdqm(formulas, maps, kind)
    return _classic_rdqmj(formulas, maps, kind)
