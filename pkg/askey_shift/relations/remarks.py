"""
Checkers for the correspondences between relation instances.

- flip: two variants with opposite delta_bar; the partner's new operators
  at lambda - delta_bar are the first variant's backward and forward ones
  with the roles swapped, and so are the scalars
- xshift: variants whose sigma is the unit lattice step (s = 1 on rdQM,
  r' = q on rdQMJ) rewritten with e^-1 F~ and B~ e
- aw_qr: an Askey-Wilson split reduces to a q-Racah variant under
  z = d^(1/2) t with (a1, a2, a3, a4) = (a, b, c, d) / d^(1/2), a4 = d^(1/2)
- commutation: F~ B~ - f~_0 b~_0 read through sigma equals
  B~ F~ - f~_0 b~_0 at lambda - delta_bar
- commutation_products / commutation_cross: the function identities the
  commutation identity splits into

The stated pairs live in ``catalog/remarks.yaml``; every flip pair the
catalog implies is checked, not only the stated ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional

import structlog
from pydantic import BaseModel, Field, ValidationError
from sympy import integer_nthroot

from askey_shift.algebra import (
    ONE,
    ZERO,
    GaussianRational,
    Substitution,
    compose_substitutions,
    gaussian,
    imag_part,
    real_part,
    scalar_power,
)
from askey_shift.expressions import Scope, evaluate_scalar, qpochhammer
from askey_shift.families import (
    FamilyDescriptor,
    Framework,
    ParameterPoint,
    VariantDescriptor,
    build_polynomial,
    energy,
    family_descriptor,
    make_point,
    new_scalars,
    origin,
    point_scope,
    resolve_family,
    resolved_parameters,
)
from askey_shift.families.registry import CATALOG_DIR, CatalogError, load_catalog_file
from askey_shift.models import RelationReport
from askey_shift.operators import (
    DEFAULT_OPERATOR_DEGREE,
    OperatorKind,
    add_identity,
    apply_operator,
    build_operator,
    compose_all,
    compose_operators,
    conjugate_by,
    coordinate_maps,
    new_kinds,
    resolve_variant,
    scale_operator,
    split_factors,
    substitution_operator,
    transport,
    variant_sigma,
)
from askey_shift.relations.base import REMARK_KINDS, NotApplicableError, Verification, remark_id
from askey_shift.relations.classic import degrees
from askey_shift.relations.new import cross_terms, require_variant, shifted_point, zero_energy_term

log = structlog.get_logger(__name__)

REMARKS_FILE = CATALOG_DIR / "remarks.yaml"
AW_FAMILY = "AW"
QR_FAMILY = "qR"


class UnknownRemarkError(LookupError):
    """Raised for a remark instance the catalog does not support."""

    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"unknown remark {text!r}: {reason}")


class FlipPair(BaseModel):
    family: str
    variant: str
    partner: str


class AwQrPair(BaseModel):
    split: str
    variant: str
    factor: str


class RemarkCatalog(BaseModel):
    flips: list[FlipPair] = Field(default_factory=list)
    xshift: list[str] = Field(default_factory=list)
    aw_qr: list[AwQrPair] = Field(default_factory=list)

    def aw_pair(self, variant: str) -> AwQrPair | None:
        for pair in self.aw_qr:
            if pair.variant == variant:
                return pair
        return None


@lru_cache(maxsize=None)
def load_remarks(path: Path = REMARKS_FILE) -> RemarkCatalog:
    """Read and validate the remark catalog.

    Raises:
        CatalogError: If the file is missing or does not validate
    """
    data = load_catalog_file(path)
    try:
        return RemarkCatalog.model_validate(data or {})
    except ValidationError as e:
        raise CatalogError(path, str(e)) from e


@dataclass(frozen=True)
class RemarkInstance:
    """One remark check: kind, family and the variants it ties together.

    Text form is ``kind:family[:variant[:partner]]``, e.g. ``flip:L:b:a``
    or ``aw_qr:qR:a:14`` (partner is the Askey-Wilson split).
    """

    kind: str
    family: str
    variant: Optional[str] = None
    partner: Optional[str] = None

    @property
    def relation(self) -> str:
        return remark_id(self.kind)

    @property
    def record_variant(self) -> Optional[str]:
        if self.kind == "flip":
            return f"{self.variant}/{self.partner}"
        return self.variant

    def __str__(self) -> str:
        parts = [self.kind, self.family]
        parts.extend(part for part in (self.variant, self.partner) if part is not None)
        return ":".join(parts)

    @classmethod
    def parse(cls, text: str) -> RemarkInstance:
        """Parse the text form and check it against the catalog.

        Raises:
            UnknownRemarkError: For an unknown kind, family or pairing
        """
        parts = text.split(":")
        if len(parts) < 2 or parts[0] not in REMARK_KINDS:
            raise UnknownRemarkError(text, f"expected kind:family with kind in {', '.join(REMARK_KINDS)}")
        padded = parts + [None] * (4 - len(parts))
        instance = cls(*padded[:4])
        try:
            known = remark_instances(instance.family)
        except LookupError as e:
            raise UnknownRemarkError(text, str(e)) from e
        if instance not in known:
            raise UnknownRemarkError(text, "not a correspondence of the catalog")
        return instance


def delta_bar_values(variant: VariantDescriptor) -> list[GaussianRational]:
    return [evaluate_scalar(text, Scope()) for text in variant.delta_bar]


def opposite_delta_bar(first: VariantDescriptor, second: VariantDescriptor) -> bool:
    """Whether the two shifts are non-zero exact negatives of each other."""
    a, b = delta_bar_values(first), delta_bar_values(second)
    if not a or len(a) != len(b) or not any(a):
        return False
    return all(not (x + y) for x, y in zip(a, b))


def flip_pairs(family: FamilyDescriptor) -> list[tuple[str, str]]:
    """Ordered variant pairs (X, Y), X != Y, with delta_bar(Y) = -delta_bar(X)."""
    return [
        (x.label, y.label)
        for x in family.variants
        for y in family.variants
        if x.label != y.label and opposite_delta_bar(x, y)
    ]


def remark_instances(family: FamilyDescriptor | str) -> list[RemarkInstance]:
    """Every remark check that applies to ``family``, in a stable order."""
    family = resolve_family(family)
    if not family.has_new_factorization:
        return []
    remarks = load_remarks()
    instances = [RemarkInstance("flip", family.id, x, y) for x, y in flip_pairs(family)]
    if family.id in remarks.xshift:
        instances.append(RemarkInstance("xshift", family.id, "a"))
    if family.framework is Framework.RDQMJ:
        instances.extend(
            RemarkInstance("xshift", family.id, v.label) for v in family.variants if xshift_applies(family, v)
        )
    if family.id == QR_FAMILY:
        instances.extend(RemarkInstance("aw_qr", family.id, pair.variant, pair.split) for pair in remarks.aw_qr)
    if family.framework is not Framework.OQM:
        for variant in family.variant_labels:
            for kind in ("commutation", "commutation_products", "commutation_cross"):
                instances.append(RemarkInstance(kind, family.id, variant))
    return instances


# ---------------------------------------------------------------------------
# flip
# ---------------------------------------------------------------------------


def check_flip(
    family: FamilyDescriptor | str,
    variant: str,
    partner: str,
    point: ParameterPoint,
    n_max: int,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    """F~^Y(lambda') = S_Y B~^X(lambda) S_X and B~^Y(lambda') = S_X^-1 F~^X(lambda) S_Y^-1.

    Args:
        family: Descriptor or id
        variant: X, the variant ``point`` was drawn for
        partner: Y, with delta_bar(Y) = -delta_bar(X)
        point: lambda
        n_max: Top degree of the scalar identities f~^Y_n(lambda') = b~^X_n(lambda)
        degree: Degree bound for the operator identities
        trial: Trial index
    """
    family = resolve_family(family)
    x = require_variant(remark_id("flip"), family, variant)
    y = resolve_variant(family, partner)
    if not opposite_delta_bar(x, y):
        raise NotApplicableError(remark_id("flip"), family.id, f"{x.label}/{y.label} shifts are not opposite")
    v = Verification(
        remark_id("flip"), family, point, variant=f"{x.label}/{y.label}", trial=trial, degree=degree
    )
    with v.guard("flip"):
        lowered = shifted_point(family, x, point)
        tag = family.coordinate
        sigma_x, sigma_y = variant_sigma(family, x, point), variant_sigma(family, y, point)
        s_x, s_x_inverse = substitution_operator(sigma_x, tag), substitution_operator(sigma_x.inverse(), tag)
        s_y, s_y_inverse = substitution_operator(sigma_y, tag), substitution_operator(sigma_y.inverse(), tag)
        fwd, bwd = new_kinds(family.framework)
        v.operators(
            "F~Y(lambda') = S_Y B~X S_X",
            build_operator(family, y, lowered, fwd),
            compose_all(s_y, build_operator(family, x, point, bwd), s_x),
        )
        v.operators(
            "B~Y(lambda') = S_X^-1 F~X S_Y^-1",
            build_operator(family, y, lowered, bwd),
            compose_all(s_x_inverse, build_operator(family, x, point, fwd), s_y_inverse),
        )
        for n in degrees(family, point, n_max):
            f_x, b_x = new_scalars(family, x, n, point)
            f_y, b_y = new_scalars(family, y, n, lowered)
            v.scalars(f"f~Y_{n}(lambda') = b~X_{n}", f_y, b_x)
            v.scalars(f"b~Y_{n}(lambda') = f~X_{n}", b_y, f_x)
    return v.report()


# ---------------------------------------------------------------------------
# x-shift
# ---------------------------------------------------------------------------


def lattice_point(family: FamilyDescriptor, point: ParameterPoint, x: int) -> GaussianRational:
    """Coordinate value at lattice site x: q^x on t, x otherwise."""
    if family.coordinate == "t":
        return scalar_power(point.q, x)
    return gaussian(x)


def xshift_applies(family: FamilyDescriptor, variant: VariantDescriptor) -> bool:
    """Whether the variant's sigma is the unit lattice step.

    rdQM: shift s = 1. rdQMJ: eta scaled by r' = q.
    """
    if family.framework.is_rdqm:
        return variant.shift == 1
    if family.framework is Framework.RDQMJ:
        return variant.scale is not None and variant.scale.replace(" ", "") == "q"
    return False


def check_xshift(
    family: FamilyDescriptor | str,
    variant: str,
    n: int,
    point: ParameterPoint,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    """x-shift form of the new relations for a variant whose sigma is the unit step e.

    e^-1 F~ P_n(lambda) = f~_n P_n(lambda'), B~ e P_n(lambda') = b~_n P_n and
    H = f~_0 b~_0 - (B~ e)(e^-1 F~). On rdQM e is x -> x + 1 and the variant
    also has f~_n = 1, b~_n = E_N+1 - E_n and D1(0) = B1(N) = 0. On rdQMJ e
    is eta -> q eta.
    """
    family = resolve_family(family)
    resolved = require_variant(remark_id("xshift"), family, variant)
    if not xshift_applies(family, resolved):
        raise NotApplicableError(remark_id("xshift"), family.id, f"variant {resolved.label} has no unit x-shift")
    if family.framework.is_rdqm and point.N is None:
        raise NotApplicableError(remark_id("xshift"), family.id, "x-shift relations need a finite family")
    v = Verification(remark_id("xshift"), family, point, variant=resolved.label, n=n, trial=trial, degree=degree)
    with v.guard("xshift"):
        step = coordinate_maps(family, point).step
        f_n, b_n = new_scalars(family, resolved, n, point)
        if family.framework.is_rdqm:
            split = split_factors(family, resolved, point)
            v.scalars("D1(0) = 0", split.death_first.evaluate(origin(family)), ZERO)
            v.scalars("B1(N) = 0", split.first.evaluate(lattice_point(family, point, point.N)), ZERO)
            v.scalars(f"f~_{n} = 1", f_n, ONE)
            v.scalars(
                f"b~_{n} = E_N+1 - E_{n}", b_n, energy(family, point.N + 1, point) - energy(family, n, point)
            )
        fwd, bwd = new_kinds(family.framework)
        p = build_polynomial(family, n, point)
        lowered = build_polynomial(family, n, shifted_point(family, resolved, point))
        forward = build_operator(family, resolved, point, fwd)
        backward = build_operator(family, resolved, point, bwd)
        v.functions("e^-1 F~ P_n = f~_n P_n(lambda')", apply_operator(forward, p).substitute(step.inverse()), lowered * f_n)
        v.functions("B~ e P_n(lambda') = b~_n P_n", apply_operator(backward, lowered.substitute(step)), p * b_n)
        shifted_forward = compose_operators(substitution_operator(step.inverse(), family.coordinate), forward)
        shifted_backward = compose_operators(backward, substitution_operator(step, family.coordinate))
        hamiltonian = build_operator(family, None, point, OperatorKind.HAMILTONIAN)
        f0b0 = zero_energy_term(family, resolved, point)
        v.operators(
            "H = f~_0 b~_0 - (B~ e)(e^-1 F~)",
            hamiltonian,
            add_identity(scale_operator(compose_operators(shifted_backward, shifted_forward), -1), f0b0),
        )
    return v.report()


# ---------------------------------------------------------------------------
# Askey-Wilson and q-Racah
# ---------------------------------------------------------------------------


def rational_sqrt(value: GaussianRational) -> GaussianRational | None:
    """The positive rational square root of ``value``, if it has one."""
    if imag_part(value) != 0 or real_part(value) <= 0:
        return None
    fraction = Fraction(real_part(value))
    num, num_exact = integer_nthroot(fraction.numerator, 2)
    den, den_exact = integer_nthroot(fraction.denominator, 2)
    if not (num_exact and den_exact):
        return None
    return gaussian(Fraction(int(num), int(den)))


def askey_wilson_point(qr_family: FamilyDescriptor, point: ParameterPoint) -> tuple[ParameterPoint, GaussianRational]:
    """The Askey-Wilson point a q-Racah point reduces from, and d^(1/2).

    Raises:
        NotApplicableError: If d is not the square of a rational
        ParameterError: If the Askey-Wilson point is inadmissible
    """
    values = resolved_parameters(qr_family, point)
    root = rational_sqrt(values["d"])
    if root is None:
        raise NotApplicableError(remark_id("aw_qr"), qr_family.id, "d is not the square of a rational")
    inverse = ONE / root
    aw_point = make_point(
        AW_FAMILY,
        point.s,
        a1=values["a"] * inverse,
        a2=values["b"] * inverse,
        a3=values["c"] * inverse,
        a4=root,
        seed=point.seed,
    )
    return aw_point, root


def check_aw_qr(
    family: FamilyDescriptor | str,
    variant: str,
    split: str,
    point: ParameterPoint,
    n_max: int,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    """Askey-Wilson split ``split`` against q-Racah variant ``variant`` at ``point``.

    P^AW_n(d^(1/2) t) = d^(-n/2) (a, b, c; q)_n P^qR_n(t) for n = 0..n_max, and
    e^{gp/2} F~^AW = k F~^qR, B~^AW e^{-gp/2} = -k^-1 B~^qR after z = d^(1/2) t,
    with k the catalog factor.
    """
    family = resolve_family(family)
    if family.id != QR_FAMILY:
        raise NotApplicableError(remark_id("aw_qr"), family.id, "the Askey-Wilson reduction lands on q-Racah only")
    pair = load_remarks().aw_pair(variant)
    if pair is None or pair.split != split:
        raise UnknownRemarkError(f"aw_qr:{family.id}:{variant}:{split}", "not a catalog pairing")
    resolved = require_variant(remark_id("aw_qr"), family, variant)
    v = Verification(remark_id("aw_qr"), family, point, variant=resolved.label, trial=trial, degree=degree)
    aw_family = family_descriptor(AW_FAMILY)
    with v.guard("aw_qr"):
        aw_point, root = askey_wilson_point(family, point)
        values = resolved_parameters(family, point)
        to_t = Substitution.scaling(root)
        for n in degrees(family, point, n_max):
            lhs = build_polynomial(aw_family, n, aw_point).substitute(to_t).retag(family.coordinate)
            factor = scalar_power(root, -n)
            for name in ("a", "b", "c"):
                factor = factor * qpochhammer(values[name], n, point.q)
            v.functions(f"P^AW_{n}(d^1/2 t) = d^-{n}/2 (a,b,c;q)_{n} P^qR_{n}", lhs, build_polynomial(family, n, point) * factor)

        k = evaluate_scalar(pair.factor, point_scope(family, point))
        fwd, bwd = new_kinds(Framework.IDQM)
        qr_fwd, qr_bwd = new_kinds(family.framework)
        half = coordinate_maps(aw_family, aw_point).half
        sigma = Substitution.scaling(ONE / root)
        shift_half = substitution_operator(half, aw_family.coordinate)
        unshift_half = substitution_operator(half.inverse(), aw_family.coordinate)
        v.operators(
            "e^{gp/2} F~^AW = k F~^qR",
            transport(compose_operators(shift_half, build_operator(aw_family, split, aw_point, fwd)), sigma, family.coordinate),
            scale_operator(build_operator(family, resolved, point, qr_fwd), k),
        )
        v.operators(
            "B~^AW e^{-gp/2} = -1/k B~^qR",
            transport(compose_operators(build_operator(aw_family, split, aw_point, bwd), unshift_half), sigma, family.coordinate),
            scale_operator(build_operator(family, resolved, point, qr_bwd), -(ONE / k)),
        )
    return v.report()


# ---------------------------------------------------------------------------
# Commutation identities
# ---------------------------------------------------------------------------


def _commutation_variant(kind: str, family: FamilyDescriptor, variant: str) -> VariantDescriptor:
    resolved = require_variant(remark_id(kind), family, variant)
    if family.framework is Framework.OQM:
        raise NotApplicableError(remark_id(kind), family.id, "differential families have no commutation identity")
    return resolved


def check_commutation(
    family: FamilyDescriptor | str,
    variant: str,
    point: ParameterPoint,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
) -> RelationReport:
    """F~ B~ - f~_0 b~_0, conjugated by sigma, equals B~ F~ - f~_0 b~_0 at lambda'."""
    family = resolve_family(family)
    resolved = _commutation_variant("commutation", family, variant)
    v = Verification(remark_id("commutation"), family, point, variant=resolved.label, trial=trial, degree=degree)
    with v.guard("commutation"):
        lowered = shifted_point(family, resolved, point)
        sigma = variant_sigma(family, resolved, point)
        fwd, bwd = new_kinds(family.framework)
        lhs = compose_operators(build_operator(family, resolved, point, fwd), build_operator(family, resolved, point, bwd))
        lhs = add_identity(conjugate_by(lhs, sigma), -zero_energy_term(family, resolved, point))
        rhs = compose_operators(build_operator(family, resolved, lowered, bwd), build_operator(family, resolved, lowered, fwd))
        rhs = add_identity(rhs, -zero_energy_term(family, resolved, lowered))
        v.operators("F~ B~ - f~_0 b~_0 = B~ F~(lambda') - f~_0 b~_0(lambda')", lhs, rhs)
    return v.report()


def check_commutation_products(
    family: FamilyDescriptor | str,
    variant: str,
    point: ParameterPoint,
    *,
    trial: int = 0,
) -> RelationReport:
    """The diagonal terms of the commutation identity as function identities.

    idQM: V1(v - h) V2(v + h) at lambda equals V1 V2 at lambda'.
    rdQM, rdQMJ: B1(si) B2(e si) and D1(e si) D2(si) at lambda equal
    B1 B2 and D1 D2 at lambda', with si = sigma^-1 and e the unit step.
    """
    family = resolve_family(family)
    resolved = _commutation_variant("commutation_products", family, variant)
    v = Verification(remark_id("commutation_products"), family, point, variant=resolved.label, trial=trial)
    with v.guard("commutation_products"):
        lowered = shifted_point(family, resolved, point)
        here = split_factors(family, resolved, point)
        there = split_factors(family, resolved, lowered)
        maps = coordinate_maps(family, point)
        if family.framework is Framework.IDQM:
            v.functions(
                "V1(v - h) V2(v + h) = V1 V2(lambda')",
                here.first.substitute(maps.half.inverse()) * here.second.substitute(maps.half),
                there.first * there.second,
            )
        else:
            si = variant_sigma(family, resolved, point).inverse()
            step_si = compose_substitutions(maps.step, si)
            v.functions(
                "B1(si) B2(e si) = B1 B2(lambda')",
                here.first.substitute(si) * here.second.substitute(step_si),
                there.first * there.second,
            )
            v.functions(
                "D1(e si) D2(si) = D1 D2(lambda')",
                here.death_first.substitute(step_si) * here.death_second.substitute(si),
                there.death_first * there.death_second,
            )
    return v.report()


def check_commutation_cross(
    family: FamilyDescriptor | str,
    variant: str,
    point: ParameterPoint,
    *,
    trial: int = 0,
) -> RelationReport:
    """The off-diagonal terms of the commutation identity at lambda against the
    cross terms of the split at lambda'."""
    family = resolve_family(family)
    resolved = _commutation_variant("commutation_cross", family, variant)
    v = Verification(remark_id("commutation_cross"), family, point, variant=resolved.label, trial=trial)
    with v.guard("commutation_cross"):
        lowered = shifted_point(family, resolved, point)
        here = split_factors(family, resolved, point)
        maps = coordinate_maps(family, point)
        f0b0 = zero_energy_term(family, resolved, point)
        if family.framework is Framework.IDQM:
            half, half_inverse = maps.half, maps.half.inverse()
            lhs = (
                here.first.substitute(half_inverse) * here.second.star().substitute(half)
                + here.first.star().substitute(half) * here.second.substitute(half_inverse)
                - f0b0
            )
        else:
            si = variant_sigma(family, resolved, point).inverse()
            step_si = compose_substitutions(maps.step, si)
            lhs = (
                here.first.substitute(si) * here.death_second.substitute(step_si)
                + here.death_first.substitute(step_si) * here.second.substitute(si)
                - f0b0
            )
        v.functions("cross terms(lambda) = cross terms(lambda')", lhs, cross_terms(family, resolved, lowered))
    return v.report()


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------


def check_remark_equivalences(
    instance: RemarkInstance | str,
    point: ParameterPoint,
    n: int,
    *,
    degree: int = DEFAULT_OPERATOR_DEGREE,
    trial: int = 0,
    family: FamilyDescriptor | None = None,
) -> RelationReport:
    """Run one remark check.

    Args:
        instance: RemarkInstance or its text form
        point: Parameter point drawn for the instance's variant
        n: Degree for xshift; top degree of the scalar loops elsewhere
        degree: Degree bound for operator identities
        trial: Trial index
        family: Descriptor to use instead of the registry entry

    Raises:
        UnknownRemarkError: For a text form the catalog does not support
        NotApplicableError: If the instance does not apply at ``point``
    """
    if isinstance(instance, str):
        instance = RemarkInstance.parse(instance)
    family = family or resolve_family(instance.family)
    kind = instance.kind
    log.debug("remark_check", remark=str(instance), trial=trial)
    if kind == "flip":
        return check_flip(family, instance.variant, instance.partner, point, n, degree=degree, trial=trial)
    if kind == "xshift":
        return check_xshift(family, instance.variant, n, point, degree=degree, trial=trial)
    if kind == "aw_qr":
        return check_aw_qr(family, instance.variant, instance.partner, point, n, degree=degree, trial=trial)
    if kind == "commutation":
        return check_commutation(family, instance.variant, point, degree=degree, trial=trial)
    if kind == "commutation_products":
        return check_commutation_products(family, instance.variant, point, trial=trial)
    if kind == "commutation_cross":
        return check_commutation_cross(family, instance.variant, point, trial=trial)
    raise UnknownRemarkError(str(instance), f"unknown kind {kind!r}")
