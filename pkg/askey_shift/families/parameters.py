"""
Parameter points: sampling, shifting and evaluation scopes.

A ParameterPoint fixes q = s^2, the size N of a finite family and the free
parameter values. Multiplicative parameters are stored as the value q^lambda
itself, so a shift lambda -> lambda + delta multiplies by s^(2 delta).

Sampling is deterministic: ``derive_seed`` hashes the base seed with the
family, variant and trial, and every draw is an exact rational with a small
prime denominator.
"""

from __future__ import annotations

import hashlib
import math
import random
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Union

import structlog

from askey_shift.algebra import (
    AlgebraError,
    GaussianRational,
    RationalFunction,
    Value,
    conjugate,
    format_scalar,
    gaussian,
    imag_part,
    parse_scalar,
    real_part,
    scalar_power,
)
from askey_shift.expressions import ExpressionError, Scope, evaluate_scalar
from askey_shift.families.models import FamilyDescriptor, ParameterKind, ParameterSpec
from askey_shift.families.registry import resolve_family

log = structlog.get_logger(__name__)

S_CHOICES = (
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(3, 5),
    Fraction(2, 5),
    Fraction(3, 4),
    Fraction(4, 5),
)
PRIME_DENOMINATORS = (7, 11, 13, 17, 19, 23)
PYTHAGOREAN_TRIPLES = ((3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29), (12, 35, 37))
MAX_ATTEMPTS = 32

ADD_RANGE = (Fraction(3, 10), Fraction(17, 10))
MUL_RANGE = (Fraction(3, 20), Fraction(17, 20))
ROOT_RANGE = (Fraction(2, 5), Fraction(9, 10))

PointValue = Union[GaussianRational, int, Fraction, str]


class ParameterError(ValueError):
    """Raised for an invalid parameter point or shift."""

    def __init__(self, family: str, reason: str):
        self.family = family
        self.reason = reason
        super().__init__(f"{family}: {reason}")


class BlacklistError(ParameterError):
    """Raised when a point makes a blacklisted expression vanish."""

    def __init__(self, family: str, expressions: list[str]):
        self.expressions = expressions
        super().__init__(family, f"blacklisted expression vanishes: {', '.join(expressions)}")


class SamplingError(ParameterError):
    """Raised when no admissible point is found within the retry budget."""


@dataclass(frozen=True)
class ParameterPoint:
    """A concrete parameter point lambda.

    Attributes:
        family: Family id the point belongs to
        s: q^(1/2), a rational in (0, 1)
        values: Free (non-size) parameter values in catalog order
        N: Size of a finite family, None otherwise
        seed: Seed the point was sampled from, if any
    """

    family: str
    s: GaussianRational
    values: tuple[tuple[str, GaussianRational], ...] = ()
    N: int | None = None
    seed: int | None = None

    @property
    def q(self) -> GaussianRational:
        return self.s * self.s

    def value(self, name: str) -> GaussianRational:
        for key, value in self.values:
            if key == name:
                return value
        raise ParameterError(self.family, f"no value for parameter {name!r}")

    def as_dict(self) -> dict[str, GaussianRational]:
        return dict(self.values)

    def with_values(self, updates: Mapping[str, GaussianRational], N: int | None = None) -> ParameterPoint:
        values = tuple((key, updates.get(key, value)) for key, value in self.values)
        return replace(self, values=values, N=self.N if N is None else N)

    def to_json(self) -> dict[str, Any]:
        return {
            "family": self.family,
            "s": format_scalar(self.s),
            "N": self.N,
            "seed": self.seed,
            "values": {key: format_scalar(value) for key, value in self.values},
        }

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> ParameterPoint:
        return cls(
            family=data["family"],
            s=parse_scalar(data["s"]),
            values=tuple((key, parse_scalar(text)) for key, text in data.get("values", {}).items()),
            N=data.get("N"),
            seed=data.get("seed"),
        )

    def __str__(self) -> str:
        parts = [f"s={format_scalar(self.s)}"]
        if self.N is not None:
            parts.append(f"N={self.N}")
        parts.extend(f"{key}={format_scalar(value)}" for key, value in self.values)
        return f"{self.family}({', '.join(parts)})"


def derive_seed(base: int, family: str, variant: str | None, trial: int) -> int:
    """Stable 64-bit seed for one (family, variant, trial) draw."""
    digest = hashlib.sha256(f"{base}:{family}:{variant or ''}:{trial}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


# ---------------------------------------------------------------------------
# Scopes
# ---------------------------------------------------------------------------


def point_scope(
    family: FamilyDescriptor,
    point: ParameterPoint,
    n: int | GaussianRational | None = None,
) -> Scope:
    """Bindings for evaluating the family's formulas at ``point``.

    Size-kind parameters are derived from N; constants are evaluated in
    catalog order and may refer to the parameters and to ``energy``.
    """
    q = point.q
    values: dict[str, Value] = {"s": point.s, "q": q}
    if point.N is not None:
        values["N"] = gaussian(point.N)
    for spec in family.parameters:
        if spec.kind.is_size:
            if point.N is None:
                raise ParameterError(family.id, "finite family needs N")
            values[spec.name] = _size_value(spec, point.N, q)
        else:
            values[spec.name] = point.value(spec.name)
    values[family.coordinate] = RationalFunction.variable(family.coordinate)

    def energy(k: GaussianRational) -> GaussianRational:
        return evaluate_scalar(family.energy, Scope({**values, "n": k}, energy))

    for name, text in family.constants.items():
        values[name] = evaluate_scalar(text, Scope(values, energy))
    if n is not None:
        values["n"] = gaussian(n) if isinstance(n, int) else n
    return Scope(values, energy)


def _size_value(spec: ParameterSpec, N: int, q: GaussianRational) -> GaussianRational:
    if spec.kind is ParameterKind.SIZE:
        return gaussian(N)
    if spec.kind is ParameterKind.NEGSIZE:
        return gaussian(-N)
    return scalar_power(q, -N)


def resolved_parameters(family: FamilyDescriptor, point: ParameterPoint) -> dict[str, GaussianRational]:
    """Every parameter value, size-derived ones included."""
    scope = point_scope(family, point)
    return {spec.name: scope.values[spec.name] for spec in family.parameters}


def violated_constraints(family: FamilyDescriptor, point: ParameterPoint) -> list[str]:
    """Blacklisted expressions that vanish (or cannot be evaluated) at ``point``."""
    try:
        scope = point_scope(family, point)
    except (AlgebraError, ExpressionError):
        return list(family.blacklist) or ["constants"]
    violated = []
    for text in family.blacklist:
        try:
            if not evaluate_scalar(text, scope):
                violated.append(text)
        except (AlgebraError, ExpressionError):
            violated.append(text)
    return violated


# ---------------------------------------------------------------------------
# Construction
# ---------------------------------------------------------------------------


def _as_value(raw: PointValue) -> GaussianRational:
    if isinstance(raw, GaussianRational):
        return raw
    if isinstance(raw, str):
        return evaluate_scalar(raw, Scope())
    return gaussian(raw)


def make_point(
    family: FamilyDescriptor | str,
    s: PointValue,
    N: int | None = None,
    seed: int | None = None,
    **values: PointValue,
) -> ParameterPoint:
    """Build and validate a point from explicit values.

    Args:
        family: Family descriptor or id
        s: q^(1/2); must be a real rational in (0, 1)
        N: Size, required exactly for finite families
        seed: Recorded on the point, not used
        **values: One value per free parameter, as numbers or formula text

    Raises:
        ParameterError: On missing, unknown or out-of-domain values
        BlacklistError: If a blacklisted expression vanishes
    """
    family = resolve_family(family)
    s_value = _as_value(s)
    if imag_part(s_value) != 0 or not 0 < real_part(s_value) < 1:
        raise ParameterError(family.id, f"s must be a real number in (0, 1), got {format_scalar(s_value)}")
    if family.is_finite and N is None:
        raise ParameterError(family.id, "finite family needs N")
    if not family.is_finite and N is not None:
        raise ParameterError(family.id, "N given for an infinite family")
    if N is not None and N < 0:
        raise ParameterError(family.id, f"N must be non-negative, got {N}")

    free = [spec for spec in family.parameters if not spec.kind.is_size]
    unknown = set(values) - {spec.name for spec in free}
    if unknown:
        raise ParameterError(family.id, f"unknown parameters: {', '.join(sorted(unknown))}")
    missing = [spec.name for spec in free if spec.name not in values]
    if missing:
        raise ParameterError(family.id, f"missing parameters: {', '.join(missing)}")

    resolved = []
    for spec in free:
        value = _as_value(values[spec.name])
        if spec.kind is ParameterKind.PHASE and real_part(value) ** 2 + imag_part(value) ** 2 != 1:
            raise ParameterError(family.id, f"{spec.name} must have modulus 1")
        resolved.append((spec.name, value))

    point = ParameterPoint(family.id, s_value, tuple(resolved), N, seed)
    violated = violated_constraints(family, point)
    if violated:
        raise BlacklistError(family.id, violated)
    return point


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def _rational_between(rng: random.Random, lo: Fraction, hi: Fraction) -> Fraction:
    den = rng.choice(PRIME_DENOMINATORS)
    low, high = math.ceil(lo * den), math.floor(hi * den)
    if low > high:
        return (lo + hi) / 2
    return Fraction(rng.randint(low, high), den)


def _signed(rng: random.Random, value: Fraction) -> Fraction:
    return -value if rng.random() < 0.5 else value


def _bounds(spec: ParameterSpec, default: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    lo = real_part(evaluate_scalar(spec.lo, Scope())) if spec.lo is not None else default[0]
    hi = real_part(evaluate_scalar(spec.hi, Scope())) if spec.hi is not None else default[1]
    return lo, hi


def _draw(rng: random.Random, spec: ParameterSpec) -> GaussianRational:
    if spec.kind is ParameterKind.ADD:
        re = _rational_between(rng, *_bounds(spec, ADD_RANGE))
        im = _signed(rng, _rational_between(rng, Fraction(1, 5), Fraction(4, 5))) if spec.complex else 0
        return gaussian(re, im)
    if spec.kind is ParameterKind.PHASE:
        a, b, c = rng.choice(PYTHAGOREAN_TRIPLES)
        if rng.random() < 0.5:
            a, b = b, a
        return gaussian(Fraction(a, c), Fraction(b, c))
    # mul, half
    if spec.square:
        root = _rational_between(rng, *ROOT_RANGE)
        return gaussian(root * root)
    if spec.complex:
        re = _signed(rng, _rational_between(rng, Fraction(1, 5), Fraction(3, 5)))
        im = _signed(rng, _rational_between(rng, Fraction(1, 10), Fraction(2, 5)))
        return gaussian(re, im)
    value = _rational_between(rng, *_bounds(spec, MUL_RANGE))
    return gaussian(-value if rng.random() < 0.3 else value)


def _draw_conjugate(rng: random.Random, spec: ParameterSpec) -> GaussianRational:
    if spec.kind is ParameterKind.ADD:
        re = _rational_between(rng, Fraction(3, 10), Fraction(3, 2))
        im = _rational_between(rng, Fraction(1, 5), Fraction(4, 5))
    else:
        re = _rational_between(rng, Fraction(1, 5), Fraction(3, 5))
        im = _rational_between(rng, Fraction(1, 10), Fraction(2, 5))
    return gaussian(re, _signed(rng, im))


def _draw_point(
    rng: random.Random,
    family: FamilyDescriptor,
    n_max: int,
    variant: str | None,
    seed: int,
) -> ParameterPoint:
    s = gaussian(rng.choice(S_CHOICES))
    N = n_max + 2 + rng.randrange(3) if family.is_finite else None
    values = {spec.name: _draw(rng, spec) for spec in family.parameters if not spec.kind.is_size}
    pair = family.conjugate_pair
    if pair is not None and pair.applies_to(variant):
        first, second = pair.params
        values[first] = _draw_conjugate(rng, family.parameter(first))
        values[second] = conjugate(values[first])
    ordered = tuple((spec.name, values[spec.name]) for spec in family.parameters if not spec.kind.is_size)
    return ParameterPoint(family.id, s, ordered, N, seed)


def sample_parameters(
    family: FamilyDescriptor | str,
    seed: int,
    n_max: int,
    variant: str | None = None,
) -> ParameterPoint:
    """Draw an admissible point for ``family``.

    Finite families get N in [n_max + 2, n_max + 4] so every degree up to
    n_max stays below N even after a shift. Families with a conjugate pair
    draw that pair as complex conjugates when ``variant`` (or the base draw)
    is listed for it.

    Raises:
        SamplingError: If every attempt hits the blacklist
    """
    family = resolve_family(family)
    rng = random.Random(seed)
    for attempt in range(MAX_ATTEMPTS):
        point = _draw_point(rng, family, n_max, variant, seed)
        violated = violated_constraints(family, point)
        if not violated:
            return point
        log.debug("sample_rejected", family=family.id, attempt=attempt, violated=violated)
    raise SamplingError(family.id, f"no admissible point after {MAX_ATTEMPTS} attempts")


# ---------------------------------------------------------------------------
# Shifts
# ---------------------------------------------------------------------------


def _integral(family: str, value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ParameterError(family, f"{what} must be integral, got {value}")
    return int(value)


def shift_parameters(
    point: ParameterPoint,
    shift: Sequence[str],
    sign: int = 1,
    family: FamilyDescriptor | None = None,
) -> ParameterPoint:
    """The point lambda + sign * shift.

    Args:
        point: Starting point
        shift: One formula per catalog parameter (delta or delta_bar)
        sign: +1 or -1
        family: Descriptor to use instead of the registry entry for point.family

    Raises:
        ParameterError: If the shift does not fit the parameter kinds
        BlacklistError: If the shifted point hits the blacklist
    """
    family = family or resolve_family(point.family)
    if not shift:
        return point
    if len(shift) != len(family.parameters):
        raise ParameterError(family.id, f"shift has {len(shift)} entries for {len(family.parameters)} parameters")

    updates: dict[str, GaussianRational] = {}
    N = point.N
    for spec, text in zip(family.parameters, shift):
        delta = evaluate_scalar(text, Scope()) * gaussian(sign)
        if not delta:
            continue
        if spec.kind is ParameterKind.ADD:
            updates[spec.name] = point.value(spec.name) + delta
            continue
        if imag_part(delta) != 0:
            raise ParameterError(family.id, f"{spec.name} cannot take a complex shift")
        amount = real_part(delta)
        if spec.kind is ParameterKind.MUL:
            k = _integral(family.id, 2 * amount, f"twice the shift of {spec.name}")
            updates[spec.name] = point.value(spec.name) * scalar_power(point.s, k)
        elif spec.kind is ParameterKind.HALF:
            k = _integral(family.id, amount, f"the shift of {spec.name}")
            updates[spec.name] = point.value(spec.name) * scalar_power(point.s, k)
        elif spec.kind is ParameterKind.SIZE:
            N = N + _integral(family.id, amount, "the shift of N")
        elif spec.kind in (ParameterKind.NEGSIZE, ParameterKind.QSIZE):
            N = N - _integral(family.id, amount, "the shift of N")
        else:
            raise ParameterError(family.id, f"phase parameter {spec.name} cannot shift")

    if N is not None and N < 0:
        raise ParameterError(family.id, f"shift leaves N = {N}")
    shifted = point.with_values(updates, N=N)
    violated = violated_constraints(family, shifted)
    if violated:
        raise BlacklistError(family.id, violated)
    return shifted
