"""
Exact algebra over the Gaussian rationals.

Scalars are elements of sympy's ``QQ_I``. Functions of the single coordinate are
quotients of sparse polynomials in ``v`` over that field, tagged with the
coordinate they stand for (``eta``, ``x``, ``z`` or ``t``):

- ``RationalFunction`` keeps numerator and denominator coprime with a monic
  denominator, so two functions are equal exactly when their canonical forms are.
- Negative powers of the coordinate are carried by the denominator as ``v**k``
  and surface again in the Laurent views ``numerator`` / ``denominator``.
- ``Substitution`` is the affine coordinate map ``v -> scale*v + offset``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from sympy import Expr, Symbol
from sympy.polys.domains import QQ, QQ_I
from sympy.polys.domains.gaussiandomains import GaussianRational
from sympy.polys.rings import PolyElement, ring

POLY_RING, V = ring("v", QQ_I)

ZERO = QQ_I.zero
ONE = QQ_I.one
IMAG = QQ_I(0, 1)

COORDINATE_TAGS = ("eta", "x", "z", "t")

ScalarLike = Union[GaussianRational, int, Fraction]


class AlgebraError(Exception):
    """Base class for exact-algebra failures."""


class ZeroDivisionAlgebraError(AlgebraError, ZeroDivisionError):
    """Raised when dividing by a zero scalar or the zero function."""

    def __init__(self, operand: str):
        self.operand = operand
        super().__init__(f"division by zero {operand}")


class TagMismatchError(AlgebraError):
    """Raised when two functions of different coordinates are combined."""

    def __init__(self, left: str, right: str):
        self.left = left
        self.right = right
        super().__init__(f"coordinate mismatch: {left!r} vs {right!r}")


class SerializationError(AlgebraError):
    """Raised when canonical text cannot be parsed back."""

    def __init__(self, text: Any, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"cannot parse {text!r}: {reason}")


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------


def _rational(value: int | Fraction | str) -> Any:
    frac = Fraction(value)
    return QQ(frac.numerator, frac.denominator)


def gaussian(re: int | Fraction | str = 0, im: int | Fraction | str = 0) -> GaussianRational:
    """Build the Gaussian rational ``re + im*i`` from exact rationals."""
    return QQ_I(_rational(re), _rational(im))


def as_scalar(value: ScalarLike) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return gaussian(value)
    raise TypeError(f"not a Gaussian rational: {value!r}")


def real_part(z: GaussianRational) -> Fraction:
    return Fraction(int(QQ.numer(z.x)), int(QQ.denom(z.x)))


def imag_part(z: GaussianRational) -> Fraction:
    return Fraction(int(QQ.numer(z.y)), int(QQ.denom(z.y)))


def conjugate(z: GaussianRational) -> GaussianRational:
    return QQ_I(z.x, -z.y)


def is_real(z: GaussianRational) -> bool:
    return not z.y


def scalar_power(z: GaussianRational, k: int) -> GaussianRational:
    """Integer power, negative exponents included."""
    if k >= 0:
        return z**k
    if not z:
        raise ZeroDivisionAlgebraError("scalar")
    return (ONE / z) ** (-k)


def scalar_arith(a: GaussianRational, b: GaussianRational, op: str) -> GaussianRational:
    """Exact field operation ``a op b`` for op in add, sub, mul, div.

    Raises:
        ZeroDivisionAlgebraError: If op is div and b is zero
        ValueError: If op is unknown
    """
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise ZeroDivisionAlgebraError("scalar")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(z: GaussianRational) -> str:
    """Canonical text ``p/q+r/s*i`` (denominators of 1 omitted)."""
    re_part, im_part = real_part(z), imag_part(z)
    sign = "-" if im_part < 0 else "+"
    return f"{_format_rational(re_part)}{sign}{_format_rational(abs(im_part))}*i"


_SCALAR_PATTERN = re.compile(r"^([+-]?\d+(?:/\d+)?)([+-])(\d+(?:/\d+)?)\*i$")


def parse_scalar(text: str) -> GaussianRational:
    match = _SCALAR_PATTERN.match(text.strip())
    if match is None:
        raise SerializationError(text, "expected p/q+r/s*i")
    re_text, sign, im_text = match.groups()
    im_value = Fraction(im_text)
    if sign == "-":
        im_value = -im_value
    return gaussian(Fraction(re_text), im_value)


# ---------------------------------------------------------------------------
# Substitutions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Substitution:
    """Affine coordinate map ``v -> scale*v + offset``."""

    scale: GaussianRational = ONE
    offset: GaussianRational = ZERO

    def __post_init__(self) -> None:
        if not self.scale:
            raise AlgebraError("substitution scale must be nonzero")

    @classmethod
    def identity(cls) -> Substitution:
        return cls(ONE, ZERO)

    @classmethod
    def scaling(cls, scale: ScalarLike) -> Substitution:
        return cls(as_scalar(scale), ZERO)

    @classmethod
    def translation(cls, offset: ScalarLike) -> Substitution:
        return cls(ONE, as_scalar(offset))

    @property
    def is_identity(self) -> bool:
        return self.scale == ONE and not self.offset

    def __call__(self, point: GaussianRational) -> GaussianRational:
        return self.scale * point + self.offset

    def inverse(self) -> Substitution:
        inv = ONE / self.scale
        return Substitution(inv, -self.offset * inv)

    def sort_key(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (
            real_part(self.scale),
            imag_part(self.scale),
            real_part(self.offset),
            imag_part(self.offset),
        )

    def __str__(self) -> str:
        return f"v -> ({format_scalar(self.scale)})*v + ({format_scalar(self.offset)})"


def compose_substitutions(outer: Substitution, inner: Substitution) -> Substitution:
    """The map ``v -> outer(inner(v))``."""
    return Substitution(outer.scale * inner.scale, outer.scale * inner.offset + outer.offset)


def invert(sub: Substitution) -> Substitution:
    return sub.inverse()


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LaurentPoly:
    """Sparse Laurent polynomial: ascending ``(exponent, coefficient)`` pairs."""

    terms: tuple[tuple[int, GaussianRational], ...]
    tag: str

    @classmethod
    def from_mapping(cls, coeffs: dict[int, GaussianRational], tag: str) -> LaurentPoly:
        return cls(tuple((k, c) for k, c in sorted(coeffs.items()) if c), tag)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def span(self) -> tuple[int, int]:
        if not self.terms:
            raise AlgebraError("the zero polynomial has no span")
        return self.terms[0][0], self.terms[-1][0]

    def as_dict(self) -> dict[int, GaussianRational]:
        return dict(self.terms)

    def to_json(self) -> list[list[Any]]:
        return [[k, format_scalar(c)] for k, c in self.terms]


def _poly_from_laurent(coeffs: dict[int, GaussianRational], shift: int) -> PolyElement:
    return POLY_RING.from_dict({(k + shift,): c for k, c in coeffs.items()})


def _low_degree(p: PolyElement) -> int:
    return min(monom[0] for monom in p.keys())


def _reverse(p: PolyElement) -> PolyElement:
    degree = p.degree()
    return POLY_RING.from_dict({(degree - monom[0],): c for monom, c in p.items()})


def _monic_pair(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    lc = den.LC
    if lc != ONE:
        num = num.quo_ground(lc)
        den = den.quo_ground(lc)
    return num, den


def _reduce(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    if not den:
        raise ZeroDivisionAlgebraError("function")
    if not num:
        return POLY_RING.zero, POLY_RING.one
    if not den.is_ground:
        _, num, den = num.cofactors(den)
    return _monic_pair(num, den)


def _horner(p: PolyElement, point: GaussianRational) -> GaussianRational:
    if not p:
        return ZERO
    value = ZERO
    for k in range(p.degree(), -1, -1):
        value = value * point + p.get((k,), ZERO)
    return value


def _substitute_poly(p: PolyElement, sub: Substitution) -> PolyElement:
    if not p or p.is_ground:
        return p
    if not sub.offset:
        factor = sub.scale
        return POLY_RING.from_dict(
            {monom: c * scalar_power(factor, monom[0]) for monom, c in p.items()}
        )
    linear = POLY_RING.from_dict({(1,): sub.scale, (0,): sub.offset})
    result = POLY_RING.zero
    for k in range(p.degree(), -1, -1):
        result = result * linear + POLY_RING.ground_new(p.get((k,), ZERO))
    return result


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RationalFunction:
    """Canonical quotient of polynomials in one tagged coordinate.

    Instances are immutable. Arithmetic accepts other functions of the same
    coordinate, Gaussian rationals and ints.
    """

    __slots__ = ("_num", "_den", "tag")

    def __init__(self, num: PolyElement, den: PolyElement | None = None, tag: str = "x"):
        if tag not in COORDINATE_TAGS:
            raise AlgebraError(f"unknown coordinate tag {tag!r}")
        den = POLY_RING.one if den is None else den
        self._num, self._den = _reduce(num, den)
        self.tag = tag

    @classmethod
    def _coprime(cls, num: PolyElement, den: PolyElement, tag: str) -> RationalFunction:
        obj = cls.__new__(cls)
        if not num:
            den = POLY_RING.one
        obj._num, obj._den = _monic_pair(num, den)
        obj.tag = tag
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: ScalarLike, tag: str) -> RationalFunction:
        return cls._coprime(POLY_RING.ground_new(as_scalar(value)), POLY_RING.one, tag)

    @classmethod
    def zero(cls, tag: str) -> RationalFunction:
        return cls._coprime(POLY_RING.zero, POLY_RING.one, tag)

    @classmethod
    def one(cls, tag: str) -> RationalFunction:
        return cls._coprime(POLY_RING.one, POLY_RING.one, tag)

    @classmethod
    def variable(cls, tag: str) -> RationalFunction:
        return cls._coprime(V, POLY_RING.one, tag)

    @classmethod
    def monomial(cls, k: int, tag: str, coeff: ScalarLike = 1) -> RationalFunction:
        c = as_scalar(coeff)
        if k >= 0:
            return cls._coprime(POLY_RING.from_dict({(k,): c}), POLY_RING.one, tag)
        return cls._coprime(POLY_RING.ground_new(c), V ** (-k), tag)

    @classmethod
    def from_laurent(
        cls, numerator: LaurentPoly, denominator: LaurentPoly | None = None
    ) -> RationalFunction:
        tag = numerator.tag
        if denominator is None:
            denominator = LaurentPoly(((0, ONE),), tag)
        if denominator.tag != tag:
            raise TagMismatchError(tag, denominator.tag)
        if denominator.is_zero:
            raise ZeroDivisionAlgebraError("function")
        if numerator.is_zero:
            return cls.zero(tag)
        shift_num = -min(0, numerator.span()[0])
        shift_den = -min(0, denominator.span()[0])
        num = _poly_from_laurent(numerator.as_dict(), shift_num) * V**shift_den
        den = _poly_from_laurent(denominator.as_dict(), shift_den) * V**shift_num
        return cls(num, den, tag)

    # -- views --------------------------------------------------------------

    @property
    def num_poly(self) -> PolyElement:
        return self._num

    @property
    def den_poly(self) -> PolyElement:
        return self._den

    def _laurent_shift(self) -> int:
        return _low_degree(self._den)

    @property
    def numerator(self) -> LaurentPoly:
        shift = self._laurent_shift()
        return LaurentPoly.from_mapping(
            {monom[0] - shift: c for monom, c in self._num.items()}, self.tag
        )

    @property
    def denominator(self) -> LaurentPoly:
        shift = self._laurent_shift()
        return LaurentPoly.from_mapping(
            {monom[0] - shift: c for monom, c in self._den.items()}, self.tag
        )

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def is_constant(self) -> bool:
        return self._num.is_ground and self._den.is_ground

    @property
    def is_laurent(self) -> bool:
        return len(self._den) == 1

    def constant_value(self) -> GaussianRational:
        if not self.is_constant:
            raise AlgebraError(f"{self} is not constant")
        return self._num.LC if self._num else ZERO

    def laurent_span(self) -> tuple[int, int]:
        """Lowest and highest exponent of a Laurent polynomial."""
        if not self.is_laurent:
            raise AlgebraError(f"{self} is not a Laurent polynomial")
        return self.numerator.span()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other: Any) -> RationalFunction:
        if isinstance(other, RationalFunction):
            if other.tag != self.tag:
                raise TagMismatchError(self.tag, other.tag)
            return other
        if isinstance(other, (GaussianRational, int, Fraction)):
            return RationalFunction.constant(other, self.tag)
        return NotImplemented

    def __add__(self, other: Any) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._num:
            return self
        if not self._num:
            return other
        if self._den == other._den:
            return RationalFunction(self._num + other._num, self._den, self.tag)
        g, bb, dd = self._den.cofactors(other._den)
        num = self._num * dd + other._num * bb
        if not num:
            return RationalFunction.zero(self.tag)
        if not g.is_ground:
            _, num, g = num.cofactors(g)
        return RationalFunction._coprime(num, g * bb * dd, self.tag)

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction._coprime(-self._num, self._den, self.tag)

    def __sub__(self, other: Any) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other: Any) -> RationalFunction:
        return (-self) + other

    def __mul__(self, other: Any) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._num or not other._num:
            return RationalFunction.zero(self.tag)
        a, b, c, d = self._num, self._den, other._num, other._den
        if not d.is_ground:
            _, a, d = a.cofactors(d)
        if not b.is_ground:
            _, c, b = c.cofactors(b)
        return RationalFunction._coprime(a * c, b * d, self.tag)

    __rmul__ = __mul__

    def reciprocal(self) -> RationalFunction:
        if not self._num:
            raise ZeroDivisionAlgebraError("function")
        return RationalFunction._coprime(self._den, self._num, self.tag)

    def __truediv__(self, other: Any) -> RationalFunction:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.reciprocal()

    def __rtruediv__(self, other: Any) -> RationalFunction:
        return self.reciprocal() * other

    def __pow__(self, k: int) -> RationalFunction:
        if k >= 0:
            return RationalFunction._coprime(self._num**k, self._den**k, self.tag)
        return self.reciprocal() ** (-k)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.tag == other.tag and self._num == other._num and self._den == other._den

    __hash__ = None  # type: ignore[assignment]

    # -- calculus and maps --------------------------------------------------

    def substitute(self, sub: Substitution) -> RationalFunction:
        if sub.is_identity or self.is_constant:
            return self
        return RationalFunction._coprime(
            _substitute_poly(self._num, sub), _substitute_poly(self._den, sub), self.tag
        )

    def derivative(self) -> RationalFunction:
        num, den = self._num, self._den
        if den.is_ground:
            return RationalFunction._coprime(num.diff(V), den, self.tag)
        return RationalFunction(num.diff(V) * den - num * den.diff(V), den * den, self.tag)

    def star(self) -> RationalFunction:
        num = POLY_RING.from_dict({m: conjugate(c) for m, c in self._num.items()})
        den = POLY_RING.from_dict({m: conjugate(c) for m, c in self._den.items()})
        if self.tag != "z" or not self._num:
            return RationalFunction._coprime(num, den, self.tag)
        excess = den.degree() - num.degree()
        num, den = _reverse(num), _reverse(den)
        if excess >= 0:
            num = num * V**excess
        else:
            den = den * V ** (-excess)
        return RationalFunction._coprime(num, den, self.tag)

    def evaluate(self, point: ScalarLike) -> GaussianRational:
        point = as_scalar(point)
        den = _horner(self._den, point)
        if not den:
            raise ZeroDivisionAlgebraError(f"at pole {format_scalar(point)}")
        return _horner(self._num, point) / den

    def retag(self, tag: str) -> RationalFunction:
        if tag not in COORDINATE_TAGS:
            raise AlgebraError(f"unknown coordinate tag {tag!r}")
        return RationalFunction._coprime(self._num, self._den, tag)

    # -- text ---------------------------------------------------------------

    def as_expr(self) -> Expr:
        symbol = Symbol(self.tag)
        return self._num.as_expr(symbol) / self._den.as_expr(symbol)

    def to_json(self) -> dict[str, Any]:
        return {
            "tag": self.tag,
            "num": self.numerator.to_json(),
            "den": self.denominator.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> RationalFunction:
        try:
            tag = data["tag"]
            num = {int(k): parse_scalar(c) for k, c in data["num"]}
            den = {int(k): parse_scalar(c) for k, c in data["den"]}
        except (KeyError, TypeError, ValueError) as exc:
            raise SerializationError(data, str(exc)) from exc
        return cls.from_laurent(
            LaurentPoly.from_mapping(num, tag), LaurentPoly.from_mapping(den, tag)
        )

    def __str__(self) -> str:
        symbol = Symbol(self.tag)
        num = str(self._num.as_expr(symbol))
        if self._den == POLY_RING.one:
            return num
        return f"({num})/({self._den.as_expr(symbol)})"

    def __repr__(self) -> str:
        return f"RationalFunction[{self.tag}]({self})"


# ---------------------------------------------------------------------------
# Module-level operations
# ---------------------------------------------------------------------------


def ratfun_arith(f: RationalFunction, g: RationalFunction, op: str) -> RationalFunction:
    """Exact ``f op g`` for op in add, sub, mul, div, in canonical form.

    Raises:
        TagMismatchError: If f and g live on different coordinates
        ZeroDivisionAlgebraError: If op is div and g is zero
    """
    if f.tag != g.tag:
        raise TagMismatchError(f.tag, g.tag)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown operation {op!r}")


def substitute(f: RationalFunction, sub: Substitution) -> RationalFunction:
    return f.substitute(sub)


def differentiate(f: RationalFunction) -> RationalFunction:
    return f.derivative()


def star_map(f: RationalFunction) -> RationalFunction:
    """Coefficient conjugation; on ``z = e^{ix}`` also ``z -> 1/z``."""
    return f.star()


def evaluate(f: RationalFunction, point: ScalarLike) -> GaussianRational:
    return f.evaluate(point)


def difference_numerator(f: RationalFunction, g: RationalFunction) -> LaurentPoly:
    """``num_f*den_g - num_g*den_f`` as a polynomial in the coordinate."""
    if f.tag != g.tag:
        raise TagMismatchError(f.tag, g.tag)
    diff = f.num_poly * g.den_poly - g.num_poly * f.den_poly
    return LaurentPoly.from_mapping({m[0]: c for m, c in diff.items()}, f.tag)


def normalize_equal(f: RationalFunction, g: RationalFunction) -> bool:
    return difference_numerator(f, g).is_zero


Value = Union[GaussianRational, RationalFunction]


def format_value(value: Value) -> str:
    if isinstance(value, RationalFunction):
        return str(value)
    return format_scalar(value)


def serialize_value(value: Value) -> Any:
    if isinstance(value, RationalFunction):
        return value.to_json()
    return format_scalar(value)


def parse_value(data: Any) -> Value:
    if isinstance(data, str):
        return parse_scalar(data)
    if isinstance(data, dict):
        return RationalFunction.from_json(data)
    raise SerializationError(data, "expected scalar text or function mapping")
