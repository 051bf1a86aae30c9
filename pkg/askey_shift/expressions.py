"""
Catalog formulas as exact values.

Formula strings from the family catalogs are parsed once with sympy and then
walked node by node, so every evaluation stays inside the Gaussian rationals:

- identifiers resolve through a ``Scope`` (parameters, constants, ``n``, ``q``,
  ``s`` and the coordinate, which is bound to a ``RationalFunction``)
- ``I`` is the imaginary unit
- ``conj``, ``qpoch``, ``poch``, ``factorial`` and ``energy`` are the only calls
"""

from __future__ import annotations

import re
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Any

from sympy import Add, Function, I, Integer, Mul, Pow, Rational, Symbol
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import parse_expr, standard_transformations

from askey_shift.algebra import (
    ONE,
    GaussianRational,
    RationalFunction,
    Value,
    ZeroDivisionAlgebraError,
    conjugate,
    gaussian,
    imag_part,
    real_part,
    scalar_power,
)

FUNCTION_NAMES = ("conj", "qpoch", "poch", "factorial", "energy")
_FUNCTIONS = {name: Function(name) for name in FUNCTION_NAMES}
_IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class ExpressionError(Exception):
    """Raised when a catalog formula cannot be evaluated exactly."""

    def __init__(self, text: str, reason: str):
        self.text = text
        self.reason = reason
        super().__init__(f"{text!r}: {reason}")


@dataclass(frozen=True)
class Scope:
    """Name bindings for one evaluation.

    Attributes:
        values: Identifier to scalar or function
        energy: Callback returning the family's E_k for a scalar k
    """

    values: Mapping[str, Value] = field(default_factory=dict)
    energy: Callable[[GaussianRational], GaussianRational] | None = None

    def bind(self, **bindings: Value) -> Scope:
        merged = dict(self.values)
        merged.update(bindings)
        return Scope(merged, self.energy)

    def lookup(self, name: str) -> Value:
        return self.values[name]


@lru_cache(maxsize=None)
def compile_expression(text: str) -> Any:
    """Parse a formula string; every identifier becomes a plain symbol."""
    names = set(_IDENTIFIER.findall(text)) - set(FUNCTION_NAMES) - {"I"}
    local_dict: dict[str, Any] = {name: Symbol(name) for name in names}
    local_dict.update(_FUNCTIONS)
    local_dict["I"] = I
    try:
        return parse_expr(text, local_dict=local_dict, transformations=standard_transformations)
    except (SyntaxError, TypeError, ValueError) as exc:
        raise ExpressionError(text, f"parse failure: {exc}") from exc


def evaluate_expression(text: str, scope: Scope) -> Value:
    """Evaluate a catalog formula exactly.

    Args:
        text: Formula in catalog syntax, e.g. ``"(1-a*t)/(1-d*q*t**2)"``
        scope: Bindings for every identifier in the formula

    Returns:
        A Gaussian rational, or a RationalFunction when the coordinate occurs

    Raises:
        ExpressionError: On unknown names, non-integer powers or bad calls
    """
    try:
        return _walk(compile_expression(text), scope)
    except KeyError as exc:
        raise ExpressionError(text, f"unknown name {exc.args[0]!r}") from exc
    except ExpressionError as exc:
        if exc.text == text:
            raise
        raise ExpressionError(text, exc.reason) from exc


def evaluate_scalar(text: str, scope: Scope) -> GaussianRational:
    value = evaluate_expression(text, scope)
    if isinstance(value, RationalFunction):
        if not value.is_constant:
            raise ExpressionError(text, "expected a scalar, got a function of the coordinate")
        return value.constant_value()
    return value


def evaluate_function(text: str, scope: Scope, tag: str) -> RationalFunction:
    value = evaluate_expression(text, scope)
    if isinstance(value, RationalFunction):
        return value
    return RationalFunction.constant(value, tag)


# ---------------------------------------------------------------------------
# Tree walk
# ---------------------------------------------------------------------------


def _lift(a: Value, b: Value) -> tuple[Value, Value]:
    if isinstance(b, RationalFunction) and not isinstance(a, RationalFunction):
        return RationalFunction.constant(a, b.tag), b
    if isinstance(a, RationalFunction) and not isinstance(b, RationalFunction):
        return a, RationalFunction.constant(b, a.tag)
    return a, b


def add_values(a: Value, b: Value) -> Value:
    a, b = _lift(a, b)
    return a + b


def mul_values(a: Value, b: Value) -> Value:
    a, b = _lift(a, b)
    return a * b


def sub_values(a: Value, b: Value) -> Value:
    a, b = _lift(a, b)
    return a - b


def div_values(a: Value, b: Value) -> Value:
    a, b = _lift(a, b)
    if isinstance(b, RationalFunction):
        return a / b
    if not b:
        raise ZeroDivisionAlgebraError("scalar")
    return a / b


def power_value(base: Value, k: int) -> Value:
    if isinstance(base, RationalFunction):
        return base**k
    return scalar_power(base, k)


def _integer(value: Value, what: str) -> int:
    if isinstance(value, RationalFunction):
        if not value.is_constant:
            raise ExpressionError(what, "expected an integer, got a function")
        value = value.constant_value()
    re_part = real_part(value)
    if imag_part(value) != 0 or re_part.denominator != 1:
        raise ExpressionError(what, f"expected an integer, got {re_part}")
    return int(re_part)


def _walk(node: Any, scope: Scope) -> Value:
    if isinstance(node, Integer):
        return gaussian(int(node))
    if isinstance(node, Rational):
        return gaussian(f"{node.p}/{node.q}")
    if node is I:
        return gaussian(0, 1)
    if isinstance(node, Symbol):
        return scope.lookup(node.name)
    if isinstance(node, Add):
        return reduce(add_values, (_walk(arg, scope) for arg in node.args))
    if isinstance(node, Mul):
        return reduce(mul_values, (_walk(arg, scope) for arg in node.args))
    if isinstance(node, Pow):
        base, exponent = node.args
        k = _integer(_walk(exponent, scope), str(exponent))
        return power_value(_walk(base, scope), k)
    if isinstance(node, AppliedUndef):
        return _call(node.func.__name__, [_walk(arg, scope) for arg in node.args], scope)
    raise ExpressionError(str(node), f"unsupported construct {type(node).__name__}")


def _call(name: str, args: list[Value], scope: Scope) -> Value:
    if name == "conj":
        (value,) = args
        if isinstance(value, RationalFunction):
            if not value.is_constant:
                raise ExpressionError("conj", "conj applies to scalars only")
            value = value.constant_value()
        return conjugate(value)
    if name == "qpoch":
        if len(args) == 3:
            base = args[2]
        else:
            base = scope.lookup("q")
        return qpochhammer(args[0], _integer(args[1], "qpoch"), base)
    if name == "poch":
        return pochhammer(args[0], _integer(args[1], "poch"))
    if name == "factorial":
        k = _integer(args[0], "factorial")
        return reduce(lambda acc, j: acc * j, range(2, k + 1), ONE)
    if name == "energy":
        if scope.energy is None:
            raise ExpressionError("energy", "no energy in scope")
        (k,) = args
        if isinstance(k, RationalFunction):
            k = k.constant_value()
        return scope.energy(k)
    raise ExpressionError(name, "unknown function")


def qpochhammer(a: Value, n: int, base: Value) -> Value:
    """``(a; base)_n`` for n >= 0."""
    if n < 0:
        raise ExpressionError("qpoch", "negative length")
    result: Value = ONE
    power: Value = ONE
    for _ in range(n):
        result = mul_values(result, sub_values(ONE, mul_values(a, power)))
        power = mul_values(power, base)
    return result


def pochhammer(a: Value, n: int) -> Value:
    """Rising factorial ``(a)_n`` for n >= 0."""
    if n < 0:
        raise ExpressionError("poch", "negative length")
    result: Value = ONE
    for j in range(n):
        result = mul_values(result, add_values(a, gaussian(j)))
    return result


__all__ = [
    "ExpressionError",
    "Scope",
    "compile_expression",
    "evaluate_expression",
    "evaluate_function",
    "evaluate_scalar",
    "qpochhammer",
    "pochhammer",
]
