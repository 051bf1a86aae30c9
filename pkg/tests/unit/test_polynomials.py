"""Tests for P_n, energies and shift scalars against closed forms."""

from fractions import Fraction
from math import factorial

import pytest

from askey_shift.algebra import ONE, ZERO, RationalFunction, gaussian, real_part
from askey_shift.families import (
    ParameterError,
    ParameterPoint,
    build_polynomial,
    classic_scalars,
    energy,
    family_descriptor,
    new_scalars,
    origin,
    polynomial_degree_in_eta,
)

Q = Fraction(1, 4)
A, B, C, D = Fraction(64), Fraction(1, 3), Fraction(1, 5), Fraction(1, 7)


def qpoch(x: Fraction, k: int) -> Fraction:
    result = Fraction(1)
    for j in range(k):
        result *= 1 - x * Q**j
    return result


def q_racah(n: int, t: Fraction) -> Fraction:
    """4phi3(q^-n, dt q^n, 1/t, d t; a, b, c; q, q) summed directly."""
    dt = A * B * C / (D * Q)
    return sum(
        qpoch(Q**-n, k) * qpoch(dt * Q**n, k) * qpoch(1 / t, k) * qpoch(D * t, k)
        / (qpoch(A, k) * qpoch(B, k) * qpoch(C, k) * qpoch(Q, k))
        * Q**k
        for k in range(n + 1)
    )


def q_racah_energy(n: int) -> Fraction:
    dt = A * B * C / (D * Q)
    return (Q**-n - 1) * (1 - dt * Q**n)


def laguerre(n: int, alpha: Fraction, x: Fraction) -> Fraction:
    """L_n^(alpha)(x) = sum_k (-1)^k binom(n + alpha, n - k) x^k / k!."""
    total = Fraction(0)
    for k in range(n + 1):
        binom = Fraction(1)
        for j in range(1, n - k + 1):
            binom *= alpha + k + j
        binom /= factorial(n - k)
        total += (-1) ** k * binom * x**k / factorial(k)
    return total


class TestQRacah:
    """q-Racah polynomials at s=1/2, N=3, b=1/3, c=1/5, d=1/7."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    @pytest.mark.parametrize("t", [Fraction(2), Fraction(1, 3)])
    def test_matches_direct_sum(self, qr_point: ParameterPoint, n: int, t: Fraction):
        value = build_polynomial("qR", n, qr_point).evaluate(gaussian(t))
        assert real_part(value) == q_racah(n, t)
        assert value.y == 0

    def test_first_degree_value(self, qr_point: ParameterPoint):
        assert build_polynomial("qR", 1, qr_point).evaluate(gaussian(2)) == gaussian(Fraction(4891, 7056))

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_normalized_at_origin(self, qr_family, qr_point: ParameterPoint, n: int):
        p = build_polynomial(qr_family, n, qr_point)
        assert p.evaluate(origin(qr_family)) == ONE

    def test_degree_above_size(self, qr_point: ParameterPoint):
        with pytest.raises(ParameterError, match="exceeds N"):
            build_polynomial("qR", 4, qr_point)

    def test_negative_degree_is_zero(self, qr_point: ParameterPoint):
        assert build_polynomial("qR", -1, qr_point).is_zero

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_degree_in_eta(self, qr_point: ParameterPoint, n: int):
        assert polynomial_degree_in_eta("qR", build_polynomial("qR", n, qr_point), qr_point) == n

    @pytest.mark.parametrize("n", [0, 1, 4])
    def test_energy(self, qr_point: ParameterPoint, n: int):
        assert energy("qR", n, qr_point) == gaussian(q_racah_energy(n))

    def test_energy_values(self, qr_point: ParameterPoint):
        assert energy("qR", 1, qr_point) == gaussian(Fraction(-433, 5))
        assert energy("qR", 4, qr_point) == gaussian(136)

    def test_classic_scalars_are_energy_and_one(self, qr_point: ParameterPoint):
        assert classic_scalars("qR", 2, qr_point) == (gaussian(q_racah_energy(2)), ONE)

    def test_new_scalars_variant_a(self, qr_family, qr_point: ParameterPoint):
        f_1, b_1 = new_scalars(qr_family, qr_family.variant("a"), 1, qr_point)
        assert f_1 == ONE
        assert b_1 == gaussian(Fraction(1113, 5))


class TestLaguerre:
    """Laguerre polynomials L_n^(g - 1/2) at g = 3/2."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3, 4])
    def test_matches_closed_form(self, laguerre_point: ParameterPoint, n: int):
        value = build_polynomial("L", n, laguerre_point).evaluate(gaussian(3))
        assert value == gaussian(laguerre(n, Fraction(1), Fraction(3)))

    def test_second_degree_value(self, laguerre_point: ParameterPoint):
        assert build_polynomial("L", 2, laguerre_point).evaluate(gaussian(3)) == gaussian(Fraction(-3, 2))

    def test_classic_scalars(self, laguerre_point: ParameterPoint):
        assert classic_scalars("L", 3, laguerre_point) == (gaussian(2), gaussian(8))

    def test_origin_is_zero(self):
        assert origin(family_descriptor("L")) == ZERO


class TestHermite:
    """Hermite polynomials, no parameters."""

    def test_third_degree(self, hermite_point: ParameterPoint):
        eta = RationalFunction.variable("eta")
        assert build_polynomial("He", 3, hermite_point) == eta * eta * eta * 8 - eta * 12

    def test_degree_in_eta(self, hermite_point: ParameterPoint):
        assert polynomial_degree_in_eta("He", build_polynomial("He", 4, hermite_point), hermite_point) == 4
