"""Tests for the classic relation checkers."""

from fractions import Fraction

import pytest

from askey_shift.families import ParameterPoint, family_descriptor, make_point
from askey_shift.models import Verdict
from askey_shift.operators import DegreeBoundError
from askey_shift.relations import (
    NotApplicableError,
    check_eigen,
    check_energy_identities,
    check_factorization_classic,
    check_rodrigues,
    check_shape_invariance,
    check_shift_classic,
    replay_witness,
)


class TestLaguerre:
    """Classic relations of L_n^(g - 1/2)."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_per_degree_relations(self, laguerre_point: ParameterPoint, n: int):
        for check in (check_eigen, check_shift_classic, check_rodrigues):
            report = check("L", n, laguerre_point)
            assert report.verdict is Verdict.PASS, report.reason
            assert report.n == n

    def test_factorization(self, laguerre_point: ParameterPoint):
        report = check_factorization_classic("L", laguerre_point)
        assert report.verdict is Verdict.PASS, report.reason
        assert report.checks == 1

    def test_shape_invariance(self, laguerre_point: ParameterPoint):
        assert check_shape_invariance("L", laguerre_point).verdict is Verdict.PASS

    def test_energy_identities(self, laguerre_point: ParameterPoint):
        report = check_energy_identities("L", None, laguerre_point, 4)
        assert report.verdict is Verdict.PASS, report.reason
        # E_0 = 0, four products and four recursion steps
        assert report.checks == 9


class TestHermite:
    """Classic relations of the parameter-free Hermite family."""

    @pytest.mark.parametrize("n", [0, 2, 5])
    def test_eigen(self, hermite_point: ParameterPoint, n: int):
        assert check_eigen("He", n, hermite_point).verdict is Verdict.PASS

    def test_factorization(self, hermite_point: ParameterPoint):
        assert check_factorization_classic("He", hermite_point).verdict is Verdict.PASS


class TestQRacah:
    """Classic relations at the fixed q-Racah point."""

    @pytest.mark.parametrize("n", [0, 1, 2, 3])
    def test_eigen(self, qr_point: ParameterPoint, n: int):
        report = check_eigen("qR", n, qr_point)
        assert report.verdict is Verdict.PASS, report.reason
        # H P_n, deg_eta and P_n(origin)
        assert report.checks == 3

    @pytest.mark.parametrize("n", [1, 2])
    def test_shift(self, qr_point: ParameterPoint, n: int):
        assert check_shift_classic("qR", n, qr_point).verdict is Verdict.PASS

    def test_factorization(self, qr_point: ParameterPoint):
        assert check_factorization_classic("qR", qr_point).verdict is Verdict.PASS

    def test_degree_above_size_is_skipped(self, qr_point: ParameterPoint):
        report = check_eigen("qR", 4, qr_point)
        assert report.verdict is Verdict.SKIPPED
        assert "exceeds N" in report.reason

    def test_degree_bound_is_not_a_verdict(self, qr_point: ParameterPoint):
        with pytest.raises(DegreeBoundError):
            check_factorization_classic("qR", qr_point, degree=1)

    def test_wrong_energy_leaves_a_replayable_witness(self, qr_point: ParameterPoint):
        # kappa forced to 1 breaks the recursion E_{n+1} = kappa E_n(lambda+delta) + E_1
        broken = family_descriptor("qR").model_copy(update={"kappa": "1"})
        report = check_energy_identities(broken, None, qr_point, 3)
        assert report.verdict is Verdict.FAIL
        assert report.witness.kind == "scalar"
        assert replay_witness(report.witness)


class TestApplicability:
    """Tests for inapplicable and inadmissible instances."""

    def test_rodrigues_needs_classic_b(self):
        no_b = family_descriptor("L").model_copy(update={"b": None})
        with pytest.raises(NotApplicableError, match="no classic b_n"):
            check_rodrigues(no_b, 1, make_point("L", Fraction(1, 2), g=Fraction(3, 2)))

    def test_report_carries_point_seed(self):
        point = make_point("L", Fraction(1, 2), seed=77, g=Fraction(5, 2))
        assert check_eigen("L", 1, point).seed == 77
