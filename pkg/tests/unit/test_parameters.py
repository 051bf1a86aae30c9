"""Tests for parameter points, sampling and shifts."""

from fractions import Fraction

import pytest

from askey_shift.algebra import gaussian, real_part
from askey_shift.families import (
    BlacklistError,
    ParameterError,
    ParameterPoint,
    derive_seed,
    make_point,
    resolved_parameters,
    sample_parameters,
    shift_parameters,
)


class TestMakePoint:
    """Tests for explicit points."""

    def test_size_parameter_follows_n(self, qr_family, qr_point: ParameterPoint):
        assert qr_point.q == gaussian(Fraction(1, 4))
        assert resolved_parameters(qr_family, qr_point)["a"] == gaussian(64)

    def test_values_as_formula_text(self):
        point = make_point("L", "1/2", g="3/2")
        assert point.value("g") == gaussian(Fraction(3, 2))

    def test_s_must_lie_in_unit_interval(self):
        with pytest.raises(ParameterError, match="s must be a real number"):
            make_point("L", Fraction(3, 2), g=1)

    def test_finite_family_needs_n(self):
        with pytest.raises(ParameterError, match="needs N"):
            make_point("qR", Fraction(1, 2), b=Fraction(1, 3), c=Fraction(1, 5), d=Fraction(1, 7))

    def test_infinite_family_rejects_n(self):
        with pytest.raises(ParameterError, match="infinite family"):
            make_point("L", Fraction(1, 2), N=3, g=1)

    def test_missing_parameter(self):
        with pytest.raises(ParameterError, match="missing parameters: c"):
            make_point("qR", Fraction(1, 2), N=3, b=Fraction(1, 3), d=Fraction(1, 7))

    def test_unknown_parameter(self):
        with pytest.raises(ParameterError, match="unknown parameters: e"):
            make_point("L", Fraction(1, 2), g=1, e=2)

    def test_blacklist(self):
        with pytest.raises(BlacklistError):
            make_point("qR", Fraction(1, 2), N=3, b=1, c=Fraction(1, 5), d=Fraction(1, 7))

    def test_blacklist_is_a_parameter_error(self):
        with pytest.raises(ParameterError):
            make_point("qR", Fraction(1, 2), N=3, b=Fraction(1, 3), c=1, d=Fraction(1, 7))

    @pytest.mark.parametrize(
        "family_id,N,values",
        [
            ("R", 10, {"b": Fraction(20, 17), "c": Fraction(22, 19), "d": 1}),
            ("R", 5, {"b": Fraction(10, 7), "c": Fraction(8, 7), "d": Fraction(4, 7)}),
            ("dH", 5, {"a": Fraction(9, 7), "b": Fraction(5, 7)}),
            ("pJ", None, {"h": 1, "mu": Fraction(6, 11)}),
            ("pJ", None, {"h": Fraction(3, 2), "mu": Fraction(6, 11)}),
        ],
        ids=["racah-d-one", "racah-integral-b+c-d", "dual-hahn-a+b-two", "pseudo-jacobi-h-one", "pseudo-jacobi-2h-three"],
    )
    def test_degenerate_points_are_blacklisted(self, family_id: str, N, values):
        with pytest.raises(BlacklistError):
            make_point(family_id, Fraction(2, 3), N=N, **values)


class TestSampling:
    """Tests for seeded draws."""

    def test_same_seed_same_point(self):
        first = sample_parameters("qR", seed=99, n_max=4, variant="a")
        second = sample_parameters("qR", seed=99, n_max=4, variant="a")
        assert first.to_json() == second.to_json()

    def test_finite_size_leaves_room(self):
        point = sample_parameters("qR", seed=3, n_max=4)
        assert 6 <= point.N <= 8

    def test_infinite_family_has_no_size(self):
        assert sample_parameters("AW", seed=3, n_max=4).N is None

    def test_seed_is_recorded(self):
        assert sample_parameters("L", seed=1234, n_max=2).seed == 1234

    @pytest.mark.parametrize("family_id", ["L", "cH", "AW", "qR", "bqJ", "M"])
    def test_draw_is_admissible(self, family_id: str):
        point = sample_parameters(family_id, seed=derive_seed(42, family_id, None, 0), n_max=3)
        assert 0 < real_part(point.s) < 1


class TestDeriveSeed:
    """Tests for per-unit seeds."""

    def test_stable(self):
        assert derive_seed(42, "qR", "a", 0) == derive_seed(42, "qR", "a", 0)

    def test_distinct_per_unit(self):
        seeds = {derive_seed(42, "qR", variant, trial) for variant in (None, "a", "b") for trial in range(3)}
        assert len(seeds) == 9


class TestShiftParameters:
    """Tests for lambda +- delta."""

    def test_q_racah_variant_a_lowering(self, qr_family, qr_point: ParameterPoint):
        lowered = shift_parameters(qr_point, qr_family.variant("a").delta_bar, -1, qr_family)
        assert lowered.N == 4
        assert lowered.value("d") == gaussian(Fraction(4, 7))
        assert lowered.value("b") == qr_point.value("b")

    def test_additive_shift(self, laguerre_point: ParameterPoint):
        raised = shift_parameters(laguerre_point, ["1"], 1)
        assert raised.value("g") == gaussian(Fraction(5, 2))

    def test_empty_shift_is_identity(self, laguerre_point: ParameterPoint):
        assert shift_parameters(laguerre_point, [], 1) is laguerre_point

    def test_wrong_length(self, laguerre_point: ParameterPoint):
        with pytest.raises(ParameterError, match="shift has 2 entries"):
            shift_parameters(laguerre_point, ["1", "1"], 1)

    def test_size_cannot_go_negative(self, qr_point: ParameterPoint):
        with pytest.raises(ParameterError, match="leaves N = -1"):
            shift_parameters(qr_point, ["4", "0", "0", "0"], 1)


class TestPointJson:
    """Tests for the serialized point."""

    def test_layout(self, qr_point: ParameterPoint):
        data = qr_point.to_json()
        assert data["family"] == "qR"
        assert data["N"] == 3
        assert data["values"] == {"b": "1/3+0*i", "c": "1/5+0*i", "d": "1/7+0*i"}

    def test_from_json(self, qr_point: ParameterPoint):
        assert ParameterPoint.from_json(qr_point.to_json()) == qr_point
