"""Tests for the term-by-term expansion behind ``askey-shift explain``."""

import pytest

from askey_shift.algebra import RationalFunction, normalize_equal
from askey_shift.families import ParameterPoint
from askey_shift.relations import NotApplicableError, explain_shift


class TestExplainShift:
    """Tests for explain traces."""

    def test_qracah_trace(self, qr_point: ParameterPoint):
        trace = explain_shift("qR", "a", 1, qr_point)
        assert trace.holds
        assert [section.name for section in trace.sections] == ["forward", "backward"]
        assert trace.shifted_point["N"] == 4
        assert trace.shifted_point["values"]["d"] == "4/7+0*i"
        assert trace.sigma.startswith("t ↦ ")

    def test_forward_section(self, qr_point: ParameterPoint):
        forward = explain_shift("qR", "a", 2, qr_point).sections[0]
        assert forward.terms
        assert forward.scalar == "1+0*i"

    @pytest.mark.parametrize("variant", ["a", "b"])
    def test_laguerre_trace(self, laguerre_point: ParameterPoint, variant: str):
        trace = explain_shift("L", variant, 2, laguerre_point)
        assert trace.holds
        assert trace.variant == variant
        assert all(term.order in (0, 1) for section in trace.sections for term in section.terms)

    def test_laguerre_intermediate_functions(self, laguerre_point: ParameterPoint):
        # g = 3/2: P_1 = 2 - eta, F~ = eta d + 1, f~_1 = 2, P_1(g = 1/2) = 1 - eta
        forward, backward = explain_shift("L", "a", 1, laguerre_point).sections
        two, eta = RationalFunction.constant(2, "eta"), RationalFunction.variable("eta")
        assert normalize_equal(RationalFunction.from_json(forward.result_json), two - eta - eta)
        assert forward.scalar == "2+0*i"
        assert sorted(term.order for term in forward.terms) == [0, 1]
        # B~ = -d + 1 on 1 - eta gives back P_1 with b~_1 = 1
        assert normalize_equal(RationalFunction.from_json(backward.result_json), two - eta)
        assert backward.scalar == "1+0*i"

    def test_askey_wilson_trace(self, aw_point: ParameterPoint):
        trace = explain_shift("AW", "12", 2, aw_point)
        assert trace.holds
        assert trace.family == "AW"
        assert all(section.holds for section in trace.sections)
        assert trace.sigma.startswith("z ↦ ")

    def test_big_q_jacobi_trace(self, bqj_point: ParameterPoint):
        trace = explain_shift("bqJ", "a", 2, bqj_point)
        assert trace.holds
        assert trace.variant == "a"
        assert trace.sigma.startswith("eta ↦ ")

    def test_dumped_trace_keeps_verdict(self, qr_point: ParameterPoint):
        assert explain_shift("qR", "a", 0, qr_point).model_dump()["holds"] is True

    def test_family_without_new_factorization(self, hermite_point: ParameterPoint):
        with pytest.raises(NotApplicableError):
            explain_shift("He", "a", 1, hermite_point)
