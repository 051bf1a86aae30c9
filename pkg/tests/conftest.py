"""Shared pytest fixtures for askey-shift tests."""

from fractions import Fraction
from pathlib import Path

import pytest
import structlog

from askey_shift.families import FamilyDescriptor, ParameterPoint, family_descriptor, make_point, sample_parameters
from askey_shift.relations import SuiteConfig


@pytest.fixture(autouse=True)
def reset_structlog():
    """Undo any logging configuration a test installed."""
    yield
    structlog.reset_defaults()


@pytest.fixture
def qr_family() -> FamilyDescriptor:
    """Provide the q-Racah descriptor."""
    return family_descriptor("qR")


@pytest.fixture
def qr_point() -> ParameterPoint:
    """Provide the fixed q-Racah point s=1/2, N=3, b=1/3, c=1/5, d=1/7 (so q=1/4, a=64)."""
    return make_point("qR", Fraction(1, 2), N=3, b=Fraction(1, 3), c=Fraction(1, 5), d=Fraction(1, 7))


@pytest.fixture
def laguerre_point() -> ParameterPoint:
    """Provide a Laguerre point with g=3/2, i.e. L_n^(1)."""
    return make_point("L", Fraction(1, 2), g=Fraction(3, 2))


@pytest.fixture
def hermite_point() -> ParameterPoint:
    """Provide the (parameter-free) Hermite point."""
    return make_point("He", Fraction(1, 2))


@pytest.fixture
def bqj_point() -> ParameterPoint:
    """Provide a sampled big q-Jacobi point for variant (a)."""
    return sample_parameters("bqJ", seed=7, n_max=3, variant="a")


@pytest.fixture
def aw_point() -> ParameterPoint:
    """Provide a sampled Askey-Wilson point for split (1,2)."""
    return sample_parameters("AW", seed=11, n_max=3, variant="12")


@pytest.fixture
def small_suite() -> SuiteConfig:
    """Provide a quick suite configuration over two families."""
    return SuiteConfig(n_max=2, trials=1, seed=5, families=["L", "qR"], operator_degree=12)


@pytest.fixture
def fixtures_path() -> Path:
    """Provide path to test fixtures directory."""
    return Path(__file__).parent / "fixtures"
