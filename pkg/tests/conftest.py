import pytest

from fc_poincare.core.polyring import Polynomial
from fc_poincare.methods.recur import build_coeff_table
from fc_poincare.utils.config_loader import VerifySettings


def poly(*coeffs: int) -> Polynomial:
    """Shorthand: poly(1, 0, -1) is 1 - q^2."""
    return Polynomial(coeffs)


A3 = Polynomial((1, 3, 5, 4, 1))


@pytest.fixture(scope="session")
def coeff_table():
    return build_coeff_table(16)


@pytest.fixture
def quick_settings():
    return VerifySettings(random_instances=25)


def ranks(start: int, stop: int, slow_from: int) -> list:
    """range(start, stop) as parametrize values; ranks from slow_from on are marked slow."""
    return [pytest.param(n, marks=pytest.mark.slow) if n >= slow_from else n for n in range(start, stop)]
