import pytest

from rindler_dicke import DimensionlessParams, PhysicalParams
from rindler_dicke.kinematics import C_LIGHT


@pytest.fixture
def dp():
    return DimensionlessParams(1.0, 0.1)


@pytest.fixture
def ref_params():
    """omega = 1e9 rad/s, nu = 0.1 omega, chi = 1e7, and a = omega c so that xi = 1."""
    return PhysicalParams(a=1e9 * C_LIGHT, omega=1e9, nu=1e8, chi=1e7)


def rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale
