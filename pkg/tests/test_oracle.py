import cmath
import math

import pytest

from rindler_dicke import amplitudes as amp, oracle
from rindler_dicke.errors import DomainError, NonConvergence
from rindler_dicke.kinematics import DimensionlessParams
from rindler_dicke.specfun import log_gamma, lower_incomplete_gamma

from conftest import rel


@pytest.mark.parametrize("xi,kappa", [(0.5, 0.1), (1.0, 1.0)])
def test_alpha_numeric(xi, kappa):
    dp = DimensionlessParams(xi, kappa)
    for sign in "+-":
        res = oracle.alpha_numeric(sign, dp, full_output=True)
        assert rel(res.value, amp.alpha_pm(sign, dp)) < 1e-6
        assert res.residual < 1e-5 * abs(res.value)
        assert len(res.samples) == len(oracle.DEFAULT_CONFIG.eps_ladder)
    with pytest.raises(DomainError):
        oracle.alpha_numeric("?", dp)


@pytest.mark.parametrize(
    "channel,xi,kappa,fn",
    [("LL", 1.0, 0.1, amp.beta_ll), ("RR", 0.5, 0.2, amp.beta_rr), ("RL", 1.0, 0.1, amp.beta_rl)],
)
def test_beta_numeric(channel, xi, kappa, fn):
    dp = DimensionlessParams(xi, kappa)
    assert rel(oracle.beta_numeric(channel, dp), fn(dp)) < 1e-4


def test_beta_numeric_bad_channel():
    with pytest.raises(DomainError):
        oracle.beta_numeric("LX", DimensionlessParams(1.0, 0.1))


def test_rl_small_kappa_limit():
    """As kappa -> 0 the 1F2 factor tends to 1."""
    xi, kappa = 1.0, 0.01
    dp = DimensionlessParams(xi, kappa)
    t = cmath.exp(-math.pi * xi + log_gamma(-2j * xi) + 2j * xi * math.log(kappa)) / (1j * xi)
    assert rel(oracle.beta_numeric("RL", dp), 2 * t.real) < 1e-3


def test_printed_single_series_differs_from_quadrature():
    dp = DimensionlessParams(1.0, 0.1)
    num = oracle.beta_numeric("RL", dp)
    assert rel(num, amp.beta_rl(dp)) < 1e-4
    assert rel(num, amp.beta_rl_single_series(dp)) > 1e-2


@pytest.mark.parametrize("s,z", [(1, 1.0), (1j, 2.0), (0.5 - 1j, 3.0), (-0.4 + 1j, 0.5)])
def test_incomplete_gamma_numeric(s, z):
    assert rel(oracle.incomplete_gamma_numeric(s, z), lower_incomplete_gamma(s, z)) < 1e-9
    assert oracle.incomplete_gamma_numeric(1, 1.0) == pytest.approx(0.6321206, abs=1e-7)


def test_incomplete_gamma_numeric_domain():
    with pytest.raises(DomainError):
        oracle.incomplete_gamma_numeric(1, 0.0)
    with pytest.raises(DomainError):
        oracle.incomplete_gamma_numeric(-1, 1.0)


def test_tight_tolerance_raises():
    cfg = oracle.QuadratureConfig(abs_tol=1e-300, rel_tol=0.0)
    with pytest.raises(NonConvergence):
        oracle.alpha_numeric("+", DimensionlessParams(1.0, 0.1), cfg)
