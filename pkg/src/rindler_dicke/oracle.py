"""Brute-force quadrature of the proper-time integrals behind the closed forms.

After x = kappa e^{a tau / c} (L photons) or x = kappa e^{-a tau / c}
(R photons) every amplitude becomes an integral of

    x^(s-1) e^{(i sigma - eps) x},  s = i xi (sigma = +1) or -i xi (sigma = -1)

over x > kappa or an ordered pair of such variables.  Each integral is
damped by e^{-eps x}, evaluated on the panels of ``quadrature`` for every
eps in the ladder, and extrapolated polynomially to eps = 0.
"""

import cmath
from dataclasses import dataclass, field
import math
import warnings

import numpy as np
from scipy import integrate

from .errors import ConfigError, DomainError, NonConvergence
from .kinematics import theta_phase
from .quadrature import LD, DampedPower, extrapolate, outer_panels, power_values
from .specfun import log_gamma


def _default_ladder():
    return tuple(0.2 / 2**k for k in range(7))


@dataclass(frozen=True)
class QuadratureConfig:
    """Knobs of the damped quadrature.

    damping_eps   single damping used by the fixed-eps self test
    eps_ladder    decreasing dampings fed to the extrapolation
    abs_tol       absolute bound on the extrapolation residual
    rel_tol       relative bound on the residual; a result passes when
                  either bound holds
    fit_degree    degree of the least-squares polynomial in eps (None:
                  interpolate through every ladder point)
    max_subdivisions  cap on the number of panels per integral
    tau_window    span of the logarithmic panels, in units of c/a of proper
                  time (x from e^{-tau_window} up to 1)
    cutoff        truncation x_max = max(50, cutoff / eps)
    panel_nodes, panel_width  Gauss-Legendre order and width of linear panels
    """

    damping_eps: float = 0.05
    eps_ladder: tuple = field(default_factory=_default_ladder)
    abs_tol: float = 1e-20
    rel_tol: float = 1e-5
    fit_degree: int | None = 5
    max_subdivisions: int = 200000
    tau_window: float = 45.0
    cutoff: float = 40.0
    panel_nodes: int = 24
    panel_width: float = 2.0

    def __post_init__(self):
        ladder = tuple(float(e) for e in self.eps_ladder)
        object.__setattr__(self, "eps_ladder", ladder)
        if len(ladder) < 2:
            raise ConfigError("eps_ladder needs at least two values")
        if any(e <= 0 for e in ladder) or any(b >= a for a, b in zip(ladder, ladder[1:])):
            raise ConfigError("eps_ladder must be positive and strictly decreasing")
        if not self.damping_eps > 0:
            raise ConfigError("damping_eps must be positive")
        if not self.abs_tol > 0 or not self.rel_tol >= 0:
            raise ConfigError("abs_tol must be positive and rel_tol non-negative")
        if self.max_subdivisions < 1 or self.panel_nodes < 2:
            raise ConfigError("max_subdivisions and panel_nodes must be positive")
        if self.fit_degree is not None and not 0 <= self.fit_degree < len(ladder):
            raise ConfigError("fit_degree must lie in [0, len(eps_ladder) - 1]")
        if not (self.tau_window > 0 and self.cutoff > 0 and self.panel_width > 0):
            raise ConfigError("tau_window, cutoff and panel_width must be positive")

    def x_max(self, eps):
        return max(50.0, self.cutoff / eps)

    def tail_bound(self):
        return max(math.exp(-e * self.x_max(e)) / e for e in self.eps_ladder)


DEFAULT_CONFIG = QuadratureConfig()


def _damped(s, sigma, eps, cfg):
    return DampedPower(
        s,
        sigma,
        eps,
        x_max=cfg.x_max(eps),
        log_window=cfg.tau_window,
        width=cfg.panel_width,
        nodes=cfg.panel_nodes,
        max_panels=cfg.max_subdivisions,
    )


def _outer(lo, x_max, cfg):
    pts, wts = outer_panels(lo, x_max, cfg.panel_width, cfg.panel_nodes)
    if len(pts) > cfg.max_subdivisions * cfg.panel_nodes:
        raise NonConvergence("outer grid exceeds the panel cap")
    return pts, wts


def _finish(sample, cfg, full_output):
    res = extrapolate(
        cfg.eps_ladder,
        sample,
        abs_tol=cfg.abs_tol,
        rel_tol=cfg.rel_tol,
        degree=cfg.fit_degree,
        tail_bound=cfg.tail_bound(),
    )
    return res if full_output else res.value


def damped_power_integral(s, eps, sigma=1, cfg=None):
    """int_0^inf x^(s-1) e^{(i sigma - eps) x} dx at one fixed damping."""
    cfg = cfg or DEFAULT_CONFIG
    return complex(_damped(s, sigma, eps, cfg).total)


def damped_power_closed_form(s, eps, sigma=1):
    """Gamma(s) (eps - i sigma)^(-s), principal branch."""
    return cmath.exp(log_gamma(s) - complex(s) * cmath.log(complex(eps, -sigma)))


def alpha_numeric(sign, dp, cfg=None, full_output=False):
    """Damped-limit quadrature of the first-order amplitude (units c/a)."""
    cfg = cfg or DEFAULT_CONFIG
    sigma = 1 if sign in ("+", 1) else -1 if sign in ("-", -1) else None
    if sigma is None:
        raise DomainError(f"sign must be '+' or '-', got {sign!r}")
    s = sigma * 1j * dp.xi
    rot = cmath.exp(sigma * 1j * theta_phase(dp))

    def sample(eps):
        return _damped(s, sigma, eps, cfg).total * rot

    return _finish(sample, cfg, full_output)


def _rl_sample(dp, eps, cfg):
    # R photon at the earlier proper time, L photon at the later one.
    kappa = dp.kappa
    s_r = -1j * dp.xi
    left = _damped(1j * dp.xi, 1, eps, cfg)
    right = _damped(s_r, -1, eps, cfg)
    k2 = LD(kappa) ** 2
    first = left.total * right.cumulative(np.array([kappa], dtype=LD))[0]
    u, w = _outer(kappa, left.x_max, cfg)
    g_a = power_values(k2 / u, s_r, -1, eps) * (k2 / (u * u))
    second = np.sum(w * g_a * (left.total - left.cumulative(u)))
    x, w2 = _outer(kappa, right.x_max, cfg)
    third = np.sum(w2 * power_values(x, s_r, -1, eps) * left.cumulative(k2 / x))
    return first - second + third


def beta_numeric(channel, dp, cfg=None, full_output=False):
    """Damped-limit quadrature of the time-ordered second-order amplitude.

    channel "LL" and "RR" integrate y < x in the photon variables (both
    photons moving the same way); "RL" is the mixed ordering with the R
    photon first.  Units (c/a)^2.
    """
    cfg = cfg or DEFAULT_CONFIG
    channel = str(channel).upper()
    th = theta_phase(dp)
    if channel == "LL":
        rot = cmath.exp(2j * th)

        def sample(eps):
            return _damped(1j * dp.xi, 1, eps, cfg).ordered_pair() * rot

    elif channel == "RR":
        rot = cmath.exp(-2j * th)

        def sample(eps):
            r = _damped(-1j * dp.xi, -1, eps, cfg)
            return (r.total * r.total - r.ordered_pair()) * rot

    elif channel == "RL":

        def sample(eps):
            return _rl_sample(dp, eps, cfg)

    else:
        raise DomainError(f"channel must be LL, RR or RL, got {channel!r}")
    return _finish(sample, cfg, full_output)


def incomplete_gamma_numeric(s, z, tol=1e-13):
    """int_0^z e^{-u} u^(s-1) du by adaptive quadrature.

    Substituting u = z e^{-t} gives a smooth integrand on t in [0, T]; the
    piece below u0 = z e^{-T} is added from its short power expansion,
    which also continues the result to Re(s) <= 0.
    """
    s = complex(s)
    z = float(z)
    if not z > 0:
        raise DomainError("z must be positive")
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        raise DomainError("s must not be a non-positive integer")
    u0 = min(1e-4, z)
    T = math.log(z / u0)
    logz = math.log(z)

    def f(t):
        return cmath.exp(s * (logz - t) - z * math.exp(-t))

    body = 0j
    if T > 0:
        with warnings.catch_warnings():
            # quadpack flags roundoff once it reaches machine precision
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            body, err = integrate.quad(f, 0.0, T, complex_func=True, epsabs=0.0, epsrel=tol, limit=500)
        if abs(err) > 1e-9 * abs(body) + 1e-300:
            raise NonConvergence(f"incomplete gamma quadrature error {err:.2e}")
    head = 0j
    fact = 1.0
    for k in range(8):
        head += (-1) ** k * cmath.exp((k + s) * math.log(u0)) / (fact * (k + s))
        fact *= k + 1
    return body + head
