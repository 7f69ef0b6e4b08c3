"""Extended-precision panel quadrature for damped power-oscillatory integrals.

Every integral in the oracle is built from the one-dimensional family

    f(x) = x**(s-1) * exp((i*sigma - eps) * x),   x in (0, inf),

with sigma = +1 (left movers) or -1 (right movers) and Re(s) >= 0.  The
lower end is regularised the adiabatic way: the x**(s-1) singularity is
subtracted on (0, 1] and its integral x**s / s added back analytically,
which is the Re(s) -> 0+ limit of the convergent case.  The upper end is
cut at ``x_max`` where the damping has killed the integrand.

``DampedPower`` tabulates f on Gauss-Legendre panels (logarithmic in x
below 1, linear above) and keeps Legendre coefficients per panel, so the
cumulative integral C(p) = int_0^p f can be evaluated at arbitrary points
at interpolation accuracy without new function evaluations.
"""

from dataclasses import dataclass
import decimal
from functools import lru_cache
import math

import numpy as np

from ._backend import kernels
from .errors import DomainError, NonConvergence

LD = np.longdouble


@lru_cache(maxsize=None)
def gauss_legendre(n):
    """Nodes and weights on [-1, 1], rounded to long double.

    Newton iteration runs in 40-digit decimal arithmetic: weights formed in
    long double lose tens of ulps near the ends, which shows up directly in
    the cancelling oscillatory sums.
    """
    x64, _ = np.polynomial.legendre.leggauss(n)
    with decimal.localcontext() as ctx:
        ctx.prec = 40
        xs, ws = [], []
        for guess in x64[: (n + 1) // 2]:
            x = decimal.Decimal(float(guess))
            for _ in range(8):
                p0, p1 = decimal.Decimal(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                x -= p1 / dp
            xs.append(x)
            ws.append(2 / ((1 - x * x) * dp * dp))
    left = [LD(str(v)) for v in xs]
    wl = [LD(str(v)) for v in ws]
    if n % 2:
        nodes = left + [-v for v in left[-2::-1]]
        weights = wl + wl[-2::-1]
        nodes[n // 2] = LD(0)
    else:
        nodes = left + [-v for v in left[::-1]]
        weights = wl + wl[::-1]
    x = np.array(nodes, dtype=LD)
    w = np.array(weights, dtype=LD)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def legendre_projection(n):
    """Matrix M with coeffs = values @ M.T giving Legendre coefficients."""
    t, w = gauss_legendre(n)
    P = np.empty((n, n), dtype=LD)
    P[0] = 1
    if n > 1:
        P[1] = t
    for k in range(1, n - 1):
        P[k + 1] = ((2 * k + 1) * t * P[k] - k * P[k - 1]) / (k + 1)
    M = (2 * np.arange(n, dtype=LD)[:, None] + 1) / 2 * w[None, :] * P
    M.setflags(write=False)
    return M


def as_cld(re, im):
    out = np.empty(np.shape(re), dtype=np.clongdouble)
    out.real = re
    out.imag = im
    return out


class Panels:
    """Gauss-Legendre panels between consecutive ``edges``."""

    def __init__(self, edges, n):
        self.edges = np.asarray(edges, dtype=LD)
        if self.edges.ndim != 1 or len(self.edges) < 2:
            raise DomainError("need at least one panel")
        self.n = n
        self.a = self.edges[:-1]
        self.h = np.diff(self.edges)
        t, w = gauss_legendre(n)
        self.t = t
        self.nodes = self.a[:, None] + (t[None, :] + 1) * self.h[:, None] / 2
        self.weights = w[None, :] * self.h[:, None] / 2

    def integrate(self, values):
        return np.sum(values * self.weights)

    def locate(self, p):
        p = np.asarray(p, dtype=LD)
        idx = np.searchsorted(self.edges, p, side="right") - 1
        idx = np.clip(idx, 0, len(self.a) - 1)
        t = 2 * (p - self.a[idx]) / self.h[idx] - 1
        return idx, t


class PanelFit:
    """Legendre fit of a function tabulated on ``Panels``.

    ``partial(idx, t)`` is the integral from the left edge of panel ``idx``
    to local coordinate ``t``; ``totals`` are whole-panel integrals.
    """

    def __init__(self, panels, values):
        self.panels = panels
        M = legendre_projection(panels.n)
        re = np.ascontiguousarray(values.real.astype(LD) @ M.T)
        im = np.ascontiguousarray(values.imag.astype(LD) @ M.T)
        self.coef_re = re
        self.coef_im = im
        self.totals = as_cld(re[:, 0], im[:, 0]) * panels.h

    def partial(self, idx, t):
        re, im = kernels.legendre_antideriv(
            np.ascontiguousarray(t, dtype=LD),
            np.ascontiguousarray(idx, dtype=np.intp),
            self.coef_re,
            self.coef_im,
        )
        return as_cld(re, im) * (self.panels.h[idx] / 2)


def running_sum(v):
    re, im = kernels.compensated_cumsum(np.ascontiguousarray(v.real), np.ascontiguousarray(v.imag))
    return as_cld(re, im)


def power_values(x, s, sigma, eps):
    re, im = kernels.power_osc(np.ascontiguousarray(x, dtype=LD), s.real, s.imag, sigma, eps)
    return as_cld(re, im)


def log_reg_values(v, s, sigma, eps):
    re, im = kernels.log_reg(np.ascontiguousarray(v, dtype=LD), s.real, s.imag, sigma, eps)
    return as_cld(re, im)


def _ld_complex(z):
    return as_cld(np.array([z.real], dtype=LD), np.array([z.imag], dtype=LD))[0]


class DampedPower:
    """Regularised integrals of x**(s-1) exp((i sigma - eps) x) over (0, p]."""

    def __init__(self, s, sigma, eps, *, x_max, log_window=45.0, width=2.0, nodes=24, max_panels=200000):
        s = complex(s)
        if s.real < 0 or s == 0:
            raise DomainError("need Re(s) >= 0 and s != 0")
        if eps <= 0:
            raise DomainError("damping must be positive")
        self.s = s
        self.sigma = sigma
        self.eps = eps
        n_log = int(math.ceil(log_window))
        n_lin = int(math.ceil((x_max - 1.0) / width))
        if n_log + n_lin > max_panels:
            raise NonConvergence(f"{n_log + n_lin} panels exceeds the cap of {max_panels}")
        self.log_panels = Panels(np.arange(n_log + 1, dtype=LD), nodes)
        self.lin_panels = Panels(1 + width * np.arange(n_lin + 1, dtype=LD), nodes)
        self.x_max = float(self.lin_panels.edges[-1])

        self.g_nodes = log_reg_values(self.log_panels.nodes, s, sigma, eps)
        self.log_fit = PanelFit(self.log_panels, self.g_nodes)
        # D at v-edges: integral of g from the edge out to the end of the window
        tail = running_sum(self.log_fit.totals[::-1])[::-1]
        self.d_edges = np.concatenate([tail, np.zeros(1, dtype=np.clongdouble)])
        self.s_ld = _ld_complex(s)
        self.c_one = 1 / self.s_ld + self.d_edges[0]

        self.f_nodes = power_values(self.lin_panels.nodes, s, sigma, eps)
        self.lin_fit = PanelFit(self.lin_panels, self.f_nodes)
        self.lin_edges = np.concatenate([np.zeros(1, dtype=np.clongdouble), running_sum(self.lin_fit.totals)])
        self.total = self.c_one + self.lin_edges[-1]

    def _d_at(self, v):
        idx, t = self.log_panels.locate(v)
        return self.d_edges[idx + 1] + self.log_fit.totals[idx] - self.log_fit.partial(idx, t)

    def cumulative(self, p):
        """C(p) = int_0^p f for an array of p > 0 (C = total beyond x_max)."""
        p = np.asarray(p, dtype=LD)
        out = np.empty(p.shape, dtype=np.clongdouble)
        small = p <= 1
        if np.any(small):
            ps = p[small]
            v = -np.log(ps)
            inside = v < self.log_panels.edges[-1]
            d = np.zeros(ps.shape, dtype=np.clongdouble)
            if np.any(inside):
                d[inside] = self._d_at(v[inside])
            out[small] = power_values(ps, self.s + 1, 0, 0.0) / self.s_ld + d
        mid = (p > 1) & (p < self.x_max)
        if np.any(mid):
            idx, t = self.lin_panels.locate(p[mid])
            out[mid] = self.c_one + self.lin_edges[idx] + self.lin_fit.partial(idx, t)
        out[p >= self.x_max] = self.total
        return out

    def ordered_pair(self):
        """int_0^inf f(x) C(x) dx, i.e. the y < x ordered double integral."""
        s = self.s_ld
        lp = self.log_panels
        idx = np.repeat(np.arange(len(lp.a)), lp.n).reshape(lp.nodes.shape)
        tt = np.broadcast_to(lp.t, lp.nodes.shape)
        d_nodes = (
            self.d_edges[idx + 1]
            + self.log_fit.totals[idx]
            - self.log_fit.partial(idx.ravel(), tt.ravel()).reshape(lp.nodes.shape)
        )
        esv = power_values(np.exp(-lp.nodes), self.s + 1, 0, 0.0)  # exp(-s v)
        g = self.g_nodes
        small = lp.integrate(g * esv / s + (g + esv) * d_nodes)

        np_ = self.lin_panels
        idx = np.repeat(np.arange(len(np_.a)), np_.n)
        tt = np.broadcast_to(np_.t, np_.nodes.shape).ravel()
        c_nodes = (self.c_one + self.lin_edges[idx] + self.lin_fit.partial(idx, tt)).reshape(np_.nodes.shape)
        large = np_.integrate(self.f_nodes * c_nodes)
        return 1 / (2 * s * s) + small + large


def outer_panels(lo, x_max, width, nodes):
    """Panels covering [lo, x_max]: log-spaced below 1, linear above.

    Returns (points, weights) with the log Jacobian already in the weights.
    """
    pts, wts = [], []
    if lo < 1:
        n_log = max(1, int(math.ceil(-math.log(lo))))
        w_edges = np.linspace(LD(math.log(lo)), LD(0), n_log + 1)
        w_edges[0] = np.log(LD(lo))
        lp = Panels(w_edges, nodes)
        x = np.exp(lp.nodes)
        pts.append(x.ravel())
        wts.append((lp.weights * x).ravel())
        start = LD(1)
    else:
        start = LD(lo)
    n_lin = max(1, int(math.ceil((x_max - float(start)) / width)))
    lin = Panels(start + width * np.arange(n_lin + 1, dtype=LD), nodes)
    pts.append(lin.nodes.ravel())
    wts.append(lin.weights.ravel())
    return np.concatenate(pts), np.concatenate(wts)


@dataclass(frozen=True)
class ExtrapolationResult:
    value: complex
    residual: float
    ladder: tuple
    samples: tuple
    tail_bound: float


def neville_to_zero(eps, values):
    """Polynomial interpolation of values(eps), evaluated at eps = 0."""
    eps = [LD(e) for e in eps]
    P = list(values)
    n = len(P)
    for k in range(1, n):
        for i in range(n - k):
            P[i] = (eps[i + k] * P[i] - eps[i] * P[i + 1]) / (eps[i + k] - eps[i])
    return P[0]


def fit_weights(eps, degree):
    """Weights c with sum(c * values) = least-squares polynomial fit at eps = 0."""
    e = np.asarray(eps, dtype=float)
    V = np.vander(e / e.max(), degree + 1, increasing=True)
    return np.linalg.pinv(V)[0]


def fit_to_zero(eps, values, degree=None):
    if degree is None or degree >= len(eps) - 1:
        return neville_to_zero(eps, values)
    c = fit_weights(eps, degree)
    return sum(LD(ci) * v for ci, v in zip(c, values))


def extrapolate(ladder, sample, *, abs_tol, rel_tol, degree=None, tail_bound=0.0):
    """Evaluate ``sample(eps)`` over the ladder and extrapolate to eps -> 0.

    ``degree`` below len(ladder) - 1 fits a least-squares polynomial, which
    amplifies rounding noise in the samples far less than interpolating
    through all of them.  The residual is the distance to the next
    higher-degree estimate.
    """
    ladder = tuple(float(e) for e in ladder)
    if len(ladder) < 2:
        raise DomainError("extrapolation needs at least two damping values")
    if any(b >= a for a, b in zip(ladder, ladder[1:])) or ladder[-1] <= 0:
        raise DomainError("damping ladder must be positive and strictly decreasing")
    vals = [sample(e) for e in ladder]
    n = len(ladder)
    if degree is None or degree >= n - 1:
        best = neville_to_zero(ladder, vals)
        drop_small = neville_to_zero(ladder[:-1], vals[:-1])
        drop_large = neville_to_zero(ladder[1:], vals[1:])
        residual = float(max(abs(best - drop_small), abs(best - drop_large)))
    else:
        best = fit_to_zero(ladder, vals, degree)
        residual = float(abs(best - fit_to_zero(ladder, vals, degree + 1)))
    value = complex(best)
    if residual > max(abs_tol, rel_tol * abs(value)):
        raise NonConvergence(f"extrapolation residual {residual:.3e} for value {abs(value):.3e}")
    return ExtrapolationResult(value, residual, ladder, tuple(complex(v) for v in vals), tail_bound)
