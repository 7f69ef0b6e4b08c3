"""Complex special functions: log-Gamma, incomplete gamma, 2F1 at -1, 1F2.

Everything works on Python ``complex`` scalars.  Hypergeometric and
incomplete-gamma series run through the backend's ``hyp_series`` and
``incgamma_series`` kernels with Pochhammer factors built incrementally.
"""

import cmath
import math

from ._backend import kernels
from .errors import DomainError, NonConvergence, PoleError

DEFAULT_TOL = 1e-12
MAX_TERMS = 10000

# Lanczos coefficients, g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)
_LOG_PI = math.log(math.pi)


def _principal(z):
    """Fold the imaginary part of a logarithm into (-pi, pi]."""
    im = math.remainder(z.imag, 2 * math.pi)
    if im == -math.pi:
        im = math.pi
    return complex(z.real, im)


def _is_nonpositive_int(z):
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _lanczos_log(z):
    # log Gamma(z) for Re z >= 0.5, on some branch
    z = z - 1
    x = _LANCZOS[0]
    for i in range(1, len(_LANCZOS)):
        x += _LANCZOS[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def _log_sin_pi(z):
    # log sin(pi z) without overflow for large |Im z|
    if abs(z.imag) < 20:
        return cmath.log(cmath.sin(math.pi * z))
    if z.imag > 0:
        w = cmath.exp(2j * math.pi * z)
        return -1j * math.pi * z + cmath.log(1 - w) + cmath.log(0.5j)
    w = cmath.exp(-2j * math.pi * z)
    return 1j * math.pi * z + cmath.log(1 - w) + cmath.log(-0.5j)


def log_gamma(z):
    """Principal log Gamma(z), imaginary part folded into (-pi, pi].

    Lanczos (g=7, n=9) on Re z >= 1/2, reflection elsewhere.  Relative
    error of exp(log_gamma) is about 1e-14 near the real axis and grows
    to about 3e-13 at |Im z| = 100.
    """
    z = complex(z)
    if _is_nonpositive_int(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        out = _LOG_PI - _log_sin_pi(z) - _lanczos_log(1 - z)
    else:
        out = _lanczos_log(z)
    return _principal(out)


def gamma(z):
    return cmath.exp(log_gamma(z))


def gamma_abs_imag_sq(x):
    """|Gamma(ix)|^2 = pi / (x sinh(pi x)) for real x > 0.

    Written as 2 pi e^{-pi x} / (x (1 - e^{-2 pi x})) so large x does not
    overflow.  Diverges like 1/x^2 as x -> 0.
    """
    x = float(x)
    if not x > 0:
        raise DomainError("gamma_abs_imag_sq needs x > 0")
    return 2 * math.pi * math.exp(-math.pi * x) / (x * -math.expm1(-2 * math.pi * x))


def lower_incomplete_gamma(s, z, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    """gamma(s, z) = sum_k (-1)^k z^(k+s) / (k! (k+s)), principal z^s."""
    s = complex(s)
    z = complex(z)
    if _is_nonpositive_int(s):
        raise DomainError("s must not be a non-positive integer")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if z == 0:
        if s.real > 0:
            return 0j
        raise DomainError("z = 0 needs Re(s) > 0")
    zs = cmath.exp(s * cmath.log(z))
    total, _, ok = kernels.incgamma_series(s, z, tol, max_terms)
    if not ok:
        raise NonConvergence(f"incomplete gamma series did not converge in {max_terms} terms")
    # the alternating terms peak near e^|z|; past ~4 lost digits switch to
    # z^s e^{-z} 1F1(1; 1+s; z) / s, whose terms do not cancel for Re z > 0
    if z.real > 0 and math.exp(min(abs(z), 700.0)) > 1e4 * abs(total):
        f11 = _series((1,), (1 + s,), z, tol, max_terms, "incomplete gamma")
        return zs * cmath.exp(-z) * f11 / s
    return zs * total


def _series(nums, dens, z, tol, max_terms, what):
    for b in dens:
        if _is_nonpositive_int(complex(b)):
            raise DomainError(f"{what}: lower parameter {b} is a non-positive integer")
    if tol <= 0:
        raise DomainError("tol must be positive")
    total, _, ok = kernels.hyp_series(nums, dens, z, tol, max_terms)
    if not ok:
        raise NonConvergence(f"{what} series did not converge in {max_terms} terms")
    return total


def _wynn(sums):
    """Wynn epsilon extrapolation of a sequence of partial sums."""
    prev = [0j] * (len(sums) + 1)
    cur = list(sums)
    best = cur[-1]
    k = 0
    while len(cur) > 1:
        nxt = []
        for i in range(len(cur) - 1):
            d = cur[i + 1] - cur[i]
            if d == 0:
                return cur[i + 1]
            nxt.append(prev[i + 1] + 1 / d)
        prev, cur = cur, nxt
        k += 1
        if k % 2 == 0:
            best = cur[-1]
    return best


def _hyp2f1_direct(a, b, c, tol, max_terms):
    # alternating series at z = -1; terms fall off only like k^Re(a+b-c-1)
    term = 1 + 0j
    total = 0j
    sums = []
    peaked = False
    last = None
    for k in range(max_terms):
        total += term
        nxt = -term * (a + k) * (b + k) / ((c + k) * (k + 1))
        if nxt == 0:
            return total
        if not peaked:
            peaked = abs(nxt) < abs(term)
        if peaked:
            sums.append(total)
            if len(sums) >= 8 and len(sums) % 2 == 0:
                est = _wynn(sums[-40:])
                if last is not None and abs(est - last) <= tol * abs(est):
                    return est
                last = est
        term = nxt
    raise NonConvergence(f"2F1(-1) series did not converge in {max_terms} terms")


def hyp2f1_at_minus1(a, b, c, tol=DEFAULT_TOL, max_terms=MAX_TERMS, method="pfaff"):
    """Gauss 2F1(a, b; c; -1), needing Re(c - a - b) > 0.

    ``method="pfaff"`` sums 2^{-a} 2F1(a, c-b; c; 1/2), which converges
    geometrically.  ``method="direct"`` sums the alternating series at -1
    with Wynn-epsilon acceleration.
    """
    a, b, c = complex(a), complex(b), complex(c)
    if _is_nonpositive_int(c):
        raise DomainError("c must not be a non-positive integer")
    if not (c - a - b).real > 0:
        raise DomainError("2F1 at -1 needs Re(c - a - b) > 0")
    if a == 0 or b == 0:
        return 1 + 0j
    if method == "pfaff":
        s = _series((a, c - b), (c,), 0.5, tol, max_terms, "2F1")
        return cmath.exp(-a * math.log(2)) * s
    if method == "direct":
        return _hyp2f1_direct(a, b, c, tol, max_terms)
    raise DomainError(f"unknown method {method!r}")


def kummer_2f1(a, b):
    """Closed form of 2F1(a, b; 1+a-b; -1) from four Gamma values."""
    a, b = complex(a), complex(b)
    lg = log_gamma(1 + a - b) + log_gamma(1 + a / 2) - log_gamma(1 + a / 2 - b) - log_gamma(1 + a)
    return cmath.exp(lg)


def hyp1f2(a, b1, b2, z, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    """Generalized 1F2(a; b1, b2; z), summed from its everywhere-convergent series."""
    return _series((complex(a),), (complex(b1), complex(b2)), complex(z), tol, max_terms, "1F2")


def hyp0f1(b, z, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    return _series((), (complex(b),), complex(z), tol, max_terms, "0F1")
