"""Pure-Python/numpy implementation of the hot kernels.

Same signatures and semantics as the compiled ``_kernels`` extension.  The
quadrature kernels work in ``numpy.longdouble`` (x87 extended precision on
x86-64): the oscillatory integrals they feed cancel down to ~1e-11 of
their O(1) pieces, which leaves too few digits in float64.
"""

import numpy as np

LD = np.longdouble


def power_osc(x, s_re, s_im, sigma, eps):
    """x**(s-1) * exp((i*sigma - eps) * x) for x > 0, as (re, im)."""
    x = np.asarray(x, dtype=LD)
    lx = np.log(x)
    mod = np.exp((LD(s_re) - 1) * lx - LD(eps) * x)
    ph = LD(s_im) * lx + LD(sigma) * x
    return mod * np.cos(ph), mod * np.sin(ph)


def log_reg(v, s_re, s_im, sigma, eps):
    """exp(-s*v) * (exp((i*sigma - eps) * y) - 1) with y = exp(-v), as (re, im).

    This is the small-x integrand after x = exp(-v) with the x**(s-1)
    singularity subtracted; exp(z) - 1 is formed without cancellation.
    """
    v = np.asarray(v, dtype=LD)
    y = np.exp(-v)
    sy = LD(sigma) * y
    em = np.expm1(-LD(eps) * y)
    half = np.sin(sy / 2)
    e_re = em * np.cos(sy) - 2 * half * half
    e_im = np.exp(-LD(eps) * y) * np.sin(sy)
    mod = np.exp(-LD(s_re) * v)
    c = mod * np.cos(LD(s_im) * v)
    s = -mod * np.sin(LD(s_im) * v)
    return c * e_re - s * e_im, c * e_im + s * e_re


def legendre_antideriv(t, idx, coef_re, coef_im):
    """sum_k c[idx, k] * int_{-1}^{t} P_k for each point.

    ``coef_*`` hold Legendre coefficients per panel (rows); ``idx`` selects
    the panel of each point and ``t`` is its local coordinate in [-1, 1].
    """
    t = np.asarray(t, dtype=LD)
    idx = np.asarray(idx, dtype=np.intp)
    cr = coef_re[idx]
    ci = coef_im[idx]
    n = cr.shape[1]
    p_prev = np.ones_like(t)
    p_cur = t.copy()
    out_re = cr[:, 0] * (t + 1)
    out_im = ci[:, 0] * (t + 1)
    for k in range(1, n):
        p_next = ((2 * k + 1) * t * p_cur - k * p_prev) / (k + 1)
        ik = (p_next - p_prev) / (2 * k + 1)
        out_re += cr[:, k] * ik
        out_im += ci[:, k] * ik
        p_prev, p_cur = p_cur, p_next
    return out_re, out_im


def hyp_series(nums, dens, z, tol, max_terms):
    """Partial sum of sum_k prod (a)_k / prod (b)_k * z**k / k!.

    Returns ``(total, terms_used, converged)``.  Stops once the next term
    is below ``tol * |total|`` and no larger than the previous one.
    """
    nums = [complex(a) for a in nums]
    dens = [complex(b) for b in dens]
    z = complex(z)
    term = 1.0 + 0.0j
    total = 0.0 + 0.0j
    for k in range(max_terms):
        total += term
        ratio = z / (k + 1)
        for a in nums:
            ratio *= a + k
        for b in dens:
            ratio /= b + k
        nxt = term * ratio
        if abs(nxt) <= tol * abs(total) and abs(nxt) <= abs(term):
            return total, k + 1, True
        term = nxt
    return total, max_terms, False


def incgamma_series(s, z, tol, max_terms):
    """sum_k (-z)**k / (k! (k + s)), i.e. the lower incomplete gamma over z**s."""
    s = complex(s)
    z = complex(z)
    power = 1.0 + 0.0j
    total = 0.0 + 0.0j
    for k in range(max_terms):
        total += power / (k + s)
        power *= -z / (k + 1)
        nxt = power / (k + 1 + s)
        if abs(nxt) <= tol * abs(total):
            return total, k + 1, True
    return total, max_terms, False


def compensated_cumsum(re, im):
    """Running sums of (re, im) with Neumaier compensation."""
    re = np.asarray(re, dtype=LD)
    im = np.asarray(im, dtype=LD)
    out_re = np.empty_like(re)
    out_im = np.empty_like(im)
    for src, dst in ((re, out_re), (im, out_im)):
        s = LD(0)
        c = LD(0)
        for k in range(len(src)):
            x = src[k]
            t = s + x
            if abs(s) >= abs(x):
                c += (s - t) + x
            else:
                c += (x - t) + s
            s = t
            dst[k] = s + c
    return out_re, out_im
