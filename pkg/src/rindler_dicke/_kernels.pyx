# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels, a line-for-line port of ``_kernels_py``.

Array kernels run in C ``long double`` to match ``numpy.longdouble``;
the series kernels run in C ``double complex``.
"""

import numpy as np

cdef extern from "<math.h>" nogil:
    long double expl(long double)
    long double expm1l(long double)
    long double logl(long double)
    long double cosl(long double)
    long double sinl(long double)
    long double fabsl(long double)

cdef extern from "<complex.h>" nogil:
    double cabs(double complex)

LD = np.longdouble


def _flat(x):
    return np.ascontiguousarray(np.asarray(x, dtype=LD).ravel())


def power_osc(x, s_re, s_im, sigma, eps):
    """x**(s-1) * exp((i*sigma - eps) * x) for x > 0, as (re, im)."""
    shape = np.shape(x)
    cdef long double[::1] xv = _flat(x)
    cdef Py_ssize_t n = xv.shape[0], i
    out_re = np.empty(n, dtype=LD)
    out_im = np.empty(n, dtype=LD)
    cdef long double[::1] ore = out_re
    cdef long double[::1] oim = out_im
    cdef long double a = <long double>s_re - 1
    cdef long double b = <long double>s_im
    cdef long double sg = <long double>sigma
    cdef long double e = <long double>eps
    cdef long double lx, mod, ph
    with nogil:
        for i in range(n):
            lx = logl(xv[i])
            mod = expl(a * lx - e * xv[i])
            ph = b * lx + sg * xv[i]
            ore[i] = mod * cosl(ph)
            oim[i] = mod * sinl(ph)
    return out_re.reshape(shape), out_im.reshape(shape)


def log_reg(v, s_re, s_im, sigma, eps):
    """exp(-s*v) * (exp((i*sigma - eps) * y) - 1) with y = exp(-v), as (re, im)."""
    shape = np.shape(v)
    cdef long double[::1] vv = _flat(v)
    cdef Py_ssize_t n = vv.shape[0], i
    out_re = np.empty(n, dtype=LD)
    out_im = np.empty(n, dtype=LD)
    cdef long double[::1] ore = out_re
    cdef long double[::1] oim = out_im
    cdef long double sr = <long double>s_re
    cdef long double si = <long double>s_im
    cdef long double sg = <long double>sigma
    cdef long double e = <long double>eps
    cdef long double y, sy, em, half, e_re, e_im, mod, c, s
    with nogil:
        for i in range(n):
            y = expl(-vv[i])
            sy = sg * y
            em = expm1l(-e * y)
            half = sinl(sy / 2)
            e_re = em * cosl(sy) - 2 * half * half
            e_im = expl(-e * y) * sinl(sy)
            mod = expl(-sr * vv[i])
            c = mod * cosl(si * vv[i])
            s = -mod * sinl(si * vv[i])
            ore[i] = c * e_re - s * e_im
            oim[i] = c * e_im + s * e_re
    return out_re.reshape(shape), out_im.reshape(shape)


def legendre_antideriv(t, idx, coef_re, coef_im):
    """sum_k c[idx, k] * int_{-1}^{t} P_k for each point."""
    shape = np.shape(t)
    cdef long double[::1] tv = _flat(t)
    cdef Py_ssize_t[::1] iv = np.ascontiguousarray(np.asarray(idx, dtype=np.intp).ravel())
    cdef long double[:, ::1] cr = np.ascontiguousarray(coef_re, dtype=LD)
    cdef long double[:, ::1] ci = np.ascontiguousarray(coef_im, dtype=LD)
    cdef Py_ssize_t n = tv.shape[0], m = cr.shape[1], i, k, j
    out_re = np.empty(n, dtype=LD)
    out_im = np.empty(n, dtype=LD)
    cdef long double[::1] ore = out_re
    cdef long double[::1] oim = out_im
    cdef long double x, p_prev, p_cur, p_next, ik, acc_re, acc_im
    with nogil:
        for i in range(n):
            x = tv[i]
            j = iv[i]
            p_prev = 1
            p_cur = x
            acc_re = cr[j, 0] * (x + 1)
            acc_im = ci[j, 0] * (x + 1)
            for k in range(1, m):
                p_next = ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1)
                ik = (p_next - p_prev) / (2 * k + 1)
                acc_re += cr[j, k] * ik
                acc_im += ci[j, k] * ik
                p_prev = p_cur
                p_cur = p_next
            ore[i] = acc_re
            oim[i] = acc_im
    return out_re.reshape(shape), out_im.reshape(shape)


def hyp_series(nums, dens, z, tol, max_terms):
    """Partial sum of sum_k prod (a)_k / prod (b)_k * z**k / k!.

    Returns ``(total, terms_used, converged)``.
    """
    cdef Py_ssize_t na = len(nums), nb = len(dens), j
    cdef double complex[::1] a = np.array([complex(v) for v in nums] or [0j], dtype=np.complex128)
    cdef double complex[::1] b = np.array([complex(v) for v in dens] or [0j], dtype=np.complex128)
    cdef double complex zz = complex(z)
    cdef double complex term = 1, total = 0, ratio, nxt
    cdef double t = tol
    cdef long k, kmax = max_terms
    for k in range(kmax):
        total = total + term
        ratio = zz / (k + 1)
        for j in range(na):
            ratio = ratio * (a[j] + k)
        for j in range(nb):
            ratio = ratio / (b[j] + k)
        nxt = term * ratio
        if cabs(nxt) <= t * cabs(total) and cabs(nxt) <= cabs(term):
            return complex(total), k + 1, True
        term = nxt
    return complex(total), max_terms, False


def incgamma_series(s, z, tol, max_terms):
    """sum_k (-z)**k / (k! (k + s)), i.e. the lower incomplete gamma over z**s."""
    cdef double complex ss = complex(s)
    cdef double complex zz = complex(z)
    cdef double complex power = 1, total = 0, nxt
    cdef double t = tol
    cdef long k, kmax = max_terms
    for k in range(kmax):
        total = total + power / (k + ss)
        power = power * (-zz) / (k + 1)
        nxt = power / (k + 1 + ss)
        if cabs(nxt) <= t * cabs(total):
            return complex(total), k + 1, True
    return complex(total), max_terms, False


def compensated_cumsum(re, im):
    """Running sums of (re, im) with Neumaier compensation."""
    out_re = _cumsum(_flat(re))
    out_im = _cumsum(_flat(im))
    return out_re.reshape(np.shape(re)), out_im.reshape(np.shape(im))


cdef _cumsum(long double[::1] src):
    cdef Py_ssize_t n = src.shape[0], k
    out = np.empty(n, dtype=LD)
    cdef long double[::1] dst = out
    cdef long double s = 0, c = 0, x, t
    with nogil:
        for k in range(n):
            x = src[k]
            t = s + x
            if fabsl(s) >= fabsl(x):
                c += (s - t) + x
            else:
                c += (x - t) + s
            s = t
            dst[k] = s + c
    return out
