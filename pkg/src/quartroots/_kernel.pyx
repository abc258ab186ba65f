# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled quartic kernel: C translation of the fused pipeline in
_kernel_py.py.  Same raw result layout, same operation order."""

from libc.math cimport acos, cbrt, copysign, cos, fabs, isfinite, pow, sqrt

import numpy as np

NAME = "compiled"

cdef enum:
    BRANCH_BIQUADRATIC = 0
    BRANCH_TRIG = 1
    BRANCH_CARDANO = 2
    BRANCH_TRIPLE = 3

cdef int BRANCH_ERROR = -1


cdef struct Result:
    int branch
    int n_entries          # distinct real values stored
    int n_pairs
    int boundary
    int polish_total
    int polish_flagged
    double re[4]
    int mult[4]
    double pre[2]
    double pim[2]


cdef inline void _push_real(Result* out, double v, int m) noexcept nogil:
    out.re[out.n_entries] = v
    out.mult[out.n_entries] = m
    out.n_entries += 1


cdef inline void _push_pair(Result* out, double re, double im) noexcept nogil:
    out.pre[out.n_pairs] = re
    out.pim[out.n_pairs] = im
    out.n_pairs += 1


cdef void _biquadratic(double p, double r, double shift, double rad_band,
                       Result* out) noexcept nogil:
    cdef double D = p * p - 4.0 * r
    cdef double d_band = rad_band * (1.0 + p * p + 4.0 * fabs(r))
    cdef double u_band = rad_band * (1.0 + fabs(p) + sqrt(fabs(r)))
    cdef double mod, ure, g, h, sq, t, u, y
    cdef double us_v[2]
    cdef int us_m[2]
    cdef int n_us, i, k, mu
    out.branch = BRANCH_BIQUADRATIC
    if D < -d_band:
        mod = sqrt(sqrt(r))
        ure = -0.5 * p
        g = sqrt(0.5 * (mod * mod + ure))
        h = sqrt(0.5 * (mod * mod - ure))
        _push_pair(out, -shift - g, h)
        _push_pair(out, -shift + g, h)
        return
    if fabs(D) <= d_band:
        us_v[0] = -0.5 * p
        us_m[0] = 2
        n_us = 1
        out.boundary = 1
    else:
        sq = sqrt(D)
        t = -0.5 * (p + copysign(sq, p))
        us_v[0] = t
        us_m[0] = 1
        us_v[1] = r / t if t != 0.0 else 0.0
        us_m[1] = 1
        n_us = 2
    for i in range(n_us):
        u = us_v[i]
        mu = us_m[i]
        if fabs(u) <= u_band:
            _push_real(out, -shift + 0.0, 2 * mu)
            out.boundary = 1
        elif u > 0.0:
            y = sqrt(u)
            _push_real(out, y - shift, mu)
            _push_real(out, -y - shift, mu)
        else:
            for k in range(mu):
                _push_pair(out, -shift + 0.0, sqrt(-u))
    _sort_pairs(out)


cdef double _refine_resolvent(double p, double lin, double q2,
                              double Z) noexcept nogil:
    # Newton touch-up on 8z^3 + 8p z^2 + lin*z - q2; guarded at the
    # repeated-root boundary.
    cdef double z = 0.5 * Z
    cdef double f = ((8.0 * z + 8.0 * p) * z + lin) * z - q2
    cdef double df, scale, zn, fn
    cdef int it
    for it in range(2):
        df = (24.0 * z + 16.0 * p) * z + lin
        scale = 24.0 * z * z + 16.0 * fabs(p * z) + fabs(lin) + 1.0
        if fabs(df) <= 1e-8 * scale:
            break
        zn = z - f / df
        if not isfinite(zn):
            break
        fn = ((8.0 * zn + 8.0 * p) * zn + lin) * zn - q2
        if fabs(fn) >= fabs(f):
            break
        z = zn
        f = fn
    return 2.0 * z


cdef void _sort_entries(Result* out) noexcept nogil:
    # insertion sort on <= 4 entries
    cdef int i, j
    cdef double v
    cdef int m
    for i in range(1, out.n_entries):
        v = out.re[i]
        m = out.mult[i]
        j = i - 1
        while j >= 0 and out.re[j] > v:
            out.re[j + 1] = out.re[j]
            out.mult[j + 1] = out.mult[j]
            j -= 1
        out.re[j + 1] = v
        out.mult[j + 1] = m


cdef void _sort_pairs(Result* out) noexcept nogil:
    cdef double tr, ti
    if out.n_pairs == 2 and (out.pre[0] > out.pre[1] or
                             (out.pre[0] == out.pre[1] and out.pim[0] > out.pim[1])):
        tr = out.pre[0]; out.pre[0] = out.pre[1]; out.pre[1] = tr
        ti = out.pim[0]; out.pim[0] = out.pim[1]; out.pim[1] = ti


cdef void _merge_equal(Result* out) noexcept nogil:
    cdef int i = 0, j
    while i < out.n_entries - 1:
        if out.re[i] == out.re[i + 1]:
            out.mult[i] += out.mult[i + 1]
            for j in range(i + 1, out.n_entries - 1):
                out.re[j] = out.re[j + 1]
                out.mult[j] = out.mult[j + 1]
            out.n_entries -= 1
        else:
            i += 1


cdef void _polish(double a, double b, double c, double d, int max_iter,
                  Result* out) noexcept nogil:
    cdef double coef_scale = 1.0 + max(max(fabs(a), fabs(b)), max(fabs(c), fabs(d)))
    cdef int i, it
    cdef double x, fx, dp, guard, xn, fn, ax1
    for i in range(out.n_entries):
        if out.mult[i] != 1:
            continue
        x = out.re[i]
        fx = (((x + a) * x + b) * x + c) * x + d
        for it in range(max_iter):
            dp = ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c
            ax1 = 1.0 + fabs(x)
            guard = 1e-10 * ax1 * ax1 * ax1 * coef_scale
            if fabs(dp) <= guard:
                out.polish_flagged = 1
                break
            xn = x - fx / dp
            if not isfinite(xn):
                out.polish_flagged = 1
                break
            fn = (((xn + a) * xn + b) * xn + c) * xn + d
            out.polish_total += 1
            if fabs(fn) >= fabs(fx):
                break
            x = xn
            fx = fn
        out.re[i] = x


cdef int _solve(double a, double b, double c, double d,
                double q_band, double rad_band, double d0_band,
                int polish_iters, Result* out) noexcept nogil:
    cdef double s, s2, p, q, r
    cdef double D0, D1, disc, sq0, arg, Z, S, sgn
    cdef double A, B, sqZ, f, band, base, radicand, h
    cdef int i, d0_zero, d1_zero

    out.branch = BRANCH_ERROR
    out.n_entries = 0
    out.n_pairs = 0
    out.boundary = 0
    out.polish_total = 0
    out.polish_flagged = 0

    s = 0.25 * a
    s2 = s * s
    p = b - 6.0 * s2
    q = (c - 2.0 * (b * s)) + 8.0 * (s2 * s)
    r = ((d - c * s) + b * s2) - 3.0 * (s2 * s2)
    if not (isfinite(p) and isfinite(q) and isfinite(r)):
        return BRANCH_ERROR

    if fabs(q) <= q_band * (1.0 + pow(fabs(p), 1.5) + pow(fabs(r), 0.75)):
        _biquadratic(p, r, s, rad_band, out)
    else:
        D0 = b * b + 12.0 * d - 3.0 * a * c
        D1 = (27.0 * (a * a) * d - 9.0 * a * b * c + 2.0 * (b * b) * b
              - 72.0 * b * d + 27.0 * c * c)
        disc = D1 * D1 - 4.0 * D0 * (D0 * D0)
        if not isfinite(disc):
            return BRANCH_ERROR
        if disc < 0.0:
            sq0 = sqrt(D0)
            arg = D1 / (2.0 * D0 * sq0)
            if arg > 1.0:
                arg = 1.0
            elif arg < -1.0:
                arg = -1.0
            Z = (2.0 * sq0 * cos(acos(arg) / 3.0) - 2.0 * p) / 3.0
            out.branch = BRANCH_TRIG
        else:
            # zero bands scaled by the invariants' own term magnitudes
            # (D0 = p^2 + 12r, D1 = 8p^3 - 6p*D0 + 27q^2)
            d0_zero = fabs(D0) <= d0_band * (p * p + 12.0 * fabs(r))
            d1_zero = fabs(D1) <= d0_band * (
                8.0 * fabs(p) * p * p + 6.0 * fabs(p) * fabs(D0) + 27.0 * q * q
            )
            if d0_zero and d1_zero:
                Z = -2.0 * p / 3.0
                out.branch = BRANCH_TRIPLE
            elif d0_zero:
                Z = (cbrt(D1) - 2.0 * p) / 3.0
                out.branch = BRANCH_CARDANO
            else:
                sgn = 1.0 if D1 >= 0.0 else -1.0
                S = cbrt((D1 + sgn * sqrt(disc)) / 2.0)
                Z = (S + D0 / S - 2.0 * p) / 3.0
                out.branch = BRANCH_CARDANO
        if not isfinite(Z):
            out.branch = BRANCH_ERROR
            return BRANCH_ERROR
        # polish_iters == 0 is formula-purity mode: no corrections anywhere
        if polish_iters > 0 and out.branch != BRANCH_TRIPLE:
            Z = _refine_resolvent(p, 2.0 * p * p - 8.0 * r, q * q, Z)
        if Z <= 0.0:
            out.boundary = 0
            _biquadratic(p, r, s, rad_band, out)
        else:
            A = 2.0 * b - 0.75 * (a * a)
            B = (2.0 * c - a * b) + 0.25 * ((a * a) * a)
            sqZ = sqrt(Z)
            f = B / sqZ
            band = rad_band * (1.0 + fabs(A) + Z)
            for i in range(2):
                if i == 0:
                    base = -0.25 * a - 0.5 * sqZ
                    radicand = -A - Z + f
                else:
                    base = -0.25 * a + 0.5 * sqZ
                    radicand = -A - Z - f
                if fabs(radicand) <= band:
                    _push_real(out, base + 0.0, 2)
                    out.boundary = 1
                elif radicand > 0.0:
                    h = 0.5 * sqrt(radicand)
                    _push_real(out, base - h, 1)
                    _push_real(out, base + h, 1)
                else:
                    _push_pair(out, base + 0.0, 0.5 * sqrt(-radicand))
            _sort_pairs(out)

    if polish_iters > 0 and out.n_entries > 0:
        _sort_entries(out)
        _polish(a, b, c, d, polish_iters, out)
    _sort_entries(out)
    _merge_equal(out)
    for i in range(out.n_entries):
        if not isfinite(out.re[i]):
            out.branch = BRANCH_ERROR
            return BRANCH_ERROR
    for i in range(out.n_pairs):
        if not (isfinite(out.pre[i]) and isfinite(out.pim[i])):
            out.branch = BRANCH_ERROR
            return BRANCH_ERROR
    return out.branch


def solve_quartic_raw(double a, double b, double c, double d,
                      double q_band=1e-12, double rad_band=1e-10,
                      double d0_band=1e-13, int polish_iters=2):
    """Solve x^4 + a*x^3 + b*x^2 + c*x + d = 0; see _kernel_py for the layout."""
    cdef Result res
    cdef int branch = _solve(a, b, c, d, q_band, rad_band, d0_band,
                             polish_iters, &res)
    if branch < 0:
        return (BRANCH_ERROR, (), (), (), 0, 0, 0)
    reals = tuple(res.re[i] for i in range(res.n_entries))
    mults = tuple(res.mult[i] for i in range(res.n_entries))
    pairs = tuple((res.pre[i], res.pim[i]) for i in range(res.n_pairs))
    return (branch, reals, mults, pairs, res.boundary,
            res.polish_total, res.polish_flagged)


def solve_batch(coeffs, double q_band=1e-12, double rad_band=1e-10,
                double d0_band=1e-13, int polish_iters=2):
    """Batch form of solve_quartic_raw over an (n, 4) coefficient array."""
    cdef double[:, ::1] cf = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef Py_ssize_t n = cf.shape[0]
    branch_arr = np.zeros(n, dtype=np.int8)
    n_real_arr = np.zeros(n, dtype=np.int8)
    roots_arr = np.full((n, 4), np.nan)
    mults_arr = np.zeros((n, 4), dtype=np.int8)
    pairs_arr = np.full((n, 4), np.nan)
    cdef signed char[::1] branch = branch_arr
    cdef signed char[::1] n_real = n_real_arr
    cdef double[:, ::1] roots = roots_arr
    cdef signed char[:, ::1] mults = mults_arr
    cdef double[:, ::1] pairs = pairs_arr
    cdef Result res
    cdef Py_ssize_t i
    cdef int j, total
    with nogil:
        for i in range(n):
            branch[i] = <signed char> _solve(cf[i, 0], cf[i, 1], cf[i, 2],
                                             cf[i, 3], q_band, rad_band,
                                             d0_band, polish_iters, &res)
            if branch[i] < 0:
                continue
            total = 0
            for j in range(res.n_entries):
                roots[i, j] = res.re[j]
                mults[i, j] = <signed char> res.mult[j]
                total += res.mult[j]
            n_real[i] = <signed char> total
            for j in range(res.n_pairs):
                pairs[i, 2 * j] = res.pre[j]
                pairs[i, 2 * j + 1] = res.pim[j]
    return branch_arr, n_real_arr, roots_arr, mults_arr, pairs_arr
