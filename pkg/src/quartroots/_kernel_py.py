"""Pure-Python quartic kernel: the fused hot path behind solve_quartic.

This is the fallback used when the compiled extension is unavailable.  The
arithmetic (operation order included) mirrors the staged functions in
:mod:`quartroots.quartic` and the Cython kernel, so all three agree to
floating-point noise.

Raw result layout (shared with the compiled kernel):

    (branch, reals, mults, pairs, boundary, polish_total, polish_flagged)

with branch 0=biquadratic, 1=trig, 2=cardano, 3=triple-root resolvent and
-1 for non-finite intermediates; ``reals`` sorted ascending, ``pairs`` as
(re, im) tuples with im > 0.
"""

from __future__ import annotations

import math

NAME = "python"

BRANCH_ERROR = -1
BRANCH_BIQUADRATIC = 0
BRANCH_TRIG = 1
BRANCH_CARDANO = 2
BRANCH_TRIPLE = 3


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def solve_quartic_raw(
    a: float,
    b: float,
    c: float,
    d: float,
    q_band: float = 1e-12,
    rad_band: float = 1e-10,
    d0_band: float = 1e-13,
    polish_iters: int = 2,
):
    """Solve x^4 + a*x^3 + b*x^2 + c*x + d = 0. See module docstring."""
    # Depression: x = y - a/4.
    s = 0.25 * a
    s2 = s * s
    p = b - 6.0 * s2
    q = (c - 2.0 * (b * s)) + 8.0 * (s2 * s)
    r = ((d - c * s) + b * s2) - 3.0 * (s2 * s2)
    if not (math.isfinite(p) and math.isfinite(q) and math.isfinite(r)):
        return (BRANCH_ERROR, (), (), (), 0, 0, 0)

    if abs(q) <= q_band * (1.0 + abs(p) ** 1.5 + abs(r) ** 0.75):
        reals, pairs, boundary = _biquadratic(p, r, s, rad_band)
        branch = BRANCH_BIQUADRATIC
    else:
        D0 = b * b + 12.0 * d - 3.0 * a * c
        D1 = (
            27.0 * (a * a) * d
            - 9.0 * a * b * c
            + 2.0 * (b * b) * b
            - 72.0 * b * d
            + 27.0 * c * c
        )
        disc = D1 * D1 - 4.0 * D0 * (D0 * D0)
        if not math.isfinite(disc):
            return (BRANCH_ERROR, (), (), (), 0, 0, 0)
        if disc < 0.0:
            # Three real resolvent roots; the largest via cos(phi/3).
            sq0 = math.sqrt(D0)
            arg = D1 / (2.0 * D0 * sq0)
            arg = max(-1.0, min(1.0, arg))
            Z = (2.0 * sq0 * math.cos(math.acos(arg) / 3.0) - 2.0 * p) / 3.0
            branch = BRANCH_TRIG
        else:
            # zero bands scaled by the invariants' own term magnitudes
            # (D0 = p^2 + 12r, D1 = 8p^3 - 6p*D0 + 27q^2)
            d0_zero = abs(D0) <= d0_band * (p * p + 12.0 * abs(r))
            d1_zero = abs(D1) <= d0_band * (
                8.0 * abs(p) ** 3 + 6.0 * abs(p) * abs(D0) + 27.0 * q * q
            )
            if d0_zero and d1_zero:
                Z = -2.0 * p / 3.0
                branch = BRANCH_TRIPLE
            elif d0_zero:
                Z = (_cbrt(D1) - 2.0 * p) / 3.0
                branch = BRANCH_CARDANO
            else:
                sgn = 1.0 if D1 >= 0.0 else -1.0
                S = _cbrt((D1 + sgn * math.sqrt(disc)) / 2.0)
                Z = (S + D0 / S - 2.0 * p) / 3.0
                branch = BRANCH_CARDANO
        if not math.isfinite(Z):
            return (BRANCH_ERROR, (), (), (), 0, 0, 0)
        # polish_iters == 0 is formula-purity mode: no corrections anywhere
        if polish_iters > 0 and branch != BRANCH_TRIPLE:
            Z = _refine_resolvent(p, 2.0 * p * p - 8.0 * r, q * q, Z)
        if Z <= 0.0:
            # Underflowed resolvent root: q is effectively zero.
            reals, pairs, boundary = _biquadratic(p, r, s, rad_band)
            branch = BRANCH_BIQUADRATIC
        else:
            A = 2.0 * b - 0.75 * (a * a)
            B = (2.0 * c - a * b) + 0.25 * ((a * a) * a)
            sqZ = math.sqrt(Z)
            f = B / sqZ
            band = rad_band * (1.0 + abs(A) + Z)
            reals = []
            pairs = []
            boundary = 0
            for base, radicand in (
                (-0.25 * a - 0.5 * sqZ, -A - Z + f),
                (-0.25 * a + 0.5 * sqZ, -A - Z - f),
            ):
                if abs(radicand) <= band:
                    reals.append((base + 0.0, 2))
                    boundary = 1
                elif radicand > 0.0:
                    h = 0.5 * math.sqrt(radicand)
                    reals.append((base - h, 1))
                    reals.append((base + h, 1))
                else:
                    pairs.append((base + 0.0, 0.5 * math.sqrt(-radicand)))

    polish_total = 0
    polish_flagged = 0
    if polish_iters > 0 and reals:
        reals, polish_total, polish_flagged = _polish(
            a, b, c, d, reals, polish_iters
        )
    reals = _merge_sorted(reals)
    if any(not math.isfinite(v) for v, _ in reals) or any(
        not (math.isfinite(re) and math.isfinite(im)) for re, im in pairs
    ):
        return (BRANCH_ERROR, (), (), (), 0, 0, 0)
    return (
        branch,
        tuple(v for v, _ in reals),
        tuple(m for _, m in reals),
        tuple(pairs),
        boundary,
        polish_total,
        polish_flagged,
    )


def _refine_resolvent(p, lin, q2, Z):
    # Newton touch-up on 8z^3 + 8p z^2 + lin*z - q2; guarded at the
    # repeated-root boundary.
    z = 0.5 * Z
    f = ((8.0 * z + 8.0 * p) * z + lin) * z - q2
    for _ in range(2):
        df = (24.0 * z + 16.0 * p) * z + lin
        scale = 24.0 * z * z + 16.0 * abs(p * z) + abs(lin) + 1.0
        if abs(df) <= 1e-8 * scale:
            break
        zn = z - f / df
        if not math.isfinite(zn):
            break
        fn = ((8.0 * zn + 8.0 * p) * zn + lin) * zn - q2
        if abs(fn) >= abs(f):
            break
        z, f = zn, fn
    return 2.0 * z


def _biquadratic(p, r, shift, rad_band):
    D = p * p - 4.0 * r
    d_band = rad_band * (1.0 + p * p + 4.0 * abs(r))
    u_band = rad_band * (1.0 + abs(p) + math.sqrt(abs(r)))
    reals = []
    pairs = []
    boundary = 0
    if D < -d_band:
        mod = math.sqrt(math.sqrt(r))
        ure = -0.5 * p
        g = math.sqrt(0.5 * (mod * mod + ure))
        h = math.sqrt(0.5 * (mod * mod - ure))
        lo, hi = sorted((-shift - g, -shift + g))
        return [], [(lo, h), (hi, h)], 0
    if abs(D) <= d_band:
        us = ((-0.5 * p, 2),)
        boundary = 1
    else:
        sq = math.sqrt(D)
        t = -0.5 * (p + math.copysign(sq, p))
        us = ((t, 1), (r / t if t != 0.0 else 0.0, 1))
    for u, mu in us:
        if abs(u) <= u_band:
            reals.append((-shift + 0.0, 2 * mu))
            boundary = 1
        elif u > 0.0:
            y = math.sqrt(u)
            reals.append((y - shift, mu))
            reals.append((-y - shift, mu))
        else:
            for _ in range(mu):
                pairs.append((-shift + 0.0, math.sqrt(-u)))
    return reals, sorted(pairs), boundary


def _polish(a, b, c, d, reals, max_iter):
    coef_scale = 1.0 + max(abs(a), abs(b), abs(c), abs(d))
    total = 0
    flagged = 0
    out = []
    for x, mult in reals:
        if mult != 1:
            out.append((x, mult))
            continue
        fx = (((x + a) * x + b) * x + c) * x + d
        for _ in range(max_iter):
            dp = ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c
            guard = 1e-10 * (1.0 + abs(x)) ** 3 * coef_scale
            if abs(dp) <= guard:
                flagged = 1
                break
            xn = x - fx / dp
            if not math.isfinite(xn):
                flagged = 1
                break
            fn = (((xn + a) * xn + b) * xn + c) * xn + d
            total += 1
            if abs(fn) >= abs(fx):
                break
            x, fx = xn, fn
        out.append((x, mult))
    return out, total, flagged


def _merge_sorted(reals):
    merged = []
    for v, m in sorted(reals):
        if merged and merged[-1][0] == v:
            merged[-1] = (v, merged[-1][1] + m)
        else:
            merged.append((v, m))
    return merged


def solve_batch(coeffs, q_band=1e-12, rad_band=1e-10, d0_band=1e-13, polish_iters=2):
    """Solve a (n, 4) array of monic coefficient rows.

    Returns (branch, n_real, roots, mults, pairs) numpy arrays; ``roots`` is
    (n, 4) NaN-padded ascending, ``mults`` the matching multiplicities,
    ``pairs`` (n, 4) as re1, im1, re2, im2 NaN-padded.
    """
    import numpy as np

    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    n = coeffs.shape[0]
    branch = np.zeros(n, dtype=np.int8)
    n_real = np.zeros(n, dtype=np.int8)
    roots = np.full((n, 4), np.nan)
    mults = np.zeros((n, 4), dtype=np.int8)
    pairs = np.full((n, 4), np.nan)
    for i in range(n):
        a, b, c, d = coeffs[i]
        br, re, mu, pr, _, _, _ = solve_quartic_raw(
            a, b, c, d, q_band, rad_band, d0_band, polish_iters
        )
        branch[i] = br
        if br < 0:
            continue
        n_real[i] = sum(mu)
        for j, (v, m) in enumerate(zip(re, mu)):
            roots[i, j] = v
            mults[i, j] = m
        for j, (pre, pim) in enumerate(pr):
            pairs[i, 2 * j] = pre
            pairs[i, 2 * j + 1] = pim
    return branch, n_real, roots, mults, pairs
