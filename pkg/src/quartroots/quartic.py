"""Closed-form real-quartic solver.

The pipeline: eliminate the cubic term (depression), compute the polynomial
invariants Delta0/Delta1, pick the resolvent-cubic root through the branch
that is numerically cheapest and safest (trigonometric when the resolvent has
three real roots, Cardano otherwise), then split the quartic into two
quadratics and classify each radicand.  A biquadratic shortcut handles the
vanishing-odd-term case, and a couple of Newton iterations recover the digits
the closed forms lose to cancellation.

The staged operations in this module are the readable reference path; batch
work goes through the fused kernel selected in :mod:`quartroots.backend`,
which implements the identical arithmetic.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from . import backend
from .polycore import (
    Classification,
    DomainError,
    MonicQuartic,
    RootSet,
    make_root_set,
    pair_residual,
    residual,
)

__all__ = [
    "DepressedQuartic",
    "ShiftedCoeffs",
    "ResolventBranch",
    "ResolventData",
    "SolveOptions",
    "SolveReport",
    "depress",
    "shifted_coeffs",
    "delta_invariants",
    "resolvent_z",
    "assemble_roots",
    "solve_biquadratic",
    "solve_quartic",
    "explicit_roots_monolithic",
    "polish",
]


@dataclass(frozen=True)
class DepressedQuartic:
    """y^4 + p*y^2 + q*y + r obtained from x = y - shift, shift = a/4."""

    p: float
    q: float
    r: float
    shift: float


@dataclass(frozen=True)
class ShiftedCoeffs:
    """The doubled depressed coefficients A = 2p, B = 2q expressed directly
    in terms of the monic quartic coefficients."""

    A: float
    B: float


class ResolventBranch(enum.Enum):
    TRIG = "trig"
    CARDANO = "cardano"
    TRIPLE_ROOT = "triple_root"
    BIQUADRATIC = "biquadratic"


@dataclass(frozen=True)
class ResolventData:
    """Largest resolvent-cubic root, doubled (Z = 2*z0), with the invariants
    and branch bookkeeping that produced it."""

    Delta0: float
    Delta1: float
    cubic_disc: float
    branch: ResolventBranch
    Z: float
    phi: float | None = None
    S: float | None = None


@dataclass(frozen=True)
class SolveOptions:
    """Tolerance knobs for the quartic pipeline.

    polish_iters=0 disables Newton polishing (useful when testing the raw
    closed forms).
    """

    polish_iters: int = 2
    q_band: float = 1e-12
    radicand_band: float = 1e-10
    d0_band: float = 1e-13

    def __post_init__(self) -> None:
        if self.polish_iters < 0:
            raise DomainError("polish_iters must be >= 0")
        for name in ("q_band", "radicand_band", "d0_band"):
            if getattr(self, name) < 0.0:
                raise DomainError(f"{name} must be >= 0")


@dataclass(frozen=True)
class SolveReport:
    """Per-instance record of a quartic solve."""

    monic: MonicQuartic
    roots: RootSet
    branch: ResolventBranch
    residuals: tuple[float, ...]
    pair_residuals: tuple[float, ...]
    max_residual: float
    polish_iterations: int
    polish_flagged: bool
    boundary: bool
    oracle_agreement: bool | None = field(default=None)

    @property
    def classification(self) -> Classification:
        return self.roots.classification


def depress(m: MonicQuartic) -> DepressedQuartic:
    """Substitute x = y - a/4 to remove the cubic term.

    p = b - 6*(a/4)^2,  q = c - 2b*(a/4) + 8*(a/4)^3,
    r = d - c*(a/4) + b*(a/4)^2 - 3*(a/4)^4.
    """
    a, b, c, d = m.as_tuple()
    s = 0.25 * a
    s2 = s * s
    p = b - 6.0 * s2
    q = (c - 2.0 * (b * s)) + 8.0 * (s2 * s)
    r = ((d - c * s) + b * s2) - 3.0 * (s2 * s2)
    return DepressedQuartic(p, q, r, s)


def shifted_coeffs(m: MonicQuartic) -> ShiftedCoeffs:
    """A = 2b - 3a^2/4 and B = 2c - ab + a^3/4.

    The operation order mirrors :func:`depress` exactly so that A == 2p and
    B == 2q bit for bit.
    """
    a, b, c, _ = m.as_tuple()
    A = 2.0 * b - 0.75 * (a * a)
    B = (2.0 * c - a * b) + 0.25 * ((a * a) * a)
    return ShiftedCoeffs(A, B)


def delta_invariants(m: MonicQuartic) -> tuple[float, float]:
    """The quartic invariants Delta0 = b^2 + 12d - 3ac and
    Delta1 = 27a^2*d - 9abc + 2b^3 - 72bd + 27c^2."""
    a, b, c, d = m.as_tuple()
    D0 = b * b + 12.0 * d - 3.0 * a * c
    D1 = (
        27.0 * (a * a) * d
        - 9.0 * a * b * c
        + 2.0 * (b * b) * b
        - 72.0 * b * d
        + 27.0 * c * c
    )
    return D0, D1


def resolvent_z(
    p: float,
    Delta0: float,
    Delta1: float,
    d0_band: float = 1e-13,
    *,
    q: float | None = None,
    r: float | None = None,
    refine: bool = True,
) -> ResolventData:
    """Doubled largest root Z = 2*z0 of the resolvent cubic
    8z^3 + 8p*z^2 + (2p^2 - 8r)z - q^2 = 0, via Delta0/Delta1.

    Delta1^2 - 4*Delta0^3 < 0 means three real resolvent roots: take the
    largest trigonometrically (cos(phi/3) with phi/3 in [0, pi/3]), which is
    cheaper than a cube root and keeps B/sqrt(Z) small.  Otherwise use the
    Cardano form with sign(Delta1) choosing the non-cancelling cube root;
    sign(0) counts as +1.  When both invariants sit in the zero band the
    resolvent has a triple root and Z = -2p/3.

    Unless ``refine`` is disabled (formula-purity testing), two guarded
    Newton corrections on the resolvent cubic follow the closed form; they
    are no-ops away from trouble but absorb the cancellation the
    S + Delta0/S form suffers when the root is nearly zero (tiny odd term).
    Passing the depressed coefficients ``q`` and ``r`` makes the correction
    use them directly; otherwise they are recovered from the invariants.
    """
    for name, v in (("p", p), ("Delta0", Delta0), ("Delta1", Delta1)):
        if not math.isfinite(v):
            raise DomainError(f"non-finite {name}={v!r}")
    disc = Delta1 * Delta1 - 4.0 * Delta0 * (Delta0 * Delta0)
    if not math.isfinite(disc):
        raise DomainError("non-finite resolvent discriminant (coefficients too large)")
    phi = None
    S = None
    if disc < 0.0:
        # Forced: disc < 0 requires 4*Delta0^3 > Delta1^2 >= 0.
        assert Delta0 > 0.0
        sq0 = math.sqrt(Delta0)
        arg = Delta1 / (2.0 * Delta0 * sq0)
        arg = max(-1.0, min(1.0, arg))
        phi = math.acos(arg)
        Z = (2.0 * sq0 * math.cos(phi / 3.0) - 2.0 * p) / 3.0
        branch = ResolventBranch.TRIG
    else:
        # "Zero" means below the noise of the invariant's own defining terms
        # (Delta0 = p^2 + 12r, Delta1 = 8p^3 - 6p*Delta0 + 27q^2); absolute
        # floors would misroute uniformly tiny coefficients to a spurious
        # triple root.
        p2 = p * p
        ts0 = p2 + (12.0 * abs(r) if r is not None else abs(Delta0 - p2))
        cube = 8.0 * p2 * abs(p)
        ts1 = cube + 6.0 * abs(p) * abs(Delta0) + (
            27.0 * q * q if q is not None else abs(Delta1 - 8.0 * p2 * p + 6.0 * p * Delta0)
        )
        d0_zero = abs(Delta0) <= d0_band * ts0
        d1_zero = abs(Delta1) <= d0_band * ts1
        if d0_zero and d1_zero:
            Z = -2.0 * p / 3.0
            branch = ResolventBranch.TRIPLE_ROOT
        elif d0_zero:
            # Exact limit of the Cardano form as Delta0 -> 0.
            S = _cbrt(Delta1)
            Z = (S - 2.0 * p) / 3.0
            branch = ResolventBranch.CARDANO
        else:
            sgn = 1.0 if Delta1 >= 0.0 else -1.0
            S = _cbrt((Delta1 + sgn * math.sqrt(disc)) / 2.0)
            Z = (S + Delta0 / S - 2.0 * p) / 3.0
            branch = ResolventBranch.CARDANO
    if not math.isfinite(Z):
        raise DomainError("non-finite resolvent root")
    if refine and branch is not ResolventBranch.TRIPLE_ROOT:
        if q is not None and r is not None:
            lin = 2.0 * p * p - 8.0 * r
            q2 = q * q
        else:
            # Recovered from Delta0 = p^2 + 12r and Delta1 = 8p^3 - 6p*Delta0 + 27q^2.
            lin = (8.0 * p * p - 2.0 * Delta0) / 3.0
            q2 = (Delta1 - 8.0 * (p * p) * p + 6.0 * p * Delta0) / 27.0
        Z = _refine_resolvent(p, lin, q2, Z)
    return ResolventData(Delta0, Delta1, disc, branch, Z, phi=phi, S=S)


def _refine_resolvent(p: float, lin: float, q2: float, Z: float) -> float:
    # Newton on 8z^3 + 8p z^2 + lin*z - q^2, guarded against the
    # repeated-root boundary where the derivative collapses.
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


def _cbrt(x: float) -> float:
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


def assemble_roots(
    a: float, A: float, B: float, Z: float, tol_real: float = 1e-10
) -> RootSet:
    """Split the quartic into the two quadratics determined by Z and classify
    each inner radicand.

    The quadratic carrying -sqrt(Z) uses the radicand -A - Z + B/sqrt(Z), the
    one carrying +sqrt(Z) uses -A - Z - B/sqrt(Z); their real parts are
    -a/4 -/+ sqrt(Z)/2.  A radicand above the zero band gives two real roots,
    inside the band a double root, below it a conjugate pair with
    im = sqrt(-radicand)/2.
    """
    if Z <= 0.0:
        raise DomainError("assemble_roots requires Z > 0 (biquadratic path owns Z ~ 0)")
    sqZ = math.sqrt(Z)
    f = B / sqZ
    band = tol_real * (1.0 + abs(A) + Z)
    reals: list[tuple[float, int]] = []
    pairs: list[tuple[float, float]] = []
    for base, radicand in (
        (-0.25 * a - 0.5 * sqZ, -A - Z + f),
        (-0.25 * a + 0.5 * sqZ, -A - Z - f),
    ):
        if abs(radicand) <= band:
            reals.append((base + 0.0, 2))
        elif radicand > 0.0:
            h = 0.5 * math.sqrt(radicand)
            reals.append((base - h, 1))
            reals.append((base + h, 1))
        else:
            pairs.append((base + 0.0, 0.5 * math.sqrt(-radicand)))
    return make_root_set(_merge_equal(reals), pairs)


def solve_biquadratic(
    p: float, r: float, shift: float, tol: float = 1e-10
) -> RootSet:
    """Roots of y^4 + p*y^2 + r shifted back by x = y - shift.

    Solved as a quadratic in u = y^2 with the cancellation-free root pair;
    u > 0 contributes +/-sqrt(u) - shift, u in the zero band a double root at
    -shift, u < 0 a conjugate pair.  A negative quadratic discriminant means
    both u are complex: two conjugate pairs, not an error.
    """
    for name, v in (("p", p), ("r", r), ("shift", shift)):
        if not math.isfinite(v):
            raise DomainError(f"non-finite {name}={v!r}")
    D = p * p - 4.0 * r
    d_band = tol * (1.0 + p * p + 4.0 * abs(r))
    u_band = tol * (1.0 + abs(p) + math.sqrt(abs(r)))
    reals: list[tuple[float, int]] = []
    pairs: list[tuple[float, float]] = []
    if D < -d_band:
        # u = (-p +/- i*sqrt(-D))/2; |u| = sqrt(r).  Square roots of the
        # conjugate pair give the four roots (+/-g +/- h*i).
        mod = math.sqrt(math.sqrt(r))  # sqrt(|u|); r > p^2/4 >= 0 here
        ure = -0.5 * p
        g = math.sqrt(0.5 * (mod * mod + ure))
        h = math.sqrt(0.5 * (mod * mod - ure))
        pairs = [(-shift - g, h), (-shift + g, h)]
        return make_root_set(reals, sorted(pairs))
    if abs(D) <= d_band:
        us = [(-0.5 * p, 2)]
    else:
        sq = math.sqrt(D)
        t = -0.5 * (p + math.copysign(sq, p))
        us = [(t, 1), (r / t if t != 0.0 else 0.0, 1)]
    for u, mu in us:
        if abs(u) <= u_band:
            reals.append((-shift + 0.0, 2 * mu))
        elif u > 0.0:
            y = math.sqrt(u)
            reals.append((y - shift, mu))
            reals.append((-y - shift, mu))
        else:
            for _ in range(mu):
                pairs.append((-shift + 0.0, math.sqrt(-u)))
    return make_root_set(_merge_equal(reals), sorted(pairs))


def _merge_equal(reals: list[tuple[float, int]]) -> list[tuple[float, int]]:
    # Coincident entries (e.g. a simple root landing exactly on a flagged
    # double) are merged; only bitwise-equal values collapse.
    merged: list[tuple[float, int]] = []
    for v, m in sorted(reals):
        if merged and merged[-1][0] == v:
            merged[-1] = (v, merged[-1][1] + m)
        else:
            merged.append((v, m))
    return merged


def polish(m: MonicQuartic, roots: RootSet, max_iter: int = 2) -> RootSet:
    """Newton-polish the simple real roots of ``roots`` against ``m``.

    Iterates x <- x - P(x)/P'(x) until the residual stops decreasing or
    ``max_iter`` is reached; roots with |P'(x)| under the multiple-root guard
    are left untouched.  Classification is preserved.
    """
    if max_iter < 0:
        raise DomainError("max_iter must be >= 0")
    polished, _, _ = _polish_reals(m, list(roots.real_roots), max_iter)
    return RootSet(
        roots.classification,
        tuple(_merge_equal(polished)),
        roots.complex_pairs,
        roots.degenerate_kind,
    )


def _polish_reals(
    m: MonicQuartic, reals: list[tuple[float, int]], max_iter: int
) -> tuple[list[tuple[float, int]], int, bool]:
    a, b, c, d = m.as_tuple()
    coef_scale = 1.0 + max(abs(a), abs(b), abs(c), abs(d))
    total = 0
    flagged = False
    out: list[tuple[float, int]] = []
    for x, mult in reals:
        if mult != 1:
            out.append((x, mult))
            continue
        fx = (((x + a) * x + b) * x + c) * x + d
        for _ in range(max_iter):
            dp = ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c
            guard = 1e-10 * (1.0 + abs(x)) ** 3 * coef_scale
            if abs(dp) <= guard:
                flagged = True
                break
            xn = x - fx / dp
            if not math.isfinite(xn):
                flagged = True
                break
            fn = (((xn + a) * xn + b) * xn + c) * xn + d
            total += 1
            if abs(fn) >= abs(fx):
                break
            x, fx = xn, fn
        out.append((x, mult))
    out.sort()
    return out, total, flagged


def solve_quartic(m: MonicQuartic, opts: SolveOptions | None = None) -> SolveReport:
    """Solve a monic quartic: depress, route |q| ~ 0 to the biquadratic path,
    otherwise resolvent + quadratic split, then polish.

    Never returns non-finite roots; coefficient magnitudes that overflow the
    invariants raise DomainError instead.
    """
    if opts is None:
        opts = SolveOptions()
    raw = backend.active().solve_quartic_raw(
        m.a,
        m.b,
        m.c,
        m.d,
        opts.q_band,
        opts.radicand_band,
        opts.d0_band,
        opts.polish_iters,
    )
    branch_code, reals, mults, pairs, boundary, polish_total, polish_flagged = raw
    if branch_code < 0:
        raise DomainError("non-finite intermediates (coefficients too large)")
    branch = _BRANCHES[branch_code]
    root_set = make_root_set(
        list(zip(reals, mults)), [tuple(pr) for pr in pairs]
    )
    res = tuple(residual(m, v) for v, _ in root_set.real_roots)
    pres = tuple(pair_residual(m, re, im) for re, im in root_set.complex_pairs)
    max_res = max(res + pres) if (res or pres) else 0.0
    return SolveReport(
        monic=m,
        roots=root_set,
        branch=branch,
        residuals=res,
        pair_residuals=pres,
        max_residual=max_res,
        polish_iterations=polish_total,
        polish_flagged=bool(polish_flagged),
        boundary=bool(boundary),
    )


_BRANCHES = {
    0: ResolventBranch.BIQUADRATIC,
    1: ResolventBranch.TRIG,
    2: ResolventBranch.CARDANO,
    3: ResolventBranch.TRIPLE_ROOT,
}


def explicit_roots_monolithic(m: MonicQuartic) -> tuple[float, float, float, float]:
    """The four roots evaluated from the fully explicit single-expression
    forms, without reusing any staged intermediate.

    Valid only in the all-real regime (positive Delta0, negative resolvent
    discriminant, non-vanishing odd depressed term); anything outside a
    radical or arccos domain raises DomainError.  Exists purely as a
    cross-check that the monolithic expressions match the staged pipeline.
    """
    a, b, c, d = m.as_tuple()
    D0 = -3.0 * a * c + b * b + 12.0 * d
    if D0 <= 0.0:
        raise DomainError("monolithic form needs -3ac + b^2 + 12d > 0")
    sq_d0 = math.sqrt(D0)
    num = (
        27.0 * (a * a) * d
        - 9.0 * a * b * c
        + 2.0 * (b * b) * b
        - 72.0 * b * d
        + 27.0 * c * c
    )
    den = (-6.0 * a * c + 2.0 * b * b + 24.0 * d) * sq_d0
    arg = num / den
    if not -1.0 <= arg <= 1.0:
        raise DomainError("arccos argument outside [-1, 1]")
    cos_term = math.cos(math.acos(arg) / 3.0)
    outer = a * a / 4.0 - 2.0 * b / 3.0 + (2.0 / 3.0) * sq_d0 * cos_term
    if outer <= 0.0:
        raise DomainError("outer radicand not positive")
    sq_outer = math.sqrt(outer)
    inner_base = a * a / 2.0 - 4.0 * b / 3.0 - (2.0 / 3.0) * sq_d0 * cos_term
    frac = ((a * a) * a / 4.0 - a * b + 2.0 * c) / sq_outer
    plus = inner_base + frac
    minus = inner_base - frac
    if plus < 0.0 or minus < 0.0:
        raise DomainError("inner radicand negative")
    quarter_a = a / 4.0
    lam1 = -quarter_a - 0.5 * sq_outer - 0.5 * math.sqrt(plus)
    lam2 = -quarter_a - 0.5 * sq_outer + 0.5 * math.sqrt(plus)
    lam3 = -quarter_a + 0.5 * sq_outer - 0.5 * math.sqrt(minus)
    lam4 = -quarter_a + 0.5 * sq_outer + 0.5 * math.sqrt(minus)
    return (lam1, lam2, lam3, lam4)
