"""Real roots of monic cubics: Cardano's formula and the three-real-root
cosine method, with repeated-root handling and a single Newton touch-up.

Also hosts the quadratic/linear fallbacks used when a quartic input degrades
to a lower degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .polycore import DomainError, LowerDegreeProblem, _require_finite

__all__ = [
    "MonicCubic",
    "CardanoIntermediates",
    "cardano_intermediates",
    "cardano_real_root",
    "solve_cubic",
    "solve_monic_quadratic",
    "solve_lower_degree",
]

#: Relative width of the repeated-root band around a vanishing cubic
#: discriminant, measured against max(R^2, |Q|^3, 1).
DISC_BAND = 1e-12


def _cbrt(x: float) -> float:
    """Sign-preserving real cube root (cbrt(-8) == -2)."""
    return math.copysign(abs(x) ** (1.0 / 3.0), x)


@dataclass(frozen=True)
class MonicCubic:
    """Coefficients of x^3 + alpha*x^2 + beta*x + gamma."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self) -> None:
        _require_finite(alpha=self.alpha, beta=self.beta, gamma=self.gamma)

    def __call__(self, x: float) -> float:
        return ((x + self.alpha) * x + self.beta) * x + self.gamma

    def derivative(self, x: float) -> float:
        return (3.0 * x + 2.0 * self.alpha) * x + self.beta


@dataclass(frozen=True)
class CardanoIntermediates:
    """Intermediate quantities of Cardano's construction for one real root."""

    Q: float
    R: float
    s1: float
    s2: float
    x0: float


def _qr(cubic: MonicCubic) -> tuple[float, float]:
    al, be, ga = cubic.alpha, cubic.beta, cubic.gamma
    Q = (3.0 * be - al * al) / 9.0
    R = (9.0 * al * be - 27.0 * ga - 2.0 * (al * al) * al) / 54.0
    return Q, R


def cardano_intermediates(cubic: MonicCubic) -> CardanoIntermediates:
    """Cardano's Q, R, s1, s2 and the resulting real root x0.

    Requires the single-real-root regime R^2 + Q^3 >= 0; the cube roots are
    taken sign-preserving so that s1 and s2 stay real.  Whichever of
    R +/- sqrt(R^2 + Q^3) would cancel is evaluated through the rationalized
    form -Q^3 / (R -/+ sqrt(...)), keeping the s1*s2 = -Q identity tight.
    """
    Q, R = _qr(cubic)
    q3 = Q * (Q * Q)
    disc = R * R + q3
    if disc < 0.0:
        raise DomainError(
            "R^2 + Q^3 < 0: three real roots, the trigonometric branch is required"
        )
    sq = math.sqrt(disc)
    if R >= 0.0:
        big = R + sq
        s1 = _cbrt(big)
        s2 = _cbrt(-q3 / big) if big != 0.0 else 0.0
    else:
        big = R - sq
        s2 = _cbrt(big)
        s1 = _cbrt(-q3 / big)
    x0 = s1 + s2 - cubic.alpha / 3.0
    return CardanoIntermediates(Q, R, s1, s2, x0)


def cardano_real_root(cubic: MonicCubic) -> float:
    """The real root of a cubic in the one-real-root regime (R^2 + Q^3 >= 0)."""
    return cardano_intermediates(cubic).x0


def _newton_once(cubic: MonicCubic, x: float) -> float:
    # One guarded Newton step; closed forms lose 1-2 digits to cancellation.
    dp = cubic.derivative(x)
    guard = 1e-10 * (1.0 + abs(x)) ** 2 * (
        3.0 + abs(cubic.alpha) + abs(cubic.beta)
    )
    if abs(dp) <= guard:
        return x
    step = cubic(x) / dp
    xn = x - step
    if not math.isfinite(xn) or abs(cubic(xn)) > abs(cubic(x)):
        return x
    return xn


def solve_cubic(cubic: MonicCubic) -> list[tuple[float, int]]:
    """All real roots with multiplicity, sorted ascending.

    Dispatch on the sign of R^2 + Q^3: positive gives the single Cardano
    root, negative gives three distinct roots via the cosine method, and a
    band around zero gets explicit repeated-root treatment.
    """
    Q, R = _qr(cubic)
    Q3 = Q * (Q * Q)
    disc = R * R + Q3
    scale = max(R * R, abs(Q3), 1.0)
    third_shift = cubic.alpha / 3.0

    if abs(disc) <= DISC_BAND * scale:
        # Boundary: a repeated root. With R ~ 0 as well the root is triple.
        if abs(R) <= DISC_BAND * scale:
            return [(-third_shift, 3)]
        u = _cbrt(R)
        single = _newton_once(cubic, 2.0 * u - third_shift)
        double = -u - third_shift
        roots = sorted([(single, 1), (double, 2)])
        return roots

    if disc > 0.0:
        x0 = _newton_once(cubic, cardano_real_root(cubic))
        return [(x0, 1)]

    # Three distinct real roots: y = 2*sqrt(-Q)*cos((phi + 2*pi*k)/3) - alpha/3.
    sq = math.sqrt(-Q)
    arg = R / (sq * sq * sq)
    arg = max(-1.0, min(1.0, arg))
    phi = math.acos(arg)
    two_sq = 2.0 * sq
    roots = [
        _newton_once(cubic, two_sq * math.cos((phi + 2.0 * math.pi * k) / 3.0) - third_shift)
        for k in range(3)
    ]
    roots.sort()
    return [(r, 1) for r in roots]


def solve_monic_quadratic(
    b: float, c: float
) -> tuple[list[tuple[float, int]], list[tuple[float, float]]]:
    """Real roots (with multiplicity) and conjugate pairs of x^2 + b*x + c.

    Uses the cancellation-free form: the larger-magnitude root first, the
    other recovered from the product of roots.
    """
    D = b * b - 4.0 * c
    if D < 0.0:
        return [], [(-0.5 * b, 0.5 * math.sqrt(-D))]
    if D == 0.0:
        return [(-0.5 * b, 2)], []
    # t is never 0 here: that would need b == 0 and D == 0, the branch above.
    t = -0.5 * (b + math.copysign(math.sqrt(D), b))
    return sorted([(t, 1), (c / t, 1)]), []


def solve_lower_degree(
    problem: LowerDegreeProblem,
) -> tuple[list[tuple[float, int]], list[tuple[float, float]]]:
    """Roots of a degraded (degree <= 3) problem.

    Cubic complex pairs are counted, not materialized: a single-real-root
    cubic reports one real root and one pair slot is implied by the degree.
    """
    if problem.degree == 3:
        cubic = MonicCubic(*problem.coefficients)
        return solve_cubic(cubic), []
    if problem.degree == 2:
        return solve_monic_quadratic(*problem.coefficients)
    if problem.degree == 1:
        return [(-problem.coefficients[0], 1)], []
    return [], []
