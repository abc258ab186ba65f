"""Independent real-root oracle for monic quartics.

Pure bracketing-and-bisection: real roots of P' partition the line into
monotone pieces (P' roots come from P'' the same way, and P'' is a quadratic
solved in closed form), then every sign-changing piece is bisected.  Nothing
here touches the closed-form pipeline, so agreement between the two is a
meaningful check.  Bisection is slower than Newton but unconditionally
convergent, which is the point of an oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .polycore import DomainError, MonicQuartic

__all__ = ["Bracket", "oracle_real_roots", "oracle_resolvent_root"]

DEFAULT_TOL = 1e-12

#: |P(x)| below this fraction of the local term-magnitude sum marks x as a
#: repeated root (critical points only).
MULT_BAND = 1e-11


@dataclass(frozen=True)
class Bracket:
    """A sign-changing interval: signs are -1/0/+1 of the function at lo/hi."""

    lo: float
    hi: float
    sign_lo: int
    sign_hi: int

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise DomainError("bracket needs lo < hi")
        if self.sign_lo == self.sign_hi and self.sign_lo != 0:
            raise DomainError("bracket endpoints must differ in sign")


def _bisect(f, bracket: Bracket, tol: float) -> float:
    lo, hi = bracket.lo, bracket.hi
    neg = bracket.sign_lo < 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == neg:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _widened(lo: float, hi: float, flo: float, fhi: float) -> Bracket:
    # One ULP of slack at each end avoids sign ties at computed partition
    # points.
    return Bracket(
        math.nextafter(lo, -math.inf),
        math.nextafter(hi, math.inf),
        -1 if flo < 0.0 else (1 if flo > 0.0 else 0),
        -1 if fhi < 0.0 else (1 if fhi > 0.0 else 0),
    )


def _quad_real_roots(c2: float, c1: float, c0: float) -> list[float]:
    # Stable closed form; base case of the derivative chain.
    D = c1 * c1 - 4.0 * c2 * c0
    if D < 0.0:
        return []
    if D == 0.0:
        return [-0.5 * c1 / c2]
    t = -0.5 * (c1 + math.copysign(math.sqrt(D), c1))
    return sorted((t / c2, c0 / t if t != 0.0 else 0.0))


def oracle_real_roots(
    m: MonicQuartic, tol: float = DEFAULT_TOL
) -> list[tuple[float, int]]:
    """Sorted real roots of ``m`` with multiplicities, found by recursive
    derivative bracketing plus bisection to width ``tol``.

    Repeated roots are detected as critical points where P (and, for higher
    multiplicity, further derivatives) vanish within the noise band;
    multiplicity is assigned by coincidence of the root with the derivative
    chain's roots.
    """
    if tol <= 0.0:
        raise DomainError("tol must be > 0")
    a, b, c, d = m.as_tuple()
    coef_max = max(abs(a), abs(b), abs(c), abs(d))
    bound = 1.0 + coef_max

    def P(x: float) -> float:
        return (((x + a) * x + b) * x + c) * x + d

    def dP(x: float) -> float:
        return ((4.0 * x + 3.0 * a) * x + 2.0 * b) * x + c

    def term_sum(x: float) -> float:
        ax = abs(x)
        return (((ax + abs(a)) * ax + abs(b)) * ax + abs(c)) * ax + abs(d) + 1.0

    def dterm_sum(x: float) -> float:
        ax = abs(x)
        return ((4.0 * ax + 3.0 * abs(a)) * ax + 2.0 * abs(b)) * ax + abs(c) + 1.0

    # -- critical points: real roots of P' (including its repeated root, which
    #    produces no sign change and is caught at the P'' root instead).
    crit2 = [x for x in _quad_real_roots(12.0, 6.0 * a, 2.0 * b) if -bound < x < bound]
    pts = [-bound] + crit2 + [bound]
    vals = [dP(x) for x in pts]
    near0 = [
        0 < i < len(pts) - 1 and abs(v) <= MULT_BAND * dterm_sum(x)
        for i, (x, v) in enumerate(zip(pts, vals))
    ]
    crit1 = [x for x, z in zip(pts, near0) if z]
    for i in range(len(pts) - 1):
        if near0[i] or near0[i + 1]:
            continue
        if (vals[i] < 0.0) != (vals[i + 1] < 0.0):
            crit1.append(
                _bisect(dP, _widened(pts[i], pts[i + 1], vals[i], vals[i + 1]), tol)
            )
    crit1.sort()

    # -- roots of P: odd-multiplicity roots change sign between consecutive
    #    partition points; even-multiplicity roots are critical points where P
    #    itself vanishes.
    pts = [-bound] + [x for x in crit1 if -bound < x < bound] + [bound]
    vals = [P(x) for x in pts]
    near0 = [
        0 < i < len(pts) - 1 and abs(v) <= MULT_BAND * term_sum(x)
        for i, (x, v) in enumerate(zip(pts, vals))
    ]
    simple: list[float] = []
    for i in range(len(pts) - 1):
        if near0[i] or near0[i + 1]:
            continue
        if (vals[i] < 0.0) != (vals[i + 1] < 0.0):
            simple.append(
                _bisect(P, _widened(pts[i], pts[i + 1], vals[i], vals[i + 1]), tol)
            )

    def coincides(x: float, points: list[float]) -> bool:
        w = 8.0 * tol * (1.0 + abs(x))
        return any(abs(x - t) <= w for t in points)

    third = -0.25 * a  # root of P'''
    found: list[tuple[float, int]] = []
    for x in simple:
        mult = 3 if (coincides(x, crit1) and coincides(x, crit2)) else 1
        found.append((x, mult))
    for i, (x, z) in enumerate(zip(pts, near0)):
        if not z:
            continue
        sign_change = (vals[i - 1] < 0.0) != (vals[i + 1] < 0.0)
        if sign_change:
            mult = 3
        else:
            mult = 4 if (coincides(x, crit2) and abs(x - third) <= 8.0 * tol * (1.0 + abs(x))) else 2
        found.append((x, mult))

    found.sort()
    merged: list[tuple[float, int]] = []
    for x, mu in found:
        if merged and abs(x - merged[-1][0]) <= 8.0 * tol * (1.0 + abs(x)):
            merged[-1] = (merged[-1][0], merged[-1][1] + mu)
        else:
            merged.append((x, mu))
    # A quartic has at most 4 real roots with multiplicity; clamp the rare
    # boundary overcount from coincidence-based assignment.
    total = sum(mu for _, mu in merged)
    while total > 4:
        worst = max(range(len(merged)), key=lambda i: merged[i][1])
        merged[worst] = (merged[worst][0], merged[worst][1] - 1)
        total -= 1
    return merged


def oracle_resolvent_root(
    p: float, q: float, r: float, tol: float = DEFAULT_TOL
) -> float:
    """Largest positive root of 8z^3 + 8p*z^2 + (2p^2 - 8r)z - q^2 = 0 by
    bisection, for q != 0.

    The constant term is -q^2 < 0, so the largest real root is positive.  The
    bracket starts at the rightmost critical point when the value there is
    negative (three-real-root shape), guaranteeing the largest root rather
    than whichever one plain bisection from zero would hit first.
    """
    if not all(math.isfinite(v) for v in (p, q, r)):
        raise DomainError("non-finite resolvent input")
    if tol <= 0.0:
        raise DomainError("tol must be > 0")
    if q == 0.0:
        raise DomainError("q == 0: the resolvent constant term vanishes; use the biquadratic path")

    lin = 2.0 * p * p - 8.0 * r
    mq2 = -(q * q)

    def R(z: float) -> float:
        return ((8.0 * z + 8.0 * p) * z + lin) * z + mq2

    z_hi = 1.0 + abs(p) + abs(0.25 * p * p - r) + q * q
    lo = 0.0
    # Critical points of the resolvent: 24z^2 + 16p z + lin = 0.
    crits = _quad_real_roots(24.0, 16.0 * p, lin)
    if crits:
        t2 = crits[-1]
        if t2 > 0.0 and R(t2) < 0.0:
            lo = t2
    flo = R(lo)
    fhi = R(z_hi)
    if flo == 0.0:
        return lo
    return _bisect(R, _widened(lo, z_hi, flo, fhi), tol)
