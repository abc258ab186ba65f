"""Shared test helpers: root-construction and reference bisection."""

from __future__ import annotations

import numpy as np
import pytest


def monic_from_roots(roots) -> tuple[float, float, float, float]:
    """Monic quartic coefficients (a, b, c, d) with the given real roots."""
    coeffs = np.poly(np.asarray(roots, dtype=float))
    return tuple(float(x) for x in coeffs[1:])


def ref_bisect(f, lo: float, hi: float, tol: float = 1e-14) -> float:
    """Plain reference bisection used to derive expected values in tests."""
    flo = f(lo)
    assert flo * f(hi) <= 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0.0) == (flo < 0.0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
