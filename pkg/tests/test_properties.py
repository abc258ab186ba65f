"""Property-based invariants over randomized coefficient space."""

import math

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from quartroots import (
    MonicQuartic,
    RawCoefficients,
    delta_invariants,
    depress,
    evaluate,
    normalize,
    oracle_real_roots,
    residual,
    shifted_coeffs,
    solve_quartic,
)

coeff = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False, allow_infinity=False)
small_coeff = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


@given(coeff, coeff, coeff, coeff)
@settings(max_examples=300, deadline=None)
def test_root_multiplicities_always_sum_to_four(a, b, c, d):
    roots = solve_quartic(MonicQuartic(a, b, c, d)).roots
    assert roots.real_count + 2 * len(roots.complex_pairs) == 4


@given(coeff, coeff, coeff, coeff)
@settings(max_examples=300, deadline=None)
def test_real_roots_have_small_residuals(a, b, c, d):
    m = MonicQuartic(a, b, c, d)
    report = solve_quartic(m)
    for value, mult in report.roots.real_roots:
        if mult == 1 and not report.boundary:
            assert residual(m, value) <= 1e-8


@given(coeff, coeff, coeff, coeff)
@settings(max_examples=300, deadline=None)
def test_shifted_coeffs_track_depression(a, b, c, d):
    m = MonicQuartic(a, b, c, d)
    dep = depress(m)
    sc = shifted_coeffs(m)
    assert abs(sc.A - 2.0 * dep.p) <= 2.0 * math.ulp(abs(sc.A) + 1e-300)
    assert abs(sc.B - 2.0 * dep.q) <= 2.0 * math.ulp(abs(sc.B) + 1e-300)


@given(coeff, coeff, coeff, coeff, st.floats(min_value=-1e3, max_value=1e3))
@settings(max_examples=300, deadline=None)
def test_residual_zero_iff_evaluate_zero(a, b, c, d, x):
    m = MonicQuartic(a, b, c, d)
    assert (residual(m, x) == 0.0) == (evaluate(m, x) == 0.0)


@given(
    coeff, coeff, coeff, coeff, coeff,
    st.floats(min_value=1e-6, max_value=1e6),
    st.booleans(),
)
@settings(max_examples=300, deadline=None)
def test_normalize_scale_invariant(e4, e3, e2, e1, e0, t, flip):
    assume(abs(e4) > 1e-6 * max(abs(e3), abs(e2), abs(e1), abs(e0), 1.0))
    # scaled coefficients must stay clear of the subnormal range, where
    # ulp-level reproducibility is impossible
    assume(all(v == 0.0 or abs(v) >= 1e-100 for v in (e4, e3, e2, e1, e0)))
    if flip:
        t = -t
    m1 = normalize(RawCoefficients(e4, e3, e2, e1, e0))
    m2 = normalize(RawCoefficients(t * e4, t * e3, t * e2, t * e1, t * e0))
    assert isinstance(m1, MonicQuartic) and isinstance(m2, MonicQuartic)
    # three independent roundings (two products, one quotient) admit up to
    # ~4.5e-16 relative drift; 4 ULPs covers the worst alignment
    for x, y in zip(m1.as_tuple(), m2.as_tuple()):
        assert x == y or abs(x - y) <= 4.0 * math.ulp(abs(x))


@given(small_coeff, small_coeff, small_coeff, small_coeff)
@settings(max_examples=200, deadline=None)
def test_real_count_matches_oracle_outside_degenerate_band(a, b, c, d):
    m = MonicQuartic(a, b, c, d)
    D0, D1 = delta_invariants(m)
    disc = D1 * D1 - 4.0 * D0**3
    assume(abs(disc) >= 1e-6 * max(D1 * D1, 4.0 * abs(D0) ** 3, 1.0))
    assume(abs(depress(m).q) > 1e-6)
    report = solve_quartic(m)
    assume(not report.boundary)
    oracle_count = sum(mult for _, mult in oracle_real_roots(m, tol=1e-10))
    assert report.roots.real_count == oracle_count


@given(small_coeff, small_coeff, small_coeff, small_coeff)
@settings(max_examples=200, deadline=None)
def test_trig_branch_requires_positive_delta0(a, b, c, d):
    m = MonicQuartic(a, b, c, d)
    D0, D1 = delta_invariants(m)
    if D1 * D1 - 4.0 * D0**3 < 0.0:
        assert D0 > 0.0
