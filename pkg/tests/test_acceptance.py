"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Corpora are seeded, so every run checks the identical instances.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from quartroots import (
    Classification,
    MonicQuartic,
    ResolventBranch,
    SolveOptions,
    delta_invariants,
    depress,
    explicit_roots_monolithic,
    oracle_real_roots,
    resolvent_z,
    solve_quartic,
)
from quartroots.cli import run_bench, vieta_coefficients

SEED = 0xC0FFEE


def _report(number: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def _delta_arrays(coeffs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    a, b, c, d = (coeffs[:, k] for k in range(4))
    D0 = b * b + 12.0 * d - 3.0 * a * c
    D1 = 27.0 * a * a * d - 9.0 * a * b * c + 2.0 * b**3 - 72.0 * b * d + 27.0 * c * c
    return D0, D1


# ---------------------------------------------------------------------------
# criterion 1: constructed-root recovery


def test_criterion_1_constructed_root_recovery():
    n = 100_000
    rng = np.random.default_rng(SEED)
    roots = np.sort(rng.uniform(-10.0, 10.0, (n, 4)), axis=1)
    coeffs = vieta_coefficients(roots)

    # Near-multiple exclusion: instances whose quadratic-split radicands
    # (the squared within-pair gaps of the sorted pairing) fall inside the
    # 1e-10-scaled classification band cannot be told from true doubles.
    y = roots + 0.25 * coeffs[:, 0:1]
    pair_sum = y[:, 0] + y[:, 1]
    Z = pair_sum * pair_sum
    A = 2.0 * coeffs[:, 1] - 0.75 * coeffs[:, 0] * coeffs[:, 0]
    band = 1e-10 * (1.0 + np.abs(A) + Z)
    g_lo = roots[:, 1] - roots[:, 0]
    g_hi = roots[:, 3] - roots[:, 2]
    keep = np.minimum(g_lo, g_hi) ** 2 > 4.0 * band

    start = time.perf_counter()
    bad_class = 0
    worst = 0.0
    rows = coeffs.tolist()
    for i in np.flatnonzero(keep):
        report = solve_quartic(MonicQuartic(*rows[i]))
        if report.classification is not Classification.FOUR_REAL:
            bad_class += 1
            continue
        got = np.array(report.roots.real_values())
        scale = 1.0 + np.max(np.abs(roots[i]))
        worst = max(worst, float(np.max(np.abs(got - roots[i]))) / scale)
    elapsed = time.perf_counter() - start

    kept = int(keep.sum())
    ok = bad_class == 0 and worst <= 1e-8 and elapsed < 10.0
    _report(
        1,
        ok,
        f"{kept}/{n} instances kept, misclassified={bad_class}, "
        f"worst scaled error={worst:.2e} (<=1e-8), runtime={elapsed:.1f}s (<10s)",
    )


# ---------------------------------------------------------------------------
# criteria 2 and 3 share a corpus and its oracle solutions


@pytest.fixture(scope="module")
def random_corpus():
    n = 100_000
    rng = np.random.default_rng(SEED + 1)
    coeffs = rng.uniform(-100.0, 100.0, (n, 4))
    D0, D1 = _delta_arrays(coeffs)
    disc = D1 * D1 - 4.0 * D0**3
    keep = np.abs(disc) >= 1e-6 * np.maximum(D1 * D1, 4.0 * np.abs(D0) ** 3)
    kept_rows = coeffs[keep]
    oracle = [
        oracle_real_roots(MonicQuartic(*(float(v) for v in row)), tol=1e-9)
        for row in kept_rows
    ]
    return kept_rows, disc[keep], oracle


def test_criterion_2_oracle_equivalence(random_corpus):
    kept_rows, _, oracle = random_corpus
    mismatched = 0
    worst = 0.0
    for row, reference in zip(kept_rows.tolist(), oracle):
        report = solve_quartic(MonicQuartic(*row))
        got = report.roots.real_values()
        want = [v for v, m in reference for _ in range(m)]
        if len(got) != len(want):
            mismatched += 1
            continue
        if got:
            dev = max(abs(x - y) for x, y in zip(got, want))
            worst = max(worst, dev)
            if dev > 1e-7:
                mismatched += 1
    ok = mismatched == 0
    _report(
        2,
        ok,
        f"{len(kept_rows)} instances (after discriminant-band exclusion), "
        f"mismatches={mismatched}, worst value deviation={worst:.2e} (<=1e-7)",
    )


def test_criterion_3_negative_disc_means_all_or_none_real(random_corpus):
    kept_rows, disc, oracle = random_corpus
    counterexamples = 0
    checked = 0
    for cd, reference in zip(disc, oracle):
        if cd >= 0.0:
            continue
        checked += 1
        count = sum(m for _, m in reference)
        if count not in (0, 4):
            counterexamples += 1
    ok = counterexamples == 0 and checked > 0
    _report(
        3,
        ok,
        f"{checked} negative-discriminant instances, "
        f"counterexamples={counterexamples} (oracle count always 0 or 4)",
    )


# ---------------------------------------------------------------------------
# criterion 4: monolithic formulas against the staged pipeline


def test_criterion_4_cross_path_identity():
    n = 10_000
    rng = np.random.default_rng(SEED + 2)
    opts = SolveOptions(polish_iters=0)
    worst = 0.0
    compared = 0
    while compared < n:
        roots = np.sort(rng.uniform(-10.0, 10.0, 4))
        # keep instances inside the monolithic formulas' real domain: away
        # from repeated roots and from the biquadratic q = 0 line
        if min(np.diff(roots)) < 1e-3:
            continue
        m = MonicQuartic(*(float(v) for v in np.poly(roots)[1:]))
        if abs(depress(m).q) < 1e-9:
            continue
        lams = sorted(explicit_roots_monolithic(m))
        staged = solve_quartic(m, opts).roots.real_values()
        assert len(staged) == 4
        worst = max(
            worst,
            max(abs(x - y) / (1.0 + abs(x)) for x, y in zip(lams, staged)),
        )
        compared += 1
    ok = worst <= 1e-10
    _report(
        4,
        ok,
        f"{compared} all-real instances, worst relative gap "
        f"explicit-vs-staged={worst:.2e} (<=1e-10)",
    )


# ---------------------------------------------------------------------------
# criterion 5: resolvent identities


def test_criterion_5_resolvent_identities():
    n = 10_000
    rng = np.random.default_rng(SEED + 3)
    worst0 = worst1 = worst_res = 0.0
    for _ in range(n):
        m = MonicQuartic(*(float(x) for x in rng.uniform(-100.0, 100.0, 4)))
        dep = depress(m)
        p, q, r = dep.p, dep.q, dep.r
        alpha, beta, gamma = p, 0.25 * p * p - r, -0.125 * q * q
        Q = (3.0 * beta - alpha * alpha) / 9.0
        R = (9.0 * alpha * beta - 27.0 * gamma - 2.0 * alpha**3) / 54.0
        D0, D1 = delta_invariants(m)
        # identity error relative to the identity's own term magnitudes
        scale0 = max(1.0, abs(D0), 4.0 * alpha * alpha, 12.0 * abs(beta))
        scale1 = max(
            1.0, abs(D1), 72.0 * abs(alpha * beta), 216.0 * abs(gamma),
            16.0 * abs(alpha) ** 3,
        )
        worst0 = max(worst0, abs(D0 + 36.0 * Q) / scale0)
        worst1 = max(worst1, abs(D1 - 432.0 * R) / scale1)
        if abs(q) > 1e-12 * (1.0 + abs(p) ** 1.5 + abs(r) ** 0.75):
            z = resolvent_z(p, D0, D1).Z / 2.0
            res = abs(
                8.0 * z**3 + 8.0 * p * z * z + (2.0 * p * p - 8.0 * r) * z - q * q
            )
            worst_res = max(worst_res, res / max(1.0, q * q, abs(p) ** 3))
    # spot-check the identities exactly in rational arithmetic
    exact_ok = True
    for _ in range(200):
        vals = [float(x) for x in rng.uniform(-10.0, 10.0, 4)]
        a, b, c, d = (Fraction(v) for v in vals)
        s = a / 4
        p = b - 6 * s**2
        q = c - 2 * b * s + 8 * s**3
        r = d - c * s + b * s**2 - 3 * s**4
        alpha, beta, gamma = p, p * p / 4 - r, -q * q / 8
        Q = (3 * beta - alpha * alpha) / 9
        R = (9 * alpha * beta - 27 * gamma - 2 * alpha**3) / 54
        if b * b + 12 * d - 3 * a * c != -36 * Q:
            exact_ok = False
        if 27 * a * a * d - 9 * a * b * c + 2 * b**3 - 72 * b * d + 27 * c * c != 432 * R:
            exact_ok = False
    ok = worst0 <= 1e-10 and worst1 <= 1e-10 and worst_res <= 1e-8 and exact_ok
    _report(
        5,
        ok,
        f"Delta0=-36Q err={worst0:.2e}, Delta1=432R err={worst1:.2e} (<=1e-10, "
        f"term-scaled), resolvent residual={worst_res:.2e} (<=1e-8 scaled), "
        f"exact rational identity={'holds' if exact_ok else 'fails'}",
    )


# ---------------------------------------------------------------------------
# criterion 6: golden vectors


def test_criterion_6_golden_vectors():
    details = []
    ok = True

    # (x-1)(x-2)(x-3)(x-5): trig branch, z0 exactly 25/8
    m = MonicQuartic(-11.0, 41.0, -61.0, 30.0)
    report = solve_quartic(m)
    dep = depress(m)
    data = resolvent_z(dep.p, *delta_invariants(m))
    z = Fraction(25, 8)
    p, q, r = Fraction(-35, 8), Fraction(-15, 8), Fraction(189, 256)
    exact_residual = 8 * z**3 + 8 * p * z**2 + (2 * p * p - 8 * r) * z - q * q
    g1 = (
        report.branch is ResolventBranch.TRIG
        and data.branch is ResolventBranch.TRIG
        and abs(data.Z - 6.25) <= 1e-12
        and exact_residual == 0
        and report.roots.real_values()
        == pytest.approx([1.0, 2.0, 3.0, 5.0], abs=1e-10)
    )
    ok &= g1
    details.append(f"trig golden {{1,2,3,5}} z0=3.125 {'ok' if g1 else 'FAIL'}")

    # x^4 - x - 1: cardano branch, two real roots
    report = solve_quartic(MonicQuartic(0.0, 0.0, -1.0, -1.0))
    g2 = report.branch is ResolventBranch.CARDANO and report.roots.real_values() == pytest.approx(
        [-0.724492, 1.220744], abs=1e-6
    )
    ok &= g2
    details.append(f"cardano golden x^4-x-1 {'ok' if g2 else 'FAIL'}")

    # (x-1)(x-2)(x-3)(x-4): q = 0, biquadratic path
    report = solve_quartic(MonicQuartic(-10.0, 35.0, -50.0, 24.0))
    g3 = report.branch is ResolventBranch.BIQUADRATIC and report.roots.real_values() == pytest.approx(
        [1.0, 2.0, 3.0, 4.0], abs=1e-10
    )
    ok &= g3
    details.append(f"biquadratic golden {{1,2,3,4}} {'ok' if g3 else 'FAIL'}")

    _report(6, ok, "; ".join(details))


# ---------------------------------------------------------------------------
# criterion 7: relative performance


def test_criterion_7_relative_performance():
    report = run_bench(1_000_000, seed=SEED, regime="all-real", oracle_sample=2000)
    mixed = run_bench(50_000, seed=SEED, regime="mixed", oracle_sample=5)
    trig = mixed.branch_batch_ns.get("trig", float("nan"))
    cardano = mixed.branch_batch_ns.get("cardano", float("nan"))
    ok = report.speedup_vs_oracle >= 5.0
    _report(
        7,
        ok,
        f"closed-form {report.closed_mean_ns:.0f}ns vs oracle "
        f"{report.oracle_mean_ns:.0f}ns (sampled {report.oracle_sample}): "
        f"{report.speedup_vs_oracle:.1f}x (>=5x); trig branch {trig:.0f}ns vs "
        f"cube-root branch {cardano:.0f}ns per solve, batch-timed "
        f"(reported, no threshold)",
    )
