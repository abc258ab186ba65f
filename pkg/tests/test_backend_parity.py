"""Compiled and pure-Python kernels must agree on every input."""

import numpy as np
import pytest

from quartroots import backend
from quartroots.cli import vieta_coefficients

HAVE_COMPILED = "compiled" in backend.available()
needs_compiled = pytest.mark.skipif(not HAVE_COMPILED, reason="compiled kernel not built")


def _flatten(result):
    branch, reals, mults, pairs, boundary, _, _ = result
    return branch, reals, mults, pairs, boundary


@needs_compiled
class TestScalarParity:
    def test_random_coefficients(self, rng):
        py = backend.get("python")
        cy = backend.get("compiled")
        for _ in range(5000):
            a, b, c, d = (float(x) for x in rng.uniform(-100, 100, 4))
            r_py = py.solve_quartic_raw(a, b, c, d)
            r_cy = cy.solve_quartic_raw(a, b, c, d)
            assert r_py[0] == r_cy[0]  # branch
            assert r_py[2] == r_cy[2]  # multiplicities
            assert len(r_py[3]) == len(r_cy[3])
            # libm cbrt vs pow(1/3) differ by an ulp; near a radicand boundary
            # that inflates to ~1e-8 through the square root.
            for x, y in zip(r_py[1], r_cy[1]):
                assert abs(x - y) <= 1e-6 * (1.0 + abs(x))
            for (re1, im1), (re2, im2) in zip(r_py[3], r_cy[3]):
                assert abs(re1 - re2) <= 1e-6 * (1.0 + abs(re1))
                assert abs(im1 - im2) <= 1e-6 * (1.0 + abs(im1))

    def test_constructed_instances_bitwise(self, rng):
        # The trig branch uses the same libm entry points on both sides.
        py = backend.get("python")
        cy = backend.get("compiled")
        for _ in range(2000):
            coeffs = vieta_coefficients(rng.uniform(-10, 10, (1, 4)))[0]
            a, b, c, d = (float(x) for x in coeffs)
            assert _flatten(py.solve_quartic_raw(a, b, c, d)) == _flatten(
                cy.solve_quartic_raw(a, b, c, d)
            )

    def test_goldens_identical(self):
        # Bitwise equality holds on the trig/biquadratic/triple branches; the
        # cardano branch differs by an ulp (libm cbrt vs pow(x, 1/3)) and is
        # covered by the tolerance test above.
        py = backend.get("python")
        cy = backend.get("compiled")
        for coeffs in [
            (-11.0, 41.0, -61.0, 30.0),
            (-10.0, 35.0, -50.0, 24.0),
            (0.0, -6.0, 8.0, -3.0),
            (0.0, 0.0, 0.0, 0.0),
        ]:
            assert _flatten(py.solve_quartic_raw(*coeffs)) == _flatten(
                cy.solve_quartic_raw(*coeffs)
            )


class TestBatchConsistency:
    @pytest.mark.parametrize("name", ["python", "compiled"])
    def test_batch_matches_scalar(self, name, rng):
        if name == "compiled" and not HAVE_COMPILED:
            pytest.skip("compiled kernel not built")
        kernel = backend.get(name)
        coeffs = rng.uniform(-50, 50, (500, 4))
        branch, n_real, roots, mults, pairs = kernel.solve_batch(coeffs)
        for i in range(coeffs.shape[0]):
            a, b, c, d = (float(x) for x in coeffs[i])
            br, re, mu, pr, _, _, _ = kernel.solve_quartic_raw(a, b, c, d)
            assert branch[i] == br
            assert n_real[i] == sum(mu)
            for j, (v, m) in enumerate(zip(re, mu)):
                assert roots[i, j] == v
                assert mults[i, j] == m
            for j, (pre, pim) in enumerate(pr):
                assert pairs[i, 2 * j] == pre
                assert pairs[i, 2 * j + 1] == pim

    @needs_compiled
    def test_batch_backends_agree(self, rng):
        coeffs = vieta_coefficients(rng.uniform(-10, 10, (2000, 4)))
        out_py = backend.get("python").solve_batch(coeffs)
        out_cy = backend.get("compiled").solve_batch(coeffs)
        assert np.array_equal(out_py[0], out_cy[0])
        assert np.array_equal(out_py[1], out_cy[1])
        assert np.allclose(out_py[2], out_cy[2], rtol=0, atol=1e-7, equal_nan=True)
        assert np.array_equal(out_py[3], out_cy[3])
        assert np.allclose(out_py[4], out_cy[4], rtol=0, atol=1e-7, equal_nan=True)


def test_concurrent_solves_are_consistent(rng):
    # Pure kernels, no shared state: hammering from threads must reproduce
    # the single-threaded answers (the compiled batch path releases the GIL).
    from concurrent.futures import ThreadPoolExecutor

    from quartroots import MonicQuartic, solve_quartic

    coeffs = [tuple(float(x) for x in rng.uniform(-50, 50, 4)) for _ in range(400)]
    expected = [solve_quartic(MonicQuartic(*c)).roots for c in coeffs]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(lambda c: solve_quartic(MonicQuartic(*c)).roots, coeffs * 4))
    for i, got in enumerate(results):
        assert got == expected[i % len(coeffs)]


@needs_compiled
def test_backend_switching():
    original = backend.active_name()
    try:
        backend.use("python")
        assert backend.active_name() == "python"
        backend.use("compiled")
        assert backend.active_name() == "compiled"
    finally:
        backend.use(original)
    with pytest.raises(ValueError):
        backend.use("fortran")
