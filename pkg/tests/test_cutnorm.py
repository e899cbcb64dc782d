import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from graphonlab import (
    CutNormConfig,
    Kernel,
    apply_permutation,
    bilinear_form,
    cutnorm_bracket,
    cutnorm_exact,
    cutnorm_heuristic,
    decompose,
    kernel_from_matrix,
    spectral_radius,
    step_function,
    tail_truncate,
    expand_step,
    DiscreteSpace,
)
from graphonlab.errors import DimensionMismatchError, TooLargeError
from graphonlab.spectral import gap_midpoints

from conftest import random_symmetric


def brute_force_cutnorm(kernel):
    """Independent oracle: every one of the 2^n x 2^n sign pairs, no vertex
    shortcut, evaluated as one big bilinear table."""
    n = kernel.n
    w = kernel.space.weights
    a = kernel.values * np.outer(w, w)
    codes = np.arange(1 << n, dtype=np.int64)
    signs = np.empty((codes.size, n))
    for bit in range(n):
        signs[:, bit] = np.where((codes >> bit) & 1, -1.0, 1.0)
    r = signs @ a  # rows f^T A
    best = 0.0
    for off in range(0, signs.shape[0], 512):
        v = r @ signs[off : off + 512].T
        np.abs(v, out=v)
        best = max(best, float(v.max()))
    return best


class TestBilinearForm:
    def test_all_ones_on_constant(self):
        k = kernel_from_matrix(np.full((3, 3), 0.4))
        assert bilinear_form(np.ones(3), k, np.ones(3)) == pytest.approx(0.4, abs=1e-15)

    def test_zero_vector(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 4))
        assert bilinear_form(np.zeros(4), k, np.ones(4)) == 0.0

    def test_matches_double_loop_oracle(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 5), weights=[0.1, 0.2, 0.3, 0.2, 0.2])
        f = rng.uniform(-1, 1, 5)
        g = rng.uniform(-1, 1, 5)
        expected = 0.0
        w = k.space.weights
        for x in range(5):
            for y in range(5):
                expected += w[x] * w[y] * f[x] * k.values[x, y] * g[y]
        assert bilinear_form(f, k, g) == pytest.approx(expected, abs=1e-14)

    def test_dimension_mismatch(self):
        k = kernel_from_matrix(np.eye(3))
        with pytest.raises(DimensionMismatchError):
            bilinear_form(np.ones(2), k, np.ones(3))


class TestExact:
    def test_zero_kernel(self):
        est = cutnorm_exact(kernel_from_matrix(np.zeros((4, 4))))
        assert est.lower == est.upper == 0.0
        assert est.method == "exact"

    def test_constant_kernel(self):
        est = cutnorm_exact(kernel_from_matrix(np.full((5, 5), 0.3)))
        assert est.lower == pytest.approx(0.3, abs=1e-15)
        assert np.all(est.witness_f == 1.0)
        assert np.all(est.witness_g == 1.0)

    def test_two_atom_hand_case(self):
        # all four sign pairs by hand: f = g = (1, -1) attains 1
        est = cutnorm_exact(kernel_from_matrix([[1.0, -1.0], [-1.0, 1.0]]))
        assert est.lower == pytest.approx(1.0, abs=1e-15)
        assert np.array_equal(est.witness_g, [1.0, -1.0])
        assert np.array_equal(est.witness_f, [1.0, -1.0])

    def test_witness_attains_value(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 8))
        est = cutnorm_exact(k)
        assert bilinear_form(est.witness_f, k, est.witness_g) == pytest.approx(
            est.lower, abs=1e-12
        )

    def test_matches_brute_force(self, rng):
        for n in (2, 3, 5, 8, 10):
            k = kernel_from_matrix(random_symmetric(rng, n))
            est = cutnorm_exact(k)
            assert est.lower == pytest.approx(brute_force_cutnorm(k), abs=1e-12)

    def test_weighted_matches_brute_force(self, rng):
        w = rng.uniform(0.5, 1.5, 6)
        w /= w.sum()
        k = kernel_from_matrix(random_symmetric(rng, 6), weights=w)
        assert cutnorm_exact(k).lower == pytest.approx(brute_force_cutnorm(k), abs=1e-12)

    def test_too_large(self):
        with pytest.raises(TooLargeError):
            cutnorm_exact(kernel_from_matrix(np.zeros((9, 9))), max_n=8)

    def test_at_most_spectral_radius(self, rng):
        for _ in range(10):
            k = kernel_from_matrix(random_symmetric(rng, 7))
            assert cutnorm_exact(k).lower <= spectral_radius(decompose(k)) + 1e-10

    def test_permutation_invariance(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 7))
        kp = apply_permutation(k, rng.permutation(7))
        assert cutnorm_exact(kp).lower == pytest.approx(cutnorm_exact(k).lower, abs=1e-12)

    def test_triangle_inequality(self, rng):
        a = kernel_from_matrix(random_symmetric(rng, 6))
        b = kernel_from_matrix(random_symmetric(rng, 6))
        ab = kernel_from_matrix(a.values + b.values)
        assert cutnorm_exact(ab).lower <= (
            cutnorm_exact(a).lower + cutnorm_exact(b).lower + 1e-10
        )


class TestHeuristic:
    def test_never_exceeds_exact(self, rng):
        for n in (4, 7, 10):
            k = kernel_from_matrix(random_symmetric(rng, n))
            exact = cutnorm_exact(k).lower
            heur = cutnorm_heuristic(k, restarts=8, seed=3)
            assert heur.lower <= exact + 1e-12
            assert heur.lower <= heur.upper

    def test_constant_closes_bracket(self):
        k = kernel_from_matrix(np.full((6, 6), 0.4))
        est = cutnorm_heuristic(k, restarts=4, seed=0)
        assert est.lower == pytest.approx(0.4, abs=1e-12)
        assert est.upper == pytest.approx(0.4, abs=1e-12)

    def test_centered_block_identity(self):
        # two equal parts, block [[1,0],[0,1]] minus its mean 0.5; oracle:
        # enumerate the four sign pairs on the 2-block quotient, where the
        # best assignment aligns f = g with the parts
        quotient = np.array([[0.5, -0.5], [-0.5, 0.5]])
        oracle = 0.0
        for f in ([1, 1], [1, -1], [-1, 1], [-1, -1]):
            for g in ([1, 1], [1, -1], [-1, 1], [-1, -1]):
                val = abs(sum(
                    0.25 * f[x] * quotient[x, y] * g[y]
                    for x in range(2) for y in range(2)
                ))
                oracle = max(oracle, val)
        sf = step_function(DiscreteSpace.uniform(4), [0, 0, 1, 1], quotient)
        k = expand_step(sf)
        est = cutnorm_heuristic(k, restarts=8, seed=1)
        assert est.lower == pytest.approx(oracle, abs=1e-12)
        assert est.upper == pytest.approx(oracle, abs=1e-12)
        # the witness is aligned with the parts
        assert abs(float(est.witness_f @ est.witness_g)) == 4.0

    def test_deterministic_per_seed(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 12))
        a = cutnorm_heuristic(k, restarts=6, seed=42)
        b = cutnorm_heuristic(k, restarts=6, seed=42)
        assert a.lower == b.lower
        assert np.array_equal(a.witness_g, b.witness_g)

    def test_upper_is_min_of_bounds(self, rng):
        from graphonlab import weighted_norm

        k = kernel_from_matrix(random_symmetric(rng, 9))
        est = cutnorm_heuristic(k, restarts=4, seed=0)
        rad = spectral_radius(decompose(k))
        l1 = weighted_norm(k, "L1")
        assert est.upper == pytest.approx(max(min(rad, l1), est.lower), abs=1e-14)
        assert est.method in ("heuristic+spectral", "heuristic+L1")


class TestBracket:
    def test_dispatch_exact_small(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 10))
        assert cutnorm_bracket(k).method == "exact"

    def test_dispatch_heuristic_large(self, rng):
        k = kernel_from_matrix(random_symmetric(rng, 30))
        est = cutnorm_bracket(k, CutNormConfig(seed=5))
        assert est.method.startswith("heuristic")

    def test_truncation_tail_bounded_by_threshold(self, rng):
        # removing everything above alpha leaves cut norm at most alpha
        k = kernel_from_matrix(random_symmetric(rng, 10) / 6.0)
        dec = decompose(k)
        for alpha in gap_midpoints(dec)[:4]:
            tail = Kernel(k.space, k.values - tail_truncate(dec, alpha).values)
            est = cutnorm_bracket(tail)
            assert est.upper <= alpha + 1e-9
            assert est.lower <= alpha + 1e-9

    @given(st.integers(min_value=2, max_value=7), st.integers(min_value=0, max_value=10**9))
    def test_bracket_sandwich(self, n, seed):
        rng = np.random.default_rng(seed)
        k = kernel_from_matrix(random_symmetric(rng, n))
        est = cutnorm_bracket(k)
        assert 0.0 <= est.lower <= est.upper + 1e-12
