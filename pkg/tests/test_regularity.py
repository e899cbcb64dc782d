import itertools

import numpy as np
import pytest

from graphonlab import (
    DiscreteSpace,
    apply_permutation,
    automorphisms,
    choose_threshold,
    cluster_eigenvectors,
    decompose,
    expand_step,
    group_order,
    kernel_from_matrix,
    regularity_decompose,
    step_function,
    symmetry_decompose,
    tail_truncate,
    weighted_norm,
)
from graphonlab.ensembles import cayley_kernel
from graphonlab.errors import GridOverflowError, NonDecreasingF, TooLargeError
from graphonlab.regularity import _threshold_schedule

from conftest import cycle_adjacency, petersen_adjacency, random_symmetric


def F_quarter(lam, eps):
    return 0.25 * lam * eps


def normalized_l2(rng, n, scale=1.0):
    a = random_symmetric(rng, n)
    k = kernel_from_matrix(a)
    l2 = weighted_norm(k, "L2")
    if l2 > scale:
        k = kernel_from_matrix(a * (scale / l2))
    return k


class TestChooseThreshold:
    def test_rank_one_lands_below_top(self):
        k = kernel_from_matrix(np.full((6, 6), 0.8))
        dec = decompose(k)
        lam, lam_next = choose_threshold(dec, lambda l, e: e * l, 0.1)
        # first gap below |lambda_1| = 0.8 is its midpoint down to zero
        assert lam == pytest.approx(0.4, abs=1e-12)
        assert lam_next < lam
        assert dec.energy_above(lam_next) - dec.energy_above(lam) == 0.0

    def test_zero_kernel(self):
        dec = decompose(kernel_from_matrix(np.zeros((4, 4))))
        lam, lam_next = choose_threshold(dec, F_quarter, 0.2)
        assert lam == 1.0  # nothing to snap to
        assert lam_next == pytest.approx(min(F_quarter(1.0, 0.2), 0.5), abs=1e-15)

    def test_random_kernel_certificates(self, rng):
        # oracle: recompute the energies from the eigenvalues directly
        k = normalized_l2(rng, 16)
        dec = decompose(k)
        eps = 0.3
        lam, lam_next = choose_threshold(dec, F_quarter, eps)
        assert lam_next <= F_quarter(lam, eps) + 1e-15
        lams = dec.eigenvalues
        e_hi = float(np.sum(lams[np.abs(lams) > lam] ** 2))
        e_lo = float(np.sum(lams[np.abs(lams) > lam_next] ** 2))
        assert e_lo - e_hi <= eps**2 + 1e-12

    def test_thresholds_are_cluster_safe(self, rng):
        k = normalized_l2(rng, 12)
        dec = decompose(k)
        lam, lam_next = choose_threshold(dec, F_quarter, 0.25)
        tail_truncate(dec, lam)
        tail_truncate(dec, lam_next)  # must not raise

    def test_nonpositive_F_rejected(self, rng):
        dec = decompose(normalized_l2(rng, 6))
        with pytest.raises(NonDecreasingF):
            choose_threshold(dec, lambda l, e: 0.0, 0.3)

    def test_increasing_F_rejected(self, rng):
        dec = decompose(normalized_l2(rng, 8))
        with pytest.raises(NonDecreasingF):
            choose_threshold(dec, lambda l, e: e / max(l, 1e-9), 0.3)

    def test_floor_below_lambda(self, rng):
        dec = decompose(normalized_l2(rng, 10))
        sched = _threshold_schedule(dec, F_quarter, 0.3)
        assert sched.delta_floor <= sched.lam_next <= sched.lam


class TestRegularityDecompose:
    def test_constant_kernel(self):
        k = kernel_from_matrix(np.full((5, 5), 0.6))
        reg = regularity_decompose(k, F_quarter, 0.2)
        assert np.max(np.abs(reg.S.values - 0.6)) < 1e-12
        assert np.max(np.abs(reg.E.values)) < 1e-12
        assert np.max(np.abs(reg.R.values)) < 1e-12
        assert not reg.certificates.clamped
        assert not reg.certificates.epsilon_violated

    def test_step_kernel_rank_two_exact_capture(self):
        sf = step_function(DiscreteSpace.uniform(6), [0, 0, 0, 1, 1, 1],
                           [[0.9, 0.2], [0.2, 0.5]])
        k = expand_step(sf)
        reg = regularity_decompose(k, F_quarter, 0.2)
        # finite rank: once lambda' drops below the smallest nonzero
        # eigenvalue, R vanishes
        assert np.max(np.abs(reg.R.values)) < 1e-12
        assert reg.certificates.R_cut.upper < 1e-10

    def test_additivity_exact(self, rng):
        for _ in range(5):
            k = normalized_l2(rng, 14)
            reg = regularity_decompose(k, F_quarter, 0.3)
            resid = np.max(np.abs(reg.S.values + reg.E.values + reg.R.values - k.values))
            assert resid <= 1e-9

    def test_symmetry_of_parts(self, rng):
        k = normalized_l2(rng, 10)
        reg = regularity_decompose(k, F_quarter, 0.25)
        for part in (reg.S, reg.E, reg.R):
            assert np.array_equal(part.values, part.values.T)

    def test_r_cut_beneath_F(self, rng):
        for eps in (0.2, 0.4):
            k = normalized_l2(rng, 12)
            reg = regularity_decompose(k, F_quarter, eps)
            assert reg.certificates.R_cut.upper <= F_quarter(reg.lam, eps) + 1e-12

    def test_se_sup_bound_when_unclamped(self, rng):
        k = normalized_l2(rng, 12)
        reg = regularity_decompose(k, F_quarter, 0.3)
        if not reg.certificates.clamped:
            assert reg.certificates.SE_linf <= 1.0 + 1e-9

    def test_entry_bound_enforced(self, rng):
        k = normalized_l2(rng, 8)
        reg = regularity_decompose(k, F_quarter, 0.3)
        assert np.max(np.abs(reg.S.values + reg.E.values)) <= 1.0 + 1e-12

    def test_rejects_unbounded_entries(self):
        with pytest.raises(ValueError):
            regularity_decompose(kernel_from_matrix(np.full((3, 3), 1.5)),
                                 F_quarter, 0.2)


class TestClusterEigenvectors:
    def test_constant_eigenvector_single_part(self):
        k = kernel_from_matrix(np.full((8, 8), 0.7))
        dec = decompose(k)
        res = cluster_eigenvectors(dec, 0.35, 0.2)
        assert res.step.parts == 1
        t = expand_step(res.step)
        g = tail_truncate(dec, 0.35)
        assert np.max(np.abs(t.values - g.values)) < 1e-12

    def test_two_valued_eigenvector(self):
        sf = step_function(DiscreteSpace.uniform(4), [0, 0, 1, 1],
                           [[0.9, 0.1], [0.1, 0.9]])
        k = expand_step(sf)
        dec = decompose(k)
        lam = float(np.abs(dec.eigenvalues[1])) / 2.0
        res = cluster_eigenvectors(dec, lam, 0.05)
        assert res.step.parts <= 2
        t = expand_step(res.step)
        g = tail_truncate(dec, lam)
        assert np.max(np.abs(t.values - g.values)) < 1e-12

    def test_rank_two_random(self, rng):
        # random rank-2 kernel on 64 atoms
        b = rng.standard_normal((64, 2))
        vals = b @ np.diag([0.5, -0.3]) @ b.T / 64.0
        k = kernel_from_matrix((vals + vals.T) / 2.0)
        dec = decompose(k)
        lam = float(np.abs(dec.eigenvalues[1])) / 2.0
        res = cluster_eigenvectors(dec, lam, 0.2, max_parts=1e12)
        assert res.rank == 2
        t = expand_step(res.step)
        g = tail_truncate(dec, lam)
        assert np.max(np.abs(t.values - g.values)) <= 0.2 + 1e-9
        assert res.step.parts <= res.step_count_bound

    def test_grid_overflow(self, rng):
        b = rng.standard_normal((32, 3))
        vals = b @ b.T / 32.0
        k = kernel_from_matrix((vals + vals.T) / 2.0)
        dec = decompose(k)
        lam = float(np.abs(dec.eigenvalues[2])) / 2.0
        with pytest.raises(GridOverflowError):
            cluster_eigenvectors(dec, lam, 0.01, max_parts=1000)


def brute_force_automorphism_count(values):
    """Oracle: try every permutation (tiny n only)."""
    n = values.shape[0]
    count = 0
    for perm in itertools.permutations(range(n)):
        p = np.array(perm)
        if np.array_equal(values[np.ix_(p, p)], values):
            count += 1
    return count


class TestAutomorphisms:
    def test_c5_dihedral(self):
        k = kernel_from_matrix(cycle_adjacency(5))
        action = automorphisms(k)
        order = group_order(action)
        assert order == brute_force_automorphism_count(k.values) == 10
        for g in action.generators:
            assert np.array_equal(apply_permutation(k, g).values, k.values)

    def test_constant_kernel_symmetric_group(self):
        k = kernel_from_matrix(np.full((6, 6), 0.2))
        assert group_order(automorphisms(k)) == 720

    def test_distinct_rows_trivial_group(self):
        vals = np.array([
            [0.0, 0.1, 0.2],
            [0.1, 0.5, 0.3],
            [0.2, 0.3, 0.9],
        ])
        action = automorphisms(kernel_from_matrix(vals))
        assert group_order(action) == 1
        assert len(action.generators) == 0

    def test_petersen_order_120(self):
        assert group_order(automorphisms(kernel_from_matrix(petersen_adjacency()))) == 120

    def test_matches_brute_force_on_random_block_kernel(self, rng):
        sf = step_function(DiscreteSpace.uniform(6), [0, 0, 0, 1, 1, 1],
                           [[0.7, 0.2], [0.2, 0.7]])
        k = expand_step(sf)
        assert group_order(automorphisms(k)) == brute_force_automorphism_count(k.values)

    def test_size_limit(self):
        with pytest.raises(TooLargeError):
            automorphisms(kernel_from_matrix(np.zeros((5, 5))), max_n=4)


class TestSymmetryDecompose:
    def test_cayley_z8_exact_invariance(self):
        k = cayley_kernel(8, np.array([0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]))
        reg, clustering, report = symmetry_decompose(
            k, F_quarter, 0.3, max_parts=float("inf")
        )
        assert report.S_deviation <= 1e-8
        assert report.T_deviation <= 0.3

    def test_trivial_group_empty_report(self):
        vals = np.array([
            [0.0, 0.1, 0.2],
            [0.1, 0.5, 0.3],
            [0.2, 0.3, 0.9],
        ])
        k = kernel_from_matrix(vals)
        reg, clustering, report = symmetry_decompose(
            k, F_quarter, 0.4, max_parts=float("inf")
        )
        assert report.generators == 0
        assert report.S_deviation == 0.0

    def test_c8_adjacency_t_bound(self):
        k = kernel_from_matrix(cycle_adjacency(8) / 8.0)
        reg, clustering, report = symmetry_decompose(
            k, F_quarter, 0.3, max_parts=float("inf")
        )
        assert report.T_deviation <= 0.3
        assert report.S_deviation <= 1e-8
