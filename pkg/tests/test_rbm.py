"""Exact-model operations: energies, factorizations, partition functions."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import rbmrad as rr
from conftest import random_params

LN2 = math.log(2.0)


def zero_params(k, m):
    return rr.RbmParams(W=np.zeros((k, m)), b=np.zeros(k), c=np.zeros(m))


class TestTypes:
    def test_params_dims_derived(self, rng):
        p = random_params(rng, 3, 2)
        assert (p.k, p.m) == (3, 2) and p.W.shape == (3, 2)

    def test_params_reject_nan(self):
        with pytest.raises(ValueError):
            rr.RbmParams(W=[[np.nan]], b=[0.0], c=[0.0])

    def test_params_reject_mismatch(self):
        with pytest.raises(ValueError):
            rr.RbmParams(W=np.zeros((2, 2)), b=np.zeros(3), c=np.zeros(2))

    def test_params_arrays_immutable(self, rng):
        p = random_params(rng, 2, 2)
        with pytest.raises(ValueError):
            p.W[0, 0] = 1.0

    def test_dataset_rejects_nonbinary(self):
        with pytest.raises(ValueError):
            rr.BinaryDataset(np.array([[0.5]]))

    def test_dataset_rejects_empty(self):
        with pytest.raises(ValueError):
            rr.BinaryDataset(np.zeros((0, 3)))

    def test_distribution_must_normalize(self):
        with pytest.raises(ValueError):
            rr.ExactDistribution(np.array([0.5, 0.4]), 0.0)


class TestEnergy:
    def test_all_zero_state(self, rng):
        p = random_params(rng, 3, 2)
        assert rr.energy(p, np.zeros(3), np.zeros(2)) == 0.0

    def test_weight_term(self):
        p = rr.RbmParams(W=[[1.0], [1.0]], b=[0.0, 0.0], c=[0.0])
        assert rr.energy(p, [1, 1], [1]) == -2.0

    def test_bias_terms(self):
        p = rr.RbmParams(W=[[0.0]], b=[2.0], c=[3.0])
        assert rr.energy(p, [1], [1]) == -5.0

    def test_dimension_mismatch(self, rng):
        p = random_params(rng, 3, 2)
        with pytest.raises(ValueError):
            rr.energy(p, [1, 0], [0, 0])


class TestFreeEnergyPart1:
    def test_all_zero_params(self):
        assert rr.free_energy_part1(zero_params(3, 4), np.ones(3)) == pytest.approx(
            4 * LN2, abs=1e-12
        )

    def test_zero_x_reduces_to_hidden_biases(self, rng):
        p = random_params(rng, 4, 3)
        expected = np.log1p(np.exp(p.c)).sum()
        assert rr.free_energy_part1(p, np.zeros(4)) == pytest.approx(
            expected, abs=1e-10
        )

    def test_matches_bruteforce(self, rng):
        for _ in range(30):
            k, m = rng.integers(1, 7, size=2)
            p = random_params(rng, int(k), int(m))
            x = rng.integers(0, 2, size=int(k)).astype(float)
            assert rr.free_energy_part1(p, x) == pytest.approx(
                rr.part1_bruteforce(p, x), abs=1e-10
            )

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 2**31 - 1))
    def test_factorization_property(self, k, m, seed):
        gen = np.random.default_rng(seed)
        p = random_params(gen, k, m)
        x = gen.integers(0, 2, size=k).astype(float)
        assert abs(rr.free_energy_part1(p, x) - rr.part1_bruteforce(p, x)) <= 1e-9


class TestPart1Bruteforce:
    def test_zero_params(self):
        assert rr.part1_bruteforce(zero_params(2, 3), np.zeros(2)) == pytest.approx(
            3 * LN2, abs=1e-12
        )

    def test_single_inactive_unit(self):
        p = rr.RbmParams(W=np.zeros((2, 1)), b=np.zeros(2), c=np.zeros(1))
        assert rr.part1_bruteforce(p, np.ones(2)) == pytest.approx(LN2, abs=1e-12)

    def test_enumeration_guard(self):
        p = zero_params(2, 21)
        with pytest.raises(rr.EnumerationLimitError):
            rr.part1_bruteforce(p, np.zeros(2))


class TestLogPartition:
    def test_zero_params_factorized(self):
        assert rr.log_partition_factorized(zero_params(3, 2)) == pytest.approx(
            5 * LN2, abs=1e-12
        )

    def test_smallest_case(self):
        assert rr.log_partition_factorized(zero_params(1, 1)) == pytest.approx(
            math.log(4.0), abs=1e-12
        )

    def test_zero_params_bruteforce(self):
        assert rr.log_partition_bruteforce(zero_params(3, 2)) == pytest.approx(
            5 * LN2, abs=1e-12
        )

    def test_suppressed_hidden_unit_limit(self):
        # c = -30 freezes the single hidden unit, leaving ln 2^k + ln 1
        p = rr.RbmParams(W=np.zeros((2, 1)), b=np.zeros(2), c=[-30.0])
        assert rr.log_partition_bruteforce(p) == pytest.approx(
            2 * LN2, abs=1e-10
        )

    def test_routes_agree(self, rng):
        for _ in range(20):
            k, m = rng.integers(1, 7, size=2)
            p = random_params(rng, int(k), int(m))
            assert rr.log_partition_factorized(p) == pytest.approx(
                rr.log_partition_bruteforce(p), abs=1e-10
            )

    def test_chunked_bruteforce_still_agrees(self, rng):
        # k + m large enough that the x block is split into chunks
        p = random_params(rng, 12, 11, scale=0.5)
        assert rr.log_partition_factorized(p) == pytest.approx(
            rr.log_partition_bruteforce(p), abs=1e-9
        )

    def test_guards(self):
        with pytest.raises(rr.EnumerationLimitError):
            rr.log_partition_factorized(zero_params(21, 1))
        with pytest.raises(rr.EnumerationLimitError):
            rr.log_partition_bruteforce(zero_params(13, 12))


class TestExactLogLikelihood:
    def test_uniform_model(self):
        assert rr.exact_log_likelihood(zero_params(3, 2), [1, 0, 1]) == pytest.approx(
            -3 * LN2, abs=1e-12
        )

    def test_smallest_case(self):
        assert rr.exact_log_likelihood(zero_params(1, 1), [0]) == pytest.approx(
            -LN2, abs=1e-12
        )

    def test_matches_distribution_entry(self, rng):
        for _ in range(10):
            p = random_params(rng, 4, 3)
            dist = rr.exact_distribution(p)
            x = rng.integers(0, 2, size=4)
            idx = int(x @ (2 ** np.arange(4)))
            assert rr.exact_log_likelihood(p, x.astype(float)) == pytest.approx(
                math.log(dist.probabilities[idx]), abs=1e-10
            )

    def test_never_positive(self, rng):
        for _ in range(20):
            p = random_params(rng, 3, 3)
            x = rng.integers(0, 2, size=3).astype(float)
            assert rr.exact_log_likelihood(p, x) <= 1e-10


class TestExactDistribution:
    def test_uniform(self):
        dist = rr.exact_distribution(zero_params(2, 1))
        assert np.allclose(dist.probabilities, 0.25, atol=1e-12)

    def test_strong_visible_bias(self):
        p = rr.RbmParams(W=[[0.0]], b=[10.0], c=[0.0])
        assert rr.exact_distribution(p).probabilities[1] >= 0.9999

    def test_self_consistency(self, rng):
        p = random_params(rng, 3, 2)
        dist = rr.exact_distribution(p)
        for idx, x in enumerate(rr.enumerate_configs(3)):
            assert dist.probabilities[idx] == pytest.approx(
                math.exp(rr.exact_log_likelihood(p, x)), abs=1e-10
            )

    def test_normalization(self, rng):
        p = random_params(rng, 5, 4)
        assert abs(rr.exact_distribution(p).probabilities.sum() - 1.0) <= 1e-10


class TestSampleDataset:
    def test_rejects_empty_request(self, rng):
        with pytest.raises(ValueError):
            rr.sample_dataset(random_params(rng, 2, 2), 0, 1)

    def test_uniform_sampling_concentrates(self):
        data = rr.sample_dataset(zero_params(4, 2), 10_000, 13)
        means = data.samples.mean(axis=0)
        assert np.all(means >= 0.47) and np.all(means <= 0.53)

    def test_seed_determinism(self, rng):
        p = random_params(rng, 3, 2)
        a = rr.sample_dataset(p, 100, 5)
        b = rr.sample_dataset(p, 100, 5)
        assert np.array_equal(a.samples, b.samples)


class TestConventions:
    def test_bit_order(self):
        assert np.array_equal(
            rr.enumerate_configs(2), [[0, 0], [1, 0], [0, 1], [1, 1]]
        )

    def test_softplus_lipschitz(self, rng):
        g1 = rng.uniform(-50, 50, size=100_000)
        g2 = rng.uniform(-50, 50, size=100_000)
        assert np.all(
            np.abs(rr.softplus(g1) - rr.softplus(g2)) <= np.abs(g1 - g2) + 1e-12
        )

    def test_softplus_stable_at_extremes(self):
        assert rr.softplus(800.0) == 800.0
        assert rr.softplus(-800.0) == 0.0

    def test_dataset_log_likelihoods_matches_scalar(self, rng):
        p = random_params(rng, 4, 2)
        data = rr.sample_dataset(p, 20, 3)
        vec = rr.dataset_log_likelihoods(p, data)
        for i in range(5):
            assert vec[i] == pytest.approx(
                rr.exact_log_likelihood(p, data.samples[i]), abs=1e-12
            )
