"""Exact restricted Boltzmann machine quantities at desk scale.

A binary RBM over visible units x in {0,1}^k and hidden units h in {0,1}^m
assigns Energy(x, h) = -x'b - h'c - x'Wh.  Everything here is computed
exactly: the hidden sum factorizes per hidden unit, and the partition
function is obtained by enumerating visible configurations.  Enumeration
guards reject sizes where the tables stop fitting a desk-scale budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit, logsumexp

MAX_VISIBLE_ENUM = 20
MAX_HIDDEN_ENUM = 20
MAX_JOINT_ENUM = 24

# Perturbation added to free_energy_part1, used only by fault-injection
# tests to prove the verification suite catches a broken factorization.
PART1_FAULT_OFFSET = 0.0


class EnumerationLimitError(ValueError):
    """Raised when a requested enumeration exceeds the size guards."""


def softplus(g):
    """Numerically stable ln(1 + e^g).

    Evaluates as g + ln(1 + e^-g) for g > 0 so that large arguments do not
    overflow; this keeps the 1-Lipschitz property testable at |g| = 50.
    """
    return np.logaddexp(0.0, g)


def sigmoid(g):
    """Logistic function 1 / (1 + e^-g)."""
    return expit(g)


def _as_float_matrix(arr, name: str) -> np.ndarray:
    out = np.array(arr, dtype=float)
    if not np.all(np.isfinite(out)):
        raise ValueError(f"{name} must contain only finite entries")
    return out


@dataclass(frozen=True)
class RbmParams:
    """Parameter triple theta = {c, b, W} of a k-visible, m-hidden RBM."""

    W: np.ndarray
    b: np.ndarray
    c: np.ndarray
    k: int = field(init=False)
    m: int = field(init=False)

    def __post_init__(self):
        W = _as_float_matrix(self.W, "W")
        b = _as_float_matrix(self.b, "b")
        c = _as_float_matrix(self.c, "c")
        if W.ndim != 2:
            raise ValueError("W must be a k x m matrix")
        k, m = W.shape
        if k < 1 or m < 1:
            raise ValueError("k and m must be positive")
        if b.shape != (k,):
            raise ValueError("b must have length k")
        if c.shape != (m,):
            raise ValueError("c must have length m")
        for name, arr in (("W", W), ("b", b), ("c", c)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "m", m)


@dataclass(frozen=True)
class BinaryDataset:
    """Sample set S of n binary visible vectors, one per row."""

    samples: np.ndarray
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        samples = _as_float_matrix(self.samples, "samples")
        if samples.ndim != 2:
            raise ValueError("samples must be an n x k matrix")
        n, k = samples.shape
        if n < 1 or k < 1:
            raise ValueError("n and k must be positive")
        if not np.all((samples == 0.0) | (samples == 1.0)):
            raise ValueError("samples must contain only 0/1 entries")
        samples.flags.writeable = False
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)


@dataclass(frozen=True)
class ExactDistribution:
    """Exact visible-configuration probabilities plus ln Z."""

    probabilities: np.ndarray
    log_partition: float

    def __post_init__(self):
        probs = _as_float_matrix(self.probabilities, "probabilities")
        if probs.ndim != 1:
            raise ValueError("probabilities must be a vector")
        if np.any(probs < 0.0) or np.any(probs > 1.0):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(probs.sum() - 1.0) > 1e-10:
            raise ValueError("probabilities must sum to 1 within 1e-10")
        probs.flags.writeable = False
        object.__setattr__(self, "probabilities", probs)
        object.__setattr__(self, "log_partition", float(self.log_partition))


def enumerate_configs(bits: int) -> np.ndarray:
    """All 2^bits binary vectors in lexicographic order, bit 0 first.

    Row i holds the binary expansion of i with bit 0 stored in column 0,
    the fixed convention for ExactDistribution indices and file dumps.
    """
    if bits < 1:
        raise ValueError("bits must be positive")
    idx = np.arange(2 ** bits, dtype=np.int64)
    return ((idx[:, None] >> np.arange(bits)[None, :]) & 1).astype(float)


def _check_binary_vector(x, length: int, name: str) -> np.ndarray:
    out = np.asarray(x, dtype=float).reshape(-1)
    if out.shape != (length,):
        raise ValueError(f"{name} must have length {length}")
    if not np.all((out == 0.0) | (out == 1.0)):
        raise ValueError(f"{name} must be binary")
    return out


def energy(params: RbmParams, x, h) -> float:
    """Energy(x, h) = -x'b - h'c - x'Wh."""
    xv = _check_binary_vector(x, params.k, "x")
    hv = _check_binary_vector(h, params.m, "h")
    return float(-xv @ params.b - hv @ params.c - xv @ params.W @ hv)


def free_energy_part1(params: RbmParams, x) -> float:
    """ln of the hidden-configuration sum for one visible vector.

    The sum over h of exp(-Energy(x, h)) factorizes across hidden units,
    giving x'b + sum_j ln(1 + exp(x'W_j + c_j)).  Agreement with the
    brute-force hidden enumeration is the factorization oracle.
    """
    xv = _check_binary_vector(x, params.k, "x")
    value = xv @ params.b + softplus(xv @ params.W + params.c).sum()
    return float(value + PART1_FAULT_OFFSET)


def part1_bruteforce(params: RbmParams, x) -> float:
    """Oracle for free_energy_part1 by enumerating all 2^m hidden states."""
    if params.m > MAX_HIDDEN_ENUM:
        raise EnumerationLimitError(
            f"m={params.m} exceeds hidden enumeration limit {MAX_HIDDEN_ENUM}"
        )
    xv = _check_binary_vector(x, params.k, "x")
    H = enumerate_configs(params.m)
    # -Energy(x, h) = x'b + h'(c + W'x), linear in h
    exponents = xv @ params.b + H @ (params.c + params.W.T @ xv)
    return float(logsumexp(exponents))


def _part1_all_configs(params: RbmParams, X: np.ndarray) -> np.ndarray:
    # Vectorized factorized part 1 over rows of X; no fault hook so the
    # injected perturbation stays confined to free_energy_part1 itself.
    return X @ params.b + softplus(X @ params.W + params.c).sum(axis=1)


def log_partition_factorized(params: RbmParams) -> float:
    """ln Z via the factorized hidden sum and visible enumeration."""
    if params.k > MAX_VISIBLE_ENUM:
        raise EnumerationLimitError(
            f"k={params.k} exceeds visible enumeration limit {MAX_VISIBLE_ENUM}"
        )
    values = _part1_all_configs(params, enumerate_configs(params.k))
    return float(logsumexp(values))


def log_partition_bruteforce(params: RbmParams) -> float:
    """Oracle ln Z by the double sum over all (x, h) pairs, chunked over x."""
    if params.k + params.m > MAX_JOINT_ENUM:
        raise EnumerationLimitError(
            f"k+m={params.k + params.m} exceeds joint enumeration limit "
            f"{MAX_JOINT_ENUM}"
        )
    H = enumerate_configs(params.m)
    hidden_term = H @ params.c
    X = enumerate_configs(params.k)
    chunk = max(1, 2 ** 22 // H.shape[0])
    partials = []
    for start in range(0, X.shape[0], chunk):
        Xc = X[start:start + chunk]
        exponents = (Xc @ params.b)[:, None] + Xc @ params.W @ H.T + hidden_term
        partials.append(logsumexp(exponents))
    return float(logsumexp(partials))


def exact_log_likelihood(params: RbmParams, x) -> float:
    """ln p(x) = part 1 minus ln Z; never positive beyond roundoff."""
    return free_energy_part1(params, x) - log_partition_factorized(params)


def exact_distribution(params: RbmParams) -> ExactDistribution:
    """Probability table over all 2^k visible configurations."""
    if params.k > MAX_VISIBLE_ENUM:
        raise EnumerationLimitError(
            f"k={params.k} exceeds visible enumeration limit {MAX_VISIBLE_ENUM}"
        )
    values = _part1_all_configs(params, enumerate_configs(params.k))
    log_z = float(logsumexp(values))
    return ExactDistribution(np.exp(values - log_z), log_z)


def dataset_log_likelihoods(params: RbmParams, data: BinaryDataset) -> np.ndarray:
    """Exact ln p(x) for every dataset row, sharing one ln Z evaluation."""
    if data.k != params.k:
        raise ValueError("dataset width does not match params")
    log_z = log_partition_factorized(params)
    return _part1_all_configs(params, data.samples) - log_z


def sample_dataset(params: RbmParams, n: int, seed: int) -> BinaryDataset:
    """n i.i.d. exact draws via inverse CDF on the 2^k probability table."""
    if n < 1:
        raise ValueError("n must be positive")
    dist = exact_distribution(params)
    cdf = np.cumsum(dist.probabilities)
    rng = np.random.default_rng(seed)
    idx = np.searchsorted(cdf, rng.random(n), side="right")
    idx = np.minimum(idx, len(cdf) - 1)
    return BinaryDataset(enumerate_configs(params.k)[idx])
