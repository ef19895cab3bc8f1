"""One-shot verification suites over the library's core identities.

Each suite runs a fixed seeded batch of checks and reports how many failed.
The CLI `verify` subcommand executes all of them and exits nonzero when any
check fails, which makes the suite usable as a build gate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import cd1, rademacher, rbm


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: int

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _random_params(rng, k: int, m: int, scale: float = 2.0) -> rbm.RbmParams:
    return rbm.RbmParams(
        W=rng.uniform(-scale, scale, size=(k, m)),
        b=rng.uniform(-scale, scale, size=k),
        c=rng.uniform(-scale, scale, size=m),
    )


def suite_factorization(seed: int = 0) -> SuiteResult:
    """free_energy_part1 against the 2^m hidden enumeration."""
    rng = np.random.default_rng([seed, 1])
    checks = failures = 0
    for _ in range(50):
        k = int(rng.integers(1, 7))
        m = int(rng.integers(1, 7))
        params = _random_params(rng, k, m)
        for _ in range(4):
            x = rng.integers(0, 2, size=k).astype(float)
            gap = abs(
                rbm.free_energy_part1(params, x) - rbm.part1_bruteforce(params, x)
            )
            checks += 1
            failures += gap > 1e-9
    return SuiteResult("factorization", checks, failures)


def suite_partition(seed: int = 0) -> SuiteResult:
    """Factorized ln Z against the double enumeration."""
    rng = np.random.default_rng([seed, 2])
    checks = failures = 0
    for _ in range(25):
        k = int(rng.integers(1, 8))
        m = int(rng.integers(1, min(8, 11 - k)))
        params = _random_params(rng, k, m)
        gap = abs(
            rbm.log_partition_factorized(params)
            - rbm.log_partition_bruteforce(params)
        )
        checks += 1
        failures += gap > 1e-9
    return SuiteResult("partition", checks, failures)


def suite_lipschitz(seed: int = 0) -> SuiteResult:
    """|softplus(g1) - softplus(g2)| <= |g1 - g2| on [-50, 50]."""
    rng = np.random.default_rng([seed, 3])
    g1 = rng.uniform(-50.0, 50.0, size=100_000)
    g2 = rng.uniform(-50.0, 50.0, size=100_000)
    bad = np.abs(rbm.softplus(g1) - rbm.softplus(g2)) > np.abs(g1 - g2) + 1e-12
    return SuiteResult("lipschitz", g1.size, int(bad.sum()))


def suite_projection(seed: int = 0) -> SuiteResult:
    """project_l1 feasibility, idempotence, and distance dominance."""
    rng = np.random.default_rng([seed, 4])
    checks = failures = 0
    for _ in range(200):
        d = int(rng.integers(1, 9))
        radius = float(rng.uniform(0.0, 2.0))
        v = rng.uniform(-3.0, 3.0, size=d)
        p = rademacher.project_l1(v, radius)
        checks += 3
        failures += np.abs(p).sum() > radius + 1e-12
        failures += np.max(np.abs(rademacher.project_l1(p, radius) - p)) > 1e-12
        # projection must be at least as close as any sampled feasible point
        q = rng.uniform(-1.0, 1.0, size=d)
        norm = np.abs(q).sum()
        if norm > radius and norm > 0.0:
            q *= radius / norm
        failures += (
            np.linalg.norm(v - p) > np.linalg.norm(v - q) + 1e-12
        )
    return SuiteResult("projection", checks, failures)


def suite_gradient(seed: int = 0) -> SuiteResult:
    """Analytic part-1-family gradients against central differences."""
    rng = np.random.default_rng([seed, 5])
    checks = failures = 0
    for _ in range(25):
        n = int(rng.integers(2, 9))
        k = int(rng.integers(1, 5))
        m = int(rng.integers(1, 4))
        X = rng.integers(0, 2, size=(n, k)).astype(float)
        sig = rng.integers(0, 2, size=n).astype(float) * 2.0 - 1.0
        z = rng.uniform(-1.0, 1.0, size=(m + 1) * k)

        def objective(vec):
            b, W_cols = vec[:k], vec[k:].reshape(m, k)
            lin = m * float(sig @ X @ b)
            return (
                lin + float(sig @ rbm.softplus(X @ W_cols.T).sum(axis=1))
            ) / n

        analytic = np.concatenate(
            [
                m * (sig @ X),
                ((rbm.sigmoid(z[k:].reshape(m, k) @ X.T) * sig) @ X).ravel(),
            ]
        ) / n
        fd = np.empty_like(z)
        for q in range(z.size):
            shift = np.zeros(z.size)
            shift[q] = 1e-5
            fd[q] = (objective(z + shift) - objective(z - shift)) / 2e-5
        # denominator floored at 1: zero-gradient instances otherwise divide
        # finite-difference ulp noise by an arbitrary tiny constant
        rel = np.linalg.norm(analytic - fd) / max(1.0, np.linalg.norm(analytic))
        checks += 1
        failures += rel > 1e-4
    return SuiteResult("gradient", checks, failures)


def suite_holder(seed: int = 0) -> SuiteResult:
    """sup_linear_l1 against brute force over the 2d signed vertices."""
    rng = np.random.default_rng([seed, 6])
    checks = failures = 0
    for _ in range(200):
        d = int(rng.integers(1, 7))
        radius = float(rng.uniform(0.0, 3.0))
        v = rng.uniform(-4.0, 4.0, size=d)
        vertices = np.concatenate([radius * np.eye(d), -radius * np.eye(d)])
        gap = abs(rademacher.sup_linear_l1(v, radius) - (vertices @ v).max())
        checks += 1
        failures += gap > 1e-12
    return SuiteResult("holder", checks, failures)


def suite_meanfield(seed: int = 0) -> SuiteResult:
    """Mean-field ranges and the CD-1 log-partition composition identity."""
    rng = np.random.default_rng([seed, 7])
    checks = failures = 0
    for _ in range(50):
        k = int(rng.integers(1, 7))
        m = int(rng.integers(1, 7))
        params = _random_params(rng, k, m)
        x = rng.integers(0, 2, size=k).astype(float)
        h_tilde = cd1.meanfield_hidden(params, x)
        x_tilde = cd1.meanfield_visible(params, h_tilde)
        checks += 3
        failures += not (np.all(h_tilde > 0.0) and np.all(h_tilde < 1.0))
        failures += not (np.all(x_tilde > 0.0) and np.all(x_tilde < 1.0))
        composed = float(rbm.softplus(x_tilde @ params.W).sum())
        failures += abs(cd1.cd1_log_partition(params, x) - composed) > 1e-12
    zero = rbm.RbmParams(W=np.zeros((3, 2)), b=np.zeros(3), c=np.zeros(2))
    checks += 1
    failures += abs(
        cd1.cd1_log_partition(zero, np.zeros(3)) - 2.0 * math.log(2.0)
    ) > 1e-12
    return SuiteResult("meanfield", checks, failures)


ALL_SUITES = (
    suite_factorization,
    suite_partition,
    suite_lipschitz,
    suite_projection,
    suite_gradient,
    suite_holder,
    suite_meanfield,
)


def run_all(seed: int = 0) -> list[SuiteResult]:
    return [suite(seed) for suite in ALL_SUITES]
