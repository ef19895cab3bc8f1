"""Mean-field CD-1: inference passes, approximate log-partition, training.

The hidden and visible passes replace each binary unit by its conditional
expectation, a sigmoid of its input, with biases ignored throughout.  The
resulting one-step reconstruction yields a per-observation approximation of
ln Z and a deterministic weight update whose training progress is audited
against the exact likelihood from the rbm module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rbm import (
    BinaryDataset,
    EnumerationLimitError,
    RbmParams,
    _check_binary_vector,
    dataset_log_likelihoods,
    sigmoid,
    softplus,
)

MAX_AUDIT_VISIBLE = 12
BATCH_CAP = 32


@dataclass(frozen=True)
class MeanFieldState:
    """One mean-field sweep: h_tilde from x, then x_tilde from h_tilde."""

    h_tilde: np.ndarray
    x_tilde: np.ndarray
    source_x: np.ndarray

    def __post_init__(self):
        for name in ("h_tilde", "x_tilde"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if np.any(arr <= 0.0) or np.any(arr >= 1.0):
                raise ValueError(f"{name} entries must lie strictly in (0, 1)")
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        src = np.asarray(self.source_x, dtype=float)
        src.flags.writeable = False
        object.__setattr__(self, "source_x", src)


@dataclass(frozen=True)
class TrainingTrace:
    """One audit row of a CD-1 training run."""

    epoch: int
    mean_exact_loglik: float
    learning_rate: float
    seed: int


def meanfield_hidden(params: RbmParams, x) -> np.ndarray:
    """Hidden expectations h_tilde_j = sigmoid(x'W_j), biases ignored."""
    xv = _check_binary_vector(x, params.k, "x")
    return sigmoid(xv @ params.W)


def meanfield_visible(params: RbmParams, h_tilde) -> np.ndarray:
    """Visible expectations x_tilde_i = sigmoid(W_i. h_tilde)."""
    hv = np.asarray(h_tilde, dtype=float).reshape(-1)
    if hv.shape != (params.m,):
        raise ValueError(f"h_tilde must have length {params.m}")
    if np.any(hv <= 0.0) or np.any(hv >= 1.0):
        raise ValueError("h_tilde entries must lie strictly in (0, 1)")
    return sigmoid(params.W @ hv)


def mean_field_state(params: RbmParams, x) -> MeanFieldState:
    """Full sweep packaged with its source vector."""
    h_tilde = meanfield_hidden(params, x)
    x_tilde = meanfield_visible(params, h_tilde)
    xv = _check_binary_vector(x, params.k, "x")
    return MeanFieldState(h_tilde=h_tilde, x_tilde=x_tilde, source_x=xv)


def cd1_log_partition(params: RbmParams, x) -> float:
    """Approximate ln Z from one mean-field reconstruction of x.

    Equals sum_j ln(1 + exp(sum_i W_ij sigmoid(sum_v W_iv sigmoid(x'W_v)))),
    the part-1 factorization evaluated at the reconstructed x_tilde.  Written
    out inline; the composition through meanfield_hidden and
    meanfield_visible is the test oracle.
    """
    xv = _check_binary_vector(x, params.k, "x")
    inner = sigmoid(xv @ params.W)
    x_tilde = sigmoid(params.W @ inner)
    return float(softplus(x_tilde @ params.W).sum())


def cd1_approx_log_likelihood(params: RbmParams, x) -> float:
    """Bias-free part 1 minus the CD-1 approximate ln Z."""
    xv = _check_binary_vector(x, params.k, "x")
    return float(softplus(xv @ params.W).sum()) - cd1_log_partition(params, x)


def cd1_gradient_step(
    params: RbmParams,
    minibatch: BinaryDataset,
    learning_rate: float,
    seed: int,
) -> RbmParams:
    """One CD-1 update from batch-mean positive and negative statistics.

    W moves by the mean of x h_tilde' - x_tilde h_tilde'' over the batch,
    where the negative-phase hidden pass feeds the real-valued x_tilde back
    through the sigmoid.  Biases stay frozen.  The fully mean-field rule is
    deterministic; seed is accepted for interface stability with sampling
    variants and not consumed.
    """
    del seed
    if learning_rate < 0.0:
        raise ValueError("learning_rate must be nonnegative")
    if minibatch.k != params.k:
        raise ValueError("minibatch width does not match params")
    X = minibatch.samples
    H = sigmoid(X @ params.W)
    X_tilde = sigmoid(H @ params.W.T)
    H_neg = sigmoid(X_tilde @ params.W)
    delta = (X.T @ H - X_tilde.T @ H_neg) / minibatch.n
    return RbmParams(W=params.W + learning_rate * delta, b=params.b, c=params.c)


def train_cd1(
    init: RbmParams,
    data: BinaryDataset,
    epochs: int,
    learning_rate: float,
    seed: int,
    audit_every: int = 1,
) -> list[TrainingTrace]:
    """CD-1 over shuffled minibatches with exact-likelihood audits.

    Epoch 0 records the initialization; afterwards every audit_every-th
    epoch and the final epoch are audited.  Batch size is min(n, 32) and the
    shuffle is reseeded per epoch from (seed, epoch), so a fixed seed gives
    a bit-identical trace.
    """
    if init.k > MAX_AUDIT_VISIBLE:
        raise EnumerationLimitError(
            f"k={init.k} exceeds exact-audit limit {MAX_AUDIT_VISIBLE}"
        )
    if data.k != init.k:
        raise ValueError("dataset width does not match params")
    if epochs < 0:
        raise ValueError("epochs must be nonnegative")
    if audit_every < 1:
        raise ValueError("audit_every must be positive")
    if learning_rate < 0.0:
        raise ValueError("learning_rate must be nonnegative")

    batch_size = min(data.n, BATCH_CAP)
    params = init

    def audit(epoch: int) -> TrainingTrace:
        mean_ll = float(dataset_log_likelihoods(params, data).mean())
        return TrainingTrace(
            epoch=epoch,
            mean_exact_loglik=mean_ll,
            learning_rate=float(learning_rate),
            seed=int(seed),
        )

    trace = [audit(0)]
    for epoch in range(1, epochs + 1):
        rng = np.random.default_rng([seed, epoch])
        order = rng.permutation(data.n)
        for start in range(0, data.n, batch_size):
            rows = order[start:start + batch_size]
            batch = BinaryDataset(data.samples[rows])
            params = cd1_gradient_step(params, batch, learning_rate, seed)
        if epoch % audit_every == 0 or epoch == epochs:
            trace.append(audit(epoch))
    return trace
