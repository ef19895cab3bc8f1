"""Monte-Carlo estimation of empirical Rademacher complexity.

For a hypothesis class H and sample S of size n, the quantity estimated is
E_sigma[max over h in H of (1/n) sum_i sigma_i h(x_i)] with sigma uniform on
{-1,+1}^n.  The linear classes F and G admit the exact analytic inner
supremum (an l1/l-infinity duality); the nonlinear classes use multi-restart
projected gradient ascent, which only ever reports values of feasible
points, so every estimate is a certified lower bound of the true supremum.
That is the safe direction when estimates are compared against upper
bounds.

Per-sigma work is independent: sigma index i always draws its optimizer
randomness from the stream (master seed, i), so results do not depend on
scheduling.  Internally all restarts and sigma vectors are stacked into one
row-per-problem batch; every optimizer operation is row-wise, which keeps
each row's trajectory identical to a serial run.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .rbm import BinaryDataset, sigmoid, softplus

CLASS_NAMES = ("F", "G", "H", "LOGLIK_PART1", "T", "CD1_LOGZ", "FINITE_T")
SUP_KINDS = ("analytic", "optimized", "finite-max")

_LN2 = math.log(2.0)
_MIN_STEP = 1e-14


@dataclass(frozen=True)
class ConstraintSpec:
    """Radii of the hypothesis balls: ||b||_1 <= B, each ||W_j||_1 <= W."""

    B_radius: float
    W_radius: float
    c_mode: str = "fixed-zero"

    def __post_init__(self):
        for name in ("B_radius", "W_radius"):
            value = float(getattr(self, name))
            if not (value >= 0.0) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite nonnegative real")
            object.__setattr__(self, name, value)
        if self.c_mode != "fixed-zero":
            raise ValueError("c_mode must be 'fixed-zero'")


@dataclass(frozen=True)
class OptimizerSettings:
    """Projected-gradient-ascent controls shared by the nonlinear classers."""

    restarts: int = 8
    iterations: int = 500
    step_size: float = 0.1
    rel_tol: float = 1e-9
    fd_step: float = 1e-5

    def validate(self) -> None:
        if self.restarts < 4:
            raise ValueError("restarts must be at least 4")
        if self.iterations < 200:
            raise ValueError("iterations must be at least 200")
        if not (self.step_size > 0.0):
            raise ValueError("step_size must be positive")
        if not (self.rel_tol > 0.0):
            raise ValueError("rel_tol must be positive")
        if not (self.fd_step > 0.0):
            raise ValueError("fd_step must be positive")


@dataclass
class RademacherBatch:
    """Seeded sigma vectors plus the per-sigma inner-sup values once filled."""

    sigma_vectors: np.ndarray
    seed: int
    per_sigma_values: list | None = None

    def __post_init__(self):
        sig = np.asarray(self.sigma_vectors, dtype=float)
        if sig.ndim != 2:
            raise ValueError("sigma_vectors must be a count x n matrix")
        if not np.all(np.abs(sig) == 1.0):
            raise ValueError("sigma entries must be +1 or -1")
        self.sigma_vectors = sig
        self.seed = int(self.seed)


@dataclass(frozen=True)
class EstimateReport:
    """Monte-Carlo estimate of one class's empirical Rademacher complexity."""

    class_name: str
    mean: float
    stderr: float
    num_sigma: int
    optimizer_restarts: int
    optimizer_iterations: int
    inner_sup_kind: str
    seed: int
    num_excluded: int = 0

    def __post_init__(self):
        if self.class_name not in CLASS_NAMES:
            raise ValueError(f"unknown class name {self.class_name!r}")
        if self.inner_sup_kind not in SUP_KINDS:
            raise ValueError(f"unknown inner_sup_kind {self.inner_sup_kind!r}")
        if self.inner_sup_kind == "analytic" and self.class_name not in ("F", "G"):
            raise ValueError("analytic inner sup is reserved for classes F and G")
        if self.inner_sup_kind == "finite-max" and self.class_name != "FINITE_T":
            raise ValueError("finite-max inner sup is reserved for FINITE_T")


def sample_sigma_batch(n: int, count: int, seed: int) -> RademacherBatch:
    """count i.i.d. uniform sign vectors of length n, deterministic per seed."""
    if n < 1:
        raise ValueError("n must be positive")
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    sig = rng.integers(0, 2, size=(count, n)).astype(float) * 2.0 - 1.0
    return RademacherBatch(sigma_vectors=sig, seed=seed)


def sup_linear_l1(v, radius: float) -> float:
    """Exact sup of b'v over ||b||_1 <= radius, i.e. radius * max_j |v_j|.

    The supremum sits at a signed vertex radius * sign(v_j) e_j, so the
    coefficient enters through its absolute value.
    """
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.size == 0:
        raise ValueError("v must be nonempty")
    return float(radius * np.abs(v).max())


def _project_l1_rows(V: np.ndarray, radius: float) -> np.ndarray:
    """Row-wise Euclidean projection onto the l1 ball of given radius."""
    if radius == 0.0:
        return np.zeros_like(V)
    out = V.copy()
    over = np.abs(V).sum(axis=1) > radius
    if not over.any():
        return out
    A = np.abs(V[over])
    U = np.sort(A, axis=1)[:, ::-1]
    css = np.cumsum(U, axis=1)
    ranks = np.arange(1, V.shape[1] + 1)
    # rho = largest rank with sorted magnitude above the running threshold
    rho = np.count_nonzero(U * ranks > css - radius, axis=1)
    theta = (css[np.arange(len(rho)), rho - 1] - radius) / rho
    out[over] = np.sign(V[over]) * np.maximum(A - theta[:, None], 0.0)
    return out


def project_l1(v, radius: float) -> np.ndarray:
    """Euclidean projection of one vector onto {u : ||u||_1 <= radius}.

    Sort-and-threshold: magnitudes above a data-dependent threshold shrink
    by it, the rest clamp to zero.  Points already inside come back
    unchanged.
    """
    if radius < 0.0:
        raise ValueError("radius must be nonnegative")
    v = np.asarray(v, dtype=float).reshape(-1)
    return _project_l1_rows(v[None, :], radius)[0]


def _pga(value_fn, grad_fn, project_fn, Z0: np.ndarray, opt: OptimizerSettings):
    """Row-batched ascent: each row is an independent restart of a problem.

    Callbacks receive the current row block plus the original row indices so
    they can look up per-row data.  A row moves while the step improves it,
    halves its step otherwise, and retires once the relative improvement
    drops below rel_tol or the step underflows.  The best value ever seen
    per row (including the projected start) is returned, so the result is
    always attained by a feasible point.
    """
    total = Z0.shape[0]
    Z = project_fn(Z0)
    f = value_fn(Z, np.arange(total))
    best = f.copy()
    steps = np.full(total, opt.step_size)
    active = np.ones(total, dtype=bool)
    for _ in range(opt.iterations):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        Za = Z[idx]
        grad = grad_fn(Za, idx)
        cand = project_fn(Za + steps[idx][:, None] * grad)
        fc = value_fn(cand, idx)
        fa = f[idx]
        improved = fc > fa
        moved = idx[improved]
        Z[moved] = cand[improved]
        f[moved] = fc[improved]
        best[moved] = np.maximum(best[moved], fc[improved])
        rel = (fc[improved] - fa[improved]) / np.maximum(1.0, np.abs(fc[improved]))
        active[moved[rel < opt.rel_tol]] = False
        stalled = idx[~improved]
        steps[stalled] *= 0.5
        active[stalled[steps[stalled] < _MIN_STEP]] = False
    return best


def _finalize(
    class_name: str,
    values: np.ndarray,
    batch: RademacherBatch,
    kind: str,
    restarts: int,
    iterations: int,
) -> EstimateReport:
    values = np.asarray(values, dtype=float)
    finite = np.isfinite(values)
    used = values[finite]
    if used.size == 0:
        raise ValueError("every per-sigma inner sup came back non-finite")
    stderr = (
        float(used.std(ddof=1) / math.sqrt(used.size))
        if used.size > 1
        else float("nan")
    )
    batch.per_sigma_values = [float(v) for v in values]
    return EstimateReport(
        class_name=class_name,
        mean=float(used.mean()),
        stderr=stderr,
        num_sigma=int(used.size),
        optimizer_restarts=restarts,
        optimizer_iterations=iterations,
        inner_sup_kind=kind,
        seed=batch.seed,
        num_excluded=int(values.size - used.size),
    )


def _check_batch(data: BinaryDataset, batch: RademacherBatch) -> None:
    if batch.sigma_vectors.shape[1] != data.n:
        raise ValueError("sigma vectors must have length n")


def estimate_R_F(
    data: BinaryDataset, spec: ConstraintSpec, batch: RademacherBatch
) -> EstimateReport:
    """Linear class f(x) = b'x with ||b||_1 <= B; exact inner sup per sigma."""
    _check_batch(data, batch)
    V = batch.sigma_vectors @ data.samples
    values = spec.B_radius * np.abs(V).max(axis=1) / data.n
    return _finalize("F", values, batch, "analytic", 0, 0)


def estimate_R_G(
    data: BinaryDataset, spec: ConstraintSpec, batch: RademacherBatch
) -> EstimateReport:
    """Linear class g(x) = w'x with ||w||_1 <= W; c contributes nothing."""
    _check_batch(data, batch)
    V = batch.sigma_vectors @ data.samples
    values = spec.W_radius * np.abs(V).max(axis=1) / data.n
    return _finalize("G", values, batch, "analytic", 0, 0)


def _part1_value_rows(Z, X, sig_rows, lin_rows, m: int) -> np.ndarray:
    # Row r holds [b | w_1 .. w_m]; objective (m b'(sig X) + sig'softplus)/n.
    n, k = X.shape
    b = Z[:, :k]
    W_cols = Z[:, k:].reshape(Z.shape[0], m, k)
    lin = m * np.einsum("rk,rk->r", b, lin_rows)
    act = softplus(np.einsum("rjk,nk->rjn", W_cols, X))
    return (lin + np.einsum("rjn,rn->r", act, sig_rows)) / n


def _part1_grad_rows(Z, X, sig_rows, lin_rows, m: int) -> np.ndarray:
    n, k = X.shape
    W_cols = Z[:, k:].reshape(Z.shape[0], m, k)
    gb = m * lin_rows
    P = sigmoid(np.einsum("rjk,nk->rjn", W_cols, X))
    gw = (P * sig_rows[:, None, :]) @ X
    return np.concatenate([gb, gw.reshape(Z.shape[0], m * k)], axis=1) / n


def part1_objective(z, X, sig, m: int) -> float:
    """Objective of the part-1 family at one flat point z = [b | w_1 .. w_m]."""
    X = np.asarray(X, dtype=float)
    Z = np.asarray(z, dtype=float).reshape(1, -1)
    sig_rows = np.asarray(sig, dtype=float).reshape(1, -1)
    return float(_part1_value_rows(Z, X, sig_rows, sig_rows @ X, m)[0])


def part1_gradient(z, X, sig, m: int) -> np.ndarray:
    """Analytic gradient of part1_objective, same layout as z."""
    X = np.asarray(X, dtype=float)
    Z = np.asarray(z, dtype=float).reshape(1, -1)
    sig_rows = np.asarray(sig, dtype=float).reshape(1, -1)
    return _part1_grad_rows(Z, X, sig_rows, sig_rows @ X, m)[0]


def _part1_family(
    class_name: str,
    data: BinaryDataset,
    spec: ConstraintSpec,
    m: int,
    batch: RademacherBatch,
    opt: OptimizerSettings,
) -> EstimateReport:
    # Shared class: x -> m b'x + sum_j ln(1 + exp(w_j'x)); H is the m = 1 case.
    _check_batch(data, batch)
    opt.validate()
    if m < 1:
        raise ValueError("m must be positive")
    X = data.samples
    n, k = X.shape
    count = batch.sigma_vectors.shape[0]
    restarts = opt.restarts
    dim = (m + 1) * k

    sig_rows = np.repeat(batch.sigma_vectors, restarts, axis=0)
    lin_rows = sig_rows @ X

    starts = []
    for i in range(count):
        rng = np.random.default_rng([batch.seed, i])
        draw = rng.uniform(-1.0, 1.0, size=(restarts, dim))
        draw[:, :k] *= spec.B_radius
        draw[:, k:] *= spec.W_radius
        starts.append(draw)
    Z0 = np.concatenate(starts, axis=0)

    def value_fn(Z, idx):
        return _part1_value_rows(Z, X, sig_rows[idx], lin_rows[idx], m)

    def grad_fn(Z, idx):
        return _part1_grad_rows(Z, X, sig_rows[idx], lin_rows[idx], m)

    def project_fn(Z):
        b = _project_l1_rows(Z[:, :k], spec.B_radius)
        w = _project_l1_rows(
            Z[:, k:].reshape(-1, k), spec.W_radius
        ).reshape(Z.shape[0], m * k)
        return np.concatenate([b, w], axis=1)

    best = _pga(value_fn, grad_fn, project_fn, Z0, opt)
    per_sigma = best.reshape(count, restarts).max(axis=1)
    # The zero parameter point is always feasible; the reported sup must
    # dominate its objective m ln2 (sum_i sigma_i) / n.
    zero_vals = m * _LN2 * batch.sigma_vectors.sum(axis=1) / n
    values = np.maximum(per_sigma, zero_vals)
    return _finalize(
        class_name, values, batch, "optimized", opt.restarts, opt.iterations
    )


def estimate_R_H(
    data: BinaryDataset,
    spec: ConstraintSpec,
    batch: RademacherBatch,
    opt: OptimizerSettings = OptimizerSettings(),
) -> EstimateReport:
    """Class h(x) = b'x + ln(1 + exp(w'x)) over the two l1 balls."""
    return _part1_family("H", data, spec, 1, batch, opt)


def estimate_R_loglik_part1(
    data: BinaryDataset,
    spec: ConstraintSpec,
    m: int,
    batch: RademacherBatch,
    opt: OptimizerSettings = OptimizerSettings(),
) -> EstimateReport:
    """Part-1 log-likelihood class: shared b, one w_j per hidden unit."""
    return _part1_family("LOGLIK_PART1", data, spec, m, batch, opt)


def t_value(W, u: int, j: int, X) -> np.ndarray:
    """Values of t_W(x) = W_uj sigmoid(sum_v W_uv sigmoid(x'W_v)) on rows of X."""
    W = np.asarray(W, dtype=float)
    X = np.asarray(X, dtype=float)
    s = sigmoid(X @ W)
    mid = sigmoid(s @ W[u])
    return W[u, j] * mid


def _fd_gradient(value_fn, Z, idx, fd_step):
    grad = np.empty_like(Z)
    for q in range(Z.shape[1]):
        shift = np.zeros(Z.shape[1])
        shift[q] = fd_step
        grad[:, q] = (value_fn(Z + shift, idx) - value_fn(Z - shift, idx)) / (
            2.0 * fd_step
        )
    return grad


def _project_columns(Z: np.ndarray, k: int, m: int, radius: float) -> np.ndarray:
    # Rows hold flattened k x m matrices; each of the m columns gets its own
    # l1 projection.
    cols = Z.reshape(Z.shape[0], k, m).transpose(0, 2, 1).reshape(-1, k)
    cols = _project_l1_rows(cols, radius)
    return cols.reshape(Z.shape[0], m, k).transpose(0, 2, 1).reshape(Z.shape[0], -1)


def estimate_R_T(
    data: BinaryDataset,
    spec: ConstraintSpec,
    m: int,
    batch: RademacherBatch,
    opt: OptimizerSettings = OptimizerSettings(),
) -> EstimateReport:
    """Nested-sigmoid class T with a discrete outer max over the pair (u, j).

    Each (u, j) gets its own multi-restart ascent over W (every column inside
    the l1 ball); gradients are central finite differences.
    """
    _check_batch(data, batch)
    opt.validate()
    if m < 1:
        raise ValueError("m must be positive")
    X = data.samples
    n, k = X.shape
    count = batch.sigma_vectors.shape[0]
    restarts = opt.restarts
    pairs = [(u, j) for u in range(k) for j in range(m)]
    block = len(pairs) * restarts
    dim = k * m

    sig_rows = np.repeat(batch.sigma_vectors, block, axis=0)
    U = np.tile(np.repeat([u for u, _ in pairs], restarts), count)
    J = np.tile(np.repeat([j for _, j in pairs], restarts), count)

    starts = []
    for i in range(count):
        rng = np.random.default_rng([batch.seed, i])
        starts.append(rng.uniform(-1.0, 1.0, size=(block, dim)) * spec.W_radius)
    Z0 = np.concatenate(starts, axis=0)

    def value_fn(Z, idx):
        W_cube = Z.reshape(Z.shape[0], k, m)
        rows = np.arange(Z.shape[0])
        s = sigmoid(np.einsum("nk,rkm->rnm", X, W_cube))
        mid = sigmoid(np.einsum("rnm,rm->rn", s, W_cube[rows, U[idx], :]))
        t_vals = W_cube[rows, U[idx], J[idx]][:, None] * mid
        return np.einsum("rn,rn->r", t_vals, sig_rows[idx]) / n

    def grad_fn(Z, idx):
        return _fd_gradient(value_fn, Z, idx, opt.fd_step)

    def project_fn(Z):
        return _project_columns(Z, k, m, spec.W_radius)

    best = _pga(value_fn, grad_fn, project_fn, Z0, opt)
    per_sigma = best.reshape(count, block).max(axis=1)
    # W = 0 is feasible and gives t identically 0.
    values = np.maximum(per_sigma, 0.0)
    return _finalize("T", values, batch, "optimized", opt.restarts, opt.iterations)


def estimate_R_cd1_logZ(
    data: BinaryDataset,
    spec: ConstraintSpec,
    m: int,
    batch: RademacherBatch,
    opt: OptimizerSettings = OptimizerSettings(),
) -> EstimateReport:
    """Class x -> CD-1 approximate ln Z, optimized over column-bounded W."""
    _check_batch(data, batch)
    opt.validate()
    if m < 1:
        raise ValueError("m must be positive")
    X = data.samples
    n, k = X.shape
    count = batch.sigma_vectors.shape[0]
    restarts = opt.restarts
    dim = k * m

    sig_rows = np.repeat(batch.sigma_vectors, restarts, axis=0)

    starts = []
    for i in range(count):
        rng = np.random.default_rng([batch.seed, i])
        starts.append(rng.uniform(-1.0, 1.0, size=(restarts, dim)) * spec.W_radius)
    Z0 = np.concatenate(starts, axis=0)

    def value_fn(Z, idx):
        W_cube = Z.reshape(Z.shape[0], k, m)
        s = sigmoid(np.einsum("nk,rkm->rnm", X, W_cube))
        x_tilde = sigmoid(np.einsum("rnm,rkm->rnk", s, W_cube))
        act = softplus(np.einsum("rnk,rkm->rnm", x_tilde, W_cube)).sum(axis=2)
        return np.einsum("rn,rn->r", act, sig_rows[idx]) / n

    def grad_fn(Z, idx):
        return _fd_gradient(value_fn, Z, idx, opt.fd_step)

    def project_fn(Z):
        return _project_columns(Z, k, m, spec.W_radius)

    best = _pga(value_fn, grad_fn, project_fn, Z0, opt)
    per_sigma = best.reshape(count, restarts).max(axis=1)
    zero_vals = m * _LN2 * batch.sigma_vectors.sum(axis=1) / n
    values = np.maximum(per_sigma, zero_vals)
    return _finalize(
        "CD1_LOGZ", values, batch, "optimized", opt.restarts, opt.iterations
    )


def estimate_R_finite_T(
    data: BinaryDataset, members, batch: RademacherBatch
) -> EstimateReport:
    """Exact inner max over an explicit finite list of (W, u, j) members."""
    _check_batch(data, batch)
    members = list(members)
    if not members:
        raise ValueError("members must be nonempty")
    table = np.stack([t_value(W, u, j, data.samples) for W, u, j in members])
    values = (batch.sigma_vectors @ table.T).max(axis=1) / data.n
    return _finalize("FINITE_T", values, batch, "finite-max", 0, 0)


def generate_members(
    k: int, m: int, count: int, radius: float, seed: int
) -> list[tuple[np.ndarray, int, int]]:
    """Random T members: uniform W with columns projected into the l1 ball."""
    if count < 1:
        raise ValueError("count must be positive")
    rng = np.random.default_rng(seed)
    members = []
    for _ in range(count):
        W = rng.uniform(-1.0, 1.0, size=(k, m))
        for j in range(m):
            W[:, j] = project_l1(W[:, j], radius)
        members.append((W, int(rng.integers(k)), int(rng.integers(m))))
    return members


def count_quantized_behaviors(
    data: BinaryDataset, grid, u: int, j: int, epsilon: float
) -> int:
    """Distinct epsilon-rounded value vectors of t_W over the sample."""
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    grid = list(grid)
    if not grid:
        raise ValueError("grid must be nonempty")
    table = np.stack([t_value(W, u, j, data.samples) for W in grid])
    quantized = np.round(table / epsilon).astype(np.int64)
    return int(np.unique(quantized, axis=0).shape[0])
