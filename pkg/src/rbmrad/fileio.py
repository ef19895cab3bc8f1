"""Plain-text file formats: datasets, parameters, T members, CSV reports.

All real numbers are written with 17 significant digits so that every file
round-trips to the exact float64 value and reruns with identical inputs
produce byte-identical output.
"""

from __future__ import annotations

import numpy as np

from .bounds import BoundReport
from .cd1 import TrainingTrace
from .rademacher import EstimateReport
from .rbm import BinaryDataset, RbmParams

BOUNDS_HEADER = "bound_name,B,W,k,m,n,d,ln_card_T,vc,value"
ESTIMATE_HEADER = (
    "class_name,n,k,m,B_radius,W_radius,num_sigma,restarts,"
    "inner_sup_kind,mean,stderr,seed"
)
COMPARISON_HEADER = (
    "class_name,estimate_mean,estimate_stderr,bound_name,bound_value,satisfied"
)
TRACE_HEADER = "epoch,mean_exact_loglik,learning_rate,seed"


def fmt_real(x) -> str:
    return format(float(x), ".17g")


def _fmt_field(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, str):
        return value
    return fmt_real(value)


def _parse_tagged(token: str, tag: str) -> int:
    prefix = tag + "="
    if not token.startswith(prefix):
        raise ValueError(f"expected '{prefix}<int>', got {token!r}")
    return int(token[len(prefix):])


def write_dataset(path, data: BinaryDataset) -> None:
    lines = [f"k={data.k} n={data.n}"]
    for row in data.samples:
        lines.append(" ".join("1" if v else "0" for v in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_dataset(path) -> BinaryDataset:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("empty dataset file")
    k_tok, n_tok = lines[0].split()
    k = _parse_tagged(k_tok, "k")
    n = _parse_tagged(n_tok, "n")
    if len(lines) != n + 1:
        raise ValueError(f"expected {n} sample lines, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        bits = ln.split()
        if len(bits) != k or any(b not in ("0", "1") for b in bits):
            raise ValueError(f"malformed sample line {ln!r}")
        rows.append([float(b) for b in bits])
    return BinaryDataset(np.array(rows))


def write_params(path, params: RbmParams) -> None:
    lines = [f"k={params.k} m={params.m}"]
    for row in params.W:
        lines.append(" ".join(fmt_real(v) for v in row))
    lines.append(" ".join(fmt_real(v) for v in params.b))
    lines.append(" ".join(fmt_real(v) for v in params.c))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_params(path) -> RbmParams:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("empty parameters file")
    k_tok, m_tok = lines[0].split()
    k = _parse_tagged(k_tok, "k")
    m = _parse_tagged(m_tok, "m")
    if len(lines) != k + 3:
        raise ValueError(f"expected {k} weight rows plus b and c lines")
    W = np.array([[float(v) for v in lines[1 + i].split()] for i in range(k)])
    b = np.array([float(v) for v in lines[k + 1].split()])
    c = np.array([float(v) for v in lines[k + 2].split()])
    return RbmParams(W=W, b=b, c=c)


def write_members(path, members) -> None:
    members = list(members)
    if not members:
        raise ValueError("members must be nonempty")
    k, m = np.asarray(members[0][0]).shape
    lines = [f"k={k} m={m} count={len(members)}"]
    for W, u, j in members:
        W = np.asarray(W, dtype=float)
        if W.shape != (k, m):
            raise ValueError("all member matrices must share one shape")
        lines.append(f"u={u} j={j}")
        for row in W:
            lines.append(" ".join(fmt_real(v) for v in row))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def read_members(path) -> list:
    with open(path) as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("empty members file")
    k_tok, m_tok, count_tok = lines[0].split()
    k = _parse_tagged(k_tok, "k")
    m = _parse_tagged(m_tok, "m")
    count = _parse_tagged(count_tok, "count")
    expected = 1 + count * (k + 1)
    if len(lines) != expected:
        raise ValueError(f"expected {expected} lines, found {len(lines)}")
    members = []
    pos = 1
    for _ in range(count):
        u_tok, j_tok = lines[pos].split()
        u = _parse_tagged(u_tok, "u")
        j = _parse_tagged(j_tok, "j")
        W = np.array(
            [[float(v) for v in lines[pos + 1 + i].split()] for i in range(k)]
        )
        if W.shape != (k, m):
            raise ValueError("malformed member weight block")
        members.append((W, u, j))
        pos += k + 1
    return members


def _write_csv(path, header: str, rows) -> None:
    lines = [header]
    columns = header.split(",")
    for row in rows:
        lines.append(",".join(_fmt_field(row.get(col)) for col in columns))
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _read_csv(path) -> list[dict]:
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines:
        raise ValueError("empty CSV file")
    columns = lines[0].split(",")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != len(columns):
            raise ValueError(f"malformed CSV line {ln!r}")
        rows.append({col: (val if val != "" else None) for col, val in zip(columns, parts)})
    return rows


def bound_row(report: BoundReport) -> dict:
    row = {"bound_name": report.bound_name, "value": report.value}
    for key in ("B", "W", "k", "m", "n", "d", "ln_card_T", "vc"):
        row[key] = report.inputs.get(key)
    return row


def write_bounds_csv(path, reports) -> None:
    _write_csv(path, BOUNDS_HEADER, [bound_row(r) for r in reports])


def read_bounds_csv(path) -> list[dict]:
    rows = _read_csv(path)
    for row in rows:
        for key in ("B", "W", "ln_card_T", "value"):
            if row.get(key) is not None:
                row[key] = float(row[key])
        for key in ("k", "m", "n", "d", "vc"):
            if row.get(key) is not None:
                row[key] = int(row[key])
    return rows


def estimate_row(
    report: EstimateReport,
    n: int,
    k: int,
    m: int | None,
    B_radius: float | None,
    W_radius: float | None,
) -> dict:
    return {
        "class_name": report.class_name,
        "n": n,
        "k": k,
        "m": m,
        "B_radius": B_radius,
        "W_radius": W_radius,
        "num_sigma": report.num_sigma,
        "restarts": report.optimizer_restarts,
        "inner_sup_kind": report.inner_sup_kind,
        "mean": report.mean,
        "stderr": report.stderr,
        "seed": report.seed,
    }


def write_estimate_csv(path, rows) -> None:
    _write_csv(path, ESTIMATE_HEADER, rows)


def read_estimate_csv(path) -> list[dict]:
    rows = _read_csv(path)
    for row in rows:
        for key in ("B_radius", "W_radius", "mean", "stderr"):
            if row.get(key) is not None:
                row[key] = float(row[key])
        for key in ("n", "k", "m", "num_sigma", "restarts", "seed"):
            if row.get(key) is not None:
                row[key] = int(row[key])
    return rows


def write_comparison_csv(path, rows) -> None:
    _write_csv(path, COMPARISON_HEADER, rows)


def read_comparison_csv(path) -> list[dict]:
    rows = _read_csv(path)
    for row in rows:
        for key in ("estimate_mean", "estimate_stderr", "bound_value"):
            if row.get(key) is not None:
                row[key] = float(row[key])
    return rows


def write_trace_csv(path, traces) -> None:
    rows = [
        {
            "epoch": t.epoch,
            "mean_exact_loglik": t.mean_exact_loglik,
            "learning_rate": t.learning_rate,
            "seed": t.seed,
        }
        for t in traces
    ]
    _write_csv(path, TRACE_HEADER, rows)


def read_trace_csv(path) -> list[TrainingTrace]:
    rows = _read_csv(path)
    return [
        TrainingTrace(
            epoch=int(row["epoch"]),
            mean_exact_loglik=float(row["mean_exact_loglik"]),
            learning_rate=float(row["learning_rate"]),
            seed=int(row["seed"]),
        )
        for row in rows
    ]
