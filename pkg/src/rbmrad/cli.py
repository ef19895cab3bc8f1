"""Command-line experiment harness.

Subcommands: gen-data, bounds, estimate, compare, train, verify.  Exit
codes: 0 success, 2 configuration error, 3 verification-suite failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import bounds as bc
from . import fileio, verify
from .cd1 import train_cd1
from .config import ConfigError, ExperimentConfig, load_config
from .rademacher import (
    CLASS_NAMES,
    ConstraintSpec,
    OptimizerSettings,
    estimate_R_cd1_logZ,
    estimate_R_F,
    estimate_R_finite_T,
    estimate_R_G,
    estimate_R_H,
    estimate_R_loglik_part1,
    estimate_R_T,
    sample_sigma_batch,
)
from .rbm import BinaryDataset, RbmParams, sample_dataset

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_SUITE = 3
EXIT_IO = 4


def _resolve_config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        cfg.seed = args.seed
    if args.out is not None:
        cfg.output_dir = args.out
    cfg.validate()
    return cfg


def _path(cfg: ExperimentConfig, name: str) -> str:
    return os.path.join(cfg.output_dir, name)


def cmd_gen_data(cfg: ExperimentConfig) -> int:
    os.makedirs(cfg.output_dir, exist_ok=True)
    if cfg.data_source == "bernoulli-half":
        rng = np.random.default_rng(cfg.seed)
        samples = rng.integers(0, 2, size=(cfg.n, cfg.k)).astype(float)
        data = BinaryDataset(samples)
    else:
        rng = np.random.default_rng([cfg.seed, 0])
        W = rng.uniform(-1.0, 1.0, size=(cfg.k, cfg.m))
        for j in range(cfg.m):
            norm = np.abs(W[:, j]).sum()
            if norm > cfg.W_radius and norm > 0.0:
                W[:, j] *= cfg.W_radius / norm
        params = RbmParams(W=W, b=np.zeros(cfg.k), c=np.zeros(cfg.m))
        fileio.write_params(_path(cfg, "params.txt"), params)
        print(f"wrote {_path(cfg, 'params.txt')}")
        data = sample_dataset(params, cfg.n, cfg.seed)
    fileio.write_dataset(_path(cfg, "dataset.txt"), data)
    print(f"wrote {_path(cfg, 'dataset.txt')}")
    return EXIT_OK


def cmd_bounds(cfg: ExperimentConfig) -> int:
    os.makedirs(cfg.output_dir, exist_ok=True)
    reports = []
    skipped = 0

    def add(name, compute, inputs):
        nonlocal skipped
        try:
            reports.append(bc.BoundReport(name, compute(), inputs))
        except ValueError as exc:
            skipped += 1
            print(f"skipping {name}: {exc}", file=sys.stderr)

    B, W, k, m, n = cfg.B_radius, cfg.W_radius, cfg.k, cfg.m, cfg.n
    ln_card = math.log(cfg.num_members)
    add("LEMMA1", lambda: bc.bound_lemma1(B, k, n), {"B": B, "d": k, "n": n})
    add("REMARK2", lambda: bc.bound_remark2(W, k, n), {"W": W, "d": k, "n": n})
    add(
        "THEOREM1",
        lambda: bc.bound_theorem1(B, W, k, m, n),
        {"B": B, "W": W, "k": k, "m": m, "n": n},
    )
    add(
        "LEMMA4_FINITE",
        lambda: bc.bound_lemma4_finite(W, ln_card, n),
        {"W": W, "ln_card_T": ln_card, "n": n},
    )
    for vc in cfg.vc_values:
        add(
            "SAUER_SHELAH",
            lambda vc=vc: bc.sauer_shelah_ln_card(vc, n),
            {"vc": vc, "n": n},
        )
        add(
            "COROLLARY1",
            lambda vc=vc: bc.bound_corollary1(W, k, m, n, vc),
            {"W": W, "k": k, "m": m, "n": n, "vc": vc},
        )
    fileio.write_bounds_csv(_path(cfg, "bounds.csv"), reports)
    print(f"wrote {_path(cfg, 'bounds.csv')}")
    if skipped:
        print(f"skipped {skipped} row(s) with invalid inputs", file=sys.stderr)
    return EXIT_OK


def cmd_estimate(cfg: ExperimentConfig, class_name: str) -> int:
    data = fileio.read_dataset(_path(cfg, "dataset.txt"))
    batch = sample_sigma_batch(data.n, cfg.num_sigma, cfg.seed)
    spec = ConstraintSpec(B_radius=cfg.B_radius, W_radius=cfg.W_radius)
    opt = OptimizerSettings(restarts=cfg.restarts, iterations=cfg.iterations)

    m_ctx: int | None = cfg.m
    B_ctx: float | None = cfg.B_radius
    W_ctx: float | None = cfg.W_radius
    if class_name == "F":
        report, m_ctx = estimate_R_F(data, spec, batch), None
    elif class_name == "G":
        report, m_ctx = estimate_R_G(data, spec, batch), None
    elif class_name == "H":
        report, m_ctx = estimate_R_H(data, spec, batch, opt), None
    elif class_name == "LOGLIK_PART1":
        report = estimate_R_loglik_part1(data, spec, cfg.m, batch, opt)
    elif class_name == "T":
        report = estimate_R_T(data, spec, cfg.m, batch, opt)
    elif class_name == "CD1_LOGZ":
        report = estimate_R_cd1_logZ(data, spec, cfg.m, batch, opt)
    elif class_name == "FINITE_T":
        members_path = cfg.members_file or _path(cfg, "members.txt")
        members = fileio.read_members(members_path)
        report = estimate_R_finite_T(data, members, batch)
        m_ctx, B_ctx, W_ctx = None, None, None
    else:
        raise ConfigError(f"unknown class name {class_name!r}")

    row = fileio.estimate_row(report, data.n, data.k, m_ctx, B_ctx, W_ctx)
    out = _path(cfg, f"estimate_{class_name}.csv")
    fileio.write_estimate_csv(out, [row])
    print(f"wrote {out}")
    if report.num_excluded:
        print(
            f"excluded {report.num_excluded} non-finite inner sup value(s)",
            file=sys.stderr,
        )
    return EXIT_OK


def _match(bound_rows, name, **inputs):
    out = []
    for row in bound_rows:
        if row["bound_name"] != name:
            continue
        if all(row.get(key) == value for key, value in inputs.items()):
            out.append(row)
    return out


def cmd_compare(cfg: ExperimentConfig) -> int:
    bound_rows = fileio.read_bounds_csv(_path(cfg, "bounds.csv"))
    estimates = []
    for cls in CLASS_NAMES:
        path = _path(cfg, f"estimate_{cls}.csv")
        if os.path.exists(path):
            estimates.extend(fileio.read_estimate_csv(path))

    rows = []

    def emit(est, bound_name, bound_value):
        rows.append(
            {
                "class_name": est["class_name"],
                "estimate_mean": est["mean"],
                "estimate_stderr": est["stderr"],
                "bound_name": bound_name,
                "bound_value": bound_value,
                "satisfied": est["mean"] <= bound_value + 3.0 * est["stderr"],
            }
        )

    def note(est, message):
        print(f"{est['class_name']}: {message}", file=sys.stderr)

    part1_est = cd1_est = None
    for est in estimates:
        cls = est["class_name"]
        if cls == "F":
            hits = _match(bound_rows, "LEMMA1", B=est["B_radius"], d=est["k"], n=est["n"])
            if hits:
                emit(est, "LEMMA1", hits[0]["value"])
            else:
                note(est, "no LEMMA1 bound row with matching inputs")
        elif cls == "G":
            hits = _match(bound_rows, "REMARK2", W=est["W_radius"], d=est["k"], n=est["n"])
            if hits:
                emit(est, "REMARK2", hits[0]["value"])
            else:
                note(est, "no REMARK2 bound row with matching inputs")
        elif cls == "H":
            lem = _match(bound_rows, "LEMMA1", B=est["B_radius"], d=est["k"], n=est["n"])
            rem = _match(bound_rows, "REMARK2", W=est["W_radius"], d=est["k"], n=est["n"])
            if lem and rem:
                emit(est, "LEMMA1+REMARK2", lem[0]["value"] + rem[0]["value"])
            else:
                note(est, "need matching LEMMA1 and REMARK2 bound rows")
        elif cls == "LOGLIK_PART1":
            part1_est = part1_est or est
            hits = _match(
                bound_rows,
                "THEOREM1",
                B=est["B_radius"],
                W=est["W_radius"],
                k=est["k"],
                m=est["m"],
                n=est["n"],
            )
            if hits:
                emit(est, "THEOREM1", hits[0]["value"])
            else:
                note(est, "no THEOREM1 bound row with matching inputs")
        elif cls == "FINITE_T":
            hits = _match(bound_rows, "LEMMA4_FINITE", n=est["n"])
            if hits:
                emit(est, "LEMMA4_FINITE", hits[0]["value"])
            else:
                note(est, "no LEMMA4_FINITE bound row with matching n")
        elif cls == "CD1_LOGZ":
            cd1_est = cd1_est or est
            hits = _match(
                bound_rows,
                "COROLLARY1",
                W=est["W_radius"],
                k=est["k"],
                m=est["m"],
                n=est["n"],
            )
            if not hits:
                note(est, "no COROLLARY1 bound rows with matching inputs")
            for hit in hits:
                emit(est, "COROLLARY1", hit["value"])
        else:
            note(est, "no closed-form comparator; row skipped")

    # Probe of the abstract's claim: part-1 estimate against part-1 plus the
    # CD-1 log-partition estimate, within combined Monte-Carlo noise.
    if part1_est is not None and cd1_est is not None:
        combined = math.sqrt(part1_est["stderr"] ** 2 + cd1_est["stderr"] ** 2)
        total = part1_est["mean"] + cd1_est["mean"]
        rows.append(
            {
                "class_name": "LOGLIK_PART1",
                "estimate_mean": part1_est["mean"],
                "estimate_stderr": combined,
                "bound_name": "PART1_PLUS_CD1_LOGZ",
                "bound_value": total,
                "satisfied": part1_est["mean"] <= total + 3.0 * combined,
            }
        )

    fileio.write_comparison_csv(_path(cfg, "comparison.csv"), rows)
    print(f"wrote {_path(cfg, 'comparison.csv')}")
    return EXIT_OK


def cmd_train(cfg: ExperimentConfig) -> int:
    data = fileio.read_dataset(_path(cfg, "dataset.txt"))
    if cfg.init_params_file:
        init = fileio.read_params(cfg.init_params_file)
    else:
        rng = np.random.default_rng([cfg.seed, 999])
        init = RbmParams(
            W=rng.uniform(-0.1, 0.1, size=(data.k, cfg.m)),
            b=np.zeros(data.k),
            c=np.zeros(cfg.m),
        )
    trace = train_cd1(
        init, data, cfg.epochs, cfg.learning_rate, cfg.seed, cfg.audit_every
    )
    fileio.write_trace_csv(_path(cfg, "trace.csv"), trace)
    print(f"wrote {_path(cfg, 'trace.csv')}")
    print(
        f"mean exact log-likelihood: initial {trace[0].mean_exact_loglik:.6f} "
        f"final {trace[-1].mean_exact_loglik:.6f}"
    )
    return EXIT_OK


def cmd_verify(cfg: ExperimentConfig) -> int:
    results = verify.run_all(cfg.seed)
    failed = [r for r in results if not r.passed]
    for result in results:
        status = "ok" if result.passed else "FAILED"
        print(
            f"suite {result.name}: {result.checks - result.failures}/"
            f"{result.checks} checks passed [{status}]"
        )
    if failed:
        print("failed suites: " + ", ".join(r.name for r in failed))
        return EXIT_SUITE
    print("all suites passed")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbmrad",
        description="RBM Rademacher-complexity experiments",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment config file")
    common.add_argument("--seed", type=int, help="override the config seed")
    common.add_argument("--out", help="override the output directory")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gen-data", parents=[common], help="write a dataset file")
    sub.add_parser("bounds", parents=[common], help="tabulate closed-form bounds")
    est = sub.add_parser("estimate", parents=[common], help="run one estimator")
    est.add_argument("class_name", choices=CLASS_NAMES)
    sub.add_parser("compare", parents=[common], help="join estimates to bounds")
    sub.add_parser("train", parents=[common], help="run a CD-1 training audit")
    sub.add_parser("verify", parents=[common], help="run verification suites")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _resolve_config(args)
        if args.command == "gen-data":
            return cmd_gen_data(cfg)
        if args.command == "bounds":
            return cmd_bounds(cfg)
        if args.command == "estimate":
            return cmd_estimate(cfg, args.class_name)
        if args.command == "compare":
            return cmd_compare(cfg)
        if args.command == "train":
            return cmd_train(cfg)
        return cmd_verify(cfg)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main_entry() -> None:
    sys.exit(main())
