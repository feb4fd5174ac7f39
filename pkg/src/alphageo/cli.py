"""Command-line front end: ``alphageo validate | run | sweep``.

Exit codes: 0 ok, 1 configuration error, 2 numerical failure (singular
information matrix), 3 asserted invariant failed (``run --assert``).
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from . import __version__
from .bounds import GAP_TOL, reduction_suite, verify_bound
from .config import (
    ConfigIssue,
    ConfigValidationError,
    Experiment,
    ExperimentConfig,
    TaskConfig,
    build,
    parse_config,
    to_dict,
    validate_config,
)
from .errors import ConfigError, DomainError, SingularInformation
from .fuzz import continuity_battery, divergence_battery, random_pmfs
from .geometry import bayesian_alpha_metric, bayesian_divergence, eguchi_metric_fd
from .linalg import min_eig
from .manifold import random_interior_points
from .measures import bayesian_divergence_from_parts

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_ASSERT = 0, 1, 2, 3

NONNEG_TOL = 1e-10
SELF_TOL = 1e-12
IDENTITY_TOL = 1e-10
FD_REL_TOL = 1e-4
FD_CHECK_POINTS = 25

TRAILER = ["config_digest", "version"]
COLUMNS = {
    "divergence": ["task", "alpha", "theta", "theta2", "divergence", "printed_divergence", "status"],
    "metric": ["task", "alpha", "theta", "metric", "metric_fd", "min_eig", "fd_max_abs_err", "fd_rel_err", "status"],
    "metric_fd_check": ["task", "alpha", "points", "theta", "fd_max_abs_err", "fd_max_rel_err", "status"],
    "bound": [
        "task", "alpha", "lhs", "rhs", "gap_min_eig", "pointwise_min_gap", "pointwise_worst_theta",
        "jensen_integral", "jensen_gap_min_eig", "max_bias", "unbiased", "status", "step21_status",
    ],
    "reductions": ["task", "alpha", "check", "residual", "tolerance", "status"],
    "fuzz": [
        "task", "alpha", "n_pairs", "d", "min_divergence", "max_self_divergence", "max_csiszar_residual",
        "max_renyi_residual", "max_uniform_identity_residual", "max_continuity_gap", "min_bayesian_divergence",
        "status",
    ],
}
PLOT_COLUMNS = ["alpha", "lhs_trace", "rhs_trace", "gap_min_eig"]


# ---------------------------------------------------------------------------
# formatting


def fmt(value) -> str:
    """Shortest round-trip text for CSV cells; arrays are ';'-joined, row-major."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (list, tuple, np.ndarray)):
        return ";".join(fmt(v) for v in np.asarray(value, dtype=float).ravel())
    return str(value)


def _jsonable(value):
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        return value.item()
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def write_csv(path: Path, columns: list[str], rows: list[dict], digest: str):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(columns + TRAILER)
        for row in rows:
            w.writerow([fmt(row.get(c)) for c in columns] + [digest, __version__])


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# ---------------------------------------------------------------------------
# tasks: each returns (rows, failures) where failures are asserted-invariant messages


def _default_points(exp: Experiment, total: int, margin: float) -> np.ndarray:
    k = exp.model.k
    m = max(2, int(math.ceil(total ** (1.0 / k) - 1e-9)))
    return exp.model.domain.lattice(m, margin)


def task_divergence(exp: Experiment, task: TaskConfig):
    m = exp.model
    if task.pairs is not None:
        pairs = [(np.array(a), np.array(b)) for a, b in task.pairs]
    else:
        pts = _default_points(exp, 4 ** m.k if m.k < 3 else 8, 0.0)
        pairs = [(a, b) for a in pts for b in pts]
    for a, b in pairs:
        m.domain.check_interior(a)
        m.domain.check_interior(b)
    rows, failures = [], []
    for alpha in exp.config.alphas:
        for a, b in pairs:
            pa, la = m.family.pmf(a), m.prior.density(a)
            pb, lb = m.family.pmf(b), m.prior.density(b)
            val = bayesian_divergence_from_parts(pa, la, pb, lb, alpha)
            printed = bayesian_divergence_from_parts(pa, la, pb, lb, alpha, printed=True)
            ok = val >= -NONNEG_TOL and (not np.array_equal(a, b) or abs(val) <= SELF_TOL)
            rows.append(dict(task="divergence", alpha=alpha, theta=a, theta2=b, divergence=val,
                             printed_divergence=printed, status=_status(ok)))
            if not ok:
                failures.append(f"divergence alpha={alpha!r} theta={a.tolist()} theta2={b.tolist()}: {val!r}")
    return rows, failures


def _fd_errors(exp: Experiment, alpha, theta):
    m = exp.model
    h = exp.config.fd.h_metric
    analytic = bayesian_alpha_metric(m, theta, alpha)
    fd = eguchi_metric_fd(bayesian_divergence(m, alpha), theta, h, m.domain)
    abs_err = float(np.max(np.abs(fd - analytic)))
    rel_err = abs_err / max(float(np.max(np.abs(analytic))), 1e-300)
    return analytic, fd, abs_err, rel_err


def task_metric(exp: Experiment, task: TaskConfig):
    h = exp.config.fd.h_metric
    thetas = np.array(task.thetas) if task.thetas is not None else _default_points(exp, task.points or 5, h)
    rows, failures = [], []
    for alpha in exp.config.alphas:
        for t in thetas:
            analytic, fd, abs_err, rel_err = _fd_errors(exp, alpha, t)
            ok = rel_err <= FD_REL_TOL
            rows.append(dict(task="metric", alpha=alpha, theta=t, metric=analytic, metric_fd=fd,
                             min_eig=min_eig(analytic), fd_max_abs_err=abs_err, fd_rel_err=rel_err,
                             status=_status(ok)))
            if not ok:
                failures.append(f"metric alpha={alpha!r} theta={t.tolist()}: relative FD error {rel_err:.3e}")
    return rows, failures


def task_metric_fd_check(exp: Experiment, task: TaskConfig):
    h = exp.config.fd.h_metric
    thetas = _default_points(exp, task.points or FD_CHECK_POINTS, h)
    rows, failures = [], []
    for alpha in exp.config.alphas:
        worst_abs, worst_rel, worst_t = 0.0, -1.0, thetas[0]
        for t in thetas:
            _, _, abs_err, rel_err = _fd_errors(exp, alpha, t)
            worst_abs = max(worst_abs, abs_err)
            if rel_err > worst_rel:
                worst_rel, worst_t = rel_err, t
        ok = worst_rel <= FD_REL_TOL
        rows.append(dict(task="metric_fd_check", alpha=alpha, points=len(thetas), theta=worst_t,
                         fd_max_abs_err=worst_abs, fd_max_rel_err=worst_rel, status=_status(ok)))
        if not ok:
            failures.append(f"metric_fd_check alpha={alpha!r}: relative FD error {worst_rel:.3e}")
    return rows, failures


def _bound_row(rep) -> dict:
    return dict(task="bound", alpha=rep.alpha, lhs=rep.lhs, rhs=rep.rhs, gap_min_eig=rep.gap_min_eig,
                pointwise_min_gap=rep.pointwise_min_gap, pointwise_worst_theta=rep.pointwise_worst_theta,
                jensen_integral=rep.jensen_integral, jensen_gap_min_eig=rep.jensen_gap_min_eig,
                max_bias=rep.max_bias, unbiased=rep.unbiased, status=rep.status, step21_status=rep.step21_status)


def _bound_reports(exp: Experiment, alphas):
    return [verify_bound(exp.model, a, exp.estimator, exp.grid, exp.digest) for a in alphas]


def task_bound(exp: Experiment, task: TaskConfig):
    reports = _bound_reports(exp, exp.config.alphas)
    failures = []
    for rep in reports:
        # the matrix-Jensen step and the pointwise gap are diagnostics, not asserted
        if not rep.holds:
            failures.append(f"bound alpha={rep.alpha!r}: gap_min_eig {rep.gap_min_eig!r} < -{GAP_TOL:g}")
        if not rep.unbiased:
            failures.append(f"bound alpha={rep.alpha!r}: estimator bias {rep.max_bias!r}")
    return [_bound_row(r) for r in reports], failures, [r.to_dict() for r in reports]


def task_reductions(exp: Experiment, task: TaskConfig):
    alphas = tuple(a for a in exp.config.alphas if abs(a - 1.0) > 1e-6) or (0.5, 2.0)
    thetas = np.array(task.thetas) if task.thetas is not None else None
    require_eq = exp.config.estimator.type == "builtin"
    rep = reduction_suite(exp.model, exp.estimator, exp.grid, alphas, thetas, require_eq)
    rows = [dict(task="reductions", check=c.name, residual=c.residual, tolerance=c.tolerance,
                 status=_status(c.passed)) for c in rep.checks]
    failures = [f"reductions {c.name}: residual {c.residual!r} > {c.tolerance!r}" for c in rep.checks if not c.passed]
    return rows, failures


def task_fuzz(exp: Experiment, task: TaskConfig):
    m = exp.model
    n = task.n_pairs or 1000
    d = task.d or 4
    rng = np.random.default_rng(exp.config.seed)
    rows, failures = [], []
    for alpha in exp.config.alphas:
        ps, qs = random_pmfs(rng, n, d), random_pmfs(rng, n, d)
        bat = divergence_battery(ps, qs, alpha)
        cont = continuity_battery(ps[: min(n, 200)], qs[: min(n, 200)])
        ta = random_interior_points(m.domain, n, rng, 0.0)
        tb = random_interior_points(m.domain, n, rng, 0.0)
        PA, PB = m.family.pmf_many(ta), m.family.pmf_many(tb)
        LA, LB = m.prior.density_many(ta), m.prior.density_many(tb)
        bayes = min(bayesian_divergence_from_parts(PA[i], LA[i], PB[i], LB[i], alpha) for i in range(n))
        ok = (
            bat["min_divergence"] >= -NONNEG_TOL
            and bat["max_self_divergence"] <= SELF_TOL
            and bat["max_csiszar_residual"] <= IDENTITY_TOL
            and bat["max_renyi_residual"] <= IDENTITY_TOL
            and bat["max_uniform_identity_residual"] <= IDENTITY_TOL
            and bayes >= -NONNEG_TOL
        )
        rows.append(dict(task="fuzz", alpha=alpha, n_pairs=n, d=d, **bat, max_continuity_gap=cont,
                         min_bayesian_divergence=bayes, status=_status(ok)))
        if not ok:
            failures.append(f"fuzz alpha={alpha!r}: {bat}, min Bayesian divergence {bayes!r}")
    return rows, failures


TASKS = {
    "divergence": task_divergence,
    "metric": task_metric,
    "metric_fd_check": task_metric_fd_check,
    "bound": task_bound,
    "reductions": task_reductions,
    "fuzz": task_fuzz,
}


# ---------------------------------------------------------------------------
# commands


def _csv_names(tasks) -> list[str]:
    counts: dict[str, int] = {}
    for t in tasks:
        counts[t.type] = counts.get(t.type, 0) + 1
    names = []
    for i, t in enumerate(tasks):
        names.append(f"{t.type}.csv" if counts[t.type] == 1 else f"{t.type}_{i}.csv")
    return names


def _write_summary(out: Path, exp: Experiment, command: str, entries: list, failures: list[str]):
    summary = {
        "command": command,
        "config": to_dict(exp.config),
        "config_digest": exp.digest,
        "version": __version__,
        "tasks": entries,
        "assertion_failures": failures,
    }
    with open(out / "summary.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_jsonable(summary), fh, indent=2, sort_keys=True)
        fh.write("\n")


def run_experiment(exp: Experiment, out: Path) -> list[str]:
    """Run all tasks, writing CSVs and ``summary.json``; returns asserted failures."""
    out.mkdir(parents=True, exist_ok=True)
    entries, failures = [], []
    for task, name in zip(exp.config.tasks, _csv_names(exp.config.tasks)):
        result = TASKS[task.type](exp, task)
        rows, fails = result[0], result[1]
        write_csv(out / name, COLUMNS[task.type], rows, exp.digest)
        entry = {"type": task.type, "file": name, "rows": len(rows), "failures": fails}
        if task.type == "bound":
            entry["reports"] = result[2]
        else:
            entry["results"] = [{k: v for k, v in r.items() if k != "task"} for r in rows]
        entries.append(entry)
        failures.extend(fails)
    _write_summary(out, exp, "run", entries, failures)
    return failures


def sweep_experiment(exp: Experiment, out: Path) -> list[str]:
    """Bound task over every configured alpha plus a ``plotdata.csv`` of traces."""
    if len(exp.config.alphas) < 2:
        raise ConfigValidationError([ConfigIssue("alphas", "alphas", "sweep needs at least 2 alphas")])
    if exp.estimator is None:
        raise ConfigValidationError([ConfigIssue("estimator", "type", exp.estimator_error or "no estimator")])
    out.mkdir(parents=True, exist_ok=True)
    reports = _bound_reports(exp, exp.config.alphas)
    write_csv(out / "sweep.csv", COLUMNS["bound"], [_bound_row(r) for r in reports], exp.digest)
    plot = [dict(alpha=r.alpha, lhs_trace=float(np.trace(r.lhs)), rhs_trace=float(np.trace(r.rhs)),
                 gap_min_eig=r.gap_min_eig) for r in reports]
    write_csv(out / "plotdata.csv", PLOT_COLUMNS, plot, exp.digest)
    failures = [f"sweep alpha={r.alpha!r}: gap_min_eig {r.gap_min_eig!r}" for r in reports if not r.holds]
    entries = [{"type": "sweep", "file": "sweep.csv", "rows": len(reports), "failures": failures,
                "reports": [r.to_dict() for r in reports]}]
    _write_summary(out, exp, "sweep", entries, failures)
    return failures


def _load(args) -> Experiment:
    cfg = validate_config(args.config)
    if args.seed is not None or args.h is not None:
        # overrides are folded into the config, so they change the digest
        data = to_dict(cfg)
        if args.seed is not None:
            data["seed"] = args.seed
        if args.h is not None:
            data.setdefault("fd", {})["h_metric"] = args.h
        cfg = parse_config(data)
    return build(cfg)


def _out_dir(args, exp: Experiment) -> Path:
    return Path(args.out if getattr(args, "out", None) else exp.config.output.dir)


def _report_config_error(exc: ConfigError):
    issues = getattr(exc, "issues", None)
    if issues:
        for i in issues:
            print(f"config error: {i.path}: {i.reason}", file=sys.stderr)
    else:
        print(f"config error: {exc}", file=sys.stderr)


def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("config", help="experiment config (UTF-8 JSON)")
    common.add_argument("--seed", type=int, default=None, help="override the fuzz seed")
    common.add_argument("--h", type=float, default=None, metavar="STEP", help="override the FD metric step")

    parser = argparse.ArgumentParser(prog="alphageo", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"alphageo {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("validate", parents=[common], help="check a config and exit")
    run = sub.add_parser("run", parents=[common], help="run the config's tasks")
    run.add_argument("--assert", dest="do_assert", action="store_true", help="exit 3 if an invariant fails")
    run.add_argument("--out", default=None, metavar="DIR", help="output directory")
    sweep = sub.add_parser("sweep", parents=[common], help="bound over all alphas plus plot data")
    sweep.add_argument("--out", default=None, metavar="DIR", help="output directory")
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        exp = _load(args)
        if args.command == "validate":
            cfg: ExperimentConfig = exp.config
            print(f"ok: {args.config} digest={exp.digest} alphas={len(cfg.alphas)} "
                  f"grid={exp.grid.rule}:{exp.grid.n} tasks={','.join(t.type for t in cfg.tasks)}")
            return EXIT_OK
        out = _out_dir(args, exp)
        if args.command == "run":
            failures = run_experiment(exp, out)
        else:
            failures = sweep_experiment(exp, out)
    except SingularInformation as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, DomainError) as exc:
        _report_config_error(exc)
        return EXIT_CONFIG
    for f in failures:
        print(f"invariant failed: {f}", file=sys.stderr)
    print(f"wrote {out}")
    if failures and getattr(args, "do_assert", False):
        return EXIT_ASSERT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
