"""Command-line front end.

Subcommands: estimate, simulate, risk, limits, asymptotics, mixing.
Exit codes: 0 success, 1 usage error, 2 input data error.  All files are
written atomically (temp file + rename) and machine-readable numbers carry
17 significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile

from . import __version__
from .experiments import (
    DEFAULT_ESTIMATORS,
    DEFAULT_METRICS,
    EstimatorKind,
    ExperimentConfig,
    TruthSpec,
    estimate_risk,
    run_experiment,
)
from .limits import asymptotics, draw_limit_batch
from .metrics import MetricKind, distance
from .operators import constancy_blocks, gren, mixing_estimate, rear
from .pmf import Pmf, empirical_pmf, parse_counts, parse_pmf

_MACHINE_FMT = "%.17g"
_HUMAN_FMT = "%.5g"


class DataError(Exception):
    """Unreadable or invalid input data (exit code 2)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 1, not argparse's default 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _truth_spec(text: str) -> TruthSpec:
    try:
        return TruthSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _estimator_list(text: str) -> tuple[EstimatorKind, ...]:
    try:
        return tuple(EstimatorKind.parse(item) for item in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _metric_list(text: str) -> tuple[MetricKind, ...]:
    try:
        return tuple(MetricKind.parse(item) for item in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _read_text(path: str, label: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {label} file {path!r}: {exc.strerror}") from None


def _atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".monopmf-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _load_counts(path: str):
    try:
        return parse_counts(_read_text(path, "counts"))
    except ValueError as exc:
        raise DataError(f"invalid counts file {path!r}: {exc}") from None


def _load_pmf(path: str, monotone: bool = False) -> Pmf:
    try:
        return parse_pmf(_read_text(path, "pmf"), monotone=monotone)
    except ValueError as exc:
        raise DataError(f"invalid pmf file {path!r}: {exc}") from None


_ESTIMATE_FNS = {
    "empirical": lambda emp: emp,
    "rear": rear,
    "gren": gren,
}


def _format_sequence(values) -> str:
    return "".join(f"{x}\t{_MACHINE_FMT % v}\n" for x, v in enumerate(values))


def _trim_trailing_zeros(values):
    # a written pmf ends at its last positive entry (rear can sort interior
    # zeros to the tail)
    last = len(values) - 1
    while last > 0 and values[last] == 0.0:
        last -= 1
    return values[: last + 1]


def _suffixed(path: str, name: str) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}.{name}{ext}"


def _cmd_estimate(args) -> int:
    counts = _load_counts(args.counts)
    emp = empirical_pmf(counts).probs
    names = list(_ESTIMATE_FNS) if args.estimator == "all" else [args.estimator]
    estimates = {name: _ESTIMATE_FNS[name](emp) for name in names}
    for name, values in estimates.items():
        text = _format_sequence(_trim_trailing_zeros(values))
        if args.out is None:
            sys.stdout.write(f"# {name}\n{text}")
        else:
            target = _suffixed(args.out, name) if len(names) > 1 else args.out
            _atomic_write(target, text)
    if args.truth is not None:
        truth = _load_pmf(args.truth)
        metrics = [MetricKind.hellinger(), MetricKind.ell(1), MetricKind.ell(2), MetricKind.ell(math.inf)]
        print("estimator\t" + "\t".join(m.label for m in metrics))
        for name, values in estimates.items():
            row = [_HUMAN_FMT % distance(values, truth.probs, m) for m in metrics]
            print(name + "\t" + "\t".join(row))
    return 0


def _config_from_args(args) -> ExperimentConfig:
    if args.config is not None:
        raw = _read_text(args.config, "config")
        try:
            data = json.loads(raw)
            truth = data["truth"]
            spec = TruthSpec.parse(truth) if isinstance(truth, str) else TruthSpec(**truth)
            estimators = tuple(EstimatorKind.parse(e) for e in data.get("estimators", [])) or DEFAULT_ESTIMATORS
            metrics = tuple(MetricKind.parse(m) for m in data.get("metrics", [])) or DEFAULT_METRICS
            return ExperimentConfig(
                truth=spec,
                n=int(data["n"]),
                reps=int(data["reps"]),
                seed=int(data.get("seed", 0)),
                estimators=estimators,
                metrics=metrics,
                target=data.get("target", "pmf"),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise DataError(f"invalid config file {args.config!r}: {exc}") from None
    return ExperimentConfig(
        truth=args.truth,
        n=args.n,
        reps=args.reps,
        seed=args.seed,
        estimators=args.estimators or DEFAULT_ESTIMATORS,
        metrics=args.metrics or DEFAULT_METRICS,
        target=args.target,
    )


def _cmd_simulate(args) -> int:
    cfg = _config_from_args(args)
    summary = run_experiment(cfg)
    raw_buf = io.StringIO()
    writer = csv.writer(raw_buf)
    writer.writerow(["replicate", "estimator", "metric", "value"])
    for i in range(cfg.reps):
        for e, est in enumerate(cfg.estimators):
            for m, metric in enumerate(cfg.metrics):
                writer.writerow([i, est.value, metric.label, _MACHINE_FMT % summary.raw[i, e, m]])
    _atomic_write(f"{args.out}_raw.csv", raw_buf.getvalue())

    sum_buf = io.StringIO()
    writer = csv.writer(sum_buf)
    writer.writerow(["estimator", "metric", "mean", "std", "min", "q1", "median", "q3", "max"])
    for est in cfg.estimators:
        for metric in cfg.metrics:
            s = summary.stat(est, metric)
            writer.writerow(
                [est.value, metric.label]
                + [_MACHINE_FMT % v for v in (s.mean, s.std, s.min, s.q1, s.median, s.q3, s.max)]
            )
    _atomic_write(f"{args.out}_summary.csv", sum_buf.getvalue())

    meta = {
        "version": __version__,
        "truth": cfg.truth.to_json_dict(),
        "n": cfg.n,
        "reps": cfg.reps,
        "seed": cfg.seed,
        "estimators": [e.value for e in cfg.estimators],
        "metrics": [m.label for m in cfg.metrics],
        "target": cfg.target,
        "quantile_method": "median_unbiased",
    }
    _atomic_write(f"{args.out}_meta.json", json.dumps(meta, indent=2) + "\n")
    return 0


def _cmd_risk(args) -> int:
    truth = args.truth.to_pmf()
    est = EstimatorKind.parse(args.estimator)
    result = estimate_risk(truth, args.n, args.k, est, args.reps, args.seed)
    print(f"estimator\t{est.value}")
    print(f"k\t{args.k:g}")
    print(f"n\t{args.n}")
    print(f"reps\t{args.reps}")
    print(f"risk_mean\t{_MACHINE_FMT % result.value}")
    print(f"risk_se\t{_MACHINE_FMT % result.se}")
    if not math.isinf(result.k):
        scale = args.n ** (result.k / 2.0)
        print(f"scaled_risk\t{_MACHINE_FMT % (scale * result.value)}")
        print(f"scaled_se\t{_MACHINE_FMT % (scale * result.se)}")
    return 0


def _cmd_limits(args) -> int:
    truth = args.truth.to_pmf()
    y, y_rear, y_gren = draw_limit_batch(truth, args.reps, args.seed)
    raw_buf = io.StringIO()
    writer = csv.writer(raw_buf)
    writer.writerow(["draw", "x", "y", "y_rear", "y_gren"])
    for i in range(args.reps):
        for x in range(truth.support_size):
            writer.writerow(
                [i, x] + [_MACHINE_FMT % v for v in (y[i, x], y_rear[i, x], y_gren[i, x])]
            )
    _atomic_write(f"{args.out}_draws.csv", raw_buf.getvalue())

    agg_buf = io.StringIO()
    writer = csv.writer(agg_buf)
    writer.writerow(
        ["x", "mean_y", "mean_y_rear", "mean_y_gren", "mean_sq_y", "mean_sq_y_rear", "mean_sq_y_gren", "var_limit"]
    )
    for x in range(truth.support_size):
        px = truth.probs[x]
        writer.writerow(
            [x]
            + [
                _MACHINE_FMT % v
                for v in (
                    y[:, x].mean(),
                    y_rear[:, x].mean(),
                    y_gren[:, x].mean(),
                    (y[:, x] ** 2).mean(),
                    (y_rear[:, x] ** 2).mean(),
                    (y_gren[:, x] ** 2).mean(),
                    px * (1.0 - px),
                )
            ]
        )
    _atomic_write(f"{args.out}_aggregate.csv", agg_buf.getvalue())
    return 0


def _cmd_asymptotics(args) -> int:
    truth = args.truth.to_pmf()
    report = asymptotics(truth)
    print(f"truth\t{args.truth.label}")
    print(f"support_max\t{truth.support_max}")
    for name in ("e_sq_l2_emp", "e_sq_l2_gren", "e_hell_emp", "e_hell_gren", "e_l1_emp"):
        print(f"{name}\t{_HUMAN_FMT % getattr(report, name)}")
    print(f"l2_sq_gap\t{_HUMAN_FMT % (report.e_sq_l2_emp - report.e_sq_l2_gren)}")
    print("block_start\tblock_end\tlevel\tsize")
    for r, s in constancy_blocks(truth):
        print(f"{r}\t{s}\t{_HUMAN_FMT % truth.probs[r]}\t{s - r + 1}")
    return 0


def _cmd_mixing(args) -> int:
    if args.pmf is not None:
        probs = _load_pmf(args.pmf).probs
        sources = {"pmf": probs}
    else:
        counts = _load_counts(args.counts)
        emp = empirical_pmf(counts).probs
        names = list(_ESTIMATE_FNS) if args.estimator == "all" else [args.estimator]
        sources = {name: _ESTIMATE_FNS[name](emp) for name in names}
    for name, values in sources.items():
        weights = mixing_estimate(values).weights
        text = _format_sequence(weights)
        if args.out is None:
            sys.stdout.write(f"# {name}\n{text}")
        else:
            target = _suffixed(args.out, name) if len(sources) > 1 else args.out
            _atomic_write(target, text)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="monopmf", description=__doc__)
    parser.add_argument("--version", action="version", version=f"monopmf {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("estimate", help="estimate a pmf from a counts file")
    p.add_argument("--counts", required=True, help="counts file, lines 'x<TAB>count'")
    p.add_argument("--estimator", default="all", choices=["empirical", "rear", "gren", "all"])
    p.add_argument("--out", help="output pmf file (estimator name inserted when several)")
    p.add_argument("--truth", help="pmf file; prints a distance table when given")
    p.set_defaults(fn=_cmd_estimate)

    p = sub.add_parser("simulate", help="Monte Carlo comparison of the estimators")
    p.add_argument("--truth", type=_truth_spec, help="uniform:y | geometric:theta | mixture:w:y,...")
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", default="pmf", choices=["pmf", "mixing"])
    p.add_argument("--estimators", type=_estimator_list, help="comma list: empirical,rear,gren")
    p.add_argument("--metrics", type=_metric_list, help="comma list: hellinger,l1,l2,linf,l{k}")
    p.add_argument("--config", help="JSON config file carrying the same fields")
    p.add_argument("--out", required=True, help="output prefix for _raw.csv, _summary.csv, _meta.json")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("risk", help="Monte Carlo risk of one estimator")
    p.add_argument("--truth", type=_truth_spec, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=float, default=2.0)
    p.add_argument("--estimator", default="gren")
    p.add_argument("--reps", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_risk)

    p = sub.add_parser("limits", help="draws of the limit fluctuation processes")
    p.add_argument("--truth", type=_truth_spec, required=True)
    p.add_argument("--reps", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output prefix for _draws.csv and _aggregate.csv")
    p.set_defaults(fn=_cmd_limits)

    p = sub.add_parser("asymptotics", help="closed-form limit moments of a truth")
    p.add_argument("--truth", type=_truth_spec, required=True)
    p.set_defaults(fn=_cmd_asymptotics)

    p = sub.add_parser("mixing", help="recover mixing weights from counts or a pmf file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--counts", help="counts file, estimator applied first")
    group.add_argument("--pmf", help="pmf file, weights computed directly")
    p.add_argument("--estimator", default="all", choices=["empirical", "rear", "gren", "all"])
    p.add_argument("--out", help="output weights file")
    p.set_defaults(fn=_cmd_mixing)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.config is None and args.truth is None:
        parser.error("simulate requires --truth or --config")
    try:
        return args.fn(args)
    except DataError as exc:
        print(f"monopmf: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"monopmf: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
