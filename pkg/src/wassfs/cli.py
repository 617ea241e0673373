"""Command line entry point: ``wassfs select`` and ``wassfs synth``.

Exit codes: 0 success, 1 runtime error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .criteria import EstimatorChoice
from .csvio import load_csv, write_csv
from .data import standardization_stats, standardize
from .evaluation import evaluate_subset, train_test_split
from .exceptions import WassfsError
from .report import RunReport, dataset_fingerprint
from .selection import METHODS, SelectionConfig, default_estimator, select
from .entropic import SinkhornConfig
from .synthetic import SyntheticSpec, gen_synthetic

ESTIMATORS = {"exact1d": "exact-1d-w1", "sinkhorn": "sinkhorn-w1", "mmd": "mmd-gaussian"}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wassfs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sel = sub.add_parser("select", help="select features from a labeled CSV")
    sel.add_argument("--input", default="-", help="CSV path, '-' for stdin (default)")
    sel.add_argument("--label-col", default=None,
                     help="label column name or zero-based index (default: 'label', else last)")
    sel.add_argument("--header", action=argparse.BooleanOptionalAction, default=True)
    sel.add_argument("--method", choices=METHODS, default="twd")
    sel.add_argument("-m", "--num-features", type=int, required=True)
    sel.add_argument("--estimator", choices=sorted(ESTIMATORS), default=None,
                     help="default: exact1d for twd, sinkhorn for fawd/bewd")
    sel.add_argument("--epsilon", type=float, default=SinkhornConfig.epsilon,
                     help="Sinkhorn regularization as a multiple of the mean cost")
    sel.add_argument("--sinkhorn-tol", type=float, default=SinkhornConfig.tol)
    sel.add_argument("--sinkhorn-max-iters", type=int, default=SinkhornConfig.max_iters)
    sel.add_argument("--mmd-bandwidth", type=float, default=None,
                     help="Gaussian kernel bandwidth (default: median heuristic)")
    sel.add_argument("--group-size", type=int, default=1)
    sel.add_argument("--standardize", action=argparse.BooleanOptionalAction, default=True)
    sel.add_argument("--test-frac", type=float, default=None,
                     help="hold out this fraction for 1-NN evaluation (needs --split-seed)")
    sel.add_argument("--split-seed", type=int, default=None)
    sel.add_argument("--out", default=None, help="report path (default: stdout)")

    syn = sub.add_parser("synth", help="write a seeded Gaussian dataset as CSV")
    syn.add_argument("--spec", default=None, help="JSON file with SyntheticSpec fields")
    syn.add_argument("--n-per-class", type=int, default=SyntheticSpec.n_per_class)
    syn.add_argument("--classes", type=int, default=SyntheticSpec.n_classes)
    syn.add_argument("--features", type=int, default=SyntheticSpec.n_features)
    syn.add_argument("--informative", type=int, nargs="*", default=list(SyntheticSpec.informative))
    syn.add_argument("--shift", type=float, default=SyntheticSpec.shift)
    syn.add_argument("--noise", type=float, default=SyntheticSpec.noise_sigma)
    syn.add_argument("--seed", type=int, default=None)
    syn.add_argument("--out", default=None)
    return parser


def _estimator(args) -> EstimatorChoice:
    kind = default_estimator(args.method).kind if args.estimator is None else ESTIMATORS[args.estimator]
    cfg = SinkhornConfig(epsilon=args.epsilon, tol=args.sinkhorn_tol, max_iters=args.sinkhorn_max_iters)
    return EstimatorChoice(kind, sinkhorn=cfg, bandwidth=args.mmd_bandwidth)


def _emit(text: str, out) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def run_select(args) -> None:
    ds = load_csv(args.input, args.label_col, args.header)
    fingerprint = dataset_fingerprint(ds)
    train, test = ds, None
    if args.test_frac is not None:
        train, test = train_test_split(ds, args.test_frac, args.split_seed)
    if args.standardize:
        stats = standardization_stats(train)
        train = standardize(train, stats)
        if test is not None:
            test = standardize(test, stats)

    est = _estimator(args)
    cfg = SelectionConfig(m=args.num_features, group_size=args.group_size, estimator=est)
    t0 = time.perf_counter()
    result = select(train, args.method, cfg)
    wall = time.perf_counter() - t0

    evaluation = None
    if test is not None:
        evaluation = {
            "classifier": "1-nn",
            "test_frac": args.test_frac,
            "split_seed": args.split_seed,
            "n_train": train.n_samples,
            "n_test": test.n_samples,
            "accuracy": evaluate_subset(train, test, result.selected),
        }
    names = ds.feature_names or tuple(f"f{i}" for i in range(ds.n_features))
    report = RunReport(
        method=result.method,
        config={
            "input": args.input,
            "label_col": args.label_col,
            "header": args.header,
            "m": cfg.m,
            "group_size": cfg.group_size,
            "estimator": est,
            "standardize": args.standardize,
            "test_frac": args.test_frac,
            "split_seed": args.split_seed,
        },
        selected=list(result.selected),
        selected_names=[names[i] for i in result.selected],
        scores=list(result.scores),
        trace=list(result.trace),
        dataset=fingerprint,
        wall_time_s=round(wall, 6),
        evaluation=evaluation,
    )
    _emit(report.to_json(), args.out)
    summary = f"{result.method}: selected {', '.join(report.selected_names)} in {wall:.2f}s"
    if evaluation:
        summary += f"; 1-NN test accuracy {evaluation['accuracy']:.4f}"
    print(summary, file=sys.stderr)


def run_synth(args) -> None:
    if args.spec is not None:
        spec = SyntheticSpec.from_json(Path(args.spec).read_text())
    else:
        spec = SyntheticSpec(
            n_per_class=args.n_per_class, n_classes=args.classes, n_features=args.features,
            informative=tuple(args.informative), shift=args.shift, noise_sigma=args.noise,
            seed=args.seed,
        )
    ds = gen_synthetic(spec)
    if args.out is None:
        write_csv(ds, sys.stdout)
    else:
        with open(args.out, "w", newline="") as fh:
            write_csv(ds, fh)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "select":
        if args.test_frac is not None and args.split_seed is None:
            parser.error("--test-frac requires --split-seed")
        if args.num_features < 1 or args.group_size < 1:
            parser.error("-m and --group-size must be positive")
    if args.command == "synth" and args.spec is None and args.seed is None:
        parser.error("synth needs --seed (or a --spec file that sets it)")
    try:
        if args.command == "select":
            run_select(args)
        else:
            run_synth(args)
    except (WassfsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
