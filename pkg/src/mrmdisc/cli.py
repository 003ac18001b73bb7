"""Command-line front end.

Exit codes: 0 success, 1 IO/data error, 2 usage error.  ``MRMDISC_N_D``
overrides the default lambda decay constant.
"""

from __future__ import annotations

import argparse
import csv
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import evalharness as eh
from .core import save_scheme
from .dataio import builtin_names, impute_missing, load_builtin, load_dataset, split_train_validation
from .errors import MrmdiscError
from .methods import get_method, method_names
from .mrmd import MrmdConfig, mrmd_discretize, write_trace_csv

log = logging.getLogger("mrmdisc")


def _default_n_d() -> float:
    raw = os.environ.get("MRMDISC_N_D")
    return float(raw) if raw else 50.0


def _open_dataset(source: str, schema: str | None = None):
    """A CSV path (schema beside it unless given) or the name of a bundled dataset."""
    p = Path(source)
    if p.exists():
        return load_dataset(p, schema)
    if source in builtin_names():
        return load_builtin(source)
    raise FileNotFoundError(f"no such dataset file or bundled dataset: {source}")


def cmd_discretize(args) -> int:
    d = impute_missing(_open_dataset(args.data, args.schema))
    if args.method == "mrmd":
        idx = np.arange(d.n_instances)
        split = split_train_validation(idx, d.class_labels, args.seed)
        traces = {}
        scheme = mrmd_discretize(d.take(split.train_indices), d.take(split.val_indices),
                                 MrmdConfig(n_d=args.n_d), traces)
        if args.trace:
            write_trace_csv(traces, args.trace)
    else:
        scheme = get_method(args.method, bins=args.bins).fit(d)
    save_scheme(scheme, args.out)
    for name, s in zip(scheme.attribute_names, scheme.per_attribute):
        print(f"{name}: " + ("nominal" if s is None else f"{len(s)} cut(s)"))
    return 0


def cmd_evaluate(args) -> int:
    d = _open_dataset(args.data, args.schema)
    res = eh.run_cv(d, get_method(args.method, n_d=args.n_d, bins=args.bins), args.k, args.seed)
    for f, a in enumerate(res.fold_accuracies):
        print(f"fold {f}: {a:.4f}")
    print(f"mean: {res.mean_accuracy:.4f}")
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["dataset", "method", "seed", "fold", "accuracy"])
            for f, a in enumerate(res.fold_accuracies):
                w.writerow([res.dataset, res.method, res.seed, f, f"{a:.4f}"])
            w.writerow([res.dataset, res.method, res.seed, "mean", f"{res.mean_accuracy:.4f}"])
    return 0


def _write_report(report, args):
    md = eh.format_markdown(report)
    if args.out_csv:
        eh.write_accuracy_csv(report, args.out_csv)
        eh.write_wilcoxon_csv(report, Path(args.out_csv).with_suffix(".wilcoxon.csv"))
    if args.out_md:
        Path(args.out_md).write_text(md, encoding="utf-8")
    print(md, end="")


def cmd_benchmark(args) -> int:
    datasets, warnings = [], 0
    for source in args.data:
        try:
            datasets.append(_open_dataset(source))
        except (OSError, MrmdiscError) as exc:
            warnings += 1
            print(f"warning: skipping {source}: {exc}", file=sys.stderr)
    if not datasets:
        print("error: no readable datasets", file=sys.stderr)
        return 1
    report = eh.benchmark(datasets, args.methods, args.seed, args.k, args.n_d, args.jobs)
    warnings += len(report.errors)
    _write_report(report, args)
    if warnings:
        print(f"warnings: {warnings}", file=sys.stderr)
    return 0


def cmd_wilcoxon(args) -> int:
    names, methods, acc = eh.read_accuracy_matrix(args.accuracy)
    report = eh.report_from_matrix(names, methods, acc)
    if args.pair:
        a, b = args.pair
        missing = [m for m in (a, b) if m not in methods]
        if missing:
            print(f"error: unknown method column(s) {missing}; have {methods}", file=sys.stderr)
            return 2
        res = report.wilcoxon[(a, b)]
        print(f"{a} vs {b}: R+ = {res.r_plus:.1f}  R- = {res.r_minus:.1f}  "
              f"n = {res.n}  critical = {res.critical:.1f}  significant = {res.significant}")
        return 0
    _write_report(report, args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mrmdisc", description="Supervised discretization for naive Bayes.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)
    n_d = _default_n_d()

    def common(sp, with_method=True):
        sp.add_argument("--data", required=True, help="CSV path or bundled dataset name")
        sp.add_argument("--schema", help="schema sidecar (default: CSV path with .schema suffix)")
        if with_method:
            sp.add_argument("--method", required=True, choices=method_names())
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--n-d", type=float, default=n_d, dest="n_d")
        sp.add_argument("--bins", type=int, default=10, help="bin count for equal_width / equal_frequency")

    sp = sub.add_parser("discretize", help="learn a scheme on a whole dataset")
    common(sp)
    sp.add_argument("--out", required=True)
    sp.add_argument("--trace", help="per-round MRmD trace CSV")
    sp.set_defaults(func=cmd_discretize)

    sp = sub.add_parser("evaluate", help="stratified k-fold CV with naive Bayes")
    common(sp)
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_evaluate)

    sp = sub.add_parser("benchmark", help="dataset x method grid with pairwise Wilcoxon tests")
    sp.add_argument("--data", nargs="+", required=True)
    sp.add_argument("--methods", nargs="+", choices=method_names(), default=["mrmd", "mdlp"])
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--k", type=int, default=10)
    sp.add_argument("--n-d", type=float, default=n_d, dest="n_d")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--out-csv")
    sp.add_argument("--out-md")
    sp.set_defaults(func=cmd_benchmark)

    sp = sub.add_parser("wilcoxon", help="rank sums over a precomputed accuracy matrix")
    sp.add_argument("--accuracy", required=True, help="CSV: dataset column then one column per method")
    sp.add_argument("--pair", nargs=2, metavar=("A", "B"))
    sp.add_argument("--out-csv")
    sp.add_argument("--out-md")
    sp.set_defaults(func=cmd_wilcoxon)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (OSError, MrmdiscError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
