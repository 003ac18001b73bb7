"""Cross-validation, Wilcoxon signed-rank comparison and benchmark reports."""

from __future__ import annotations

import csv
import logging
import math
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path

import numpy as np
from scipy.stats import norm, rankdata

from . import nbayes
from .core import discretize_dataset
from .dataio import Dataset, impute_missing, split_train_validation, stratified_folds
from .errors import ShapeError
from .methods import Discretizer, get_method

__all__ = [
    "CVResult",
    "WilcoxonResult",
    "BenchmarkReport",
    "FoldModel",
    "accuracy",
    "fold_seed",
    "fit_fold",
    "run_cv",
    "wilcoxon_rank_sums",
    "critical_value",
    "benchmark",
    "report_from_matrix",
    "read_accuracy_matrix",
    "write_accuracy_csv",
    "write_wilcoxon_csv",
    "format_markdown",
]

log = logging.getLogger(__name__)

ALPHA = 0.05
# Two-sided critical rank sum at alpha = 0.05 for 45 paired datasets.
CRITICAL_N45 = 692.0
# Differences are rounded before ranking so that equal table entries tie
# exactly despite float subtraction noise.
DIFF_DECIMALS = 10


@dataclass(frozen=True)
class CVResult:
    dataset: str
    method: str
    fold_accuracies: tuple[float, ...]
    mean_accuracy: float
    seed: int


@dataclass(frozen=True)
class WilcoxonResult:
    r_plus: float
    r_minus: float
    n: int
    significant: bool
    critical: float


@dataclass
class BenchmarkReport:
    datasets: list[str]
    methods: list[str]
    accuracy: np.ndarray
    wilcoxon: dict[tuple[str, str], WilcoxonResult] = field(default_factory=dict)
    errors: dict[tuple[str, str], str] = field(default_factory=dict)

    @property
    def averages(self) -> dict[str, float]:
        return {m: float(np.nanmean(self.accuracy[:, j])) if len(self.datasets) else math.nan
                for j, m in enumerate(self.methods)}


def accuracy(predictions, labels) -> float:
    p = np.asarray(predictions)
    y = np.asarray(labels)
    if p.shape != y.shape:
        raise ShapeError(f"{p.shape} predictions vs {y.shape} labels")
    if p.size == 0:
        raise ShapeError("accuracy of zero predictions is undefined")
    return float(np.mean(p == y))


def fold_seed(seed: int, dataset: str, fold: int) -> int:
    """Stable per-fold seed, independent of scheduling order."""
    ss = np.random.SeedSequence([seed, zlib.crc32(dataset.encode()), fold])
    return int(ss.generate_state(1)[0])


@dataclass(frozen=True)
class FoldModel:
    scheme: object
    model: nbayes.NaiveBayesModel


def fit_fold(d: Dataset, train_idx, method: Discretizer, seed: int) -> FoldModel:
    """Learn a scheme and a naive Bayes model from the outer training indices.

    For validation-aware methods a stratified 1/9 portion of the training set
    is held out while learning the scheme; the classifier is then fitted on
    the whole outer training set.
    """
    train_idx = np.asarray(train_idx)
    if method.uses_validation:
        split = split_train_validation(train_idx, d.class_labels[train_idx], seed)
        scheme = method.fit(d.take(split.train_indices), d.take(split.val_indices))
    else:
        scheme = method.fit(d.take(train_idx))
    model = nbayes.fit(discretize_dataset(d.take(train_idx), scheme))
    return FoldModel(scheme, model)


def run_cv(d: Dataset, method: Discretizer | str, k: int = 10, seed: int = 0) -> CVResult:
    if isinstance(method, str):
        method = get_method(method)
    d = impute_missing(d)
    folds = stratified_folds(d, k, seed)
    accs = []
    for f in range(k):
        fm = fit_fold(d, folds.train_indices(f), method, fold_seed(seed, d.name, f))
        test = discretize_dataset(d.take(folds.test_indices(f)), fm.scheme)
        accs.append(accuracy(nbayes.predict_many(fm.model, test.matrix()), test.class_labels))
    return CVResult(d.name, method.name, tuple(accs), float(np.mean(accs)), seed)


def critical_value(n: int, alpha: float = ALPHA) -> float:
    """Rank sum that the larger of R+ / R- must exceed for significance."""
    if n == 45 and alpha == ALPHA:
        return CRITICAL_N45
    mean = n * (n + 1) / 4.0
    sd = math.sqrt(n * (n + 1) * (2 * n + 1) / 24.0)
    return mean + norm.ppf(1.0 - alpha / 2.0) * sd


def wilcoxon_rank_sums(acc_a, acc_b, alpha: float = ALPHA) -> WilcoxonResult:
    """Signed-rank sums with zero differences split evenly between R+ and R-."""
    a = np.asarray(acc_a, dtype=float)
    b = np.asarray(acc_b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError("paired accuracy vectors must have equal length")
    n = a.size
    if n == 0:
        raise ShapeError("need at least one paired observation")
    d = np.round(a - b, DIFF_DECIMALS)
    ranks = rankdata(np.abs(d))  # average ranks for ties
    zero_half = ranks[d == 0].sum() / 2.0
    r_plus = float(ranks[d > 0].sum() + zero_half)
    r_minus = float(ranks[d < 0].sum() + zero_half)
    crit = critical_value(n, alpha)
    return WilcoxonResult(r_plus, r_minus, n, max(r_plus, r_minus) > crit, crit)


def report_from_matrix(datasets, methods, matrix) -> BenchmarkReport:
    """Build a report, with all ordered pairwise tests, from an accuracy matrix."""
    acc = np.asarray(matrix, dtype=float)
    report = BenchmarkReport(list(datasets), list(methods), acc)
    for i, j in permutations(range(len(methods)), 2):
        ok = ~(np.isnan(acc[:, i]) | np.isnan(acc[:, j]))
        if ok.any():
            report.wilcoxon[(methods[i], methods[j])] = wilcoxon_rank_sums(acc[ok, i], acc[ok, j])
    return report


def _cell(args):
    d, method_name, k, seed, n_d = args
    try:
        return run_cv(d, get_method(method_name, n_d=n_d), k, seed).mean_accuracy, None
    except Exception as exc:  # recorded per cell, never fatal
        return math.nan, f"{type(exc).__name__}: {exc}"


def benchmark(datasets: list[Dataset], methods: list[str], seed: int, k: int = 10,
              n_d: float = 50.0, n_jobs: int = 1) -> BenchmarkReport:
    cells = [(d, m, k, seed, n_d) for d in datasets for m in methods]
    if n_jobs > 1:
        with ProcessPoolExecutor(n_jobs) as ex:
            results = list(ex.map(_cell, cells))
    else:
        results = [_cell(c) for c in cells]
    acc = np.array([r[0] for r in results], dtype=float).reshape(len(datasets), len(methods))
    report = report_from_matrix([d.name for d in datasets], methods, acc)
    for (d, m, *_), (_, err) in zip(cells, results):
        if err is not None:
            log.warning("%s / %s failed: %s", d.name, m, err)
            report.errors[(d.name, m)] = err
    return report


# --------------------------------------------------------------------------
# Report IO


def read_accuracy_matrix(path: str | Path) -> tuple[list[str], list[str], np.ndarray]:
    """Read a dataset x method CSV; first column holds dataset names."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    methods = [m.strip() for m in rows[0][1:]]
    names, values = [], []
    for r in rows[1:]:
        names.append(r[0].strip())
        values.append([float(c) if c.strip() not in ("", "?", "nan") else math.nan for c in r[1:]])
    return names, methods, np.array(values, dtype=float)


def write_accuracy_csv(report: BenchmarkReport, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["dataset"] + report.methods)
        for name, row in zip(report.datasets, report.accuracy):
            w.writerow([name] + [_fmt_acc(v) for v in row])
        w.writerow(["AVG"] + [_fmt_acc(report.averages[m]) for m in report.methods])


def write_wilcoxon_csv(report: BenchmarkReport, path: str | Path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["method_a", "method_b", "r_plus", "r_minus", "n", "critical", "significant"])
        for (a, b), res in sorted(report.wilcoxon.items(), key=lambda kv: _pair_order(report, kv[0])):
            w.writerow([a, b, f"{res.r_plus:.1f}", f"{res.r_minus:.1f}", res.n,
                        f"{res.critical:.1f}", int(res.significant)])


def _pair_order(report, pair):
    return report.methods.index(pair[0]), report.methods.index(pair[1])


def _fmt_acc(v: float) -> str:
    return "nan" if math.isnan(v) else f"{v:.4f}"


def format_markdown(report: BenchmarkReport) -> str:
    lines = ["| dataset | " + " | ".join(report.methods) + " |",
             "|---|" + "---|" * len(report.methods)]
    for name, row in zip(report.datasets, report.accuracy):
        lines.append(f"| {name} | " + " | ".join(_fmt_acc(v) for v in row) + " |")
    lines.append("| AVG | " + " | ".join(_fmt_acc(report.averages[m]) for m in report.methods) + " |")
    if len(report.methods) > 1:
        lines += ["", "Wilcoxon rank sums (row vs column, R+ of the row method):", "",
                  "| | " + " | ".join(report.methods) + " |",
                  "|---|" + "---|" * len(report.methods)]
        for a in report.methods:
            cells = []
            for b in report.methods:
                res = report.wilcoxon.get((a, b))
                cells.append("-" if res is None else f"{res.r_plus:.1f}" + ("*" if res.significant and res.r_plus > res.r_minus else ""))
            lines.append(f"| {a} | " + " | ".join(cells) + " |")
        lines += ["", "`*` marks a significant win at alpha = 0.05."]
    if report.errors:
        lines += ["", "Failed cells:", ""]
        lines += [f"- {d} / {m}: {err}" for (d, m), err in sorted(report.errors.items())]
    return "\n".join(lines) + "\n"
