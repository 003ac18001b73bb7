"""Reference discretizers: MDLP, CAIM, PKID, equal-width and equal-frequency."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AttributeScheme
from .errors import ShapeError
from .infotheory import entropy

__all__ = [
    "QuantaMatrix",
    "info_gain",
    "mdlp_discretize_attribute",
    "caim_value",
    "caim_discretize_attribute",
    "pkid_discretize_attribute",
    "equal_width",
    "equal_frequency",
]


def _class_entropy(counts) -> float:
    counts = np.asarray(counts, dtype=float)
    total = counts.sum()
    if total == 0:
        return 0.0
    return entropy(counts / total)


def info_gain(values, labels, cut: float) -> float:
    """Class-entropy reduction from splitting at ``cut`` (``<= cut`` goes left)."""
    values = np.asarray(values, dtype=float)
    _, y = np.unique(np.asarray(labels), return_inverse=True)
    left = values <= cut
    n, n1 = len(values), int(left.sum())
    if n1 == 0 or n1 == n:
        raise ValueError(f"cut {cut} leaves one side empty")
    k = y.max() + 1
    e = _class_entropy(np.bincount(y, minlength=k))
    e1 = _class_entropy(np.bincount(y[left], minlength=k))
    e2 = _class_entropy(np.bincount(y[~left], minlength=k))
    return e - n1 / n * e1 - (n - n1) / n * e2


# --------------------------------------------------------------------------
# MDLP (Fayyad & Irani)


def mdlp_discretize_attribute(values, labels) -> AttributeScheme:
    """Recursive entropy splitting with the MDL acceptance test.

    Candidate cuts are boundary points: a unique value ``u_i`` is a boundary
    when the instances at ``u_i`` and ``u_{i+1}`` do not all share one class.
    """
    x = np.asarray(values, dtype=float)
    _, y = np.unique(np.asarray(labels), return_inverse=True)
    if x.size == 0:
        return AttributeScheme()
    u, pos = np.unique(x, return_inverse=True)
    n_classes = int(y.max()) + 1
    per_value = np.zeros((len(u), n_classes))
    np.add.at(per_value, (pos, y), 1.0)
    cum = np.vstack([np.zeros((1, n_classes)), np.cumsum(per_value, axis=0)])
    classes_at = per_value > 0
    single = classes_at.sum(axis=1) == 1
    same_class = np.all(classes_at[:-1] == classes_at[1:], axis=1)
    # boundary between u[i] and u[i+1] unless both are pure in the same class
    is_boundary = ~(single[:-1] & single[1:] & same_class)

    cuts: list[float] = []
    stack = [(0, len(u))]
    while stack:
        lo, hi = stack.pop()
        b = _best_mdlp_split(cum, is_boundary, lo, hi)
        if b is None:
            continue
        cuts.append(float(u[b - 1]))
        stack.append((b, hi))
        stack.append((lo, b))
    return AttributeScheme.from_unsorted(cuts)


def _best_mdlp_split(cum, is_boundary, lo, hi):
    """Best accepted boundary index in the unique-value block [lo, hi), or None."""
    cand = np.arange(lo + 1, hi)
    if cand.size == 0:
        return None
    cand = cand[is_boundary[cand - 1]]
    if cand.size == 0:
        return None
    whole = cum[hi] - cum[lo]
    n = whole.sum()
    left = cum[cand] - cum[lo]
    right = whole - left
    n1 = left.sum(axis=1)
    n2 = n - n1
    e1 = _rows_entropy(left)
    e2 = _rows_entropy(right)
    weighted = (n1 * e1 + n2 * e2) / n
    k = int(np.argmin(weighted))  # first minimum: smallest cut on ties
    e = _class_entropy(whole)
    gain = e - weighted[k]
    k0 = int((whole > 0).sum())
    k1 = int((left[k] > 0).sum())
    k2 = int((right[k] > 0).sum())
    delta = math.log2(3**k0 - 2) - (k0 * e - k1 * e1[k] - k2 * e2[k])
    threshold = (math.log2(n - 1) + delta) / n
    return int(cand[k]) if gain > threshold else None


def _rows_entropy(counts):
    totals = counts.sum(axis=1, keepdims=True)
    p = np.divide(counts, totals, out=np.zeros_like(counts), where=totals > 0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return terms.sum(axis=1)


# --------------------------------------------------------------------------
# CAIM (Kurgan & Cios)


@dataclass(frozen=True, eq=False)
class QuantaMatrix:
    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts)
        if c.ndim != 2:
            raise ShapeError("quanta matrix is interval x class")
        object.__setattr__(self, "counts", c)

    @property
    def interval_totals(self) -> np.ndarray:
        return self.counts.sum(axis=1)

    @property
    def n(self) -> int:
        return self.counts.shape[0]


def caim_value(q) -> float:
    counts = q.counts if isinstance(q, QuantaMatrix) else QuantaMatrix(q).counts
    m = counts.sum(axis=1).astype(float)
    if np.any(m < 1):
        raise ValueError("every interval must be non-empty")
    return float(np.mean(counts.max(axis=1).astype(float) ** 2 / m))


def caim_discretize_attribute(values, labels) -> AttributeScheme:
    """Greedy CAIM: candidates are midpoints between adjacent distinct values.

    A cut is accepted while it raises CAIM, or while there are fewer intervals
    than classes.
    """
    x = np.asarray(values, dtype=float)
    _, y = np.unique(np.asarray(labels), return_inverse=True)
    u, pos = np.unique(x, return_inverse=True)
    if len(u) < 2:
        return AttributeScheme()
    n_classes = int(y.max()) + 1
    per_value = np.zeros((len(u), n_classes))
    np.add.at(per_value, (pos, y), 1.0)
    cum = np.vstack([np.zeros((1, n_classes)), np.cumsum(per_value, axis=0)])
    mids = (u[:-1] + u[1:]) / 2.0

    boundaries = [0, len(u)]
    remaining = np.arange(1, len(u))
    global_caim = _caim_of(cum, np.asarray(boundaries))
    while remaining.size:
        scores = np.array([
            _caim_of(cum, np.asarray(sorted(boundaries + [int(b)]))) for b in remaining
        ])
        k = int(np.argmax(scores))
        n_intervals = len(boundaries) - 1
        if not (scores[k] > global_caim or n_intervals < n_classes):
            break
        global_caim = scores[k]
        boundaries = sorted(boundaries + [int(remaining[k])])
        remaining = np.delete(remaining, k)
    return AttributeScheme(tuple(float(mids[b - 1]) for b in boundaries[1:-1]))


def _caim_of(cum, boundaries) -> float:
    q = cum[boundaries[1:]] - cum[boundaries[:-1]]
    return float(np.mean(q.max(axis=1) ** 2 / q.sum(axis=1)))


# --------------------------------------------------------------------------
# Unsupervised binning


def _quantile_cuts(values, t: int) -> AttributeScheme:
    x = np.sort(np.asarray(values, dtype=float))
    n = len(x)
    if t <= 1 or n == 0:
        return AttributeScheme()
    ends = [(i * n) // t for i in range(1, t)]
    cuts = {float(x[e - 1]) for e in ends if e >= 1}
    cuts.discard(float(x[-1]))  # a cut at the maximum only adds an empty bin
    return AttributeScheme.from_unsorted(cuts)


def pkid_discretize_attribute(values) -> AttributeScheme:
    """Proportional k-interval discretization: floor(sqrt(N)) equal-frequency bins."""
    n = len(np.asarray(values))
    return _quantile_cuts(values, math.isqrt(n))


def equal_frequency(values, k: int) -> AttributeScheme:
    if k < 1:
        raise ValueError("k must be >= 1")
    return _quantile_cuts(values, k)


def equal_width(values, k: int) -> AttributeScheme:
    if k < 1:
        raise ValueError("k must be >= 1")
    x = np.asarray(values, dtype=float)
    lo, hi = float(x.min()), float(x.max())
    if hi == lo or k == 1:
        return AttributeScheme()
    return AttributeScheme.from_unsorted(lo + i * (hi - lo) / k for i in range(1, k))
