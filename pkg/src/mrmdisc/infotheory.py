"""Empirical information-theoretic kernels over discrete distributions.

All logarithms are base 2, so entropies and mutual information are in bits and
the Jensen-Shannon divergence lies in [0, 1].  Zero-probability terms are
skipped (0 log 0 = 0).  No smoothing is applied here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfiniteDivergenceError, ShapeError, UndefinedStatisticError

__all__ = [
    "Distribution",
    "JointCounts",
    "entropy",
    "mutual_information",
    "kl_divergence",
    "js_divergence",
    "histogram",
]

PROB_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Distribution:
    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ShapeError("a distribution is a non-empty 1-d sequence")
        if np.any(p < 0) or not np.all(np.isfinite(p)):
            raise ValueError("probabilities must be finite and non-negative")
        if abs(p.sum() - 1.0) > PROB_TOL:
            raise ValueError(f"probabilities sum to {p.sum()!r}, not 1")
        object.__setattr__(self, "probs", p)

    @property
    def support_size(self) -> int:
        return self.probs.size

    @classmethod
    def from_counts(cls, counts) -> "Distribution":
        c = np.asarray(counts, dtype=float)
        total = c.sum()
        if total <= 0:
            raise UndefinedStatisticError("cannot normalise an all-zero count vector")
        return cls(c / total)


@dataclass(frozen=True, eq=False)
class JointCounts:
    """Interval-by-class contingency table."""

    counts: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.counts)
        if c.ndim != 2:
            raise ShapeError("joint counts must be a 2-d interval x class table")
        if np.any(c < 0):
            raise ValueError("counts must be non-negative")
        object.__setattr__(self, "counts", c)

    @property
    def n_intervals(self) -> int:
        return self.counts.shape[0]

    @property
    def n_classes(self) -> int:
        return self.counts.shape[1]

    @property
    def total(self):
        return self.counts.sum()

    @classmethod
    def from_labels(cls, bins, labels, n_bins: int, n_classes: int) -> "JointCounts":
        bins = np.asarray(bins, dtype=np.intp)
        labels = np.asarray(labels, dtype=np.intp)
        flat = np.bincount(bins * n_classes + labels, minlength=n_bins * n_classes)
        return cls(flat.reshape(n_bins, n_classes))


def _probs(p) -> np.ndarray:
    if isinstance(p, Distribution):
        return p.probs
    return Distribution(p).probs


def entropy(p) -> float:
    """Shannon entropy in bits."""
    p = _probs(p)
    nz = p[p > 0]
    return float(max(0.0, -np.sum(nz * np.log2(nz))))


def mutual_information(j) -> float:
    """I(A;C) in bits from an interval-by-class count table."""
    counts = j.counts if isinstance(j, JointCounts) else JointCounts(j).counts
    counts = counts.astype(float)
    total = counts.sum()
    if total <= 0:
        raise UndefinedStatisticError("mutual information of an empty table is undefined")
    row = counts.sum(axis=1, keepdims=True)
    col = counts.sum(axis=0, keepdims=True)
    nz = counts > 0
    # p(a,c) / (p(a) p(c)) == n(a,c) * N / (n(a) n(c))
    ratio = (counts * total)[nz] / (row * col)[nz]
    return float(max(0.0, np.sum(counts[nz] / total * np.log2(ratio))))


def kl_divergence(p, q) -> float:
    """D_KL(p || q) in bits."""
    p, q = _probs(p), _probs(q)
    if p.shape != q.shape:
        raise ShapeError("distributions differ in support size")
    nz = p > 0
    if np.any(q[nz] == 0):
        raise InfiniteDivergenceError("p has mass where q has none")
    return float(max(0.0, np.sum(p[nz] * np.log2(p[nz] / q[nz]))))


def js_divergence(p, q) -> float:
    """Jensen-Shannon divergence in bits, in [0, 1]."""
    p, q = _probs(p), _probs(q)
    if p.shape != q.shape:
        raise ShapeError("distributions differ in support size")
    # p / m written as 2p / (p + q): halving a subnormal mixture would underflow to 0
    s = p + q
    total = 0.0
    for x in (p, q):
        nz = x > 0
        total += np.sum(x[nz] * np.log2(2.0 * x[nz] / s[nz]))
    return float(min(1.0, max(0.0, 0.5 * total)))


def histogram(bins, n_bins: int) -> Distribution:
    """Empirical distribution of bin indices over a fixed set of ``n_bins`` bins."""
    return Distribution.from_counts(np.bincount(np.asarray(bins, dtype=np.intp), minlength=n_bins))
