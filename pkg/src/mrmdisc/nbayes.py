"""Categorical naive Bayes over discretized attributes, Laplace-smoothed, in log space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DiscreteDataset
from .errors import FitError, ShapeError

__all__ = ["NaiveBayesModel", "fit", "predict", "predict_log_posterior", "predict_many"]


@dataclass(frozen=True, eq=False)
class NaiveBayesModel:
    """``log_likelihoods[j]`` has shape (bins of attribute j, n_classes)."""

    log_priors: np.ndarray
    log_likelihoods: tuple[np.ndarray, ...]
    bins_per_attribute: tuple[int, ...]
    n_classes: int


def fit(d: DiscreteDataset) -> NaiveBayesModel:
    """Add-one smoothing for both the class prior and every likelihood table."""
    if d.n_instances == 0:
        raise FitError("cannot fit naive Bayes on zero instances")
    n_classes = d.n_classes
    y = np.asarray(d.class_labels, dtype=np.intp)
    class_counts = np.bincount(y, minlength=n_classes).astype(float)
    log_priors = np.log((class_counts + 1.0) / (d.n_instances + n_classes))
    tables = []
    for bins, n_bins in zip(d.bin_values, d.bins_per_attribute):
        joint = np.bincount(bins * n_classes + y, minlength=n_bins * n_classes)
        joint = joint.reshape(n_bins, n_classes).astype(float)
        tables.append(np.log((joint + 1.0) / (class_counts + n_bins)))
    return NaiveBayesModel(log_priors, tuple(tables), tuple(d.bins_per_attribute), n_classes)


def _check(m: NaiveBayesModel, x: np.ndarray):
    if x.shape[-1] != len(m.bins_per_attribute):
        raise ShapeError(f"expected {len(m.bins_per_attribute)} attributes, got {x.shape[-1]}")
    if x.size and (x.min() < 0 or np.any(x >= np.asarray(m.bins_per_attribute))):
        raise ShapeError("bin index out of range for the fitted model")


def predict_log_posterior(m: NaiveBayesModel, instance) -> np.ndarray:
    """Unnormalised per-class log posterior."""
    x = np.asarray(instance, dtype=np.intp)
    _check(m, x)
    out = m.log_priors.copy()
    for table, b in zip(m.log_likelihoods, x):
        out += table[b]
    return out


def predict(m: NaiveBayesModel, instance) -> int:
    # np.argmax returns the first maximum, i.e. the smallest class index on ties
    return int(np.argmax(predict_log_posterior(m, instance)))


def predict_many(m: NaiveBayesModel, X) -> np.ndarray:
    X = np.asarray(X, dtype=np.intp)
    _check(m, X)
    scores = np.tile(m.log_priors, (X.shape[0], 1))
    for j, table in enumerate(m.log_likelihoods):
        scores += table[X[:, j]]
    return np.argmax(scores, axis=1)
