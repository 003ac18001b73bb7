"""Supervised discretization (MRmD and classical baselines) for naive Bayes."""

from .core import AttributeScheme, DiscretizationScheme, apply_scheme, candidate_cuts, discretize_dataset
from .dataio import Dataset, impute_missing, load_builtin, load_dataset
from .evalharness import run_cv, wilcoxon_rank_sums
from .methods import get_method
from .mrmd import MrmdConfig, mrmd_discretize, mrmd_discretize_attribute

__all__ = [
    "AttributeScheme",
    "DiscretizationScheme",
    "Dataset",
    "MrmdConfig",
    "apply_scheme",
    "candidate_cuts",
    "discretize_dataset",
    "get_method",
    "impute_missing",
    "load_builtin",
    "load_dataset",
    "mrmd_discretize",
    "mrmd_discretize_attribute",
    "run_cv",
    "wilcoxon_rank_sums",
]

__version__ = "0.1.0"
