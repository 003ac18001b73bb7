"""Uniform discretizer interface used by the harness and the CLI.

Every method learns from a training portion and a validation portion; only
MRmD actually looks at the validation portion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import baselines
from .core import AttributeScheme, DiscretizationScheme, passthrough_scheme
from .dataio import NUMERIC, Dataset
from .mrmd import MrmdConfig, mrmd_discretize_attribute

__all__ = ["Discretizer", "get_method", "method_names"]

DEFAULT_BINS = 10


@dataclass(frozen=True)
class Discretizer:
    name: str
    fit_attribute: Callable[..., AttributeScheme]
    uses_validation: bool = False

    def fit(self, train: Dataset, val: Dataset | None = None) -> DiscretizationScheme:
        schemes = {}
        for j, a in enumerate(train.attributes):
            if a.kind != NUMERIC:
                continue
            val_col = val.columns[j] if val is not None else None
            schemes[a.name] = self.fit_attribute(train.columns[j], train.class_labels, val_col)
        return passthrough_scheme(train, schemes, method=self.name)


def _mrmd(cfg: MrmdConfig):
    def fit(x, y, v):
        return mrmd_discretize_attribute(x, y, v, cfg)[0]
    return fit


def get_method(name: str, *, n_d: float = 50.0, bins: int = DEFAULT_BINS,
               mrmd_config: MrmdConfig | None = None) -> Discretizer:
    name = name.lower()
    if name == "mrmd":
        cfg = mrmd_config if mrmd_config is not None else MrmdConfig(n_d=n_d)
        return Discretizer("mrmd", _mrmd(cfg), uses_validation=True)
    if name == "mdlp":
        return Discretizer(name, lambda x, y, v: baselines.mdlp_discretize_attribute(x, y))
    if name == "caim":
        return Discretizer(name, lambda x, y, v: baselines.caim_discretize_attribute(x, y))
    if name == "pkid":
        return Discretizer(name, lambda x, y, v: baselines.pkid_discretize_attribute(x))
    if name == "equal_width":
        return Discretizer(name, lambda x, y, v: baselines.equal_width(x, bins))
    if name == "equal_frequency":
        return Discretizer(name, lambda x, y, v: baselines.equal_frequency(x, bins))
    raise KeyError(f"unknown method {name!r}; choose from {', '.join(method_names())}")


def method_names() -> list[str]:
    return ["mrmd", "mdlp", "caim", "pkid", "equal_width", "equal_frequency"]
