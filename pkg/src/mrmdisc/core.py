"""Discretization schemes: candidate cut points, application and serialization.

Intervals are closed on the right: a value ``v`` falls into the first bin ``i``
with ``v <= cuts[i]``, and into the last bin when it exceeds every cut.  Values
outside the training range therefore clamp into the boundary bins.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .dataio import NOMINAL, NUMERIC, Dataset
from .errors import SchemaError, ShapeError

__all__ = [
    "AttributeScheme",
    "DiscretizationScheme",
    "DiscreteDataset",
    "candidate_cuts",
    "apply_scheme",
    "discretize_dataset",
    "save_scheme",
    "load_scheme",
]


@dataclass(frozen=True)
class AttributeScheme:
    cuts: tuple[float, ...] = ()

    def __post_init__(self):
        cuts = tuple(float(c) for c in self.cuts)
        if any(not np.isfinite(c) for c in cuts):
            raise ValueError("cut points must be finite")
        if any(b <= a for a, b in zip(cuts, cuts[1:])):
            raise ValueError(f"cut points must be strictly increasing: {cuts}")
        object.__setattr__(self, "cuts", cuts)

    @property
    def n_bins(self) -> int:
        return len(self.cuts) + 1

    def __len__(self):
        return len(self.cuts)

    @classmethod
    def from_unsorted(cls, cuts) -> "AttributeScheme":
        return cls(tuple(sorted(set(float(c) for c in cuts))))


@dataclass(frozen=True)
class DiscretizationScheme:
    """Per-attribute schemes in dataset attribute order.

    Nominal attributes hold ``None`` (pass-through).
    """

    attribute_names: tuple[str, ...]
    per_attribute: tuple[AttributeScheme | None, ...]
    method: str = ""

    def __post_init__(self):
        if len(self.attribute_names) != len(self.per_attribute):
            raise ShapeError("one scheme entry per attribute required")

    @property
    def numeric_schemes(self) -> dict[str, AttributeScheme]:
        return {n: s for n, s in zip(self.attribute_names, self.per_attribute) if s is not None}

    def __getitem__(self, name: str) -> AttributeScheme | None:
        return self.per_attribute[self.attribute_names.index(name)]


@dataclass(frozen=True, eq=False)
class DiscreteDataset:
    bin_values: tuple[np.ndarray, ...]
    bins_per_attribute: tuple[int, ...]
    class_labels: np.ndarray
    n_classes: int

    def __post_init__(self):
        for col, nb in zip(self.bin_values, self.bins_per_attribute):
            if len(col) and (col.min() < 0 or col.max() >= nb):
                raise ShapeError("bin index out of range")

    @property
    def n_instances(self) -> int:
        return len(self.class_labels)

    @property
    def n_attributes(self) -> int:
        return len(self.bin_values)

    def matrix(self) -> np.ndarray:
        """Instances x attributes array of bin indices."""
        if not self.bin_values:
            return np.zeros((self.n_instances, 0), dtype=np.int64)
        return np.column_stack(self.bin_values)


def candidate_cuts(values) -> np.ndarray:
    """Sorted distinct values without the maximum.

    A cut at the maximum would only create an empty top bin.
    """
    u = np.unique(np.asarray(values, dtype=float))
    return u[:-1]


def apply_scheme(values, s: AttributeScheme | Sequence[float]) -> np.ndarray:
    cuts = s.cuts if isinstance(s, AttributeScheme) else tuple(s)
    return np.searchsorted(np.asarray(cuts, dtype=float), np.asarray(values, dtype=float), side="left")


def discretize_dataset(d: Dataset, s: DiscretizationScheme) -> DiscreteDataset:
    if len(s.per_attribute) != d.n_attributes:
        raise ShapeError(
            f"scheme covers {len(s.per_attribute)} attributes, dataset has {d.n_attributes}"
        )
    bins, counts = [], []
    for j, (a, scheme) in enumerate(zip(d.attributes, s.per_attribute)):
        if a.kind == NOMINAL:
            if scheme is not None:
                raise ShapeError(f"nominal attribute {a.name!r} cannot carry cut points")
            bins.append(d.columns[j].astype(np.int64))
            counts.append(max(1, len(d.categories[j])))
        else:
            if scheme is None:
                raise ShapeError(f"numeric attribute {a.name!r} has no scheme")
            bins.append(apply_scheme(d.columns[j], scheme).astype(np.int64))
            counts.append(scheme.n_bins)
    return DiscreteDataset(tuple(bins), tuple(counts), d.class_labels, d.n_classes)


def passthrough_scheme(d: Dataset, numeric: dict[str, AttributeScheme], method: str = "") -> DiscretizationScheme:
    per = tuple(numeric[a.name] if a.kind == NUMERIC else None for a in d.attributes)
    return DiscretizationScheme(tuple(a.name for a in d.attributes), per, method)


# --------------------------------------------------------------------------
# Serialization: JSON with one record per attribute.  Python's float repr is
# the shortest string that round-trips, so cuts reload bit-identically.


def scheme_to_dict(s: DiscretizationScheme) -> dict:
    return {
        "method": s.method,
        "attributes": [
            {
                "name": name,
                "kind": NOMINAL if sch is None else NUMERIC,
                "cuts": None if sch is None else list(sch.cuts),
            }
            for name, sch in zip(s.attribute_names, s.per_attribute)
        ],
    }


def scheme_from_dict(obj: dict) -> DiscretizationScheme:
    names, per = [], []
    for rec in obj["attributes"]:
        names.append(rec["name"])
        if rec["kind"] == NOMINAL:
            per.append(None)
        elif rec["kind"] == NUMERIC:
            per.append(AttributeScheme(tuple(rec["cuts"])))
        else:
            raise SchemaError(f"unknown attribute kind {rec['kind']!r}")
    return DiscretizationScheme(tuple(names), tuple(per), obj.get("method", ""))


def save_scheme(s: DiscretizationScheme, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scheme_to_dict(s), indent=2) + "\n", encoding="utf-8")


def load_scheme(path: str | Path) -> DiscretizationScheme:
    return scheme_from_dict(json.loads(Path(path).read_text(encoding="utf-8")))
