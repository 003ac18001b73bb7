"""Dataset loading, mean/mode imputation and deterministic stratified splitting.

Datasets are CSV files with a header row plus a sidecar schema file holding one
``column_name = numeric|nominal|class`` line per column.  A cell containing
``?`` or nothing at all is missing.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass, replace
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (
    EmptyDatasetError,
    FoldError,
    ImputationError,
    ParseError,
    SchemaError,
)

__all__ = [
    "NUMERIC",
    "NOMINAL",
    "AttributeSchema",
    "Dataset",
    "FoldAssignment",
    "TrainValSplit",
    "load_dataset",
    "load_builtin",
    "builtin_names",
    "read_schema",
    "write_dataset",
    "impute_missing",
    "stratified_folds",
    "split_train_validation",
]

log = logging.getLogger(__name__)

NUMERIC = "numeric"
NOMINAL = "nominal"
CLASS = "class"
MISSING_TOKENS = frozenset({"", "?"})
VALIDATION_FRACTION = 1.0 / 9.0


@dataclass(frozen=True)
class AttributeSchema:
    name: str
    kind: str
    index: int

    def __post_init__(self):
        if self.kind not in (NUMERIC, NOMINAL):
            raise SchemaError(f"attribute {self.name!r}: unknown kind {self.kind!r}")


@dataclass(frozen=True, eq=False)
class Dataset:
    """Column-typed instance table.

    Numeric columns are float arrays with NaN marking a missing cell; nominal
    columns are integer category indices with -1 marking a missing cell.
    Categories and class names are indexed in order of first appearance.
    """

    attributes: tuple[AttributeSchema, ...]
    columns: tuple[np.ndarray, ...]
    categories: tuple[tuple[str, ...] | None, ...]
    class_labels: np.ndarray
    class_names: tuple[str, ...]
    class_name: str = "class"
    class_index: int = -1
    name: str = "dataset"

    def __post_init__(self):
        names = [a.name for a in self.attributes] + [self.class_name]
        if len(set(names)) != len(names):
            raise SchemaError("attribute names must be unique")
        if len(self.columns) != len(self.attributes):
            raise SchemaError("one column per attribute required")
        n = len(self.class_labels)
        for a, col in zip(self.attributes, self.columns):
            if len(col) != n:
                raise SchemaError(f"column {a.name!r} has {len(col)} values, expected {n}")

    @property
    def n_instances(self) -> int:
        return len(self.class_labels)

    @property
    def n_classes(self) -> int:
        return len(self.class_names)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)

    @property
    def schema(self) -> tuple[AttributeSchema, ...]:
        return self.attributes

    @property
    def numeric_values(self) -> dict[str, np.ndarray]:
        return {a.name: c for a, c in zip(self.attributes, self.columns) if a.kind == NUMERIC}

    @property
    def nominal_values(self) -> dict[str, np.ndarray]:
        return {a.name: c for a, c in zip(self.attributes, self.columns) if a.kind == NOMINAL}

    def missing_mask(self, j: int) -> np.ndarray:
        col = self.columns[j]
        if self.attributes[j].kind == NUMERIC:
            return np.isnan(col)
        return col < 0

    @property
    def has_missing(self) -> bool:
        return any(self.missing_mask(j).any() for j in range(self.n_attributes))

    def take(self, indices) -> "Dataset":
        """Row subset (a view in spirit: schema and category tables are shared)."""
        idx = np.asarray(indices, dtype=np.intp)
        return replace(
            self,
            columns=tuple(c[idx] for c in self.columns),
            class_labels=self.class_labels[idx],
        )


@dataclass(frozen=True, eq=False)
class FoldAssignment:
    fold_of_instance: np.ndarray
    k: int
    seed: int

    def test_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of_instance == fold)

    def train_indices(self, fold: int) -> np.ndarray:
        return np.flatnonzero(self.fold_of_instance != fold)

    def __eq__(self, other):
        if not isinstance(other, FoldAssignment):
            return NotImplemented
        return (
            self.k == other.k
            and self.seed == other.seed
            and np.array_equal(self.fold_of_instance, other.fold_of_instance)
        )


@dataclass(frozen=True, eq=False)
class TrainValSplit:
    train_indices: np.ndarray
    val_indices: np.ndarray

    def __eq__(self, other):
        if not isinstance(other, TrainValSplit):
            return NotImplemented
        return np.array_equal(self.train_indices, other.train_indices) and np.array_equal(
            self.val_indices, other.val_indices
        )


# --------------------------------------------------------------------------
# Loading


def read_schema(schema_path: str | Path) -> dict[str, str]:
    """Parse ``name = kind`` lines; blank lines and ``#`` comments are skipped."""
    kinds: dict[str, str] = {}
    with open(schema_path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise SchemaError(f"{schema_path}:{lineno}: expected 'column = kind'")
            name, kind = (s.strip() for s in line.split("=", 1))
            kind = kind.lower()
            if kind not in (NUMERIC, NOMINAL, CLASS):
                raise SchemaError(f"{schema_path}:{lineno}: unknown kind {kind!r}")
            if name in kinds:
                raise SchemaError(f"{schema_path}:{lineno}: duplicate column {name!r}")
            kinds[name] = kind
    n_class = sum(k == CLASS for k in kinds.values())
    if n_class != 1:
        raise SchemaError(f"{schema_path}: exactly one class column required, found {n_class}")
    return kinds


def load_dataset(path: str | Path, schema_path: str | Path | None = None) -> Dataset:
    """Read a CSV dataset typed by its schema sidecar.

    ``schema_path`` defaults to the CSV path with a ``.schema`` suffix.
    """
    path = Path(path)
    schema_path = Path(schema_path) if schema_path is not None else path.with_suffix(".schema")
    kinds = read_schema(schema_path)

    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise EmptyDatasetError(f"{path}: file is empty") from None
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise ParseError(f"expected {len(header)} cells, found {len(row)}", row=lineno)
            rows.append((lineno, [c.strip() for c in row]))

    unknown = [name for name in kinds if name not in header]
    if unknown:
        raise SchemaError(f"schema names columns absent from {path.name}: {unknown}")
    untyped = [name for name in header if name not in kinds]
    if untyped:
        raise SchemaError(f"columns missing from schema: {untyped}")
    if not rows:
        raise EmptyDatasetError(f"{path}: no instances")

    attributes = []
    columns = []
    categories = []
    class_col = None
    for idx, name in enumerate(header):
        kind = kinds[name]
        if kind == CLASS:
            class_col = idx
            continue
        attributes.append(AttributeSchema(name, kind, idx))
        if kind == NUMERIC:
            col = np.empty(len(rows))
            for r, (lineno, cells) in enumerate(rows):
                cell = cells[idx]
                if cell in MISSING_TOKENS:
                    col[r] = np.nan
                    continue
                try:
                    col[r] = float(cell)
                except ValueError:
                    raise ParseError(f"column {name!r}: not a number: {cell!r}", row=lineno) from None
            columns.append(col)
            categories.append(None)
        else:
            codes, cats = _index_categories([cells[idx] for _, cells in rows])
            columns.append(codes)
            categories.append(cats)

    labels = [cells[class_col] for _, cells in rows]
    for (lineno, _), lab in zip(rows, labels):
        if lab in MISSING_TOKENS:
            raise ParseError("missing class label", row=lineno)
    class_labels, class_names = _index_categories(labels)

    return Dataset(
        attributes=tuple(attributes),
        columns=tuple(columns),
        categories=tuple(categories),
        class_labels=class_labels,
        class_names=class_names,
        class_name=header[class_col],
        class_index=class_col,
        name=path.stem,
    )


def _index_categories(cells: Sequence[str]) -> tuple[np.ndarray, tuple[str, ...]]:
    index: dict[str, int] = {}
    codes = np.empty(len(cells), dtype=np.int64)
    for i, cell in enumerate(cells):
        if cell in MISSING_TOKENS:
            codes[i] = -1
            continue
        codes[i] = index.setdefault(cell, len(index))
    return codes, tuple(index)


def builtin_names() -> list[str]:
    root = resources.files("mrmdisc") / "data"
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".csv"))


def load_builtin(name: str) -> Dataset:
    """Load one of the small benchmark datasets shipped with the package."""
    root = resources.files("mrmdisc") / "data"
    csv_file = root / f"{name}.csv"
    if not csv_file.is_file():
        raise FileNotFoundError(f"no bundled dataset {name!r}; have {builtin_names()}")
    with resources.as_file(csv_file) as p, resources.as_file(root / f"{name}.schema") as s:
        return load_dataset(p, s)


def write_dataset(d: Dataset, path: str | Path, schema_path: str | Path | None = None) -> None:
    """Write ``d`` back to CSV + schema; numeric cells use ``repr`` so floats round-trip."""
    path = Path(path)
    schema_path = Path(schema_path) if schema_path is not None else path.with_suffix(".schema")
    order = sorted(
        [(a.index, a.name, a.kind, j) for j, a in enumerate(d.attributes)]
        + [(d.class_index if d.class_index >= 0 else 1 << 30, d.class_name, CLASS, None)]
    )
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([name for _, name, _, _ in order])
        for i in range(d.n_instances):
            row = []
            for _, _, kind, j in order:
                if j is None:
                    row.append(d.class_names[d.class_labels[i]])
                elif kind == NUMERIC:
                    v = d.columns[j][i]
                    row.append("?" if np.isnan(v) else repr(float(v)))
                else:
                    code = d.columns[j][i]
                    row.append("?" if code < 0 else d.categories[j][code])
            w.writerow(row)
    with open(schema_path, "w", encoding="utf-8") as fh:
        for _, name, kind, _ in order:
            fh.write(f"{name} = {kind}\n")


# --------------------------------------------------------------------------
# Imputation


def impute_missing(d: Dataset) -> Dataset:
    """Replace missing numeric cells by the column mean, nominal ones by the mode.

    The mode tie-break is the lowest category index (first appearance).
    Returns ``d`` itself when nothing is missing.
    """
    if not d.has_missing:
        return d
    columns = []
    for j, (a, col) in enumerate(zip(d.attributes, d.columns)):
        mask = d.missing_mask(j)
        if not mask.any():
            columns.append(col)
            continue
        if mask.all():
            raise ImputationError(a.name)
        col = col.copy()
        if a.kind == NUMERIC:
            col[mask] = col[~mask].mean()
        else:
            counts = np.bincount(col[~mask], minlength=len(d.categories[j]))
            col[mask] = int(np.argmax(counts))
        columns.append(col)
    return replace(d, columns=tuple(columns))


# --------------------------------------------------------------------------
# Splitting


def stratified_folds(d: Dataset, k: int = 10, seed: int = 0) -> FoldAssignment:
    """Assign instances to ``k`` folds, stratified by class.

    Each class is shuffled with a generator seeded by ``seed`` and dealt
    round-robin; the dealing position carries over from one class to the
    next so overall fold sizes also stay within one of each other.
    """
    labels = np.asarray(d.class_labels if isinstance(d, Dataset) else d)
    n = len(labels)
    if k < 2:
        raise FoldError(f"need at least 2 folds, got {k}")
    if k > n:
        raise FoldError(f"{k} folds requested for {n} instances")
    rng = np.random.default_rng(seed)
    folds = np.empty(n, dtype=np.int64)
    start = 0
    for c in np.unique(labels):
        members = rng.permutation(np.flatnonzero(labels == c))
        folds[members] = (start + np.arange(len(members))) % k
        start = (start + len(members)) % k
    return FoldAssignment(folds, k, seed)


def split_train_validation(train_set, labels, seed: int = 0) -> TrainValSplit:
    """Carve a stratified validation portion of about 1/9 out of ``train_set``.

    ``labels`` is aligned with ``train_set``.  Every class with at least two
    members gives round(n_c / 9) instances, but at least one, to validation;
    smaller classes stay entirely in training.
    """
    train_set = np.asarray(train_set, dtype=np.intp)
    labels = np.asarray(labels)
    if len(train_set) != len(labels):
        raise ValueError("train_set and labels must be aligned")
    rng = np.random.default_rng(seed)
    train_parts, val_parts = [], []
    for c in np.unique(labels):
        members = rng.permutation(train_set[labels == c])
        n_c = len(members)
        if n_c < 2:
            log.warning("class %s has %d instance(s); none held out for validation", c, n_c)
            train_parts.append(members)
            continue
        n_val = min(max(1, math.floor(n_c * VALIDATION_FRACTION + 0.5)), n_c - 1)
        val_parts.append(members[:n_val])
        train_parts.append(members[n_val:])
    train = np.sort(np.concatenate(train_parts)) if train_parts else np.empty(0, np.intp)
    val = np.sort(np.concatenate(val_parts)) if val_parts else np.empty(0, np.intp)
    return TrainValSplit(train, val)
