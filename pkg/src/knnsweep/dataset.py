"""Tabular regression data: CSV loading, train/test splitting, standardization.

A :class:`Dataset` stores a float64 feature matrix plus a target vector.
Categorical columns are kept as non-negative integer codes cast to float,
assigned in first-appearance order at load time, so repeated loads of the
same file are deterministic without any global label dictionary.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np


class CsvFormatError(ValueError):
    """A CSV file violates the expected layout or cell grammar."""


class SchemaError(ValueError):
    """Two tables that must share a column schema do not."""


class ColumnKind(Enum):
    NUMERIC = "numeric"
    CATEGORICAL = "categorical"


@dataclass(frozen=True)
class Dataset:
    """Immutable feature matrix + target vector with per-column kind metadata.

    Invariants enforced at construction:

    * ``features`` is 2-D float64 with one row per observation,
      ``target`` is 1-D with matching length;
    * ``column_kinds`` and ``column_names`` align with the feature columns;
    * every value is finite (no NaN/inf survives a successful load);
    * categorical columns hold exact integer codes >= 0.
    """

    features: np.ndarray
    target: np.ndarray
    column_kinds: tuple[ColumnKind, ...] = field(default=())
    column_names: tuple[str, ...] = field(default=())

    def __post_init__(self) -> None:
        features = np.array(self.features, dtype=np.float64, order="C")
        target = np.array(self.target, dtype=np.float64)
        kinds = tuple(self.column_kinds)
        names = tuple(str(n) for n in self.column_names)
        if features.ndim != 2:
            raise ValueError("features must be a 2-D matrix")
        if target.ndim != 1:
            raise ValueError("target must be a 1-D vector")
        if features.shape[0] != target.shape[0]:
            raise ValueError(
                f"row count mismatch: {features.shape[0]} feature rows "
                f"vs {target.shape[0]} target values"
            )
        if features.shape[1] < 1:
            raise ValueError("dataset needs at least one feature column")
        if not (len(kinds) == features.shape[1] == len(names)):
            raise ValueError("column_kinds/column_names must match the feature columns")
        if not np.isfinite(features).all() or not np.isfinite(target).all():
            raise ValueError("dataset contains NaN or infinite values")
        for j, kind in enumerate(kinds):
            if kind is ColumnKind.CATEGORICAL:
                col = features[:, j]
                if col.size and (np.any(col != np.floor(col)) or np.any(col < 0)):
                    raise ValueError(
                        f"categorical column {names[j]!r} must hold integer codes >= 0"
                    )
        features.setflags(write=False)
        target.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "column_kinds", kinds)
        object.__setattr__(self, "column_names", names)

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_columns(self) -> int:
        return self.features.shape[1]

    def take(self, row_indices) -> "Dataset":
        """New Dataset holding the given rows, in the given order."""
        idx = list(row_indices)
        return Dataset(
            features=self.features[idx],
            target=self.target[idx],
            column_kinds=self.column_kinds,
            column_names=self.column_names,
        )


@dataclass(frozen=True)
class SplitSpec:
    """Deterministic train/test split: fraction of rows kept for training
    plus the shuffle seed. Identical (dataset, spec) pairs always produce
    identical splits."""

    train_fraction: float = 0.8
    seed: int = 42

    def __post_init__(self) -> None:
        if not (0.0 < self.train_fraction < 1.0):
            raise ValueError(
                f"train_fraction must lie in (0, 1), got {self.train_fraction}"
            )
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def _parse_rows(path, target_column, categorical_columns):
    """Shared CSV body parser. target_column=None loads a feature-only file.

    Returns (names, kinds, feature_columns, target_values) where
    feature_columns is a list of per-column float lists.
    """
    categorical = set(categorical_columns)
    if target_column is not None and target_column in categorical:
        raise CsvFormatError(
            f"target column {target_column!r} cannot be listed as categorical"
        )
    path = Path(path)
    with path.open("r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CsvFormatError(f"{path}: empty file, missing header row") from None
        header = [h.strip() for h in header]
        if len(set(header)) != len(header):
            raise CsvFormatError(f"{path}: duplicate column names in header")
        if target_column is not None and target_column not in header:
            raise CsvFormatError(f"{path}: target column {target_column!r} not in header")
        unknown = categorical.difference(header)
        if unknown:
            raise CsvFormatError(
                f"{path}: categorical column(s) not in header: {sorted(unknown)}"
            )
        feature_names = [h for h in header if h != target_column]
        if not feature_names:
            raise CsvFormatError(f"{path}: no feature columns besides the target")
        kinds = tuple(
            ColumnKind.CATEGORICAL if name in categorical else ColumnKind.NUMERIC
            for name in feature_names
        )
        codebooks: dict[str, dict[str, int]] = {name: {} for name in categorical}
        columns: list[list[float]] = [[] for _ in feature_names]
        target_values: list[float] = []
        n_rows = 0
        for row_no, row in enumerate(reader, start=1):
            if len(row) != len(header):
                raise CsvFormatError(
                    f"{path}: row {row_no} has {len(row)} cells, expected {len(header)}"
                )
            cells = dict(zip(header, row))
            for j, name in enumerate(feature_names):
                cell = cells[name].strip()
                if name in categorical:
                    if cell == "":
                        raise CsvFormatError(
                            f"{path}: row {row_no}, column {name!r}: missing value"
                        )
                    book = codebooks[name]
                    code = book.setdefault(cell, len(book))
                    columns[j].append(float(code))
                else:
                    columns[j].append(_parse_real(path, row_no, name, cell))
            if target_column is not None:
                target_values.append(
                    _parse_real(path, row_no, target_column, cells[target_column].strip())
                )
            n_rows += 1
        if n_rows == 0:
            raise CsvFormatError(f"{path}: no data rows after the header")
    return tuple(feature_names), kinds, columns, target_values


def _parse_real(path, row_no, name, cell) -> float:
    try:
        value = float(cell)
    except ValueError:
        raise CsvFormatError(
            f"{path}: row {row_no}, column {name!r}: cannot parse {cell!r} as a number"
        ) from None
    if not np.isfinite(value):
        raise CsvFormatError(
            f"{path}: row {row_no}, column {name!r}: non-finite value {cell!r}"
        )
    return value


def load_csv(path, target_column: str, categorical_columns=()) -> Dataset:
    """Load a UTF-8, comma-separated file with one header row.

    Every non-target column must parse as a real number unless listed in
    ``categorical_columns``, in which case its labels are mapped to dense
    integer codes in first-appearance order. Missing and non-finite cells
    are rejected with the offending row and column named.
    """
    names, kinds, columns, target_values = _parse_rows(
        path, target_column, categorical_columns
    )
    features = np.column_stack([np.asarray(c, dtype=np.float64) for c in columns])
    return Dataset(
        features=features,
        target=np.asarray(target_values, dtype=np.float64),
        column_kinds=kinds,
        column_names=names,
    )


def load_features_csv(path, categorical_columns=()) -> Dataset:
    """Load a feature-only CSV (no target column); the target is all zeros.

    Used for query files, which carry feature columns only.
    """
    names, kinds, columns, _ = _parse_rows(path, None, categorical_columns)
    features = np.column_stack([np.asarray(c, dtype=np.float64) for c in columns])
    return Dataset(
        features=features,
        target=np.zeros(features.shape[0], dtype=np.float64),
        column_kinds=kinds,
        column_names=names,
    )


def write_csv(data: Dataset, path, target_name: str = "target") -> None:
    """Write a Dataset back to CSV; reloading reproduces it bit-exactly.

    Reals are emitted with 17 significant digits (lossless for float64);
    categorical codes are emitted as bare integers, which first-appearance
    coding maps back to themselves.
    """
    if target_name in data.column_names:
        raise ValueError(f"target name {target_name!r} collides with a feature column")
    lines = [",".join([*data.column_names, target_name])]
    for i in range(data.n_rows):
        cells = []
        for j, kind in enumerate(data.column_kinds):
            v = data.features[i, j]
            cells.append(str(int(v)) if kind is ColumnKind.CATEGORICAL else f"{v:.17g}")
        cells.append(f"{data.target[i]:.17g}")
        lines.append(",".join(cells))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def split(data: Dataset, spec: SplitSpec) -> tuple[Dataset, Dataset]:
    """Partition rows into (train, test) with a seeded Fisher-Yates shuffle.

    Row order within each side follows the shuffle; the same (data, spec)
    pair always yields the same partition. Raises if either side would be
    empty.
    """
    n = data.n_rows
    if n < 2:
        raise ValueError(f"cannot split a dataset with {n} row(s)")
    n_train = int(n * spec.train_fraction)
    if n_train < 1 or n_train >= n:
        raise ValueError(
            f"train_fraction {spec.train_fraction} leaves an empty side for {n} rows"
        )
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    perm = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(0, i + 1))
        perm[i], perm[j] = perm[j], perm[i]
    return data.take(perm[:n_train]), data.take(perm[n_train:])


@dataclass(frozen=True)
class Standardizer:
    """Per-column z-score parameters fitted on training rows only.

    Categorical columns carry identity placeholders and pass through
    unchanged; a numeric column with zero standard deviation maps to
    all-zero after transform.
    """

    column_names: tuple[str, ...]
    column_kinds: tuple[ColumnKind, ...]
    means: np.ndarray
    sds: np.ndarray

    def __post_init__(self) -> None:
        means = np.array(self.means, dtype=np.float64)
        sds = np.array(self.sds, dtype=np.float64)
        means.setflags(write=False)
        sds.setflags(write=False)
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "sds", sds)
        object.__setattr__(self, "column_names", tuple(self.column_names))
        object.__setattr__(self, "column_kinds", tuple(self.column_kinds))

    def transform_vector(self, q: np.ndarray) -> np.ndarray:
        """Apply the fitted transform to one raw feature vector."""
        q = np.asarray(q, dtype=np.float64)
        if q.ndim != 1 or q.shape[0] != len(self.column_names):
            raise SchemaError(
                f"vector has {q.shape} entries, expected {len(self.column_names)}"
            )
        out = q.astype(np.float64, copy=True)
        for j, kind in enumerate(self.column_kinds):
            if kind is ColumnKind.NUMERIC:
                sd = self.sds[j]
                out[j] = 0.0 if sd == 0.0 else (out[j] - self.means[j]) / sd
        return out


def fit_standardizer(train: Dataset) -> Standardizer:
    """Fit per-column mean/sd (population sd) on the numeric training columns."""
    if train.n_rows == 0:
        raise ValueError("cannot fit a standardizer on an empty dataset")
    means = np.zeros(train.n_columns)
    sds = np.ones(train.n_columns)
    for j, kind in enumerate(train.column_kinds):
        if kind is ColumnKind.NUMERIC:
            col = train.features[:, j]
            means[j] = float(np.mean(col))
            sds[j] = float(np.std(col))
    return Standardizer(
        column_names=train.column_names,
        column_kinds=train.column_kinds,
        means=means,
        sds=sds,
    )


def apply_standardizer(s: Standardizer, data: Dataset) -> Dataset:
    """Transform numeric columns to (value - mean) / sd; everything else unchanged."""
    if data.column_names != s.column_names or data.column_kinds != s.column_kinds:
        raise SchemaError("dataset schema does not match the fitted standardizer")
    out = data.features.copy()
    for j, kind in enumerate(s.column_kinds):
        if kind is ColumnKind.NUMERIC:
            sd = s.sds[j]
            if sd == 0.0:
                out[:, j] = 0.0
            else:
                out[:, j] = (out[:, j] - s.means[j]) / sd
    return Dataset(
        features=out,
        target=data.target,
        column_kinds=data.column_kinds,
        column_names=data.column_names,
    )
