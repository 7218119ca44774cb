"""KNN regression and the k-neighbor local density estimate.

The regressor is a lazy learner: fit stores the training data and builds
a neighbor index, nothing else. Predictions average the k nearest targets,
either uniformly or weighted by inverse distance, with nearby points
getting more influence in the weighted mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dataset import Dataset, SchemaError, Standardizer, apply_standardizer
from .distance import DistanceMetric
from .neighbors import SearchBackend, build_index


class ZeroRadiusError(ValueError):
    """The k-th neighbor distance is zero, so the density is unbounded."""


class WeightingMode(Enum):
    UNIFORM = "uniform"
    INVERSE_DISTANCE = "inverse_distance"


@dataclass(frozen=True)
class KnnModel:
    """Immutable fitted model. ``train`` is stored in model feature space:
    when a standardizer is attached, fit already applied it and predict
    applies it to every incoming query."""

    train: Dataset
    k: int
    metric: DistanceMetric
    weighting: WeightingMode
    index: object
    standardizer: Standardizer | None = None


@dataclass(frozen=True)
class DensityEstimate:
    """Probability density at a query point, units of 1/volume."""

    value: float


def fit(
    train: Dataset,
    k: int,
    metric: DistanceMetric = DistanceMetric.EUCLIDEAN,
    weighting: WeightingMode = WeightingMode.UNIFORM,
    backend: SearchBackend = SearchBackend.KD_TREE,
    standardizer: Standardizer | None = None,
) -> KnnModel:
    """Store the training data and build the neighbor index.

    k must satisfy 1 <= k <= n; out-of-range k is an error here rather
    than being clamped, to surface misconfiguration early.
    """
    if train.n_rows == 0:
        raise ValueError("cannot fit on an empty training set")
    if not 1 <= k <= train.n_rows:
        raise ValueError(f"k={k} out of range for {train.n_rows} training rows")
    if standardizer is not None:
        train = apply_standardizer(standardizer, train)
    index = build_index(train, metric, backend)
    return KnnModel(
        train=train,
        k=k,
        metric=metric,
        weighting=weighting,
        index=index,
        standardizer=standardizer,
    )


def predict_from_neighbors(targets, distances, weighting: WeightingMode) -> float:
    """Combine neighbor targets into one prediction.

    uniform: arithmetic mean. inverse_distance: sum(y/d) / sum(1/d); when
    any neighbor sits at distance exactly 0, the prediction is the mean of
    the zero-distance neighbors' targets (exact-match rule).
    """
    targets = list(targets)
    distances = list(distances)
    if weighting is WeightingMode.UNIFORM:
        return _mean(targets)
    exact = [t for t, d in zip(targets, distances) if d == 0.0]
    if exact:
        return _mean(exact)
    num = 0.0
    den = 0.0
    for t, d in zip(targets, distances):
        w = 1.0 / d
        num += w * t
        den += w
    return num / den


def _mean(values) -> float:
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def predict_one(model: KnnModel, q) -> float:
    """Predict the target for one raw feature vector."""
    arr = np.asarray(q, dtype=np.float64)
    if model.standardizer is not None:
        arr = model.standardizer.transform_vector(arr)
    ns = model.index.query(arr, model.k)
    return predict_from_neighbors(
        model.train.target[ns.indices].tolist(),
        ns.distances.tolist(),
        model.weighting,
    )


def predict(model: KnnModel, queries: Dataset) -> np.ndarray:
    """Element-wise predict_one over the query rows, in row order."""
    if (
        queries.column_names != model.train.column_names
        or queries.column_kinds != model.train.column_kinds
    ):
        raise SchemaError("query schema does not match the model's training schema")
    if model.standardizer is not None:
        queries = apply_standardizer(model.standardizer, queries)
    out = np.empty(queries.n_rows, dtype=np.float64)
    for i in range(queries.n_rows):
        ns = model.index.query(queries.features[i], model.k)
        out[i] = predict_from_neighbors(
            model.train.target[ns.indices].tolist(),
            ns.distances.tolist(),
            model.weighting,
        )
    return out


def unit_ball_volume(dim: int) -> float:
    """Volume of the euclidean unit ball in ``dim`` dimensions."""
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    return math.pi ** (dim / 2.0) / math.gamma(dim / 2.0 + 1.0)


def estimate_density(model: KnnModel, q) -> DensityEstimate:
    """k-neighbor density estimate k / (n * V) at the query point.

    V is the euclidean d-ball whose radius reaches the k-th neighbor.
    A zero radius (query sitting on enough training points) is reported
    as :class:`ZeroRadiusError` rather than as an infinite number.
    """
    if model.metric is not DistanceMetric.EUCLIDEAN:
        raise ValueError("density estimation requires the euclidean metric")
    arr = np.asarray(q, dtype=np.float64)
    if model.standardizer is not None:
        arr = model.standardizer.transform_vector(arr)
    radius = model.index.kth_distance(arr, model.k)
    if radius == 0.0:
        raise ZeroRadiusError(
            "k-th neighbor distance is zero; the density estimate is unbounded here"
        )
    dim = model.train.n_columns
    volume = unit_ball_volume(dim) * radius**dim
    return DensityEstimate(value=model.k / (model.train.n_rows * volume))
