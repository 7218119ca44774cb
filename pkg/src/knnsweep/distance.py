"""Point-to-point distances: euclidean, manhattan, hamming.

All summations run left-to-right over coordinates so results are
bit-deterministic across runs and across search backends.
"""

from __future__ import annotations

import math
from enum import Enum


class DistanceMetric(Enum):
    EUCLIDEAN = "euclidean"
    MANHATTAN = "manhattan"
    HAMMING = "hamming"


def _check_pair(x, y) -> None:
    if len(x) != len(y):
        raise ValueError(f"vector length mismatch: {len(x)} vs {len(y)}")
    if len(x) == 0:
        raise ValueError("distance is undefined for empty vectors")


def squared_euclidean(x, y) -> float:
    """Sum of squared coordinate differences (no square root).

    Monotone in :func:`euclidean`, which lets neighbor search compare
    squared values and defer the sqrt to the API boundary.
    """
    _check_pair(x, y)
    total = 0.0
    for a, b in zip(x, y):
        d = float(a) - float(b)
        total += d * d
    return total


def euclidean(x, y) -> float:
    """sqrt of the summed squared differences."""
    return math.sqrt(squared_euclidean(x, y))


def manhattan(x, y) -> float:
    """Sum of absolute coordinate differences."""
    _check_pair(x, y)
    total = 0.0
    for a, b in zip(x, y):
        total += abs(float(a) - float(b))
    return total


def hamming(x, y) -> float:
    """Count of coordinates whose integer codes differ exactly.

    Only meaningful for categorical code vectors; non-integer entries are
    rejected rather than compared with a tolerance.
    """
    _check_pair(x, y)
    count = 0
    for a, b in zip(x, y):
        fa, fb = float(a), float(b)
        if not (fa.is_integer() and fb.is_integer()):
            raise ValueError("hamming distance requires integer category codes")
        if fa != fb:
            count += 1
    return float(count)


def distance(metric: DistanceMetric, x, y) -> float:
    """Dispatch to the metric's distance function."""
    if metric is DistanceMetric.EUCLIDEAN:
        return euclidean(x, y)
    if metric is DistanceMetric.MANHATTAN:
        return manhattan(x, y)
    if metric is DistanceMetric.HAMMING:
        return hamming(x, y)
    raise ValueError(f"unknown metric: {metric!r}")
