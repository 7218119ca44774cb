"""K-nearest-neighbors regression with exact neighbor search, regression
metrics, local density estimation, and a k-sweep evaluation harness."""

from .dataset import (
    ColumnKind,
    CsvFormatError,
    Dataset,
    SchemaError,
    SplitSpec,
    Standardizer,
    apply_standardizer,
    fit_standardizer,
    load_csv,
    load_features_csv,
    split,
    write_csv,
)
from .distance import (
    DistanceMetric,
    distance,
    euclidean,
    hamming,
    manhattan,
    squared_euclidean,
)
from .metrics import (
    MetricReport,
    UndefinedRSquaredError,
    mse,
    r_squared,
    report,
    rmse,
    sse,
    ssr,
    sst,
)
from .neighbors import (
    BruteForceIndex,
    KdTreeIndex,
    NeighborSet,
    SearchBackend,
    build_index,
    query,
    query_radius_of_kth,
)
from .regressor import (
    DensityEstimate,
    KnnModel,
    WeightingMode,
    ZeroRadiusError,
    estimate_density,
    fit,
    predict,
    predict_from_neighbors,
    predict_one,
    unit_ball_volume,
)
from .sweep import (
    SweepConfig,
    SweepResult,
    emit_chart,
    emit_table,
    run_sweep,
    select_best,
)

__version__ = "0.1.0"

__all__ = [
    "ColumnKind",
    "CsvFormatError",
    "Dataset",
    "SchemaError",
    "SplitSpec",
    "Standardizer",
    "apply_standardizer",
    "fit_standardizer",
    "load_csv",
    "load_features_csv",
    "split",
    "write_csv",
    "DistanceMetric",
    "distance",
    "euclidean",
    "hamming",
    "manhattan",
    "squared_euclidean",
    "MetricReport",
    "UndefinedRSquaredError",
    "mse",
    "r_squared",
    "report",
    "rmse",
    "sse",
    "ssr",
    "sst",
    "BruteForceIndex",
    "KdTreeIndex",
    "NeighborSet",
    "SearchBackend",
    "build_index",
    "query",
    "query_radius_of_kth",
    "DensityEstimate",
    "KnnModel",
    "WeightingMode",
    "ZeroRadiusError",
    "estimate_density",
    "fit",
    "predict",
    "predict_from_neighbors",
    "predict_one",
    "unit_ball_volume",
    "SweepConfig",
    "SweepResult",
    "emit_chart",
    "emit_table",
    "run_sweep",
    "select_best",
]
