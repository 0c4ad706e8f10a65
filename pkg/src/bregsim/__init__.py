"""Vector similarity through convex cost surface normals.

The headline measure scores two vectors by the cosine of the angle between
the unit normals of a convex cost function's graph at those vectors. The
package bundles that measure (under four costs), the tangent and Bregman
divergence variants, the ordinary cosine and Euclidean baselines, a 1-NN
evaluation harness with leave-one-out and split protocols, CSV ingestion,
synthetic circle/line sample generators and a benchmark CLI.

Hot scoring kernels run on a compiled extension when it is built, with a
NumPy fallback selected automatically at import (see ``bregsim._kernels``).
"""

from ._kernels import backend_name
from .classify import (
    EvaluationReport,
    LabeledDataset,
    Prediction,
    leave_one_out,
    predict_1nn,
    train_test_evaluate,
)
from .convex import (
    COST_NAMES,
    ConvexCost,
    ModifiedEntropy,
    NegativeEntropy,
    SquaredL2,
    TotalVariation,
    cost_by_name,
    grad_modified_entropy,
    grad_neg_entropy,
    grad_sq_l2,
    select_max_cosine_subgradient,
    subgrad_tv,
    surface_normal,
    tv_flat_positions,
)
from .data import (
    CsvSchema,
    SyntheticSpec,
    filter_classes,
    gen_circle,
    gen_line,
    load_csv,
    scale_features,
    write_csv,
)
from .exceptions import (
    BregsimError,
    CsvParseError,
    CsvSchemaError,
    DimensionError,
    DimensionMismatchError,
    DomainError,
    SyntheticSpecError,
    UnsupportedCostError,
    ZeroGradientError,
    ZeroVectorError,
)
from .similarity import (
    MEASURE_NAMES,
    BregmanAngleMeasure,
    BregmanDivergenceMeasure,
    CosineMeasure,
    Direction,
    EuclideanMeasure,
    Measure,
    TangentMeasure,
    bregman_angle,
    bregman_angle_entropy,
    bregman_divergence,
    cosine_similarity,
    euclidean_distance,
    get_measure,
    tangent_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    # costs
    "ConvexCost",
    "NegativeEntropy",
    "ModifiedEntropy",
    "TotalVariation",
    "SquaredL2",
    "COST_NAMES",
    "cost_by_name",
    "grad_neg_entropy",
    "grad_modified_entropy",
    "grad_sq_l2",
    "subgrad_tv",
    "surface_normal",
    "select_max_cosine_subgradient",
    "tv_flat_positions",
    # measures
    "Direction",
    "Measure",
    "CosineMeasure",
    "EuclideanMeasure",
    "BregmanAngleMeasure",
    "TangentMeasure",
    "BregmanDivergenceMeasure",
    "MEASURE_NAMES",
    "get_measure",
    "cosine_similarity",
    "euclidean_distance",
    "bregman_angle",
    "bregman_angle_entropy",
    "tangent_similarity",
    "bregman_divergence",
    # classification
    "LabeledDataset",
    "Prediction",
    "EvaluationReport",
    "predict_1nn",
    "leave_one_out",
    "train_test_evaluate",
    # data
    "CsvSchema",
    "SyntheticSpec",
    "load_csv",
    "write_csv",
    "scale_features",
    "filter_classes",
    "gen_circle",
    "gen_line",
    # errors
    "BregsimError",
    "DomainError",
    "DimensionError",
    "DimensionMismatchError",
    "ZeroVectorError",
    "ZeroGradientError",
    "UnsupportedCostError",
    "CsvParseError",
    "CsvSchemaError",
    "SyntheticSpecError",
]
