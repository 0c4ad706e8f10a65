"""1-nearest-neighbour classification under any measure.

Two evaluation protocols are provided: leave-one-out, where each instance
is classified against all the others, and a train/test split. Folds are
independent, so evaluation may run on a thread pool; results are keyed by
instance index and identical for any degree of parallelism. Ties between
equally good neighbours resolve to the lowest training index.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._util import as_vector
from .exceptions import DimensionMismatchError, DomainError
from .similarity import Direction

__all__ = [
    "LabeledDataset",
    "Prediction",
    "EvaluationReport",
    "predict_1nn",
    "leave_one_out",
    "train_test_evaluate",
]


@dataclass(frozen=True)
class LabeledDataset:
    """Feature vectors with class labels and provenance metadata.

    ``vectors`` is an (n, d) float64 array (coerced and marked read-only),
    ``labels`` one class identifier per row. ``applied_scale`` records the
    multiplicative feature scaling already applied, 1.0 for raw data.
    """

    vectors: np.ndarray
    labels: tuple = ()
    name: str = ""
    applied_scale: float = 1.0

    def __post_init__(self):
        # own copy, so marking it read-only never affects the caller's array
        V = np.array(self.vectors, dtype=np.float64, order="C", copy=True)
        if V.ndim != 2 or V.shape[0] < 1 or V.shape[1] < 1:
            raise ValueError(
                f"vectors must be a non-empty (n, d) array, got shape {V.shape}"
            )
        if not np.isfinite(V).all():
            i, j = np.argwhere(~np.isfinite(V))[0]
            raise ValueError(f"non-finite feature at instance {i}, component {j}")
        V.flags.writeable = False
        labels = tuple(str(l) for l in self.labels)
        if len(labels) != V.shape[0]:
            raise ValueError(
                f"got {V.shape[0]} vectors but {len(labels)} labels"
            )
        if not (
            np.isfinite(self.applied_scale) and self.applied_scale > 0.0
        ):
            raise ValueError(f"applied_scale must be finite and > 0, got {self.applied_scale!r}")
        object.__setattr__(self, "vectors", V)
        object.__setattr__(self, "labels", labels)

    def __len__(self):
        return self.vectors.shape[0]

    @property
    def dimension(self):
        return self.vectors.shape[1]

    @property
    def classes(self):
        """Distinct labels in first-appearance order."""
        return tuple(dict.fromkeys(self.labels))


@dataclass(frozen=True)
class Prediction:
    index: int
    predicted: str
    actual: str


@dataclass(frozen=True)
class EvaluationReport:
    """Outcome of an evaluation run; ``accuracy`` is exactly correct/total."""

    measure_name: str
    protocol: str
    correct: int
    total: int
    accuracy: float
    per_instance: tuple = field(default_factory=tuple)
    dataset_name: str = ""
    applied_scale: float = 1.0

    def to_dict(self):
        """Plain-data form for serialization, per-instance records included."""
        return {
            "measure": self.measure_name,
            "protocol": self.protocol,
            "correct": self.correct,
            "total": self.total,
            "accuracy": self.accuracy,
            "dataset": self.dataset_name,
            "applied_scale": self.applied_scale,
            "per_instance": [
                {"index": p.index, "predicted": p.predicted, "actual": p.actual}
                for p in self.per_instance
            ],
        }


def _best_index(scores, direction):
    # argmax/argmin return the first occurrence, so exact ties already
    # resolve to the lowest training index.
    if direction is Direction.HIGHER_IS_CLOSER:
        return int(np.argmax(scores))
    return int(np.argmin(scores))


def _named_domain_error(e, query_name, train_name):
    side = getattr(e, "side", None)
    where = query_name if side == "query" else train_name
    if e.row is None or where is None:
        raise e
    raise DomainError(
        f"instance {e.row} of {where}: {e}", component=e.component, row=e.row
    ) from e


def _score_matrix(measure, Q, T, query_name, train_name):
    try:
        return measure.matrix(Q, T)
    except DomainError as e:
        _named_domain_error(e, query_name, train_name)


def _dataset_label(ds):
    return f"dataset {ds.name!r}" if ds.name else "the dataset"


def predict_1nn(train, query, measure):
    """Label of the training instance closest to ``query`` under ``measure``."""
    q = as_vector(query, name="query")
    if q.size != train.dimension:
        raise DimensionMismatchError(
            f"query has dimension {q.size}, training data has {train.dimension}"
        )
    # query-side domain errors keep their original message (there is no
    # instance index to point at), training-side ones name the instance
    scores = _score_matrix(measure, q[None, :], train.vectors, None, _dataset_label(train))
    return train.labels[_best_index(scores[0], measure.direction)]


def _evaluate(scores, labels_train, labels_actual, measure, jobs, mask_diagonal):
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    masked = np.inf if measure.direction is Direction.LOWER_IS_CLOSER else -np.inf

    def fold(i):
        row = scores[i]
        if mask_diagonal:
            row = row.copy()
            row[i] = masked
        j = _best_index(row, measure.direction)
        return Prediction(index=i, predicted=labels_train[j], actual=labels_actual[i])

    indices = range(scores.shape[0])
    if jobs == 1:
        return [fold(i) for i in indices]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fold, indices))


def leave_one_out(data, measure, *, jobs=1):
    """Classify every instance against all the others and aggregate accuracy.

    The pairwise score matrix is computed once up front; each fold then
    reduces its own row with the self-match masked out, so the result does
    not depend on ``jobs`` or fold execution order.
    """
    if len(data) < 2:
        raise ValueError(f"leave-one-out needs at least 2 instances, got {len(data)}")
    scores = _score_matrix(
        measure, data.vectors, data.vectors, _dataset_label(data), _dataset_label(data)
    )
    records = _evaluate(scores, data.labels, data.labels, measure, jobs, True)
    correct = sum(r.predicted == r.actual for r in records)
    return EvaluationReport(
        measure_name=measure.name,
        protocol="leave_one_out",
        correct=correct,
        total=len(records),
        accuracy=correct / len(records),
        per_instance=tuple(records),
        dataset_name=data.name,
        applied_scale=data.applied_scale,
    )


def train_test_evaluate(train, test, measure, *, jobs=1):
    """Classify each test instance against the full training set."""
    if train.dimension != test.dimension:
        raise DimensionMismatchError(
            f"train has dimension {train.dimension}, test has {test.dimension}"
        )
    scores = _score_matrix(
        measure,
        test.vectors,
        train.vectors,
        f"test {_dataset_label(test)}",
        f"training {_dataset_label(train)}",
    )
    records = _evaluate(scores, train.labels, test.labels, measure, jobs, False)
    correct = sum(r.predicted == r.actual for r in records)
    return EvaluationReport(
        measure_name=measure.name,
        protocol="train_test_split",
        correct=correct,
        total=len(records),
        accuracy=correct / len(records),
        per_instance=tuple(records),
        dataset_name=test.name or train.name,
        applied_scale=test.applied_scale,
    )
