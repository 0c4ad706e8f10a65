"""Dataset ingestion, feature scaling and synthetic sample generators.

CSV loading is schema-driven: the label column and feature columns may be
named (when the file has a header) or given as zero-based indices. Written
files serialize features with 17 significant digits so a write/load round
trip reproduces every float64 exactly.

The two synthetic layouts mirror the situations where distance-based and
angle-based comparisons disagree: points on a circle are all equally far
from the center but sit at different angles, while points on a ray through
the origin all share one angle but sit at different distances.
"""

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classify import LabeledDataset
from .exceptions import CsvParseError, CsvSchemaError, SyntheticSpecError

__all__ = [
    "CsvSchema",
    "SyntheticSpec",
    "load_csv",
    "write_csv",
    "scale_features",
    "filter_classes",
    "gen_circle",
    "gen_line",
]


@dataclass(frozen=True)
class CsvSchema:
    """How to read a delimited text file into a labeled dataset.

    ``label_column`` and the entries of ``feature_columns`` are header names
    or zero-based indices (negative indices count from the end of the row).
    ``feature_columns=None`` takes every column except the label.
    """

    label_column: object = -1
    feature_columns: tuple = None
    has_header: bool = True
    delimiter: str = ","

    def __post_init__(self):
        if len(self.delimiter) != 1:
            raise CsvSchemaError(
                f"delimiter must be a single character, got {self.delimiter!r}"
            )
        if self.feature_columns is not None:
            object.__setattr__(self, "feature_columns", tuple(self.feature_columns))


def _resolve_column(spec, header, width, what):
    if isinstance(spec, str):
        if header is None:
            raise CsvSchemaError(
                f"{what} {spec!r} is a name but the file has no header row"
            )
        try:
            return header.index(spec)
        except ValueError:
            raise CsvSchemaError(f"{what} {spec!r} not found in header {header}") from None
    idx = int(spec)
    if idx < 0:
        idx += width
    if not 0 <= idx < width:
        raise CsvSchemaError(f"{what} {spec!r} is out of range for {width} columns")
    return idx


def _column_name(header, idx):
    return header[idx] if header else f"column {idx}"


def load_csv(path, schema=CsvSchema()):
    """Read a labeled dataset from a delimited text file.

    Row order is preserved and ``applied_scale`` starts at 1.0. Parse
    failures name the file line and column; schema inconsistencies (missing
    columns, label listed among the features) raise CsvSchemaError.
    """
    path = Path(path)
    with open(path, newline="") as fh:
        rows = [(lineno, row) for lineno, row in enumerate(csv.reader(fh, delimiter=schema.delimiter), start=1)]
    if not rows:
        raise CsvParseError(f"{path}: file is empty")
    header = None
    if schema.has_header:
        header = [cell.strip() for cell in rows[0][1]]
        rows = rows[1:]
        if not rows:
            raise CsvParseError(f"{path}: no data rows after the header")

    width = len(rows[0][1])
    if width < 2:
        raise CsvParseError(
            f"{path}: line {rows[0][0]}: need at least 2 columns (features and a label), got {width}"
        )
    label_idx = _resolve_column(schema.label_column, header, width, "label column")
    if schema.feature_columns is None:
        feature_idx = [i for i in range(width) if i != label_idx]
    else:
        feature_idx = [
            _resolve_column(c, header, width, "feature column")
            for c in schema.feature_columns
        ]
        if label_idx in feature_idx:
            raise CsvSchemaError(
                f"label column {_column_name(header, label_idx)} is also listed as a feature"
            )
        if len(set(feature_idx)) != len(feature_idx):
            raise CsvSchemaError("feature columns contain duplicates")
    if not feature_idx:
        raise CsvSchemaError("no feature columns left after removing the label column")

    vectors = np.empty((len(rows), len(feature_idx)))
    labels = []
    for r, (lineno, row) in enumerate(rows):
        if len(row) != width:
            raise CsvParseError(
                f"{path}: line {lineno}: expected {width} cells, got {len(row)}"
            )
        for c, idx in enumerate(feature_idx):
            cell = row[idx].strip()
            try:
                value = float(cell)
            except ValueError:
                raise CsvParseError(
                    f"{path}: line {lineno}, {_column_name(header, idx)}: "
                    f"could not parse {cell!r} as a number"
                ) from None
            if not math.isfinite(value):
                raise CsvParseError(
                    f"{path}: line {lineno}, {_column_name(header, idx)}: "
                    f"feature value {cell!r} is not finite"
                )
            vectors[r, c] = value
        labels.append(row[label_idx].strip())
    return LabeledDataset(vectors=vectors, labels=labels, name=path.name)


def write_csv(dataset, path, *, delimiter=","):
    """Write a dataset as CSV with header f0..f{d-1},label.

    Features are serialized with 17 significant digits, enough to
    round-trip any float64 exactly through :func:`load_csv` with
    ``CsvSchema(label_column="label", delimiter=...)``.
    """
    path = Path(path)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        writer.writerow([f"f{i}" for i in range(dataset.dimension)] + ["label"])
        for row, label in zip(dataset.vectors, dataset.labels):
            writer.writerow([f"{v:.17g}" for v in row] + [label])


def scale_features(dataset, factor):
    """Multiply every feature by ``factor`` (> 0), tracking the applied scale."""
    factor = float(factor)
    if not math.isfinite(factor) or factor <= 0.0:
        raise ValueError(f"scale factor must be finite and > 0, got {factor!r}")
    return LabeledDataset(
        vectors=dataset.vectors * factor,
        labels=dataset.labels,
        name=dataset.name,
        applied_scale=dataset.applied_scale * factor,
    )


def filter_classes(dataset, keep):
    """Restrict a dataset to the instances whose label is in ``keep``."""
    keep = [str(k) for k in keep]
    index = [i for i, l in enumerate(dataset.labels) if l in keep]
    if not index:
        raise ValueError(f"no instances with labels {keep!r} in {dataset.name or 'dataset'}")
    return LabeledDataset(
        vectors=dataset.vectors[index],
        labels=[dataset.labels[i] for i in index],
        name=dataset.name,
        applied_scale=dataset.applied_scale,
    )


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters for the synthetic sample layouts.

    circle: ``count`` points evenly spaced in angle on the circle of
    ``radius`` around ``center``, plus the center itself appended as the
    reference sample. line: points k * step * direction for k = 1..count,
    with the first point as the reference; every sample is a positive
    multiple of the same direction, the configuration in which the ordinary
    cosine cannot tell them apart. ``reference_index`` overrides which row
    acts as the comparison anchor.
    """

    shape: str
    count: int = 16
    center: tuple = (2.0, 2.0)
    radius: float = 1.0
    direction: tuple = (1.0, 1.0)
    step: float = 0.5
    reference_index: int = None

    def __post_init__(self):
        if self.shape not in ("circle", "line"):
            raise SyntheticSpecError(f"shape must be 'circle' or 'line', got {self.shape!r}")
        if int(self.count) != self.count or self.count < 2:
            raise SyntheticSpecError(f"count must be an integer >= 2, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "center", tuple(float(c) for c in self.center))
        object.__setattr__(self, "direction", tuple(float(c) for c in self.direction))


def _check_reference(spec, size, default):
    ref = default if spec.reference_index is None else int(spec.reference_index)
    if not 0 <= ref < size:
        raise SyntheticSpecError(
            f"reference_index {spec.reference_index!r} out of range for {size} samples"
        )
    return ref


def gen_circle(spec):
    """Ring samples at equal angles plus the center as the reference sample.

    Returns ``(dataset, reference_index)``. Every ring sample sits exactly
    ``radius`` away from the reference, so a distance measure cannot
    separate them while angle-based measures can. Labels encode the angular
    position index; the center is labeled "center".
    """
    if spec.shape != "circle":
        raise SyntheticSpecError(f"gen_circle needs shape='circle', got {spec.shape!r}")
    if len(spec.center) != 2 or not all(math.isfinite(c) for c in spec.center):
        raise SyntheticSpecError(f"center must be a finite 2-D point, got {spec.center!r}")
    if not (math.isfinite(spec.radius) and spec.radius > 0.0):
        raise SyntheticSpecError(f"radius must be finite and > 0, got {spec.radius!r}")
    angles = 2.0 * math.pi * np.arange(spec.count) / spec.count
    cx, cy = spec.center
    vectors = np.empty((spec.count + 1, 2))
    vectors[:-1, 0] = cx + spec.radius * np.cos(angles)
    vectors[:-1, 1] = cy + spec.radius * np.sin(angles)
    vectors[-1] = (cx, cy)
    labels = [str(k) for k in range(spec.count)] + ["center"]
    ref = _check_reference(spec, spec.count + 1, spec.count)
    return LabeledDataset(vectors=vectors, labels=labels, name="circle"), ref


def gen_line(spec):
    """Samples k * step * direction for k = 1..count; the first is the reference.

    Returns ``(dataset, reference_index)``. The direction must be strictly
    positive componentwise so the samples stay inside the positive orthant
    (and hence inside the negative entropy domain). Labels encode k.
    """
    if spec.shape != "line":
        raise SyntheticSpecError(f"gen_line needs shape='line', got {spec.shape!r}")
    direction = np.asarray(spec.direction, dtype=np.float64)
    if direction.ndim != 1 or direction.size < 1 or not np.isfinite(direction).all():
        raise SyntheticSpecError(f"direction must be a finite vector, got {spec.direction!r}")
    if np.any(direction <= 0.0):
        raise SyntheticSpecError(
            f"direction must be strictly positive componentwise, got {spec.direction!r}"
        )
    if not (math.isfinite(spec.step) and spec.step > 0.0):
        raise SyntheticSpecError(f"step must be finite and > 0, got {spec.step!r}")
    ks = np.arange(1, spec.count + 1, dtype=np.float64)
    vectors = ks[:, None] * spec.step * direction[None, :]
    labels = [str(int(k)) for k in ks]
    ref = _check_reference(spec, spec.count, 0)
    return LabeledDataset(vectors=vectors, labels=labels, name="line"), ref
