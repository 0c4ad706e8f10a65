"""Shared input coercion helpers."""

import numpy as np

from .exceptions import DimensionMismatchError


def as_vector(x, name="x"):
    """Coerce to a finite, 1-D, C-contiguous float64 array of length >= 1."""
    v = np.ascontiguousarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional, got shape {v.shape}")
    if v.size < 1:
        raise ValueError(f"{name} must have at least one component")
    if not np.isfinite(v).all():
        j = int(np.flatnonzero(~np.isfinite(v))[0])
        raise ValueError(f"{name} has a non-finite component at index {j}")
    return v


def as_rows(X, name="X"):
    """Coerce to a finite, 2-D, C-contiguous float64 array of row vectors."""
    A = np.ascontiguousarray(X, dtype=np.float64)
    if A.ndim == 1:
        A = A[None, :]
    if A.ndim != 2:
        raise ValueError(f"{name} must be a vector or a stack of row vectors, got shape {A.shape}")
    if A.shape[1] < 1:
        raise ValueError(f"{name} rows must have at least one component")
    if not np.isfinite(A).all():
        i, j = np.argwhere(~np.isfinite(A))[0]
        raise ValueError(f"{name} has a non-finite component at row {i}, index {j}")
    return A


def paired_vectors(x1, x2):
    """Coerce a pair of vectors and require matching dimension."""
    a = as_vector(x1, name="x1")
    b = as_vector(x2, name="x2")
    if a.size != b.size:
        raise DimensionMismatchError(
            f"x1 and x2 must share a dimension, got {a.size} and {b.size}"
        )
    return a, b


def paired_rows(Q, T, qname="query rows", tname="training rows"):
    """Coerce two stacks of row vectors and require matching dimension."""
    A = as_rows(Q, name=qname)
    B = as_rows(T, name=tname)
    if A.shape[1] != B.shape[1]:
        raise DimensionMismatchError(
            f"{qname} and {tname} must share a dimension, got {A.shape[1]} and {B.shape[1]}"
        )
    return A, B
