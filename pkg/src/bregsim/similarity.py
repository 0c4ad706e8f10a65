"""Vector comparison measures built on convex cost surface normals.

``bregman_angle`` scores two vectors by the cosine of the angle between the
unit normals of a convex cost's graph at those vectors; ``tangent_similarity``
uses the raw gradient directions instead. The ordinary cosine, the Euclidean
distance and the (asymmetric) Bregman divergence complete the set. The
:class:`Measure` classes wrap these functions with a registry name and an
ordering direction so nearest neighbour search can treat them uniformly.

Everything here is a pure function of its inputs; measure objects are
immutable and freely shareable across threads.
"""

import abc
import enum
import math

import numpy as np

from . import _kernels
from ._util import paired_rows, paired_vectors
from .convex import (
    TotalVariation,
    cost_by_name,
    select_max_cosine_subgradient,
    surface_normal,
    tv_flat_positions,
)
from .exceptions import (
    DomainError,
    UnsupportedCostError,
    ZeroGradientError,
    ZeroVectorError,
)

__all__ = [
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
]

#: Gradients with a norm below this have no usable direction.
_ZERO_GRADIENT_NORM = 1e-300


def cosine_similarity(x1, x2):
    """Cosine of the angle between x1 and x2; scale-invariant, in [-1, 1]."""
    a, b = paired_vectors(x1, x2)
    for name, v in (("x1", a), ("x2", b)):
        if not np.any(v):
            raise ZeroVectorError(f"{name} is the zero vector; cosine is undefined")
    return float(_kernels.active.cosine(a[None, :], b[None, :])[0, 0])


def euclidean_distance(x1, x2):
    """Euclidean (l2) distance between x1 and x2, not squared."""
    a, b = paired_vectors(x1, x2)
    return float(_kernels.active.euclidean(a[None, :], b[None, :])[0, 0])


def bregman_angle(cost, x1, x2, *, max_cosine_subgradient=False):
    """Cosine of the angle between the cost's unit surface normals at x1, x2.

    Equals (g1.g2 + 1) / (sqrt(g1.g1 + 1) sqrt(g2.g2 + 1)) with g_i the
    gradient of ``cost`` at x_i, which is exactly the inner product of the
    two unit normals (g_i, -1)/||(g_i, -1)||.

    With ``max_cosine_subgradient`` (TV cost only), when x1 sits on a kink
    of the cost, x2's canonical normal is held fixed as the reference and
    x1's subgradient is chosen from the subdifferential to maximize the
    cosine. Otherwise both sides use the canonical subgradient (zero
    differences scored by the cost's ``sign_zero``).
    """
    a, b = paired_vectors(x1, x2)
    if max_cosine_subgradient:
        if not isinstance(cost, TotalVariation):
            raise UnsupportedCostError(
                "max_cosine_subgradient applies only to the total variation cost"
            )
        n2 = surface_normal(cost.gradient(b))
        if tv_flat_positions(a).size:
            g1 = select_max_cosine_subgradient(cost, a, n2)
        else:
            g1 = cost.gradient(a)
        return float(np.dot(surface_normal(g1), n2))
    g1 = cost.gradient_rows(a[None, :])
    g2 = cost.gradient_rows(b[None, :])
    return float(_kernels.active.normal_cosine(g1, g2)[0, 0])


def bregman_angle_entropy(x1, x2):
    """Closed-form Bregman angle for the negative entropy cost.

    Computes (sum (log x1 + 1)(log x2 + 1) + 1) divided by
    sqrt(sum (log x1 + 1)^2 + 1) sqrt(sum (log x2 + 1)^2 + 1) directly from
    the inputs, independently of the generic gradient route, so each path
    cross-checks the other.
    """
    a, b = paired_vectors(x1, x2)
    for name, v in (("x1", a), ("x2", b)):
        if np.any(v <= 0.0):
            j = int(np.flatnonzero(v <= 0.0)[0])
            raise DomainError(
                f"{name} component {j} is not strictly positive (value {float(v[j])!r}); "
                "the entropy Bregman angle requires positive vectors",
                component=j,
            )
    la = np.log(a) + 1.0
    lb = np.log(b) + 1.0
    num = float(np.dot(la, lb)) + 1.0
    den = math.sqrt(float(np.dot(la, la)) + 1.0) * math.sqrt(float(np.dot(lb, lb)) + 1.0)
    return num / den


def tangent_similarity(cost, x1, x2):
    """Cosine of the angle between the cost's gradients at x1 and x2.

    For the squared l2 cost the gradient is 2x, so this reduces to the
    ordinary cosine similarity.
    """
    a, b = paired_vectors(x1, x2)
    g1 = cost.gradient_rows(a[None, :])
    g2 = cost.gradient_rows(b[None, :])
    for name, g in (("x1", g1), ("x2", g2)):
        if math.sqrt(float(np.dot(g[0], g[0]))) < _ZERO_GRADIENT_NORM:
            raise ZeroGradientError(
                f"gradient at {name} has vanishing norm; the tangent angle is undefined"
            )
    return float(_kernels.active.cosine(g1, g2)[0, 0])


def bregman_divergence(cost, x1, x2):
    """f(x1) - f(x2) - <grad f(x2), x1 - x2>: the gap at x1 between the cost
    and its tangent plane at x2.

    Nonnegative by convexity and not symmetric in its arguments. For the
    squared l2 cost it equals the squared Euclidean distance.
    """
    a, b = paired_vectors(x1, x2)
    fx = cost.value_rows(a[None, :])
    fy = cost.value_rows(b[None, :])
    gy = cost.gradient_rows(b[None, :])
    return float(_kernels.active.bregman_div(fx, fy, gy, a[None, :], b[None, :])[0, 0])


class Direction(enum.Enum):
    """Whether larger or smaller scores mean more similar."""

    HIGHER_IS_CLOSER = "higher_is_closer"
    LOWER_IS_CLOSER = "lower_is_closer"


def _tagged_rows(fn, M, side):
    # Annotate domain errors with which side of the comparison they came
    # from; classification maps that to a dataset instance.
    try:
        return fn(M)
    except DomainError as e:
        e.side = side
        raise


class Measure(abc.ABC):
    """A named pairwise score with an ordering direction.

    ``matrix(Q, T)`` returns the (len(Q), len(T)) array of scores between
    two stacks of row vectors; ``pair`` is the two-vector form with the
    friendlier per-argument validation.
    """

    name = ""
    direction = Direction.HIGHER_IS_CLOSER
    cost = None

    @abc.abstractmethod
    def pair(self, x1, x2):
        ...

    @abc.abstractmethod
    def matrix(self, Q, T):
        ...

    def __repr__(self):
        return f"<Measure {self.name!r} ({self.direction.value})>"


class CosineMeasure(Measure):
    name = "cosine"

    def pair(self, x1, x2):
        return cosine_similarity(x1, x2)

    def matrix(self, Q, T):
        Q, T = paired_rows(Q, T)
        for side, M in (("query", Q), ("train", T)):
            norms = np.sqrt(np.sum(M * M, axis=1))
            if np.any(norms == 0.0):
                i = int(np.flatnonzero(norms == 0.0)[0])
                e = ZeroVectorError(
                    f"row {i} is the zero vector; cosine is undefined"
                )
                e.side = side
                e.row = i
                raise e
        return _kernels.active.cosine(Q, T)


class EuclideanMeasure(Measure):
    name = "euclidean"
    direction = Direction.LOWER_IS_CLOSER

    def pair(self, x1, x2):
        return euclidean_distance(x1, x2)

    def matrix(self, Q, T):
        Q, T = paired_rows(Q, T)
        return _kernels.active.euclidean(Q, T)


class BregmanAngleMeasure(Measure):
    """Surface normal cosine under a given cost.

    ``max_cosine_subgradient`` (TV cost only) optimizes the query-side
    subgradient at kinks against each training vector's canonical normal.
    """

    def __init__(self, cost, *, max_cosine_subgradient=False):
        if max_cosine_subgradient and not isinstance(cost, TotalVariation):
            raise UnsupportedCostError(
                "max_cosine_subgradient applies only to the total variation cost"
            )
        self.cost = cost
        self.max_cosine_subgradient = bool(max_cosine_subgradient)
        self.name = f"bregman-angle-{_cost_key(cost)}"

    def pair(self, x1, x2):
        return bregman_angle(
            self.cost, x1, x2, max_cosine_subgradient=self.max_cosine_subgradient
        )

    def matrix(self, Q, T):
        Q, T = paired_rows(Q, T)
        Gq = _tagged_rows(self.cost.gradient_rows, Q, "query")
        Gt = _tagged_rows(self.cost.gradient_rows, T, "train")
        if not self.max_cosine_subgradient:
            return _kernels.active.normal_cosine(Gq, Gt)
        S = np.empty((Q.shape[0], T.shape[0]))
        flats = [tv_flat_positions(q).size > 0 for q in Q]
        for j in range(T.shape[0]):
            n_ref = surface_normal(Gt[j])
            for i in range(Q.shape[0]):
                g = (
                    select_max_cosine_subgradient(self.cost, Q[i], n_ref)
                    if flats[i]
                    else Gq[i]
                )
                S[i, j] = float(np.dot(surface_normal(g), n_ref))
        return S


class TangentMeasure(Measure):
    """Gradient direction cosine under a given cost."""

    def __init__(self, cost):
        self.cost = cost
        self.name = f"tangent-{_cost_key(cost)}"

    def pair(self, x1, x2):
        return tangent_similarity(self.cost, x1, x2)

    def matrix(self, Q, T):
        Q, T = paired_rows(Q, T)
        Gq = _tagged_rows(self.cost.gradient_rows, Q, "query")
        Gt = _tagged_rows(self.cost.gradient_rows, T, "train")
        for side, G in (("query", Gq), ("train", Gt)):
            norms = np.sqrt(np.sum(G * G, axis=1))
            if np.any(norms < _ZERO_GRADIENT_NORM):
                i = int(np.flatnonzero(norms < _ZERO_GRADIENT_NORM)[0])
                e = ZeroGradientError(
                    f"gradient at row {i} has vanishing norm; the tangent angle is undefined"
                )
                e.side = side
                e.row = i
                raise e
        return _kernels.active.cosine(Gq, Gt)


class BregmanDivergenceMeasure(Measure):
    """Bregman divergence D(query, train) under a given cost; asymmetric."""

    direction = Direction.LOWER_IS_CLOSER

    def __init__(self, cost):
        self.cost = cost
        self.name = f"bregman-divergence-{_cost_key(cost)}"

    def pair(self, x1, x2):
        return bregman_divergence(self.cost, x1, x2)

    def matrix(self, Q, T):
        Q, T = paired_rows(Q, T)
        fq = _tagged_rows(self.cost.value_rows, Q, "query")
        ft = _tagged_rows(self.cost.value_rows, T, "train")
        Gt = _tagged_rows(self.cost.gradient_rows, T, "train")
        return _kernels.active.bregman_div(fq, ft, Gt, Q, T)


def _cost_key(cost):
    keys = {
        "negative-entropy": "entropy",
        "modified-entropy": "modentropy",
        "total-variation": "tv",
        "squared-l2": "l2",
    }
    try:
        return keys[cost.name]
    except (AttributeError, KeyError):
        raise UnsupportedCostError(f"not a registered cost: {cost!r}") from None


#: All registry names accepted by :func:`get_measure` and the CLI.
MEASURE_NAMES = (
    "cosine",
    "euclidean",
    "bregman-angle-entropy",
    "bregman-angle-modentropy",
    "bregman-angle-tv",
    "bregman-angle-l2",
    "tangent-entropy",
    "tangent-l2",
    "bregman-divergence-entropy",
    "bregman-divergence-modentropy",
    "bregman-divergence-tv",
    "bregman-divergence-l2",
)


def get_measure(name, *, sign_zero=0.0, paper_literal=False, max_cosine_subgradient=False):
    """Construct a measure from its registry name.

    ``sign_zero`` and ``paper_literal`` configure the TV cost where one is
    involved; ``max_cosine_subgradient`` switches the TV Bregman angle to
    optimized subgradient selection. Passing a flag that does not apply to
    the named measure raises ValueError so misconfiguration is loud.
    """
    if name not in MEASURE_NAMES:
        raise ValueError(f"unknown measure {name!r}; expected one of {MEASURE_NAMES}")
    tv_based = name.endswith("-tv")
    if not tv_based and (sign_zero != 0.0 or paper_literal):
        raise ValueError(f"sign_zero and paper_literal do not apply to {name!r}")
    if max_cosine_subgradient and name != "bregman-angle-tv":
        raise ValueError(
            f"max_cosine_subgradient applies only to 'bregman-angle-tv', not {name!r}"
        )
    if name == "cosine":
        return CosineMeasure()
    if name == "euclidean":
        return EuclideanMeasure()
    family, _, key = name.rpartition("-")
    cost = cost_by_name(key, sign_zero=sign_zero, paper_literal=paper_literal)
    if family == "bregman-angle":
        return BregmanAngleMeasure(cost, max_cosine_subgradient=max_cosine_subgradient)
    if family == "tangent":
        return TangentMeasure(cost)
    return BregmanDivergenceMeasure(cost)
