"""Convex cost functions, their (sub)gradients, and graph surface normals.

The similarity measures in this library compare two vectors through the
graph of a convex cost f: each vector x is lifted to the point (x, f(x))
and represented by the unit normal of the graph surface there, which is
(grad f(x), -1) scaled to unit length. Four costs are provided:

* negative entropy, sum_i x_i log x_i, on strictly positive vectors;
* a sign-symmetric modified entropy, finite for every real vector;
* total variation (TV), the sum of absolute consecutive differences,
  convex but non-differentiable wherever two neighbours are equal;
* the squared Euclidean norm.

All operations are pure functions of their inputs; cost objects are
immutable after construction and safe to share across threads.
"""

import abc
import math

import numpy as np

from . import _kernels
from ._util import as_rows, as_vector
from .exceptions import (
    DimensionError,
    DimensionMismatchError,
    DomainError,
    UnsupportedCostError,
)

__all__ = [
    "ConvexCost",
    "NegativeEntropy",
    "ModifiedEntropy",
    "TotalVariation",
    "SquaredL2",
    "grad_neg_entropy",
    "grad_modified_entropy",
    "grad_sq_l2",
    "subgrad_tv",
    "surface_normal",
    "select_max_cosine_subgradient",
    "tv_flat_positions",
    "cost_by_name",
    "COST_NAMES",
]


class ConvexCost(abc.ABC):
    """A convex function exposing value and (sub)gradient evaluation.

    Subclasses operate on batches: ``value_rows`` and ``gradient_rows`` take
    an (n, d) stack of row vectors and return (n,) and (n, d) arrays. The
    scalar ``value`` and ``gradient`` wrap the row forms for one vector.
    Inputs are validated against the cost's domain before evaluation.
    """

    name = ""
    #: True when the gradient is unique everywhere in the domain; the TV
    #: cost sets this to False and ``gradient`` returns one valid subgradient.
    differentiable_everywhere = True

    def check_rows(self, X):
        """Raise DomainError or DimensionError for rows outside the domain."""

    @abc.abstractmethod
    def _value_rows(self, X):
        ...

    @abc.abstractmethod
    def _gradient_rows(self, X):
        ...

    def value_rows(self, X):
        X = as_rows(X)
        self.check_rows(X)
        return self._value_rows(X)

    def gradient_rows(self, X):
        X = as_rows(X)
        self.check_rows(X)
        return self._gradient_rows(X)

    def value(self, x):
        """Cost value at a single vector."""
        return float(self.value_rows(as_vector(x)[None, :])[0])

    def gradient(self, x):
        """Gradient (for TV: one valid subgradient) at a single vector."""
        return self.gradient_rows(as_vector(x)[None, :])[0]

    def __repr__(self):
        return f"{type(self).__name__}()"


def _domain_error(X, mask, requirement, hint):
    i, j = np.argwhere(mask)[0]
    where = f"row {i}, component {j}" if X.shape[0] > 1 else f"component {j}"
    raise DomainError(
        f"{where} {requirement} (value {float(X[i, j])!r}); {hint}",
        component=int(j),
        row=int(i),
    )


class NegativeEntropy(ConvexCost):
    """f(x) = sum_i x_i log x_i, defined on the strictly positive orthant.

    Gradient component: log(x_i) + 1. Non-positive components are rejected
    rather than clamped, since clamping would silently distort rankings;
    use :class:`ModifiedEntropy` for data that is not strictly positive.
    """

    name = "negative-entropy"

    def check_rows(self, X):
        if not np.all(X > 0.0):
            _domain_error(
                X,
                X <= 0.0,
                "is not strictly positive",
                "the negative entropy cost requires x > 0; "
                "use the modified entropy cost for signed or zero data",
            )

    def _value_rows(self, X):
        return _kernels.active.value_neg_entropy(X)

    def _gradient_rows(self, X):
        return _kernels.active.grad_neg_entropy(X)


class ModifiedEntropy(ConvexCost):
    """Sign-symmetric entropy f(x) = sum_i (|x_i| + 1/e) log(|x_i| + 1/e) + 1/e.

    Finite and convex on all of R^n. The gradient component is
    sign(x_i) (log(|x_i| + 1/e) + 1), odd in each component and exactly
    zero at zero; the per-component 1/e offset makes f(0) = 0.
    """

    name = "modified-entropy"

    def _value_rows(self, X):
        return _kernels.active.value_modified_entropy(X)

    def _gradient_rows(self, X):
        return _kernels.active.grad_modified_entropy(X)


class TotalVariation(ConvexCost):
    """f(x) = sum_k |x_{k+1} - x_k| over consecutive components, no wraparound.

    Piecewise linear and convex, non-differentiable wherever two consecutive
    components are equal. ``sign_zero`` is the subdifferential element used
    for each zero difference; any value in [-1, 1] is valid and 0 is the
    symmetric default. ``paper_literal`` uses +sign(x_2 - x_1) for the first
    gradient component instead of the analytically correct -sign(x_2 - x_1);
    that variant is not a valid subgradient and exists only to reproduce
    results published with that convention.
    """

    name = "total-variation"
    differentiable_everywhere = False

    def __init__(self, sign_zero=0.0, paper_literal=False):
        sign_zero = float(sign_zero)
        if not math.isfinite(sign_zero) or not -1.0 <= sign_zero <= 1.0:
            raise ValueError(f"sign_zero must lie in [-1, 1], got {sign_zero!r}")
        self.sign_zero = sign_zero
        self.paper_literal = bool(paper_literal)

    def check_rows(self, X):
        if X.shape[1] < 2:
            raise DimensionError(
                f"total variation needs at least 2 components, got {X.shape[1]}"
            )

    def _value_rows(self, X):
        return _kernels.active.value_tv(X)

    def _gradient_rows(self, X):
        first_sign = 1.0 if self.paper_literal else -1.0
        return _kernels.active.subgrad_tv(X, self.sign_zero, first_sign)

    def __repr__(self):
        return (
            f"TotalVariation(sign_zero={self.sign_zero!r}, "
            f"paper_literal={self.paper_literal!r})"
        )


class SquaredL2(ConvexCost):
    """f(x) = ||x||^2 with gradient 2x."""

    name = "squared-l2"

    def _value_rows(self, X):
        return _kernels.active.value_sq_l2(X)

    def _gradient_rows(self, X):
        return _kernels.active.grad_sq_l2(X)


_NEG_ENTROPY = NegativeEntropy()
_MOD_ENTROPY = ModifiedEntropy()
_SQ_L2 = SquaredL2()

#: Short registry keys for the four costs, as used in measure names.
COST_NAMES = ("entropy", "modentropy", "tv", "l2")


def cost_by_name(key, *, sign_zero=0.0, paper_literal=False):
    """Construct a cost from its short registry key.

    ``sign_zero`` and ``paper_literal`` only apply to the TV cost; passing
    non-default values with any other key raises ValueError.
    """
    if key not in COST_NAMES:
        raise ValueError(f"unknown cost {key!r}; expected one of {COST_NAMES}")
    if key == "tv":
        return TotalVariation(sign_zero=sign_zero, paper_literal=paper_literal)
    if sign_zero != 0.0 or paper_literal:
        raise ValueError(
            f"sign_zero and paper_literal apply only to the 'tv' cost, not {key!r}"
        )
    return {"entropy": _NEG_ENTROPY, "modentropy": _MOD_ENTROPY, "l2": _SQ_L2}[key]


def grad_neg_entropy(x):
    """Gradient of the negative entropy cost: log(x_i) + 1 per component."""
    return _NEG_ENTROPY.gradient(x)


def grad_modified_entropy(x):
    """Gradient of the modified entropy cost: sign(x_i)(log(|x_i| + 1/e) + 1)."""
    return _MOD_ENTROPY.gradient(x)


def grad_sq_l2(x):
    """Gradient of the squared Euclidean norm: 2 x."""
    return _SQ_L2.gradient(x)


def subgrad_tv(x, sign_zero=0.0, paper_literal=False):
    """One valid total variation subgradient at x.

    Writing s(t) = sign(t) for t != 0 and s(0) = ``sign_zero``, the
    components are -s(x_2 - x_1), then s(x_k - x_{k-1}) - s(x_{k+1} - x_k)
    for the interior, then s(x_N - x_{N-1}). See
    :class:`TotalVariation` for the ``paper_literal`` first-component variant.
    """
    return TotalVariation(sign_zero=sign_zero, paper_literal=paper_literal).gradient(x)


def surface_normal(g):
    """Unit normal of the cost graph from a gradient: (g, -1) / ||(g, -1)||.

    The appended -1 makes the norm at least 1, so the division is always
    safe and the last component of the result is strictly negative.
    """
    g = as_vector(g, name="g")
    n = np.empty(g.size + 1)
    n[:-1] = g
    n[-1] = -1.0
    n /= math.sqrt(float(np.dot(g, g)) + 1.0)
    return n


def tv_flat_positions(x):
    """Indices k with x[k+1] == x[k]: the TV kinks with a free subgradient choice."""
    x = as_vector(x)
    return np.flatnonzero(np.diff(x) == 0.0)


def _tv_grad_from_signs(s, n):
    g = np.empty(n)
    g[0] = -s[0]
    if n > 2:
        g[1:-1] = s[:-1] - s[1:]
    g[-1] = s[-1]
    return g


def select_max_cosine_subgradient(cost, x, reference_normal, *, tol=1e-9, max_sweeps=200):
    """Pick, from the TV subdifferential at x, the subgradient whose surface
    normal has the largest cosine against ``reference_normal``.

    Wherever consecutive components of x tie, the subgradient has one free
    parameter in [-1, 1]. The induced normal cosine is maximized by
    coordinate ascent over those parameters: along each coordinate the
    objective is unimodal, so the update compares the interior critical
    point (available in closed form) with the interval endpoints. Sweeping
    stops once a full pass improves the cosine by less than ``tol`` or
    after ``max_sweeps`` passes. Free parameters start at the cost's
    ``sign_zero``, so the result is never worse than the canonical choice.

    The result is always a valid subgradient. With no ties the
    subdifferential is a single point and that gradient is returned as is.
    """
    if not isinstance(cost, TotalVariation):
        raise UnsupportedCostError(
            f"subgradient selection applies only to the total variation cost; "
            f"{type(cost).__name__} is differentiable, use its gradient directly"
        )
    x = as_vector(x)
    cost.check_rows(x[None, :])
    r = as_vector(reference_normal, name="reference_normal")
    if r.size != x.size + 1:
        raise DimensionMismatchError(
            f"reference_normal must have {x.size + 1} components, got {r.size}"
        )

    d = np.diff(x)
    free = np.flatnonzero(d == 0.0)
    if free.size == 0:
        return cost.gradient(x)

    n = x.size
    r_head, r_last = r[:-1], r[-1]
    s = np.where(d != 0.0, np.sign(d), cost.sign_zero)

    def cosine_of(g):
        return (float(np.dot(g, r_head)) - r_last) / math.sqrt(float(np.dot(g, g)) + 1.0)

    best = cosine_of(_tv_grad_from_signs(s, n))
    for _ in range(max_sweeps):
        before = best
        for k in free:
            t_old = s[k]
            s[k] = 0.0
            g_fixed = _tv_grad_from_signs(s, n)
            # Along this coordinate the objective is (alpha + beta t) over
            # sqrt(c0 + c1 t + 2 t^2); its derivative is linear in t.
            alpha = float(np.dot(g_fixed, r_head)) - r_last
            beta = r_head[k + 1] - r_head[k]
            c0 = float(np.dot(g_fixed, g_fixed)) + 1.0
            c1 = 2.0 * (g_fixed[k + 1] - g_fixed[k])
            a_lin = beta * c1 - 4.0 * alpha
            b_lin = 2.0 * beta * c0 - c1 * alpha
            candidates = [-1.0, 1.0]
            if a_lin != 0.0:
                t_crit = -b_lin / a_lin
                if -1.0 < t_crit < 1.0:
                    candidates.append(t_crit)
            t_best, c_best = t_old, before - 1.0
            for t in candidates:
                num = alpha + beta * t
                den = math.sqrt(c0 + c1 * t + 2.0 * t * t)
                c_val = num / den
                if c_val > c_best:
                    t_best, c_best = t, c_val
            s[k] = t_best
            best = c_best
        if best - before < tol:
            break
    return _tv_grad_from_signs(s, n)
