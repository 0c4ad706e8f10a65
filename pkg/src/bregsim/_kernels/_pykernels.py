"""NumPy implementations of the scoring kernels.

Mirrors the compiled module built from ``_ckernels.pyx`` and is used when
that extension is unavailable or explicitly requested. All functions assume
validated, C-contiguous float64 input and do no domain checking of their
own; the ``convex`` and ``similarity`` modules own validation.

Shapes: gradient/value kernels take an (n, d) stack of row vectors; score
kernels take two stacks (n, d) and (m, d) and return an (n, m) array.
"""

import numpy as np

NAME = "python"

_INV_E = 1.0 / np.e


def grad_neg_entropy(X):
    return np.log(X) + 1.0


def grad_modified_entropy(X):
    return np.sign(X) * (np.log(np.abs(X) + _INV_E) + 1.0)


def grad_sq_l2(X):
    return 2.0 * X


def subgrad_tv(X, sign_zero, first_sign):
    # s holds one subdifferential element per consecutive difference;
    # first_sign is -1.0 for the analytically correct first component,
    # +1.0 for the as-published variant.
    d = np.diff(X, axis=1)
    s = np.where(d > 0.0, 1.0, np.where(d < 0.0, -1.0, sign_zero))
    G = np.empty_like(X)
    G[:, 0] = first_sign * s[:, 0]
    if X.shape[1] > 2:
        G[:, 1:-1] = s[:, :-1] - s[:, 1:]
    G[:, -1] = s[:, -1]
    return G


def value_neg_entropy(X):
    return np.sum(X * np.log(X), axis=1)


def value_modified_entropy(X):
    a = np.abs(X) + _INV_E
    return np.sum(a * np.log(a) + _INV_E, axis=1)


def value_tv(X):
    return np.sum(np.abs(np.diff(X, axis=1)), axis=1)


def value_sq_l2(X):
    return np.sum(X * X, axis=1)


def normal_cosine(G, H):
    num = G @ H.T + 1.0
    ng = np.sqrt(np.sum(G * G, axis=1) + 1.0)
    nh = np.sqrt(np.sum(H * H, axis=1) + 1.0)
    return num / (ng[:, None] * nh[None, :])


def cosine(X, Y):
    num = X @ Y.T
    nx = np.sqrt(np.sum(X * X, axis=1))
    ny = np.sqrt(np.sum(Y * Y, axis=1))
    return num / (nx[:, None] * ny[None, :])


def euclidean(X, Y):
    diff = X[:, None, :] - Y[None, :, :]
    return np.sqrt(np.sum(diff * diff, axis=2))


def bregman_div(FX, FY, GY, X, Y):
    # D[i, j] = f(x_i) - f(y_j) - <g(y_j), x_i - y_j>; the linear term is
    # accumulated over the componentwise differences so D(x, x) is exactly 0.
    diff = X[:, None, :] - Y[None, :, :]
    lin = np.einsum("ijk,jk->ij", diff, GY)
    return FX[:, None] - FY[None, :] - lin
