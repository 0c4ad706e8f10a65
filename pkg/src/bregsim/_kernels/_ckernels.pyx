# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels; `_pykernels` documents the shared semantics."""

from libc.math cimport M_E, fabs, log, sqrt

import numpy as np

NAME = "c"

cdef double INV_E = 1.0 / M_E


cdef inline double _sgn(double t, double zero_value) noexcept nogil:
    if t > 0.0:
        return 1.0
    if t < 0.0:
        return -1.0
    return zero_value


def grad_neg_entropy(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    out_np = np.empty((n, d))
    cdef double[:, ::1] out = out_np
    for i in range(n):
        for j in range(d):
            out[i, j] = log(X[i, j]) + 1.0
    return out_np


def grad_modified_entropy(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    out_np = np.empty((n, d))
    cdef double[:, ::1] out = out_np
    cdef double x
    for i in range(n):
        for j in range(d):
            x = X[i, j]
            out[i, j] = _sgn(x, 0.0) * (log(fabs(x) + INV_E) + 1.0)
    return out_np


def grad_sq_l2(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    out_np = np.empty((n, d))
    cdef double[:, ::1] out = out_np
    for i in range(n):
        for j in range(d):
            out[i, j] = 2.0 * X[i, j]
    return out_np


def subgrad_tv(const double[:, ::1] X, double sign_zero, double first_sign):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, k
    out_np = np.empty((n, d))
    cdef double[:, ::1] out = out_np
    cdef double s_prev, s_cur
    for i in range(n):
        s_prev = _sgn(X[i, 1] - X[i, 0], sign_zero)
        out[i, 0] = first_sign * s_prev
        for k in range(1, d - 1):
            s_cur = _sgn(X[i, k + 1] - X[i, k], sign_zero)
            out[i, k] = s_prev - s_cur
            s_prev = s_cur
        out[i, d - 1] = s_prev
    return out_np


def value_neg_entropy(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    out_np = np.empty(n)
    cdef double[::1] out = out_np
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += X[i, j] * log(X[i, j])
        out[i] = acc
    return out_np


def value_modified_entropy(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    out_np = np.empty(n)
    cdef double[::1] out = out_np
    cdef double acc, a
    for i in range(n):
        acc = 0.0
        for j in range(d):
            a = fabs(X[i, j]) + INV_E
            acc += a * log(a) + INV_E
        out[i] = acc
    return out_np


def value_tv(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, k
    out_np = np.empty(n)
    cdef double[::1] out = out_np
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(d - 1):
            acc += fabs(X[i, k + 1] - X[i, k])
        out[i] = acc
    return out_np


def value_sq_l2(const double[:, ::1] X):
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1], i, j
    out_np = np.empty(n)
    cdef double[::1] out = out_np
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += X[i, j] * X[i, j]
        out[i] = acc
    return out_np


def normal_cosine(const double[:, ::1] G, const double[:, ::1] H):
    cdef Py_ssize_t n = G.shape[0], m = H.shape[0], d = G.shape[1], i, j, k
    out_np = np.empty((n, m))
    ng_np = np.empty(n)
    nh_np = np.empty(m)
    cdef double[:, ::1] out = out_np
    cdef double[::1] ng = ng_np
    cdef double[::1] nh = nh_np
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(d):
            acc += G[i, k] * G[i, k]
        ng[i] = sqrt(acc + 1.0)
    for j in range(m):
        acc = 0.0
        for k in range(d):
            acc += H[j, k] * H[j, k]
        nh[j] = sqrt(acc + 1.0)
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                acc += G[i, k] * H[j, k]
            out[i, j] = (acc + 1.0) / (ng[i] * nh[j])
    return out_np


def cosine(const double[:, ::1] X, const double[:, ::1] Y):
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1], i, j, k
    out_np = np.empty((n, m))
    nx_np = np.empty(n)
    ny_np = np.empty(m)
    cdef double[:, ::1] out = out_np
    cdef double[::1] nx = nx_np
    cdef double[::1] ny = ny_np
    cdef double acc
    for i in range(n):
        acc = 0.0
        for k in range(d):
            acc += X[i, k] * X[i, k]
        nx[i] = sqrt(acc)
    for j in range(m):
        acc = 0.0
        for k in range(d):
            acc += Y[j, k] * Y[j, k]
        ny[j] = sqrt(acc)
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                acc += X[i, k] * Y[j, k]
            out[i, j] = acc / (nx[i] * ny[j])
    return out_np


def euclidean(const double[:, ::1] X, const double[:, ::1] Y):
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1], i, j, k
    out_np = np.empty((n, m))
    cdef double[:, ::1] out = out_np
    cdef double acc, t
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                t = X[i, k] - Y[j, k]
                acc += t * t
            out[i, j] = sqrt(acc)
    return out_np


def bregman_div(const double[::1] FX, const double[::1] FY, const double[:, ::1] GY,
                const double[:, ::1] X, const double[:, ::1] Y):
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1], i, j, k
    out_np = np.empty((n, m))
    cdef double[:, ::1] out = out_np
    cdef double acc
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                acc += GY[j, k] * (X[i, k] - Y[j, k])
            out[i, j] = FX[i] - FY[j] - acc
    return out_np
