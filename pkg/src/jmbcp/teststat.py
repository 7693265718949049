"""Half-jackknife row sums and the l-infinity U-statistic."""

from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

import numpy as np

from . import _kernels
from .errors import InputShapeError, InsufficientDataError
from .kernels import LINEAR, SIGN, Kernel, get_kernel


def as_data_matrix(data, min_rows: int = 2) -> np.ndarray:
    """Validate and return ``data`` as a C-contiguous float64 ``(n, p)`` array.

    A 1-d input is read as n scalar observations.
    """
    X = np.asarray(data, dtype=np.float64)
    if X.ndim == 1:
        X = X[:, None]
    if X.ndim != 2:
        raise InputShapeError(f"data must be a 2-d (n, p) matrix, got ndim={X.ndim}")
    n, p = X.shape
    if p < 1:
        raise InputShapeError("data must have at least one column")
    if n < min_rows:
        raise InsufficientDataError(f"need at least {min_rows} observations, got {n}")
    if not np.isfinite(X).all():
        i, j = np.argwhere(~np.isfinite(X))[0]
        raise InputShapeError(f"non-finite value at row {i}, column {j}")
    return np.ascontiguousarray(X)


@dataclass(frozen=True)
class HalfRows:
    """Row ``i`` holds ``A_i = sum_{j > i} h(X_i, X_j)``; the last row is zero."""

    rows: np.ndarray

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def d(self) -> int:
        return self.rows.shape[1]


@dataclass(frozen=True)
class StatisticValue:
    t_vector: np.ndarray
    t_max: float

    @property
    def d(self) -> int:
        return self.t_vector.shape[0]


def half_rows(kernel, data) -> HalfRows:
    """Sum the kernel over all later observations, one row per observation.

    Enumerates every pair, so the cost is O(n^2 d). The sign kernel runs the
    same enumeration in a compiled loop; other kernels are evaluated with
    ``kernel.func(X[i], X[i+1:])``.
    """
    kernel = get_kernel(kernel)
    X = as_data_matrix(data)
    if kernel is SIGN:
        return HalfRows(_kernels.sign_pairwise_rows(X))
    n = X.shape[0]
    first = np.asarray(kernel.func(X[0], X[1:]), dtype=np.float64)
    if first.ndim != 2 or first.shape[0] != n - 1:
        raise InputShapeError(
            f"kernel {kernel.kind!r} must map (p,), (k, p) -> (k, d); got shape {first.shape}"
        )
    A = np.zeros((n, first.shape[1]))
    A[0] = first.sum(axis=0)
    for i in range(1, n - 1):
        A[i] = np.asarray(kernel.func(X[i], X[i + 1:]), dtype=np.float64).sum(axis=0)
    return HalfRows(A)


def half_rows_linear_fast(data) -> HalfRows:
    """Linear-kernel rows in O(np): ``A_i = (n - i) X_i - sum_{j > i} X_j``."""
    X = as_data_matrix(data)
    return HalfRows(_kernels.linear_suffix_rows(X))


# below this many rows the vectorized pairwise loop beats rank counting
SIGN_RANK_MIN_ROWS = 1500


def half_rows_sign_fast(data) -> HalfRows:
    """Sign-kernel rows in O(n log n p) via per-column rank counting.

    Small samples use the pairwise loop, which is faster there. The numpy
    backend always uses the pairwise loop; the rows are integer-valued, so
    every route gives identical output.
    """
    X = as_data_matrix(data)
    if X.shape[0] < SIGN_RANK_MIN_ROWS:
        return HalfRows(_kernels.sign_pairwise_rows(X))
    return HalfRows(_kernels.sign_rank_rows(X))


def fast_half_rows(kernel, data) -> HalfRows:
    """Dispatch to the fastest available route for ``kernel``."""
    kernel = get_kernel(kernel)
    if kernel is LINEAR:
        return half_rows_linear_fast(data)
    if kernel is SIGN:
        return half_rows_sign_fast(data)
    return half_rows(kernel, data)


def scale_factor(n: int) -> float:
    """sqrt(n) / C(n, 2)."""
    return sqrt(n) * 2.0 / (n * (n - 1))


def statistic_from_rows(rows: HalfRows) -> StatisticValue:
    t = scale_factor(rows.n) * rows.rows.sum(axis=0)
    return StatisticValue(t_vector=t, t_max=float(np.abs(t).max()))


def statistic(kernel: Kernel, data) -> StatisticValue:
    return statistic_from_rows(fast_half_rows(kernel, data))


def cross_weight_identity_check(data) -> float:
    """Max-abs gap between the pairwise sum of ``X_i - X_j`` over i < j and
    the single-pass weighted sum ``sum_i (n - 2i + 1) X_i`` (1-based i)."""
    X = as_data_matrix(data)
    n = X.shape[0]
    pairwise = np.zeros(X.shape[1])
    for i in range(n - 1):
        pairwise += (X[i] - X[i + 1:]).sum(axis=0)
    weights = n - 2.0 * np.arange(1, n + 1) + 1.0
    weighted = weights @ X
    return float(np.abs(pairwise - weighted).max())
