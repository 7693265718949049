"""Half-jackknife Gaussian multiplier bootstrap and the resulting test."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import InvalidParameterError
from .kernels import get_kernel
from .teststat import (
    HalfRows,
    StatisticValue,
    as_data_matrix,
    fast_half_rows,
    scale_factor,
    statistic_from_rows,
)

SEED_MASK = (1 << 64) - 1
_CHUNK = 4096
GAMMA_FULL_MAX_DIM = 256


def replicate_rng(seed: int, b: int, stream: int = 0) -> np.random.Generator:
    """Generator for replicate ``b``; a pure function of (seed, b, stream)."""
    key = (int(seed) & SEED_MASK) | ((int(b) & 0xFFFFFFFFFFFF) << 64) | ((int(stream) & 0xFFFF) << 112)
    return np.random.Generator(np.random.Philox(key=key))


def multipliers(n: int, seed: int, start: int, stop: int, stream: int = 0) -> np.ndarray:
    """Standard normal multipliers for replicates ``start..stop-1``, shape (stop-start, n)."""
    E = np.empty((stop - start, n))
    for row, b in enumerate(range(start, stop)):
        E[row] = replicate_rng(seed, b, stream).standard_normal(n)
    return E


def _check_B(B) -> int:
    if int(B) != B or B < 1:
        raise InvalidParameterError(f"bootstrap replicate count must be a positive integer, got {B!r}")
    return int(B)


@dataclass(frozen=True)
class BootstrapDraws:
    values: np.ndarray
    seed: int

    @property
    def B(self) -> int:
        return self.values.shape[0]


def jmb_vectors(rows: HalfRows, B: int, seed: int, stream: int = 0) -> np.ndarray:
    """``(B, d)`` draws of ``sqrt(n) C(n,2)^-1 sum_i e_i A_i``."""
    B = _check_B(B)
    A = np.ascontiguousarray(rows.rows)
    c = scale_factor(rows.n)
    out = np.empty((B, rows.d))
    for start in range(0, B, _CHUNK):
        stop = min(B, start + _CHUNK)
        out[start:stop] = _kernels.weighted_rows(multipliers(rows.n, seed, start, stop, stream), A, c)
    return out


def jmb_draws(rows: HalfRows, B: int, seed: int, stream: int = 0) -> BootstrapDraws:
    """Bootstrap realizations of the l-infinity statistic."""
    B = _check_B(B)
    A = np.ascontiguousarray(rows.rows)
    c = scale_factor(rows.n)
    out = np.empty(B)
    for start in range(0, B, _CHUNK):
        stop = min(B, start + _CHUNK)
        out[start:stop] = _kernels.weighted_rows_max(multipliers(rows.n, seed, start, stop, stream), A, c)
    return BootstrapDraws(out, int(seed))


def quantile(draws, level: float) -> float:
    """The ceil(B * level)-th smallest draw, i.e. inf{t : ECDF(t) >= level}."""
    if not 0.0 < level < 1.0:
        raise InvalidParameterError(f"quantile level must lie in (0, 1), got {level!r}")
    values = np.asarray(getattr(draws, "values", draws), dtype=np.float64)
    if values.size == 0:
        raise InvalidParameterError("no bootstrap draws")
    B = values.size
    # guard against B * level landing a hair above an integer
    k = max(1, math.ceil(round(B * level, 9)))
    return float(np.partition(values, k - 1)[k - 1])


def p_value(draws, observed: float) -> float:
    """Add-one bootstrap p-value ``(1 + #{draw >= observed}) / (B + 1)``."""
    values = np.asarray(getattr(draws, "values", draws), dtype=np.float64)
    return (1.0 + np.count_nonzero(values >= observed)) / (values.size + 1.0)


@dataclass
class TestResult:
    statistic: StatisticValue
    quantile: float
    p_value: float
    alpha: float
    reject: bool
    B: int
    seed: int
    kernel: str
    n: int
    p: int
    elapsed_ms: float = 0.0
    extra: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "statistic": self.statistic.t_max,
            "quantile": self.quantile,
            "p_value": self.p_value,
            "alpha": self.alpha,
            "reject": bool(self.reject),
            "B": self.B,
            "seed": self.seed,
            "kernel": self.kernel,
            "n": self.n,
            "p": self.p,
        }
        out.update(self.extra)
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 < alpha < 1.0:
        raise InvalidParameterError(f"alpha must lie in (0, 1), got {alpha!r}")
    return alpha


def run_test(data, kernel="linear", alpha: float = 0.05, B: int = 200, seed: int = 0, stream: int = 0) -> TestResult:
    """Bootstrap change point test; rejects when the statistic exceeds the
    bootstrap (1 - alpha) quantile."""
    t0 = time.perf_counter()
    alpha = check_alpha(alpha)
    B = _check_B(B)
    kernel = get_kernel(kernel)
    X = as_data_matrix(data)
    rows = fast_half_rows(kernel, X)
    stat = statistic_from_rows(rows)
    draws = jmb_draws(rows, B, seed, stream)
    q = quantile(draws, 1.0 - alpha)
    return TestResult(
        statistic=stat,
        quantile=q,
        p_value=p_value(draws, stat.t_max),
        alpha=alpha,
        reject=bool(stat.t_max > q),
        B=B,
        seed=int(seed),
        kernel=kernel.kind,
        n=X.shape[0],
        p=X.shape[1],
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )


@dataclass(frozen=True)
class GammaHat:
    diag: np.ndarray
    full: np.ndarray | None = None


def gamma_hat(rows: HalfRows, full: bool | None = None) -> GammaHat:
    """``(n (n-1)^2)^-1 sum_i A_i A_i^T``; the bootstrap vector has covariance
    exactly four times this given the data.

    The full matrix is returned by default only when d <= 256.
    """
    A = rows.rows
    n = rows.n
    denom = n * (n - 1) ** 2
    diag = np.einsum("ij,ij->j", A, A) / denom
    if full is None:
        full = rows.d <= GAMMA_FULL_MAX_DIM
    return GammaHat(diag=diag, full=(A.T @ A) / denom if full else None)
