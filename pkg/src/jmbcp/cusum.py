"""CUSUM baseline with boundary removal and its Gaussian multiplier bootstrap."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .bootstrap import BootstrapDraws, _check_B, check_alpha, multipliers, p_value, quantile
from .errors import InvalidParameterError
from .teststat import as_data_matrix

DEFAULT_BOUNDARY = 40
_CHUNK = 1024


def _scan_range(n: int, boundary: int):
    if int(boundary) != boundary or boundary < 1 or 2 * boundary > n:
        raise InvalidParameterError(f"boundary must satisfy 1 <= boundary <= n/2 (n={n}), got {boundary!r}")
    return int(boundary), n - int(boundary)


def cusum_sequence(data, boundary: int = 1) -> np.ndarray:
    """Rows ``Z_n(s)`` for ``s = boundary, ..., n - boundary``, via prefix sums."""
    X = as_data_matrix(data)
    n = X.shape[0]
    lo, hi = _scan_range(n, boundary)
    s = np.arange(lo, hi + 1, dtype=np.float64)[:, None]
    full = np.cumsum(X, axis=0)
    P, total = full[lo - 1:hi], full[-1]
    return np.sqrt(s * (n - s) / n) * (P / s - (total - P) / (n - s))


def cusum_statistic(data, boundary: int = 1) -> float:
    return float(np.abs(cusum_sequence(data, boundary)).max())


def cusum_bootstrap_draws(data, boundary: int, B: int, seed: int, stream: int = 0) -> BootstrapDraws:
    """Max over the scan range of the multiplier CUSUM, one shared multiplier
    vector per replicate."""
    X = as_data_matrix(data)
    n = X.shape[0]
    lo, hi = _scan_range(n, boundary)
    B = _check_B(B)
    out = np.empty(B)
    for start in range(0, B, _CHUNK):
        stop = min(B, start + _CHUNK)
        out[start:stop] = _kernels.cusum_boot_max(X, multipliers(n, seed, start, stop, stream), lo, hi)
    return BootstrapDraws(out, int(seed))


@dataclass
class CusumResult:
    s_max_statistic: float
    boundary: int
    quantile: float
    p_value: float
    alpha: float
    reject: bool
    B: int
    seed: int
    n: int
    p: int
    elapsed_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "statistic": self.s_max_statistic,
            "quantile": self.quantile,
            "p_value": self.p_value,
            "alpha": self.alpha,
            "reject": bool(self.reject),
            "B": self.B,
            "seed": self.seed,
            "kernel": "cusum",
            "n": self.n,
            "p": self.p,
            "boundary": self.boundary,
        }
        if timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


def run_cusum_test(data, boundary: int = DEFAULT_BOUNDARY, alpha: float = 0.05, B: int = 200,
                   seed: int = 0, stream: int = 0) -> CusumResult:
    t0 = time.perf_counter()
    alpha = check_alpha(alpha)
    X = as_data_matrix(data)
    stat = cusum_statistic(X, boundary)
    draws = cusum_bootstrap_draws(X, boundary, B, seed, stream)
    q = quantile(draws, 1.0 - alpha)
    return CusumResult(
        s_max_statistic=stat,
        boundary=int(boundary),
        quantile=q,
        p_value=p_value(draws, stat),
        alpha=alpha,
        reject=bool(stat > q),
        B=draws.B,
        seed=int(seed),
        n=X.shape[0],
        p=X.shape[1],
        elapsed_ms=(time.perf_counter() - t0) * 1e3,
    )
