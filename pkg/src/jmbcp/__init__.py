"""Robust tuning-free change point test for high-dimensional location shifts.

The statistic is the l-infinity norm of a scaled U-statistic with an
anti-symmetric kernel (linear or sign), calibrated by a half-jackknife
Gaussian multiplier bootstrap.
"""

__version__ = "0.1.0"

from ._accel import backend
from .bootstrap import BootstrapDraws, GammaHat, TestResult, gamma_hat, jmb_draws, jmb_vectors, p_value, quantile, run_test
from .cusum import CusumResult, cusum_bootstrap_draws, cusum_sequence, run_cusum_test
from .datagen import CovarianceSpec, NoiseSpec, ScenarioConfig, apply_shift, cov_factor, generate, sample_noise
from .kernels import LINEAR, SIGN, Kernel, apply, get_kernel, register
from .teststat import (
    HalfRows,
    StatisticValue,
    cross_weight_identity_check,
    half_rows,
    half_rows_linear_fast,
    half_rows_sign_fast,
    statistic_from_rows,
)

__all__ = [
    "BootstrapDraws", "CovarianceSpec", "CusumResult", "GammaHat", "HalfRows", "Kernel", "LINEAR",
    "NoiseSpec", "SIGN", "ScenarioConfig", "StatisticValue", "TestResult", "apply", "apply_shift",
    "backend", "cov_factor", "cross_weight_identity_check", "cusum_bootstrap_draws", "cusum_sequence",
    "gamma_hat", "generate", "get_kernel", "half_rows", "half_rows_linear_fast", "half_rows_sign_fast",
    "jmb_draws", "jmb_vectors", "p_value", "quantile", "register", "run_cusum_test", "run_test",
    "sample_noise", "statistic_from_rows",
]
