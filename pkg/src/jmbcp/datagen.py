"""Location-shift scenario generator: X_i = theta * 1(i > m) + xi_i."""

from __future__ import annotations

from dataclasses import asdict, dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from .errors import FactorizationError, InvalidParameterError, InvalidScenarioError

COV_KINDS = ("identity", "compound", "ar")
NOISE_KINDS = ("gaussian", "student_t", "contaminated_gaussian", "cauchy")


@dataclass(frozen=True)
class CovarianceSpec:
    kind: str = "identity"
    load: float = 0.8
    diag: float = 0.2
    rho: float = 0.8

    def __post_init__(self):
        kind = self.kind.lower()
        object.__setattr__(self, "kind", kind)
        if kind not in COV_KINDS:
            raise InvalidParameterError(f"covariance kind must be one of {COV_KINDS}, got {self.kind!r}")
        if kind == "compound" and (self.load < 0 or self.diag <= 0):
            raise InvalidParameterError("compound covariance needs load >= 0 and diag > 0")
        if kind == "ar" and not abs(self.rho) < 1:
            raise InvalidParameterError("autoregressive covariance needs |rho| < 1")

    @property
    def label(self) -> str:
        return {"identity": "I", "compound": "II", "ar": "III"}[self.kind]

    def matrix(self, p: int) -> np.ndarray:
        if self.kind == "identity":
            return np.eye(p)
        if self.kind == "compound":
            return self.load * np.ones((p, p)) + self.diag * np.eye(p)
        idx = np.arange(p)
        return self.rho ** np.abs(idx[:, None] - idx[None, :]).astype(np.float64)


@dataclass(frozen=True)
class NoiseSpec:
    kind: str = "gaussian"
    nu: Optional[float] = None
    eps: float = 0.2

    def __post_init__(self):
        kind = self.kind.lower().replace("-", "_")
        aliases = {"t": "student_t", "studentt": "student_t", "ctm_g": "contaminated_gaussian",
                   "contaminated": "contaminated_gaussian", "normal": "gaussian"}
        kind = aliases.get(kind, kind)
        object.__setattr__(self, "kind", kind)
        if kind not in NOISE_KINDS:
            raise InvalidParameterError(f"noise kind must be one of {NOISE_KINDS}, got {self.kind!r}")
        if self.nu is None:
            object.__setattr__(self, "nu", {"student_t": 6.0, "contaminated_gaussian": 2.0}.get(kind))
        if kind == "student_t" and not self.nu > 2:
            raise InvalidParameterError("elliptical t needs nu > 2")
        if kind == "contaminated_gaussian":
            if not 0 < self.eps < 1:
                raise InvalidParameterError("contamination eps must lie in (0, 1)")
            if not self.nu > 0:
                raise InvalidParameterError("contamination scale nu must be positive")


def cov_factor(spec: CovarianceSpec, p: int) -> np.ndarray:
    """Lower-triangular ``L`` with ``L @ L.T == V``."""
    if p < 1:
        raise InvalidParameterError("dimension p must be >= 1")
    if spec.kind == "identity":
        return np.eye(p)
    try:
        return np.linalg.cholesky(spec.matrix(p))
    except np.linalg.LinAlgError as exc:
        raise FactorizationError(f"{spec} is not positive definite at p={p}") from exc


def sample_noise(noise: NoiseSpec, factor: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``n`` i.i.d. noise rows ``xi_i`` in ``R^p`` with scatter ``factor @ factor.T``."""
    p = factor.shape[0]
    if noise.kind == "cauchy":
        # inversion: tan(pi (u - 1/2))
        z = np.tan(np.pi * (rng.random((n, p)) - 0.5))
    else:
        z = rng.standard_normal((n, p))
        if noise.kind == "student_t":
            w = rng.chisquare(noise.nu, size=n)
            z *= np.sqrt(noise.nu / w)[:, None]
        elif noise.kind == "contaminated_gaussian":
            hit = rng.random(n) < noise.eps
            z[hit] *= noise.nu
    if factor.shape == (p, p) and np.array_equal(factor, np.eye(p)):
        return z
    return z @ factor.T


def apply_shift(noise_matrix, m: Optional[int], theta) -> np.ndarray:
    """Add ``theta`` to rows ``m+1..n`` (1-based); ``m=None`` leaves data unchanged."""
    X = np.array(noise_matrix, dtype=np.float64, copy=True)
    if X.ndim == 1:
        X = X[:, None]
    n, p = X.shape
    if m is None:
        return X
    if int(m) != m or not 1 <= m <= n - 1:
        raise InvalidParameterError(f"change location m must lie in [1, n-1] = [1, {n - 1}], got {m!r}")
    theta = np.broadcast_to(np.asarray(theta, dtype=np.float64), (p,))
    X[int(m):] += theta
    return X


@dataclass(frozen=True)
class ScenarioConfig:
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    cov: CovarianceSpec = field(default_factory=CovarianceSpec)
    n: int = 100
    p: int = 20
    m: Optional[int] = None
    theta: Sequence[float] = ()
    B: int = 200
    reps: int = 500
    alpha: float = 0.05
    seed: int = 0
    kernel: str = "linear"

    def __post_init__(self):
        theta = tuple(float(t) for t in np.ravel(self.theta)) if len(np.ravel(self.theta)) else ()
        if theta and len(theta) not in (1, self.p):
            raise InvalidParameterError(f"theta must have length 1 or p={self.p}, got {len(theta)}")
        object.__setattr__(self, "theta", theta)
        if self.n < 2 or self.p < 1:
            raise InvalidParameterError("need n >= 2 and p >= 1")
        shifted = any(t != 0.0 for t in theta)
        if (self.m is None) == shifted:
            raise InvalidScenarioError("m must be given exactly when theta is nonzero")
        if self.m is not None and not 1 <= self.m <= self.n - 1:
            raise InvalidParameterError(f"m must lie in [1, n-1], got {self.m}")

    @property
    def is_null(self) -> bool:
        return self.m is None

    @property
    def theta_vector(self) -> np.ndarray:
        if not self.theta:
            return np.zeros(self.p)
        return np.broadcast_to(np.asarray(self.theta), (self.p,)).copy() if len(self.theta) == 1 else np.asarray(self.theta)

    @property
    def theta_max(self) -> float:
        return float(np.abs(self.theta_vector).max())

    @property
    def scenario_id(self) -> str:
        parts = [self.noise.kind, self.cov.label, f"n{self.n}", f"p{self.p}", self.kernel]
        if self.m is not None:
            parts += [f"m{self.m}", f"th{self.theta_max:g}"]
        return "-".join(parts)

    def with_shift(self, m: Optional[int], theta_max: float) -> "ScenarioConfig":
        """Copy with shift ``theta = (theta_max, 0, ..., 0)``."""
        if theta_max == 0:
            return replace(self, m=None, theta=())
        theta = np.zeros(self.p)
        theta[0] = theta_max
        return replace(self, m=m, theta=tuple(theta))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["theta"] = list(self.theta)
        return out


def generate(config: ScenarioConfig, rng: np.random.Generator, factor: Optional[np.ndarray] = None) -> np.ndarray:
    """One dataset from ``config``."""
    if factor is None:
        factor = cov_factor(config.cov, config.p)
    xi = sample_noise(config.noise, factor, config.n, rng)
    return apply_shift(xi, config.m, config.theta_vector) if config.m is not None else xi
