"""Monte Carlo harness for size, power and the JMB-vs-CUSUM comparison.

Every repetition draws its data and its multipliers from seeds that are a
pure function of (master seed, scenario, repetition), so any report can be
reproduced bitwise from its configuration.
"""

from __future__ import annotations

import csv
import json
import logging
import time
import zlib
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Iterable, List, Optional, Sequence

import numpy as np

from .bootstrap import run_test
from .cusum import DEFAULT_BOUNDARY, run_cusum_test
from .datagen import ScenarioConfig, cov_factor, generate
from .errors import InvalidParameterError, InvalidScenarioError

log = logging.getLogger(__name__)

METHODS = ("linear", "sign", "cusum")
_CUSUM_STREAM = 1

PRESETS = {
    "desk": dict(n=100, p=20, B=200, reps=500),
    "paper": dict(n=500, p=600, B=200, reps=500),
}


def preset(name: str, **overrides) -> ScenarioConfig:
    try:
        base = dict(PRESETS[name])
    except KeyError:
        raise InvalidParameterError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    base.update(overrides)
    return ScenarioConfig(**base)


# ---------------------------------------------------------------------------
# uniform error-in-size
# ---------------------------------------------------------------------------

def uniform_error(p_values, upper: float = 1.0) -> float:
    """Exact ``sup |R(a) - a|`` over ``a`` in (0, 1) (``upper=1``) or (0, upper].

    ``R`` is the right-continuous ECDF of the p-values. On each interval
    between consecutive jump points ``R`` is constant, so the sup is attained
    at (or approached at) the interval endpoints: the value at each jump and
    the left limit just before the next one. For ``upper < 1`` the endpoint
    itself is included.
    """
    p = np.sort(np.asarray(p_values, dtype=np.float64))
    R = p.size
    if R == 0:
        raise InvalidParameterError("no p-values")
    if not 0.0 < upper <= 1.0:
        raise InvalidParameterError("upper must lie in (0, 1]")
    inner = np.unique(p[(p > 0.0) & (p < upper)])
    knots = np.concatenate(([0.0], inner, [upper]))
    # ECDF value on [knots[k], knots[k+1])
    level = np.searchsorted(p, knots[:-1], side="right") / R
    err = max(np.abs(level - knots[:-1]).max(), np.abs(level - knots[1:]).max())
    if upper < 1.0:
        at_upper = np.searchsorted(p, upper, side="right") / R
        err = max(err, abs(at_upper - upper))
    return float(err)


def uniform_error_grid(p_values, upper: float = 1.0, points: int = 100_000) -> float:
    """Dense-grid approximation of :func:`uniform_error`, used as an oracle."""
    p = np.sort(np.asarray(p_values, dtype=np.float64))
    if upper < 1.0:
        grid = np.linspace(upper / points, upper, points)
    else:
        grid = (np.arange(points) + 0.5) / points
    ecdf = np.searchsorted(p, grid, side="right") / p.size
    return float(np.abs(ecdf - grid).max())


# ---------------------------------------------------------------------------
# seeding
# ---------------------------------------------------------------------------

def _key(text: str) -> int:
    return zlib.crc32(text.encode("utf-8"))


def data_id(config: ScenarioConfig) -> str:
    """Scenario identity for data generation; independent of the method."""
    parts = [config.noise.kind, f"nu{config.noise.nu}", f"eps{config.noise.eps}",
             config.cov.kind, f"n{config.n}", f"p{config.p}"]
    if config.cov.kind == "compound":
        parts.append(f"c{config.cov.load}:{config.cov.diag}")
    elif config.cov.kind == "ar":
        parts.append(f"r{config.cov.rho}")
    if config.m is not None:
        parts += [f"m{config.m}", f"th{config.theta_max!r}"]
    return "|".join(parts)


def rep_seeds(master: int, scenario: str, rep: int):
    """(data seed, bootstrap seed) for one repetition."""
    ss = np.random.SeedSequence([int(master), _key(scenario), int(rep)])
    a, b = ss.generate_state(2, dtype=np.uint64)
    return int(a), int(b)


def _run_method(X, method, alpha, B, seed, boundary):
    if method == "cusum":
        return run_cusum_test(X, boundary=boundary, alpha=alpha, B=B, seed=seed, stream=_CUSUM_STREAM)
    return run_test(X, kernel=method, alpha=alpha, B=B, seed=seed)


def _check_method(method):
    if method not in METHODS:
        raise InvalidParameterError(f"method must be one of {METHODS}, got {method!r}")


def _iter_datasets(config: ScenarioConfig, R: int):
    factor = cov_factor(config.cov, config.p)
    sid = data_id(config)
    for rep in range(R):
        data_seed, boot_seed = rep_seeds(config.seed, sid, rep)
        X = generate(config, np.random.default_rng(data_seed), factor)
        yield rep, X, boot_seed


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class SizeReport:
    scenario: ScenarioConfig
    method: str
    p_values: np.ndarray
    uniform_error_full: float
    uniform_error_01: float
    runtime_ms: float = 0.0
    boundary: Optional[int] = None

    @classmethod
    def from_p_values(cls, scenario, method, p_values, runtime_ms=0.0, boundary=None):
        p_values = np.asarray(p_values, dtype=np.float64)
        return cls(scenario, method, p_values, uniform_error(p_values), uniform_error(p_values, 0.1),
                   runtime_ms, boundary)

    @property
    def scenario_id(self) -> str:
        return replace(self.scenario, kernel=self.method).scenario_id

    def rejection_rate(self, alpha: float) -> float:
        return float(np.mean(self.p_values <= alpha))

    def summary(self, timing: bool = True) -> dict:
        out = {
            "scenario_id": self.scenario_id,
            "n": self.scenario.n,
            "p": self.scenario.p,
            "kernel": self.method,
            "distribution": self.scenario.noise.kind,
            "cov": self.scenario.cov.label,
            "uniform_error_full": self.uniform_error_full,
            "uniform_error_01": self.uniform_error_01,
        }
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out

    def to_dict(self, timing: bool = True) -> dict:
        out = self.summary(timing)
        out.update(R=int(self.p_values.size), B=self.scenario.B, seed=self.scenario.seed,
                   p_values=self.p_values.tolist())
        if self.boundary is not None:
            out["boundary"] = self.boundary
        return out


@dataclass
class PowerReport:
    scenario: ScenarioConfig
    method: str
    alpha: float
    R: int
    grid: List[tuple] = field(default_factory=list)  # (theta_max, m, rejection_rate)
    runtime_ms: float = 0.0

    def rate(self, theta_max: float, m: Optional[int]) -> float:
        for t, mm, r in self.grid:
            if t == theta_max and (t == 0 or mm == m):
                return r
        raise KeyError((theta_max, m))

    def mc_se(self, rate: float) -> float:
        return float(np.sqrt(max(rate * (1 - rate), 1e-12) / self.R))

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "scenario": self.scenario.to_dict(),
            "method": self.method,
            "alpha": self.alpha,
            "R": self.R,
            "grid": [{"theta_max": t, "m": m, "rejection_rate": r} for t, m, r in self.grid],
        }
        if timing:
            out["runtime_ms"] = self.runtime_ms
        return out


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------

def size_experiment(config: ScenarioConfig, R: Optional[int] = None, method: Optional[str] = None,
                    boundary: int = DEFAULT_BOUNDARY) -> SizeReport:
    """Bootstrap p-values over ``R`` null datasets and their uniform error-in-size."""
    if not config.is_null:
        raise InvalidScenarioError("size experiment needs a null scenario (no shift)")
    R = config.reps if R is None else int(R)
    if R < 1:
        raise InvalidParameterError("R must be >= 1")
    method = method or config.kernel
    _check_method(method)
    t0 = time.perf_counter()
    pv = np.empty(R)
    for rep, X, seed in _iter_datasets(config, R):
        pv[rep] = _run_method(X, method, config.alpha, config.B, seed, boundary).p_value
    report = SizeReport.from_p_values(config, method, pv, (time.perf_counter() - t0) * 1e3,
                                      boundary if method == "cusum" else None)
    log.info("size %s: full=%.4f (0,0.1]=%.4f", report.scenario_id,
             report.uniform_error_full, report.uniform_error_01)
    return report


def power_grid(base: ScenarioConfig, thetas: Iterable[float], ms: Iterable[int]) -> List[ScenarioConfig]:
    """Configs with ``theta = (t, 0, ..., 0)`` over the product of ``thetas`` and
    ``ms``; a zero entry in ``thetas`` contributes one null point."""
    out = []
    ms = list(ms)
    for t in thetas:
        if t == 0:
            out.append(base.with_shift(None, 0.0))
            continue
        for m in ms:
            out.append(base.with_shift(int(m), float(t)))
    return out


def power_experiment(configs: Sequence[ScenarioConfig], R: Optional[int] = None,
                     method: Optional[str] = None, boundary: int = DEFAULT_BOUNDARY) -> PowerReport:
    """Rejection rate at the nominal level for each grid point."""
    if not configs:
        raise InvalidParameterError("empty power grid")
    first = configs[0]
    method = method or first.kernel
    _check_method(method)
    R = first.reps if R is None else int(R)
    t0 = time.perf_counter()
    report = PowerReport(first, method, first.alpha, R)
    for cfg in configs:
        rejected = 0
        for rep, X, seed in _iter_datasets(cfg, R):
            rejected += _run_method(X, method, cfg.alpha, cfg.B, seed, boundary).reject
        rate = rejected / R
        report.grid.append((cfg.theta_max, cfg.m, rate))
        log.info("power %s: %.3f", cfg.scenario_id, rate)
    report.runtime_ms = (time.perf_counter() - t0) * 1e3
    return report


def method_comparison(config: ScenarioConfig, R: Optional[int] = None,
                      boundary: int = DEFAULT_BOUNDARY):
    """Linear-kernel JMB and CUSUM on the same null datasets.

    Multipliers come from independent streams per method. Returns
    ``(jmb_report, cusum_report)``.
    """
    if not config.is_null:
        raise InvalidScenarioError("method comparison needs a null scenario (no shift)")
    R = config.reps if R is None else int(R)
    pv_jmb, pv_cusum = np.empty(R), np.empty(R)
    t_jmb = t_cusum = 0.0
    for rep, X, seed in _iter_datasets(config, R):
        t0 = time.perf_counter()
        pv_jmb[rep] = _run_method(X, "linear", config.alpha, config.B, seed, boundary).p_value
        t1 = time.perf_counter()
        pv_cusum[rep] = _run_method(X, "cusum", config.alpha, config.B, seed, boundary).p_value
        t_jmb += t1 - t0
        t_cusum += time.perf_counter() - t1
    jmb = SizeReport.from_p_values(config, "linear", pv_jmb, t_jmb * 1e3)
    cus = SizeReport.from_p_values(config, "cusum", pv_cusum, t_cusum * 1e3, boundary)
    log.info("compare %s: jmb %.4f/%.4f cusum %.4f/%.4f (%.0f ms vs %.0f ms)", data_id(config),
             jmb.uniform_error_full, jmb.uniform_error_01, cus.uniform_error_full,
             cus.uniform_error_01, jmb.runtime_ms, cus.runtime_ms)
    return jmb, cus


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

SIZE_COLUMNS = ["scenario_id", "rep", "p_value"]
SUMMARY_COLUMNS = ["scenario_id", "n", "p", "kernel", "distribution", "cov",
                   "uniform_error_full", "uniform_error_01", "runtime_ms"]
POWER_COLUMNS = ["theta_max", "m", "rejection_rate", "R"]


def write_size_reports(reports: Sequence[SizeReport], out_dir, stem: str = "size", timing: bool = True):
    """Write ``<stem>_pvalues.csv``, ``<stem>_summary.csv`` and ``<stem>.json``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / f"{stem}_pvalues.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(SIZE_COLUMNS)
        for r in reports:
            sid = r.scenario_id
            for i, pv in enumerate(r.p_values):
                w.writerow([sid, i, repr(float(pv))])
    cols = SUMMARY_COLUMNS if timing else SUMMARY_COLUMNS[:-1]
    with open(out / f"{stem}_summary.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=cols)
        w.writeheader()
        for r in reports:
            w.writerow(r.summary(timing))
    with open(out / f"{stem}.json", "w", encoding="utf-8") as fh:
        json.dump([r.to_dict(timing) for r in reports], fh, indent=2)
    return [out / f"{stem}_pvalues.csv", out / f"{stem}_summary.csv", out / f"{stem}.json"]


def write_power_report(report: PowerReport, out_dir, stem: str = "power", timing: bool = True):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / f"{stem}.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(POWER_COLUMNS)
        for t, m, rate in report.grid:
            w.writerow([t, "" if m is None else m, rate, report.R])
    with open(out / f"{stem}.json", "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(timing), fh, indent=2)
    return [out / f"{stem}.csv", out / f"{stem}.json"]
