"""CSV matrix ingestion and scenario config files."""

from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List

import numpy as np

from .datagen import CovarianceSpec, NoiseSpec, ScenarioConfig
from .errors import InvalidParameterError, ParseError

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib


@dataclass(frozen=True)
class CsvSchema:
    has_header: bool = False
    delimiter: str = ","
    transpose: bool = False


def load_csv(path, schema: CsvSchema = CsvSchema()) -> np.ndarray:
    """Read a rows-are-observations numeric matrix.

    Raises :class:`ParseError` with 1-based line/column for ragged rows,
    non-numeric or non-finite cells, and empty input.
    """
    rows: List[List[float]] = []
    width = None
    first_line = None
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh, delimiter=schema.delimiter)
        for line_no, record in enumerate(reader, start=1):
            if schema.has_header and line_no == 1:
                continue
            if not record or all(not c.strip() for c in record):
                continue
            if width is None:
                width, first_line = len(record), line_no
            elif len(record) != width:
                raise ParseError(
                    f"{path}: line {line_no} has {len(record)} fields, expected {width} (from line {first_line})",
                    row=line_no,
                )
            values = []
            for col, cell in enumerate(record, start=1):
                try:
                    v = float(cell)
                except ValueError:
                    raise ParseError(f"{path}: line {line_no}, column {col}: not a number: {cell!r}",
                                     row=line_no, column=col) from None
                if not math.isfinite(v):
                    raise ParseError(f"{path}: line {line_no}, column {col}: non-finite value {cell!r}",
                                     row=line_no, column=col)
                values.append(v)
            rows.append(values)
    if not rows:
        raise ParseError(f"{path}: no data rows")
    X = np.array(rows, dtype=np.float64)
    return np.ascontiguousarray(X.T) if schema.transpose else X


def write_csv(path, X, delimiter: str = ",") -> None:
    """Write with 17 significant digits so that reloading is bitwise exact."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
        for row in X:
            w.writerow([f"{v:.17g}" for v in row])


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

_NOISE_KEYS = {"nu", "eps"}
_COV_KEYS = {"load", "diag", "rho"}
_SCENARIO_KEYS = {"n", "p", "m", "theta", "B", "reps", "alpha", "seed", "kernel"}
_LIST_KEYS = {"noise", "cov", "kernel"}
EXTRA_KEYS = {"preset", "boundary", "thetas", "ms", "out_dir", "stem"}


def read_config(path) -> Dict[str, Any]:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        if path.suffix.lower() == ".json":
            cfg = json.loads(text)
        else:
            cfg = tomllib.loads(text)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None
    if not isinstance(cfg, dict):
        raise ParseError(f"{path}: top level must be a table/object")
    return cfg


def scenarios_from_dict(cfg: Dict[str, Any]) -> List[ScenarioConfig]:
    """Expand a flat config into scenarios.

    ``noise``, ``cov`` and ``kernel`` may be lists; the product is returned.
    ``preset`` ('desk' or 'paper') fills n, p, B, reps before other keys apply.
    """
    from .experiments import PRESETS

    cfg = dict(cfg)
    known = _NOISE_KEYS | _COV_KEYS | _SCENARIO_KEYS | _LIST_KEYS | EXTRA_KEYS
    unknown = set(cfg) - known
    if unknown:
        raise InvalidParameterError(f"unknown config keys: {sorted(unknown)}")
    base: Dict[str, Any] = {}
    if "preset" in cfg:
        name = cfg["preset"]
        if name not in PRESETS:
            raise InvalidParameterError(f"unknown preset {name!r}")
        base.update(PRESETS[name])
    base.update({k: cfg[k] for k in _SCENARIO_KEYS if k in cfg and k != "kernel"})

    def as_list(v):
        return list(v) if isinstance(v, (list, tuple)) else [v]

    noises = as_list(cfg.get("noise", "gaussian"))
    covs = as_list(cfg.get("cov", "identity"))
    kernels = as_list(cfg.get("kernel", "linear"))
    noise_kw = {k: cfg[k] for k in _NOISE_KEYS if k in cfg}
    cov_kw = {k: cfg[k] for k in _COV_KEYS if k in cfg}
    out = []
    for noise, cov, kernel in itertools.product(noises, covs, kernels):
        out.append(ScenarioConfig(
            noise=NoiseSpec(noise, **noise_kw),
            cov=CovarianceSpec(cov, **cov_kw),
            kernel=kernel,
            **base,
        ))
    return out
