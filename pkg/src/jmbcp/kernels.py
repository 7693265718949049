"""Anti-symmetric pairwise kernels h(x, y) = -h(y, x)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np

from .errors import InputShapeError, InvalidParameterError

KernelFunc = Callable[[np.ndarray, np.ndarray], np.ndarray]


def _linear(x, y):
    return x - y


def _sign(x, y):
    return np.sign(x - y)


@dataclass(frozen=True)
class Kernel:
    """An anti-symmetric kernel mapping a pair of p-vectors to a d-vector.

    ``func`` must broadcast: ``func(x, Y)`` with ``x`` of shape ``(p,)`` and
    ``Y`` of shape ``(k, p)`` returns shape ``(k, d)``. Anti-symmetry and
    shift-invariance of user kernels are a documented contract and are not
    checked.
    """

    kind: str
    func: KernelFunc = field(repr=False, compare=False)
    output_dim: Callable[[int], int] = field(default=lambda p: p, repr=False, compare=False)

    def __call__(self, x, y):
        return apply(self, x, y)

    def dim(self, p: int) -> int:
        return int(self.output_dim(p))


LINEAR = Kernel("linear", _linear)
SIGN = Kernel("sign", _sign)

_REGISTRY: Dict[str, Kernel] = {"linear": LINEAR, "sign": SIGN}


def register(kernel: Kernel) -> None:
    if kernel.kind in ("linear", "sign"):
        raise InvalidParameterError(f"cannot replace built-in kernel {kernel.kind!r}")
    _REGISTRY[kernel.kind] = kernel


def get_kernel(kind) -> Kernel:
    if isinstance(kind, Kernel):
        return kind
    try:
        return _REGISTRY[str(kind).lower()]
    except KeyError:
        raise InvalidParameterError(
            f"unknown kernel {kind!r}; available: {sorted(_REGISTRY)}"
        ) from None


def available_kernels():
    return sorted(_REGISTRY)


def apply(kernel: Kernel, x, y) -> np.ndarray:
    """Evaluate ``h(x, y)`` for a single pair of p-vectors."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 1 or x.shape != y.shape or x.shape[0] < 1:
        raise InputShapeError(f"kernel arguments must be equal-length vectors, got {x.shape} and {y.shape}")
    return np.asarray(kernel.func(x, y), dtype=np.float64)
