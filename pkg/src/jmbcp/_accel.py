"""Backend selection for the numeric kernels.

Set ``JMBCP_BACKEND=numpy`` (or ``JMBCP_DISABLE_NUMBA=1``) before import to
force the pure-numpy code paths. Otherwise numba is used when importable.
"""

import os

_requested = os.environ.get("JMBCP_BACKEND", "").strip().lower()
_disabled = os.environ.get("JMBCP_DISABLE_NUMBA", "").strip() not in ("", "0")

if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"JMBCP_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

try:
    if _requested == "numpy" or _disabled:
        raise ImportError("numba disabled by environment")
    import numba
    from numba import njit, prange

    # the system TBB is too old for numba; skip the probe and its warning
    numba.config.THREADING_LAYER_PRIORITY = ["omp", "workqueue", "tbb"]

    NUMBA_ENABLED = True
except ImportError:
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]

        def decorator(func):
            return func

        return decorator

    prange = range


def backend() -> str:
    return "numba" if NUMBA_ENABLED else "numpy"
