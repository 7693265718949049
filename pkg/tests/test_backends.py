"""The numba kernels and their numpy fallbacks must agree."""

import os
import subprocess
import sys

import numpy as np
import pytest

from jmbcp import _kernels
from jmbcp._accel import NUMBA_ENABLED

needs_numba = pytest.mark.skipif(not NUMBA_ENABLED, reason="numba backend disabled")


@needs_numba
@pytest.mark.parametrize("seed", range(5))
def test_row_kernels(seed):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((int(rng.integers(2, 40)), int(rng.integers(1, 9))))
    np.testing.assert_allclose(_kernels._linear_suffix_nb(X), _kernels._linear_suffix_np(X), atol=1e-10)
    S = _kernels._sign_pairwise_np(X)
    assert np.array_equal(_kernels._sign_pairwise_nb(X), S)
    assert np.array_equal(_kernels._sign_rank_nb(X), S)
    Xi = np.round(X)
    assert np.array_equal(_kernels._sign_rank_nb(Xi), _kernels._sign_pairwise_np(Xi))


@needs_numba
def test_bootstrap_kernels(rng):
    A = rng.standard_normal((30, 7))
    E = rng.standard_normal((50, 30))
    np.testing.assert_allclose(_kernels._weighted_rows_nb(E, A, 0.3), _kernels._weighted_rows_np(E, A, 0.3),
                               rtol=1e-12, atol=1e-12)
    np.testing.assert_allclose(_kernels._weighted_rows_max_nb(E, A, 0.3),
                               _kernels._weighted_rows_max_np(E, A, 0.3), rtol=1e-12)
    X = rng.standard_normal((30, 4))
    np.testing.assert_allclose(_kernels._cusum_boot_max_nb(X, E, 4, 26), _kernels._cusum_boot_max_np(X, E, 4, 26),
                               rtol=1e-10)


def test_numpy_backend_by_env(tmp_path):
    code = (
        "import numpy as np, jmbcp, json;"
        "X = np.random.default_rng(0).standard_normal((25, 3));"
        "r = jmbcp.run_test(X, 'sign', B=50, seed=3);"
        "print(json.dumps([jmbcp.backend(), r.statistic.t_max, r.quantile]))"
    )
    outs = {}
    for name in ("numpy", "numba"):
        env = dict(os.environ, JMBCP_BACKEND=name)
        proc = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
        assert proc.returncode == 0, proc.stderr
        outs[name] = eval(proc.stdout)
    assert outs["numpy"][0] == "numpy"
    assert outs["numpy"][1] == outs["numba"][1]
    assert outs["numpy"][2] == pytest.approx(outs["numba"][2], rel=1e-12)
