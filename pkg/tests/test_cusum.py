import numpy as np
import pytest

from jmbcp import _kernels, cusum_bootstrap_draws, cusum_sequence, run_cusum_test
from jmbcp.cusum import cusum_statistic
from jmbcp.errors import InvalidParameterError


def naive_cusum(X, s):
    n = X.shape[0]
    return np.sqrt(s * (n - s) / n) * (X[:s].mean(0) - X[s:].mean(0))


def naive_boot(X, e, s):
    n = X.shape[0]
    left = (e[:s, None] * (X[:s] - X[:s].mean(0))).sum(0)
    right = (e[s:, None] * (X[s:] - X[s:].mean(0))).sum(0)
    return np.sqrt((n - s) / (n * s)) * left - np.sqrt(s / (n * (n - s))) * right


class TestSequence:
    def test_constant(self):
        assert not cusum_sequence(np.full((10, 2), 3.0), 1).any()

    def test_two_points(self):
        Z = cusum_sequence([4.0, 1.5], 1)
        np.testing.assert_allclose(Z, [[np.sqrt(0.5) * 2.5]], rtol=1e-14)

    def test_matches_naive(self, rng):
        X = rng.standard_normal((20, 3))
        Z = cusum_sequence(X, 1)
        expected = np.array([naive_cusum(X, s) for s in range(1, 20)])
        np.testing.assert_allclose(Z, expected, atol=1e-10)
        np.testing.assert_allclose(cusum_sequence(X, 4), expected[3:16], atol=1e-10)

    @pytest.mark.parametrize("boundary", [0, 11, 1.5])
    def test_bad_boundary(self, boundary, rng):
        with pytest.raises(InvalidParameterError):
            cusum_sequence(rng.standard_normal((20, 2)), boundary)

    def test_invariances(self, rng):
        X = rng.standard_normal((30, 4))
        Z = cusum_sequence(X, 1)
        np.testing.assert_allclose(cusum_sequence(X + rng.standard_normal(4), 1), Z, atol=1e-10)
        # reversal maps Z(s) to -Z(n - s)
        np.testing.assert_allclose(cusum_sequence(X[::-1], 1), -Z[::-1], atol=1e-10)
        assert cusum_statistic(X[::-1], 5) == pytest.approx(cusum_statistic(X, 5))
        stats = [cusum_statistic(X, b) for b in range(1, 16)]
        assert all(a >= b for a, b in zip(stats, stats[1:]))


class TestBootstrap:
    def test_hand_example(self):
        X = np.array([[1.0], [3.0], [2.0], [6.0]])
        E = np.array([[1.0, -1.0, 0.5, 2.0]])
        # s=1: -4.5/sqrt(12); s=2: -1 - 1.5; s=3: -2/sqrt(12)
        assert _kernels.cusum_boot_max(X, E, 1, 3)[0] == pytest.approx(2.5, abs=1e-12)
        assert _kernels.cusum_boot_max(X, E, 1, 3)[0] == pytest.approx(
            max(abs(naive_boot(X, E[0], s)[0]) for s in (1, 2, 3)), abs=1e-12)

    def test_matches_naive(self, rng):
        X = rng.standard_normal((25, 3))
        E = rng.standard_normal((6, 25))
        got = _kernels.cusum_boot_max(X, E, 3, 22)
        expected = [max(np.abs(naive_boot(X, e, s)).max() for s in range(3, 23)) for e in E]
        np.testing.assert_allclose(got, expected, rtol=1e-10, atol=1e-12)

    def test_constant(self):
        assert not cusum_bootstrap_draws(np.ones((12, 2)), 2, 30, seed=1).values.any()

    def test_determinism(self, rng):
        X = rng.standard_normal((20, 3))
        a = cusum_bootstrap_draws(X, 3, 10, seed=5).values
        assert np.array_equal(a, cusum_bootstrap_draws(X, 3, 10, seed=5).values)


class TestRunCusum:
    def test_constant(self):
        res = run_cusum_test(np.zeros((100, 3)), boundary=40, B=50, seed=0)
        assert not res.reject and res.s_max_statistic == 0

    def test_strong_shift(self, rng):
        X = rng.standard_normal((100, 10))
        X[50:, 0] += 3.0
        res = run_cusum_test(X, boundary=40, B=200, seed=2)
        assert res.reject and res.p_value <= 1 / 201 + 1e-15

    def test_json(self, rng):
        d = run_cusum_test(rng.standard_normal((20, 2)), boundary=5, B=10, seed=1).to_dict()
        assert d["boundary"] == 5 and d["kernel"] == "cusum"
