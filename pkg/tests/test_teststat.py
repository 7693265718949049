import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jmbcp import (
    LINEAR,
    SIGN,
    Kernel,
    cross_weight_identity_check,
    half_rows,
    half_rows_linear_fast,
    half_rows_sign_fast,
    statistic_from_rows,
)
from jmbcp.errors import InputShapeError, InsufficientDataError
from jmbcp.teststat import as_data_matrix, statistic

from conftest import brute_pair_sum_rows, linear, sign

X123 = np.array([1.0, 2.0, 3.0])


class TestHalfRows:
    def test_linear_scalar_example(self):
        np.testing.assert_array_equal(half_rows(LINEAR, X123).rows.ravel(), [-3, -1, 0])
        np.testing.assert_array_equal(brute_pair_sum_rows(linear, X123).ravel(), [-3, -1, 0])

    def test_sign_scalar_example(self):
        np.testing.assert_array_equal(half_rows(SIGN, X123).rows.ravel(), [-2, -1, 0])
        np.testing.assert_array_equal(half_rows_sign_fast(X123).rows.ravel(), [-2, -1, 0])

    @pytest.mark.parametrize("kernel", [LINEAR, SIGN])
    def test_two_observations(self, kernel, rng):
        X = rng.standard_normal((2, 4))
        A = half_rows(kernel, X).rows
        np.testing.assert_array_equal(A[0], kernel(X[0], X[1]))
        np.testing.assert_array_equal(A[1], 0)

    def test_too_few_rows(self):
        with pytest.raises(InsufficientDataError):
            half_rows(LINEAR, [[1.0, 2.0]])
        with pytest.raises(InsufficientDataError):
            half_rows_linear_fast([[1.0, 2.0]])

    def test_rejects_nonfinite(self):
        with pytest.raises(InputShapeError):
            as_data_matrix([[1.0, np.nan], [0.0, 1.0]])

    @pytest.mark.parametrize("kernel,h", [(LINEAR, linear), (SIGN, sign)])
    def test_matches_brute_force(self, kernel, h, rng):
        X = rng.standard_normal((12, 3))
        A = half_rows(kernel, X).rows
        np.testing.assert_allclose(A, brute_pair_sum_rows(h, X), atol=1e-12)
        assert np.array_equal(A[-1], np.zeros(3))
        # defining identity: sum of rows = sum over all pairs
        np.testing.assert_allclose(A.sum(0), brute_pair_sum_rows(h, X).sum(0), atol=1e-12)

    def test_custom_kernel_generic_path(self, rng):
        k = Kernel("tanh", lambda x, y: np.tanh(x - y))
        X = rng.standard_normal((9, 2))
        np.testing.assert_allclose(half_rows(k, X).rows, brute_pair_sum_rows(lambda a, b: np.tanh(a - b), X),
                                   atol=1e-12)


class TestFastPaths:
    def test_linear_fast_scalar(self):
        np.testing.assert_array_equal(half_rows_linear_fast(X123).rows.ravel(), [-3, -1, 0])

    def test_constant_data(self):
        X = np.full((15, 4), 2.5)
        assert not half_rows_linear_fast(X).rows.any()
        assert not half_rows_sign_fast(X).rows.any()

    def test_linear_fast_random(self, rng):
        X = rng.standard_normal((20, 5))
        np.testing.assert_allclose(half_rows_linear_fast(X).rows, brute_pair_sum_rows(linear, X), atol=1e-10, rtol=0)

    def test_sign_fast_with_ties(self, rng):
        X = rng.integers(-2, 3, size=(40, 6)).astype(float)
        np.testing.assert_array_equal(half_rows_sign_fast(X).rows, brute_pair_sum_rows(sign, X))
        np.testing.assert_array_equal(half_rows(SIGN, X).rows, half_rows_sign_fast(X).rows)

    def test_sign_rank_route_large_n(self, rng):
        from jmbcp.teststat import SIGN_RANK_MIN_ROWS

        X = np.round(rng.standard_normal((SIGN_RANK_MIN_ROWS + 10, 3)), 1)
        np.testing.assert_array_equal(half_rows_sign_fast(X).rows, half_rows(SIGN, X).rows)

    @settings(max_examples=100, deadline=None)
    @given(n=st.integers(2, 30), p=st.integers(1, 8), seed=st.integers(0, 2**32 - 1))
    def test_linear_fast_equals_generic(self, n, p, seed):
        X = np.random.default_rng(seed).standard_normal((n, p))
        np.testing.assert_allclose(half_rows_linear_fast(X).rows, half_rows(LINEAR, X).rows, atol=1e-10, rtol=0)


class TestStatistic:
    def test_scalar_example(self):
        s = statistic_from_rows(half_rows(LINEAR, X123))
        np.testing.assert_allclose(s.t_vector, [-4 / np.sqrt(3)], rtol=1e-14)
        assert s.t_max == pytest.approx(2.309401, abs=1e-6)

    def test_two_observations(self, rng):
        X = rng.standard_normal((2, 3))
        s = statistic_from_rows(half_rows(LINEAR, X))
        np.testing.assert_allclose(s.t_vector, np.sqrt(2) * (X[0] - X[1]), rtol=1e-14)

    def test_constant(self):
        assert statistic(SIGN, np.ones((10, 3))).t_max == 0.0

    @pytest.mark.parametrize("kernel", [LINEAR, SIGN])
    def test_symmetries(self, kernel, rng):
        X = rng.standard_normal((25, 6))
        base = statistic(kernel, X)
        assert base.t_max >= 0
        assert base.t_max == np.abs(base.t_vector).max()

        perm = rng.permutation(6)
        permuted = statistic(kernel, X[:, perm])
        np.testing.assert_allclose(permuted.t_vector, base.t_vector[perm], atol=1e-12)
        assert permuted.t_max == pytest.approx(base.t_max, abs=1e-12)

        shifted = statistic(kernel, X + rng.standard_normal(6))
        np.testing.assert_allclose(shifted.t_vector, base.t_vector, atol=1e-10)

        reversed_ = statistic(kernel, X[::-1])
        np.testing.assert_allclose(reversed_.t_vector, -base.t_vector, atol=1e-10)
        assert reversed_.t_max == pytest.approx(base.t_max, abs=1e-10)


class TestCrossWeight:
    def test_scalar_example(self):
        assert cross_weight_identity_check(X123) == 0.0

    def test_constant(self):
        assert cross_weight_identity_check(np.full((7, 2), -3.0)) == 0.0

    def test_random(self, rng):
        assert cross_weight_identity_check(rng.standard_normal((50, 3))) < 1e-10
