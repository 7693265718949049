"""Hot loops, each with a numba version and a numpy fallback.

The public wrappers at the bottom pick one implementation at import time
according to :mod:`jmbcp._accel`. Both versions of every pair must agree to
the tolerances checked in ``tests/test_backends.py``.

Replicate-parallel loops write each replicate's result from a fixed,
sequential accumulation, so output does not depend on the thread count.
"""

import numpy as np

from ._accel import NUMBA_ENABLED, njit, prange


# ---------------------------------------------------------------------------
# half-jackknife rows
# ---------------------------------------------------------------------------

def _linear_suffix_np(X):
    n = X.shape[0]
    suffix = np.zeros_like(X)
    # suffix[i] = sum_{j > i} X[j]
    suffix[:-1] = np.cumsum(X[::-1], axis=0)[::-1][1:]
    counts = np.arange(n - 1, -1, -1, dtype=np.float64)
    return counts[:, None] * X - suffix


@njit(cache=True)
def _linear_suffix_nb(X):
    n, p = X.shape
    A = np.zeros((n, p))
    running = np.zeros(p)
    for i in range(n - 1, -1, -1):
        cnt = n - 1 - i
        for k in range(p):
            A[i, k] = cnt * X[i, k] - running[k]
            running[k] += X[i, k]
    return A


def _sign_pairwise_np(X):
    n, p = X.shape
    A = np.zeros((n, p))
    for i in range(n - 1):
        A[i] = np.sign(X[i] - X[i + 1:]).sum(axis=0)
    return A


@njit(cache=True, parallel=True)
def _sign_pairwise_nb(X):
    n, p = X.shape
    A = np.zeros((n, p))
    for i in prange(n - 1):
        for j in range(i + 1, n):
            for k in range(p):
                diff = X[i, k] - X[j, k]
                if diff > 0.0:
                    A[i, k] += 1.0
                elif diff < 0.0:
                    A[i, k] -= 1.0
    return A


@njit(cache=True, parallel=True)
def _sign_rank_nb(X):
    # per column: Fenwick tree over tie-aware ranks, scanning right to left
    n, p = X.shape
    A = np.zeros((n, p))
    for k in prange(p):
        col = X[:, k].copy()
        srt = np.sort(col)
        tree = np.zeros(n + 1, dtype=np.int64)
        inserted = 0
        for i in range(n - 1, -1, -1):
            r = np.searchsorted(srt, col[i])  # number of values strictly below
            less = 0
            pos = r
            while pos > 0:
                less += tree[pos]
                pos -= pos & (-pos)
            leq = 0
            pos = r + 1
            while pos > 0:
                leq += tree[pos]
                pos -= pos & (-pos)
            A[i, k] = less - (inserted - leq)
            pos = r + 1
            while pos <= n:
                tree[pos] += 1
                pos += pos & (-pos)
            inserted += 1
    return A


# ---------------------------------------------------------------------------
# multiplier bootstrap reductions
# ---------------------------------------------------------------------------

def _weighted_rows_np(E, A, scale):
    return scale * (E @ A)


_BLOCK = 8


@njit(cache=True, parallel=True)
def _weighted_rows_nb(E, A, scale):
    # blocks of replicates share each row load; within a replicate the sum
    # over i always runs in ascending order
    B, n = E.shape
    d = A.shape[1]
    out = np.zeros((B, d))
    for blk in prange((B + _BLOCK - 1) // _BLOCK):
        b0 = blk * _BLOCK
        b1 = min(B, b0 + _BLOCK)
        for i in range(n):
            a = A[i]
            for b in range(b0, b1):
                e = E[b, i]
                row = out[b]
                for k in range(d):
                    row[k] += e * a[k]
        for b in range(b0, b1):
            for k in range(d):
                out[b, k] *= scale
    return out


def _weighted_rows_max_np(E, A, scale):
    return np.abs(scale * (E @ A)).max(axis=1)


@njit(cache=True, parallel=True)
def _weighted_rows_max_nb(E, A, scale):
    B, n = E.shape
    d = A.shape[1]
    out = np.zeros(B)
    for blk in prange((B + _BLOCK - 1) // _BLOCK):
        b0 = blk * _BLOCK
        b1 = min(B, b0 + _BLOCK)
        acc = np.zeros((b1 - b0, d))
        for i in range(n):
            a = A[i]
            for r in range(b1 - b0):
                e = E[b0 + r, i]
                row = acc[r]
                for k in range(d):
                    row[k] += e * a[k]
        for r in range(b1 - b0):
            best = 0.0
            for k in range(d):
                v = abs(scale * acc[r, k])
                if v > best:
                    best = v
            out[b0 + r] = best
    return out


# ---------------------------------------------------------------------------
# CUSUM multiplier bootstrap
# ---------------------------------------------------------------------------

def _cusum_boot_max_np(X, E, lo, hi):
    n, p = X.shape
    B = E.shape[0]
    s = np.arange(lo, hi + 1, dtype=np.float64)
    P = np.cumsum(X, axis=0)
    total = P[-1]
    left_mean = P[lo - 1:hi] / s[:, None]
    right_mean = (total - P[lo - 1:hi]) / (n - s)[:, None]
    c_left = np.sqrt((n - s) / (n * s))[:, None]
    c_right = np.sqrt(s / (n * (n - s)))[:, None]
    out = np.empty(B)
    for b in range(B):
        e = E[b]
        Q = np.cumsum(e[:, None] * X, axis=0)
        e1 = np.cumsum(e)
        q_s = Q[lo - 1:hi]
        e_s = e1[lo - 1:hi, None]
        left = q_s - left_mean * e_s
        right = (Q[-1] - q_s) - right_mean * (e1[-1] - e_s)
        out[b] = np.abs(c_left * left - c_right * right).max()
    return out


@njit(cache=True, parallel=True)
def _cusum_boot_max_nb(X, E, lo, hi):
    n, p = X.shape
    B = E.shape[0]
    # left/right means and weights depend on s only; share across replicates
    LM = np.zeros((hi, p))
    RM = np.zeros((hi, p))
    cl = np.zeros(hi)
    cr = np.zeros(hi)
    total = np.zeros(p)
    for i in range(n):
        for k in range(p):
            total[k] += X[i, k]
    run = np.zeros(p)
    for i in range(hi):
        s = i + 1
        for k in range(p):
            run[k] += X[i, k]
            LM[i, k] = run[k] / s
            RM[i, k] = (total[k] - run[k]) / (n - s)
        cl[i] = np.sqrt((n - s) / (n * s))
        cr[i] = np.sqrt(s / (n * (n - s)))
    out = np.zeros(B)
    for b in prange(B):
        Q = np.zeros(p)
        Qn = np.zeros(p)
        en = 0.0
        for i in range(n):
            e = E[b, i]
            en += e
            for k in range(p):
                Qn[k] += e * X[i, k]
        e1 = 0.0
        best = 0.0
        for i in range(hi):
            e = E[b, i]
            e1 += e
            for k in range(p):
                Q[k] += e * X[i, k]
            if i + 1 < lo:
                continue
            a = cl[i]
            c = cr[i]
            for k in range(p):
                left = Q[k] - LM[i, k] * e1
                right = (Qn[k] - Q[k]) - RM[i, k] * (en - e1)
                v = abs(a * left - c * right)
                if v > best:
                    best = v
        out[b] = best
    return out


if NUMBA_ENABLED:
    linear_suffix_rows = _linear_suffix_nb
    sign_pairwise_rows = _sign_pairwise_nb
    sign_rank_rows = _sign_rank_nb
    weighted_rows = _weighted_rows_nb
    weighted_rows_max = _weighted_rows_max_nb
    cusum_boot_max = _cusum_boot_max_nb
else:
    linear_suffix_rows = _linear_suffix_np
    sign_pairwise_rows = _sign_pairwise_np
    # no vectorized rank path; the pairwise loop gives identical integers
    sign_rank_rows = _sign_pairwise_np
    weighted_rows = _weighted_rows_np
    weighted_rows_max = _weighted_rows_max_np
    cusum_boot_max = _cusum_boot_max_np
