"""JIT-compiled banded dynamic programs.

Each DP row keeps only the cells of its band window, so a pair costs O(r*n) time and
O(r) memory. Rows are 1-based as in the recurrences; column ``j`` of row ``i`` lives at
buffer offset ``j - lo(i)``.
"""

import numpy as np
from numba import njit

COST_SQUARED = 0
COST_ABSOLUTE = 1

MATCH_ABSOLUTE = 0
MATCH_RELATIVE = 1


@njit(nogil=True)
def window_bounds(i, n, m, radius):  # type: ignore[no-untyped-def]
    lo = -((radius * n - i * m) // n)
    hi = (i * m + radius * n) // n
    if lo < 1:
        lo = 1
    if hi > m:
        hi = m
    return lo, hi


@njit(nogil=True)
def points_match(a, b, epsilon, mode):  # type: ignore[no-untyped-def]
    if mode == MATCH_ABSOLUTE:
        return abs(a - b) <= epsilon
    lower = a * (1.0 - epsilon)
    upper = a * (1.0 + epsilon)
    if lower > upper:
        lower, upper = upper, lower
    return lower < b and b < upper


@njit(nogil=True)
def banded_dtw(q, c, radius, cost_kind):  # type: ignore[no-untyped-def]
    """Accumulated DTW cost D(n, m); cells outside the band are +inf."""
    n = q.shape[0]
    m = c.shape[0]
    width = min(m, 2 * radius + 2)
    prev = np.empty(width, dtype=np.float64)
    cur = np.empty(width, dtype=np.float64)
    prev_lo = 1
    prev_hi = 0

    for i in range(1, n + 1):
        lo, hi = window_bounds(i, n, m, radius)
        qi = q[i - 1]
        for j in range(lo, hi + 1):
            diff = qi - c[j - 1]
            if cost_kind == COST_SQUARED:
                d = diff * diff
            else:
                d = abs(diff)

            if i == 1:
                # D(0, 0) = 0, D(0, j) = inf
                diag = 0.0 if j == 1 else np.inf
                up = np.inf
            else:
                diag = np.inf
                if prev_lo <= j - 1 and j - 1 <= prev_hi:
                    diag = prev[j - 1 - prev_lo]
                up = np.inf
                if prev_lo <= j and j <= prev_hi:
                    up = prev[j - prev_lo]
            left = cur[j - 1 - lo] if j > lo else np.inf

            best = diag
            if up < best:
                best = up
            if left < best:
                best = left
            cur[j - lo] = d + best

        prev, cur = cur, prev
        prev_lo = lo
        prev_hi = hi

    return prev[m - prev_lo]


@njit(nogil=True)
def banded_lcs(q, c, radius, epsilon, mode):  # type: ignore[no-untyped-def]
    """LCS length L(n, m) under ``points_match``; cells outside the band read as 0."""
    n = q.shape[0]
    m = c.shape[0]
    width = min(m, 2 * radius + 2)
    prev = np.zeros(width, dtype=np.int64)
    cur = np.zeros(width, dtype=np.int64)
    prev_lo = 1
    prev_hi = 0

    for i in range(1, n + 1):
        lo, hi = window_bounds(i, n, m, radius)
        qi = q[i - 1]
        for j in range(lo, hi + 1):
            diag = 0
            up = 0
            if i > 1:
                if prev_lo <= j - 1 and j - 1 <= prev_hi:
                    diag = prev[j - 1 - prev_lo]
                if prev_lo <= j and j <= prev_hi:
                    up = prev[j - prev_lo]
            left = cur[j - 1 - lo] if j > lo else 0

            if points_match(qi, c[j - 1], epsilon, mode):
                cur[j - lo] = diag + 1
            elif up >= left:
                cur[j - lo] = up
            else:
                cur[j - lo] = left

        prev, cur = cur, prev
        prev_lo = lo
        prev_hi = hi

    return prev[m - prev_lo]
