"""Independent reference computations used only by the tests.

None of these share code paths with the package: counts come from direct
per-point comparisons, probabilities from exact binomial sums.
"""

import math

import numpy as np


def dense_grid_bracket(points, G):
    """Proven bracket ``[low, high]`` for D*_N of a point set with s <= 2.

    ``low`` is the largest closed-box local discrepancy on the grid
    ``{0, 1/G, ..., 1}^s``.  For any x in a grid cell ``[a, b]``,
    ``A(x)/N - vol(x) <= A(b)/N - vol(a)`` and
    ``vol(x) - A(x)/N <= vol(b) - A(a)/N``, so maximizing those over cells
    gives ``high``.  ``high - low <= s / G``.
    """
    points = np.asarray(points, dtype=float)
    n, s = points.shape
    g = np.arange(G + 1) / G
    if s == 1:
        A = (points[:, 0][:, None] <= g[None, :]).sum(axis=0).astype(float)
        vol = g.copy()
        low = np.max(np.abs(A / n - vol))
        high = max(np.max(A[1:] / n - vol[:-1]), np.max(vol[1:] - A[:-1] / n))
        return float(low), float(high)
    if s == 2:
        ge_x = (points[:, 0][:, None] <= g[None, :]).astype(float)
        ge_y = (points[:, 1][:, None] <= g[None, :]).astype(float)
        A = ge_x.T @ ge_y
        vol = np.outer(g, g)
        low = np.max(np.abs(A / n - vol))
        high = max(np.max(A[1:, 1:] / n - vol[:-1, :-1]), np.max(vol[1:, 1:] - A[:-1, :-1] / n))
        return float(low), float(high)
    raise ValueError("dense grid oracle supports s <= 2")


def star_discrepancy_1d(xs):
    """Classical closed form for s = 1: max_i max(i/N - x_(i), x_(i) - (i-1)/N)."""
    xs = sorted(float(x) for x in xs)
    n = len(xs)
    best = 0.0
    for i, x in enumerate(xs, 1):
        best = max(best, i / n - x, x - (i - 1) / n)
    return best


def brute_star_discrepancy(points):
    """D*_N by enumerating all coordinate combinations with explicit loops."""
    points = [tuple(map(float, p)) for p in points]
    n, s = len(points), len(points[0])
    axes = [sorted({p[j] for p in points} | {1.0}) for j in range(s)]
    best = 0.0

    def rec(j, corner):
        nonlocal best
        if j == s:
            vol = math.prod(corner)
            closed = sum(all(p[i] <= corner[i] for i in range(s)) for p in points)
            opened = sum(all(p[i] < corner[i] for i in range(s)) for p in points)
            best = max(best, closed / n - vol, vol - opened / n)
            return
        for v in axes[j]:
            rec(j + 1, corner + [v])

    rec(0, [])
    return best


def binom_cdf(k, n, p):
    return math.fsum(math.comb(n, i) * p**i * (1 - p) ** (n - i) for i in range(k + 1))


def clopper_pearson_search(k, n, level, tol=1e-12):
    """Clopper-Pearson limits by bisection on exact binomial tail sums."""
    alpha = 1 - level

    def bisect(f, lo, hi):
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if f(mid):
                hi = mid
            else:
                lo = mid
        return (lo + hi) / 2

    # low: P(X >= k | p) = alpha/2; tail is increasing in p
    low = 0.0 if k == 0 else bisect(lambda p: 1 - binom_cdf(k - 1, n, p) >= alpha / 2, 0.0, 1.0)
    # high: P(X <= k | p) = alpha/2; cdf is decreasing in p
    high = 1.0 if k == n else bisect(lambda p: binom_cdf(k, n, p) <= alpha / 2, 0.0, 1.0)
    return low, high
