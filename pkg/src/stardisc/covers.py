"""Delta-covers, bracketing covers and the dyadic chain decomposition.

The constructive covers are equidistant grids with ``M = ceil(s / delta)``
cells per axis.  For ``x <= z`` in the unit cube,
``vol(z) - vol(x) <= sum(z_i - x_i)``, so neighbouring grid corners are
within ``s / M <= delta`` in volume.  These grids are valid but much larger
than the optimal covers, whose size is only available as the numeric bound
in :func:`cover_cardinality_bound`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, List, NamedTuple, Optional, Set, Tuple

import numpy as np

from .core import BoxDifference, Point, PointSet, as_point, count_closed, count_in, default_budget
from .errors import CapacityError, InputError


class LogBound(NamedTuple):
    """A positive quantity as ``(natural log, value)``; value is ``inf`` on overflow."""

    log: float
    value: float


def _from_log(log_value: float) -> LogBound:
    try:
        value = math.exp(log_value)
    except OverflowError:
        value = math.inf
    return LogBound(log_value, value)


def _check_s_delta(s: int, delta: float):
    if int(s) != s or s < 1:
        raise InputError(f"dimension must be a positive integer, got {s!r}")
    if not 0.0 < delta <= 1.0:
        raise InputError(f"delta must lie in (0, 1], got {delta!r}")


def cover_cardinality_bound(s: int, delta: float) -> LogBound:
    """Upper bound ``(2e)^s (1/delta + 1)^s`` on the minimal delta-cover size."""
    _check_s_delta(s, delta)
    return _from_log(s * (math.log(2.0) + 1.0) + s * math.log1p(1.0 / delta))


def bracketing_cardinality_bound(s: int, delta: float) -> LogBound:
    """Upper bound ``2^(s-1) e^s (1/delta + 1)^s`` on the minimal bracketing-cover size."""
    _check_s_delta(s, delta)
    return _from_log((s - 1) * math.log(2.0) + s + s * math.log1p(1.0 / delta))


def class_cardinality_bound(s: int, k: int) -> LogBound:
    """Bound ``(2e)^s (2^(k+1) + 1)^s`` on the number of chain pieces at level k."""
    if int(s) != s or s < 1:
        raise InputError(f"dimension must be a positive integer, got {s!r}")
    if int(k) != k or k < 0:
        raise InputError(f"k must be a non-negative integer, got {k!r}")
    return _from_log(s * (math.log(2.0) + 1.0) + s * math.log(2.0 ** (k + 1) + 1.0))


def resolution(s: int, delta: float) -> int:
    """Cells per axis ``M = ceil(s / delta)`` of the equidistant construction."""
    _check_s_delta(s, delta)
    m = math.ceil(s / delta)
    while s / m > delta:
        m += 1
    return m


def grid_floor(c, m: int) -> np.ndarray:
    """Largest ``j / m <= c`` with ``0 <= j <= m``, elementwise."""
    c = np.asarray(c, dtype=float)
    j = np.clip(np.floor(c * m), 0, m)
    j = np.where((j < m) & ((j + 1) / m <= c), j + 1, j)
    j = np.where((j > 0) & (j / m > c), j - 1, j)
    return j / m


def grid_ceil(c, m: int) -> np.ndarray:
    """Smallest ``j / m >= c`` with ``0 <= j <= m``, elementwise."""
    c = np.asarray(c, dtype=float)
    j = np.clip(np.ceil(c * m), 0, m)
    j = np.where((j > 0) & ((j - 1) / m >= c), j - 1, j)
    j = np.where((j < m) & (j / m < c), j + 1, j)
    return j / m


def cell_index(c, m: int) -> np.ndarray:
    """Index of the cell containing ``c``: half-open cells, the last one closed."""
    c = np.asarray(c, dtype=float)
    j = np.clip(np.floor(c * m), 0, m - 1)
    j = np.where((j < m - 1) & ((j + 1) / m <= c), j + 1, j)
    j = np.where((j > 0) & (j / m > c), j - 1, j)
    return j.astype(np.int64)


def _product_grid(axis: np.ndarray, s: int) -> np.ndarray:
    mesh = np.meshgrid(*([axis] * s), indexing="ij")
    return np.stack([g.ravel() for g in mesh], axis=1)


def _check_budget(work: int, budget: Optional[int], what: str):
    budget = default_budget() if budget is None else budget
    if work > budget:
        raise CapacityError(f"{what} needs {work} steps (budget {budget})", work=work, budget=budget)


@dataclass(frozen=True)
class DeltaCover:
    """Equidistant delta-cover ``{(i_1/M, ..., i_s/M) : 1 <= i_j <= M}``."""

    delta: float
    dim: int
    resolution: int

    @property
    def axis(self) -> np.ndarray:
        return np.arange(1, self.resolution + 1) / self.resolution

    @property
    def members(self) -> np.ndarray:
        """All members as an ``(M^s, s)`` array in lexicographic order."""
        return _product_grid(self.axis, self.dim)

    def __len__(self):
        return self.resolution**self.dim

    def sandwich(self, y) -> Tuple[Point, Point]:
        """Members ``x <= y <= z`` of the cover (or zero coordinates) around ``y``."""
        y = as_point(y)
        arr = y.as_array()
        return (Point(tuple(grid_floor(arr, self.resolution))),
                Point(tuple(grid_ceil(arr, self.resolution))))


@dataclass(frozen=True)
class Bracket:
    lower: Point
    upper: Point

    def __post_init__(self):
        if not self.lower.leq(self.upper):
            raise InputError("bracket lower corner must be <= upper corner")

    @property
    def gap(self) -> float:
        return math.prod(self.upper.coords) - math.prod(self.lower.coords)

    def contains(self, y) -> bool:
        y = as_point(y)
        return self.lower.leq(y) and y.leq(self.upper)


@dataclass(frozen=True)
class BracketingCover:
    """The ``M^s`` cells of the equidistant grid, each as a (lower, upper) bracket."""

    delta: float
    dim: int
    resolution: int

    def __len__(self):
        return self.resolution**self.dim

    def corners(self) -> Tuple[np.ndarray, np.ndarray]:
        """Lower and upper corners of every cell, each of shape ``(M^s, s)``."""
        m = self.resolution
        lower = _product_grid(np.arange(m) / m, self.dim)
        upper = _product_grid(np.arange(1, m + 1) / m, self.dim)
        return lower, upper

    def __iter__(self) -> Iterator[Bracket]:
        lower, upper = self.corners()
        for lo, hi in zip(lower, upper):
            yield Bracket(Point(tuple(lo)), Point(tuple(hi)))

    @property
    def brackets(self) -> List[Bracket]:
        return list(self)

    def containing(self, y) -> Bracket:
        """The unique cell bracket holding ``y`` (ties go to the lower cell index)."""
        y = as_point(y)
        if y.dim != self.dim:
            raise InputError(f"dimension mismatch: {y.dim} != {self.dim}")
        m = self.resolution
        idx = cell_index(y.as_array(), m)
        return Bracket(Point(tuple(idx / m)), Point(tuple((idx + 1) / m)))


def equidistant_cover(s: int, delta: float, budget: Optional[int] = None) -> DeltaCover:
    m = resolution(s, delta)
    _check_budget(m**s, budget, f"a {delta}-cover in dimension {s}")
    return DeltaCover(delta=float(delta), dim=int(s), resolution=m)


def equidistant_bracketing_cover(s: int, delta: float, budget: Optional[int] = None) -> BracketingCover:
    m = resolution(s, delta)
    _check_budget(m**s, budget, f"a {delta}-bracketing cover in dimension {s}")
    return BracketingCover(delta=float(delta), dim=int(s), resolution=m)


def level_resolution(s: int, k: int) -> int:
    """Grid resolution of the level-k cover, i.e. the ``2^-k`` equidistant grid."""
    return resolution(s, 2.0**-k)


@dataclass(frozen=True)
class ChainDecomposition:
    """Chain ``p_0 = 0, p_1, ..., p_K, p_{K+1}`` approximating ``[0, x]``."""

    K: int
    x: Point
    chain: Tuple[Point, ...]

    def piece(self, k: int) -> BoxDifference:
        """The box difference between ``p_k`` and ``p_{k+1}``."""
        return BoxDifference(self.chain[k], self.chain[k + 1])

    def pieces(self) -> List[BoxDifference]:
        return [self.piece(k) for k in range(self.K + 1)]


def _chain_down(v: np.ndarray, w: np.ndarray, s: int, K: int) -> List[np.ndarray]:
    """Propagate level-K lower corners ``v`` (rows) down to level 1 by grid floors."""
    chain = [None] * (K + 2)
    chain[K + 1] = w
    chain[K] = v
    for k in range(K, 1, -1):
        chain[k - 1] = grid_floor(chain[k], level_resolution(s, k - 1))
    chain[0] = np.zeros_like(v)
    return chain


def _check_K(K: int):
    if int(K) != K or K < 1:
        raise InputError(f"K must be a positive integer, got {K!r}")


def build_chain(x, K: int, budget: Optional[int] = None) -> ChainDecomposition:
    _check_K(K)
    x = as_point(x)
    s = x.dim
    cover = equidistant_bracketing_cover(s, 2.0**-K, budget=budget)
    bracket = cover.containing(x)
    arrays = _chain_down(bracket.lower.as_array(), bracket.upper.as_array(), s, K)
    chain = tuple(Point(tuple(a)) for a in arrays)
    return ChainDecomposition(K=int(K), x=x, chain=chain)


class Sandwich(NamedTuple):
    lower: int
    mid: int
    upper: int


def sandwich_check(P: PointSet, x, K: int, budget: Optional[int] = None) -> Sandwich:
    """Counts ``sum_{k<K} |P in piece_k|``, ``|P in [0,x]|``, ``sum_{k<=K} |P in piece_k|``."""
    decomposition = build_chain(x, K, budget=budget)
    per_piece = [count_in(P, d) for d in decomposition.pieces()]
    result = Sandwich(sum(per_piece[:K]), count_closed(P, decomposition.x), sum(per_piece))
    if not result.lower <= result.mid <= result.upper:
        raise RuntimeError(f"indicator sandwich violated at x={decomposition.x.coords}: {result}")
    return result


def enumerate_chain_classes(s: int, K: int, budget: Optional[int] = None) -> List[Set[BoxDifference]]:
    """All distinct chain pieces at each level ``k = 0..K``, over every possible x.

    Every x falls in exactly one level-K cell, and the chain depends on x only
    through that cell, so iterating the cells enumerates every chain.
    """
    _check_K(K)
    cover = equidistant_bracketing_cover(s, 2.0**-K, budget=budget)
    _check_budget(len(cover) * (K + 2) * s, budget, "chain class enumeration")
    lower, upper = cover.corners()
    chain = _chain_down(lower, upper, s, K)
    classes = []
    for k in range(K + 1):
        pairs = np.unique(np.hstack([chain[k], chain[k + 1]]), axis=0)
        classes.append(
            {BoxDifference(Point(tuple(row[:s])), Point(tuple(row[s:]))) for row in pairs}
        )
    return classes
