"""Star discrepancy: exact critical-grid enumeration and cover approximation.

Both methods evaluate, on a product grid ``G``,

    max over y in G of max(A(y)/N - vol(y), vol(y) - A°(y)/N)

where ``A`` counts points in the closed box ``[0, y]`` and ``A°`` counts
points in the open box ``[0, y)``.  On the critical grid (point coordinates
plus 1 on every axis) this is exactly D*_N; on a delta-cover grid it is a
lower bound within ``delta`` of D*_N.

Counts at all grid corners come from a cumulative histogram over grid-bin
indices, which uses the same exact order relations as ``count_closed`` and
``count_strict`` without a per-corner pass over the points.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Point, PointSet, as_point, count_closed, default_budget, volume, _check_dims
from .covers import equidistant_cover, resolution
from .errors import CapacityError, InputError


@dataclass(frozen=True)
class DiscrepancyResult:
    value: float
    method: str
    witness: Point
    delta: Optional[float] = None

    @property
    def upper(self) -> float:
        """Guaranteed upper bound on D*_N (equal to ``value`` for exact results)."""
        return self.value if self.delta is None else self.value + self.delta

    def to_dict(self) -> dict:
        out = {"value": self.value, "method": self.method, "witness": list(self.witness.coords)}
        if self.delta is not None:
            out["delta"] = self.delta
            out["upper"] = self.upper
        return out


def exact_work(n: int, s: int) -> int:
    return (n + 1) ** s * n * s


def cover_work(n: int, s: int, delta: float) -> int:
    return resolution(s, delta) ** s * n * s


def _corner_counts(points: np.ndarray, axes: Sequence[np.ndarray]):
    """Closed and strict counts at every corner of the product grid ``axes``."""
    shape = tuple(len(g) for g in axes)
    padded = tuple(m + 1 for m in shape)
    closed_idx = [np.searchsorted(g, points[:, j], side="left") for j, g in enumerate(axes)]
    strict_idx = [np.searchsorted(g, points[:, j], side="right") for j, g in enumerate(axes)]

    def cumulative(idx):
        flat = np.ravel_multi_index(idx, padded)
        hist = np.bincount(flat, minlength=int(np.prod(padded))).reshape(padded)
        for axis in range(hist.ndim):
            np.cumsum(hist, axis=axis, out=hist)
        return hist[tuple(slice(0, m) for m in shape)]

    return cumulative(closed_idx), cumulative(strict_idx)


def _corner_volumes(axes: Sequence[np.ndarray]) -> np.ndarray:
    vol = np.asarray(axes[0], dtype=float)
    for g in axes[1:]:
        vol = np.multiply.outer(vol, g)
    return vol


def grid_discrepancy(P: PointSet, axes: Sequence[np.ndarray]):
    """Maximum of the two-sided local discrepancy over a product grid.

    ``axes`` holds one ascending array of grid values per dimension.  Returns
    ``(value, witness)`` where the witness is the lexicographically smallest
    maximizing corner.
    """
    axes = [np.asarray(g, dtype=float) for g in axes]
    closed, strict = _corner_counts(P.points, axes)
    vol = _corner_volumes(axes)
    n = P.n
    local = np.maximum(closed / n - vol, vol - strict / n)
    flat = int(np.argmax(local))
    index = np.unravel_index(flat, local.shape)
    witness = Point(tuple(float(axes[j][i]) for j, i in enumerate(index)))
    value = float(local[index])
    return min(max(value, 0.0), 1.0), witness


def critical_grid(P: PointSet):
    """Per-axis sorted distinct coordinates of ``P`` together with 1."""
    return [np.unique(np.append(P.points[:, j], 1.0)) for j in range(P.dim)]


def star_discrepancy_exact(P: PointSet, budget: Optional[int] = None) -> DiscrepancyResult:
    """Exact D*_N by enumeration of the critical grid."""
    budget = default_budget() if budget is None else budget
    work = exact_work(P.n, P.dim)
    if work > budget:
        raise CapacityError(
            f"exact computation needs {work} steps (budget {budget}); use method=cover",
            work=work,
            budget=budget,
        )
    value, witness = grid_discrepancy(P, critical_grid(P))
    return DiscrepancyResult(value=value, method="exact", witness=witness)


def star_discrepancy_cover(
    P: PointSet, delta: float, budget: Optional[int] = None
) -> DiscrepancyResult:
    """Lower bound ``L`` on D*_N with ``L <= D*_N <= L + delta``."""
    if not 0.0 < delta <= 1.0:
        raise InputError(f"delta must lie in (0, 1], got {delta!r}")
    budget = default_budget() if budget is None else budget
    work = cover_work(P.n, P.dim, delta)
    if work > budget:
        raise CapacityError(
            f"cover evaluation needs {work} steps (budget {budget})", work=work, budget=budget
        )
    cover = equidistant_cover(P.dim, delta, budget=budget)
    value, witness = grid_discrepancy(P, [cover.axis] * P.dim)
    return DiscrepancyResult(value=value, method="cover", witness=witness, delta=float(delta))


def discrepancy_at(P: PointSet, y) -> float:
    """Local discrepancy ``|A(y)/N - vol(y)|`` of the closed box ``[0, y]``."""
    y = as_point(y)
    _check_dims(P.dim, y.dim)
    return abs(count_closed(P, y) / P.n - volume(y))


def star_discrepancy(P: PointSet, method: str = "exact", delta: Optional[float] = None,
                     budget: Optional[int] = None) -> DiscrepancyResult:
    if method == "exact":
        return star_discrepancy_exact(P, budget=budget)
    if method == "cover":
        if delta is None:
            raise InputError("method=cover requires delta")
        return star_discrepancy_cover(P, delta, budget=budget)
    raise InputError(f"unknown method {method!r}")
