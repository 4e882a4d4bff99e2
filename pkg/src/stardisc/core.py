"""Points, point sets, anchored boxes and the counting primitives.

Every comparison used for counting is an exact floating-point comparison.
Boxes are closed: ``[0, y] = {z : 0 <= z <= y}``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InputError

DEFAULT_BUDGET = 10**9
BUDGET_ENV = "STARDISC_BUDGET"


def default_budget() -> int:
    """Work budget in elementary steps; ``STARDISC_BUDGET`` overrides the default."""
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError as exc:
        raise InputError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError(f"{BUDGET_ENV} must be a positive integer, got {raw!r}")
    return value


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Point:
    """A point of the unit cube, stored as a tuple of floats."""

    coords: tuple

    def __post_init__(self):
        coords = tuple(float(c) for c in self.coords)
        if len(coords) == 0:
            raise InputError("a point needs at least one coordinate")
        for c in coords:
            if not 0.0 <= c <= 1.0:
                raise InputError(f"coordinate {c!r} outside [0, 1]")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, dim: int) -> "Point":
        return cls((0.0,) * dim)

    @classmethod
    def ones(cls, dim: int) -> "Point":
        return cls((1.0,) * dim)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def is_zero(self) -> bool:
        return all(c == 0.0 for c in self.coords)

    def as_array(self) -> np.ndarray:
        return np.array(self.coords, dtype=float)

    def leq(self, other: "Point") -> bool:
        """Componentwise order ``self <= other``."""
        _check_dims(self.dim, other.dim)
        return all(a <= b for a, b in zip(self.coords, other.coords))

    def __iter__(self):
        return iter(self.coords)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


PointLike = Union[Point, Sequence[float], np.ndarray]


def as_point(y: PointLike) -> Point:
    return y if isinstance(y, Point) else Point(tuple(np.asarray(y, dtype=float).ravel()))


class PointSet:
    """N points in ``[0, 1]^s`` held as a read-only ``(N, s)`` float array."""

    __slots__ = ("_points",)

    def __init__(self, points: Union[np.ndarray, Iterable[Sequence[float]]]):
        arr = np.array(points, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise InputError("points must form an (N, s) array")
        if arr.shape[0] < 1:
            raise InputError("a point set needs N >= 1 points")
        if arr.shape[1] < 1:
            raise InputError("points need dimension s >= 1")
        if np.isnan(arr).any() or (arr < 0.0).any() or (arr > 1.0).any():
            raise InputError("all coordinates must lie in [0, 1]")
        self._points = _readonly(arr)

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    @property
    def n(self) -> int:
        return self._points.shape[0]

    def __len__(self):
        return self.n

    def __iter__(self):
        return (Point(tuple(row)) for row in self._points)

    def __eq__(self, other):
        if not isinstance(other, PointSet):
            return NotImplemented
        return self._points.shape == other._points.shape and bool(
            np.array_equal(self._points, other._points)
        )

    def __repr__(self):
        return f"PointSet(n={self.n}, dim={self.dim})"


@dataclass(frozen=True)
class AnchoredBox:
    """The closed box ``[0, upper]``."""

    upper: Point

    @property
    def volume(self) -> float:
        return volume(self.upper)


@dataclass(frozen=True)
class BoxDifference:
    """``[0, upper] \\ [0, lower]``, or ``[0, upper]`` when lower is the zero vector."""

    lower: Point
    upper: Point

    def __post_init__(self):
        _check_dims(self.lower.dim, self.upper.dim)
        if not self.lower.leq(self.upper):
            raise InputError(f"lower {self.lower.coords} is not <= upper {self.upper.coords}")

    @property
    def measure(self) -> float:
        return box_difference_measure(self)

    def contains(self, z: np.ndarray) -> np.ndarray:
        """Membership mask for the rows of ``z`` (shape ``(m, s)``)."""
        z = np.atleast_2d(np.asarray(z, dtype=float))
        inside_upper = np.all(z <= self.upper.as_array(), axis=1)
        if self.lower.is_zero and self.upper.is_zero:
            return np.zeros(z.shape[0], dtype=bool)
        if self.lower.is_zero:
            return inside_upper
        inside_lower = np.all(z <= self.lower.as_array(), axis=1)
        return inside_upper & ~inside_lower


def _check_dims(a: int, b: int):
    if a != b:
        raise InputError(f"dimension mismatch: {a} != {b}")


def volume(y: PointLike) -> float:
    """Lebesgue measure of ``[0, y]``: the product of the coordinates."""
    return math.prod(as_point(y).coords)


def count_closed(P: PointSet, y: PointLike) -> int:
    """Number of points z with ``z_i <= y_i`` for every i."""
    y = as_point(y)
    _check_dims(P.dim, y.dim)
    return int(np.count_nonzero(np.all(P.points <= y.as_array(), axis=1)))


def count_strict(P: PointSet, y: PointLike) -> int:
    """Number of points z with ``z_i < y_i`` for every i."""
    y = as_point(y)
    _check_dims(P.dim, y.dim)
    return int(np.count_nonzero(np.all(P.points < y.as_array(), axis=1)))


def box_difference_measure(d: BoxDifference) -> float:
    if d.lower.is_zero:
        return 0.0 if d.upper.is_zero else volume(d.upper)
    return volume(d.upper) - volume(d.lower)


def count_in(P: PointSet, d: BoxDifference) -> int:
    """Number of points of ``P`` lying in the box difference ``d``."""
    _check_dims(P.dim, d.upper.dim)
    return int(np.count_nonzero(d.contains(P.points)))
