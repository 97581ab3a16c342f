"""Point configurations and their ℓ1 (box) diversity."""
import math
from dataclasses import dataclass, field

import numpy as np

from .subsets import as_mask, from_mask

__all__ = ["PointConfiguration", "PointSet", "l1_ranges", "l1_values", "l1_value"]


@dataclass(frozen=True, eq=False)
class PointConfiguration:
    """``n`` points with ``m`` real coordinates each (``m`` may be 0)."""

    points: np.ndarray = field(repr=False)

    def __init__(self, points):
        arr = np.array(points, dtype=np.float64)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2:
            raise ValueError("points must form an (n, m) array")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]


PointSet = PointConfiguration


def l1_ranges(ps):
    """``(2**n, dim)`` array: the range of each coordinate over each subset."""
    pts = ps.points
    n, m = pts.shape
    size = 1 << n
    hi = np.full((size, m), -np.inf)
    lo = np.full((size, m), np.inf)
    for i in range(n):
        block = slice(1 << i, 1 << (i + 1))
        # masks in [2^i, 2^(i+1)) have top element i
        hi[block] = np.maximum(hi[: 1 << i], pts[i])
        lo[block] = np.minimum(lo[: 1 << i], pts[i])
    out = np.zeros((size, m))
    out[1:] = hi[1:] - lo[1:]
    return out


def l1_values(ps):
    """Sum over coordinates of the coordinate range, for every subset."""
    return l1_ranges(ps).sum(axis=1)


def l1_value(ps, subset):
    """Single-subset ℓ1 diversity, summed with ``math.fsum``."""
    members = from_mask(as_mask(subset, ps.n))
    if len(members) <= 1:
        return 0.0
    sub = ps.points[members]
    return math.fsum(sub.max(axis=0) - sub.min(axis=0))
