"""Bitmask helpers for subsets of ``{0, ..., n-1}``."""
from functools import lru_cache
from itertools import combinations

import numpy as np

MAX_N = 63


def to_mask(items):
    mask = 0
    for i in items:
        if i < 0 or i >= MAX_N:
            raise IndexError(f"element {i} out of range")
        mask |= 1 << i
    return mask


def from_mask(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def as_mask(subset, n):
    """Accept a bitmask or an iterable of indices; check it lies in the ground set."""
    if isinstance(subset, (int, np.integer)):
        mask = int(subset)
        if mask < 0:
            raise IndexError("negative mask")
    else:
        mask = to_mask(subset)
    if mask >> n:
        raise IndexError(f"subset {from_mask(mask)} not contained in ground set of size {n}")
    return mask


def popcount(mask):
    return bin(mask).count("1")


@lru_cache(maxsize=None)
def popcounts(n):
    """Array of |S| indexed by every mask S over n elements (read-only)."""
    counts = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        counts[1 << i:1 << (i + 1)] = counts[:1 << i] + 1
    counts.setflags(write=False)
    return counts


def masks_of_size(n, k):
    return [to_mask(c) for c in combinations(range(n), k)]


def canonical_split(mask, n):
    """Representative of the split ``mask | complement``: the side without element 0."""
    full = (1 << n) - 1
    if mask == 0 or mask == full:
        raise ValueError("a split needs two non-empty sides")
    return full ^ mask if mask & 1 else mask
