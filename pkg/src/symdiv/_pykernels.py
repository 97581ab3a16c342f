"""Pure Python/numpy versions of the subset-lattice kernels.

Signatures and results match ``_ckernels`` exactly, including which
violation is reported first (lexicographic in the bitmask triple).
"""
import numpy as np


def _threshold(rhs, slack):
    return rhs - slack * np.maximum(1.0, np.abs(rhs))


def d2_first_violation(values, n, slack):
    size = 1 << n
    masks = np.arange(size)
    union = values[masks[:, None] | masks[None, :]]  # union[b, c] = values[b | c]
    for a in range(size):
        left = values[a | masks[1:]]
        rhs = _threshold(values[a | masks], slack)
        bad = (left[:, None] + union[1:, :]) < rhs[None, :]
        if bad.any():
            b, c = np.unravel_index(np.argmax(bad), bad.shape)
            return (a, int(b) + 1, int(c))
    return None


def monotone_first_violation(values, n, slack):
    size = 1 << n
    masks = np.arange(size)
    bits = 1 << np.arange(n)
    grown = values[masks[:, None] | bits[None, :]]
    bad = (grown < _threshold(values, slack)[:, None]) & ((masks[:, None] & bits[None, :]) == 0)
    if bad.any():
        a, i = np.unravel_index(np.argmax(bad), bad.shape)
        return (int(a), int(bits[i]), 0)
    return None


def singleton_d2_first_violation(values, n, slack):
    size = 1 << n
    masks = np.arange(size)
    bits = 1 << np.arange(n)
    with_bit = values[masks[:, None] | bits[None, :]]  # with_bit[x, i] = values[x | {i}]
    for a in range(size):
        rhs = _threshold(values[a | masks], slack)
        bad = (with_bit[a][:, None] + with_bit.T) < rhs[None, :]
        if bad.any():
            i, c = np.unravel_index(np.argmax(bad), bad.shape)
            return (a, int(bits[i]), int(c))
    return None


def superset_sum(arr, n):
    """In-place zeta transform: arr[S] <- sum of arr[T] over T containing S."""
    for i in range(n):
        view = arr.reshape(-1, 2, 1 << i)
        view[:, 0, :] += view[:, 1, :]


def tsp_half_tours(dist, n):
    size = 1 << n
    dp = np.full((size, n), np.inf)
    out = np.zeros(size)
    for s in range(n):
        dp[1 << s, s] = 0.0
    for mask in range(1, size):
        low = mask & -mask
        if mask == low:
            continue
        s = low.bit_length() - 1
        members = [j for j in range(s + 1, n) if mask >> j & 1]
        for j in members:
            prev = mask ^ (1 << j)
            dp[mask, j] = np.min(dp[prev] + dist[:, j])
        out[mask] = 0.5 * min(dp[mask, j] + dist[j, s] for j in members)
    return out


def steiner_values(dist, n):
    size = 1 << n
    st = np.full((size, n), np.inf)
    out = np.zeros(size)
    for t in range(n):
        st[1 << t] = dist[t]
    for d in range(1, size):
        low = d & -d
        if d == low:
            continue
        rest = d ^ low
        subs = []
        e = rest
        while True:
            e = (e - 1) & rest
            subs.append(e | low)
            if e == 0:
                break
        subs = np.array(subs)
        merge = np.min(st[subs] + st[d ^ subs], axis=0)
        st[d] = np.min(dist + merge[None, :], axis=1)
        out[d] = st[d, low.bit_length() - 1]
    return out
