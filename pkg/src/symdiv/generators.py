"""Diversity gallery (diameter, ℓ1, TSP, Steiner) and random test families."""
import numpy as np

from . import _kernels, config
from .diversity import CapExceeded, FiniteDiversity, Metric
from .embedding import phi_row
from .points import PointConfiguration, l1_values
from .profiles import SymmetricProfile, validate_profile

__all__ = [
    "STEP_PROFILE",
    "step_profile",
    "diameter_diversity",
    "l1_box_diversity",
    "tsp_diversity",
    "steiner_diversity",
    "truncation_diversity",
    "phi_profile",
    "random_subadditive_profile",
    "random_points",
]

# f(0)=0, f(1)=f(2)=1, f(k)=2 beyond: subadditive but not concave
STEP_PROFILE = (0, 1, 1, 2, 2)


def step_profile(n=5):
    if n < 4:
        raise ValueError("the fixture needs n >= 4")
    return SymmetricProfile([0, 1, 1] + [2] * (n - 3))


def _as_metric(m):
    if isinstance(m, Metric):
        return m
    if isinstance(m, PointConfiguration):
        return Metric.from_points(m)
    return Metric(m)


def diameter_diversity(source):
    """Largest pairwise distance inside each subset (Euclidean for point sets)."""
    d = _as_metric(source).d
    n = d.shape[0]
    vals = np.zeros(1 << n)
    for top in range(1, n):
        lo = 1 << top
        # masks [lo, 2 lo) have top element `top`; extend the value of mask - lo
        below = np.arange(lo)
        reach = np.zeros(lo)
        for j in range(top):
            reach = np.where(below >> j & 1, np.maximum(reach, d[top, j]), reach)
        vals[lo:2 * lo] = np.maximum(vals[:lo], reach)
    return FiniteDiversity(n, vals)


def l1_box_diversity(ps):
    if not isinstance(ps, PointConfiguration):
        ps = PointConfiguration(ps)
    return FiniteDiversity(ps.n, l1_values(ps))


def _shortest_paths(d):
    d = np.array(d, dtype=np.float64)
    for k in range(d.shape[0]):
        d = np.minimum(d, d[:, k, None] + d[None, k, :])
    return d


def tsp_diversity(m, cap=config.TSP_CAP):
    """Half the shortest closed tour through each subset (Held–Karp over all subsets)."""
    d = _as_metric(m).d
    n = d.shape[0]
    if n > cap:
        raise CapExceeded(f"TSP diversity: n={n} exceeds cap {cap}")
    return FiniteDiversity(n, _kernels.tsp_half_tours(d, n))


def steiner_diversity(m, cap=config.STEINER_CAP):
    """Minimum Steiner tree of each subset with Steiner points drawn from the ground set."""
    d = _as_metric(m).d
    n = d.shape[0]
    if n > cap:
        raise CapExceeded(f"Steiner diversity: n={n} exceeds cap {cap}")
    return FiniteDiversity(n, _kernels.steiner_values(_shortest_paths(d), n))


def truncation_diversity(n, i):
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"need 1 <= i <= n-1, got n={n}, i={i}")
    return SymmetricProfile([min(i, k) for k in range(n)])


def phi_profile(n, ell):
    return SymmetricProfile(phi_row(n, ell))


def _s3_ok_at(f, k, slack):
    # constraints touching index k after lowering f[k]
    if f[k] < f[k - 1] - slack:
        return False
    m = len(f)
    return all(f[k + j] <= f[k] + f[j] + slack for j in range(1, m - k))


def random_subadditive_profile(n, seed, drop=0.5, slack=config.D2_SLACK):
    """Seeded profile satisfying S1–S3, often not concave.

    A random concave non-decreasing profile is drawn (sorted random
    increments, some of them zero), then each value from left to right is
    pushed down by up to ``drop`` of itself; a push that breaks S1–S3 is
    rejected and the previous value kept.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    rng = np.random.default_rng(seed)
    inc = rng.exponential(1.0, n - 1)
    inc[rng.random(n - 1) < 0.3] = 0.0
    inc[0] = max(inc[0], 0.1)
    inc = np.sort(inc)[::-1]
    f = [0.0] + [float(v) for v in np.cumsum(inc)]
    for k in range(1, n):
        old = f[k]
        f[k] = old * (1.0 - drop * float(rng.random()))
        if not _s3_ok_at(f, k, slack):
            f[k] = old
    verdict = validate_profile(f)
    assert verdict, verdict
    return SymmetricProfile(f)


def random_points(n, dim, seed):
    """``n`` points uniform in the unit cube of dimension ``dim``."""
    rng = np.random.default_rng(seed)
    return PointConfiguration(rng.random((n, dim)))
