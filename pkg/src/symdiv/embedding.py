"""Constant-distortion L1 embedding of symmetric diversities.

The uniform weighting of all ``ℓ``-element splits gives an L1-embeddable
symmetric diversity with profile ``phi(n, ℓ, ·)``.  A symmetric profile is
first replaced by its concave majorant, written in the truncation basis
``min(i, ·)``, and each truncation is then traded for the ``phi`` row whose
saturation level ``x(ℓ)`` sits within a factor 2 of ``i``.
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import config
from .diversity import (
    FiniteDiversity,
    SplitWeighting,
    split_values,
    symmetrize,
    skewness,
)
from .points import PointConfiguration, l1_values
from .profiles import SymmetricProfile, basis_coefficients, concave_majorant
from .subsets import popcounts

__all__ = [
    "binom",
    "phi",
    "phi_row",
    "x_of_ell",
    "capped_psi",
    "choose_ell",
    "EmbeddingReport",
    "SymmetricEmbedding",
    "InfiniteDistortion",
    "build_symmetric_embedding",
    "embed_diversity",
    "coordinates_from_weights",
    "distortion",
    "saturated_phi_ratio",
    "symmetric_mobius_weights",
]

_pascal = [[1]]


def binom(a, b):
    """Exact binomial with ``C(a, b) = 0`` outside ``0 <= b <= a``."""
    if a < 0 or b < 0 or b > a:
        return 0
    while len(_pascal) <= a:
        prev = _pascal[-1]
        _pascal.append([1] + [prev[j - 1] + prev[j] for j in range(1, len(prev))] + [1])
    return _pascal[a][b]


def _check_phi_args(n, ell):
    if n < 2 or not 1 <= ell <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= ell <= n-1, got n={n}, ell={ell}")


def _cut_count(n, ell, k):
    # number of ell-subsets that split a fixed (k+1)-set
    return binom(n, ell) - binom(n - k - 1, n - ell) - binom(n - k - 1, ell)


def phi(n, ell, k, exact=False):
    _check_phi_args(n, ell)
    if not 0 <= k <= n - 1:
        raise ValueError(f"k={k} out of range for n={n}")
    value = Fraction(_cut_count(n, ell, k), 2 * binom(n - 2, ell - 1))
    return value if exact else float(value)


def phi_row(n, ell, exact=False):
    return [phi(n, ell, k, exact=exact) for k in range(n)]


def x_of_ell(n, ell, exact=False):
    """Saturation level ``phi(n, ell, n-1) = n(n-1) / (2 ell (n-ell))``."""
    _check_phi_args(n, ell)
    value = Fraction(n * (n - 1), 2 * ell * (n - ell))
    return value if exact else float(value)


def capped_psi(x, k):
    if x <= 0 or k < 0:
        raise ValueError("capped_psi needs x > 0 and k >= 0")
    return min(x, k)


def choose_ell(n, i):
    """Split cardinality used to approximate ``min(i, ·)``.

    ``i = 1`` maps to ``n // 2``; otherwise the smallest ``ell`` with
    ``x(ell) <= i``, which also satisfies ``i <= 2 x(ell)``.
    """
    if n < 2 or not 1 <= i <= n - 1:
        raise ValueError(f"need n >= 2 and 1 <= i <= n-1, got n={n}, i={i}")
    half = n // 2
    if i == 1:
        return half
    for ell in range(1, half + 1):
        x = x_of_ell(n, ell, exact=True)
        if x <= i:
            assert i <= 2 * x, (n, i, ell)
            return ell
    raise AssertionError(f"no ell found for n={n}, i={i}")


class InfiniteDistortion(ValueError):
    """The embedded diversity vanishes on a set of size >= 2."""

    def __init__(self, subset):
        super().__init__(f"embedded value is 0 on subset mask {subset}")
        self.subset = subset


@dataclass
class EmbeddingReport:
    """Per-key original and embedded values with the distortion certificate.

    ``keys`` are subset bitmasks (``key_kind == "subset"``) or set sizes
    (``key_kind == "cardinality"``).  ``c1 = max δ/δ̂``, ``c2 = max δ̂/δ`` and
    ``distortion = c1 * c2``.
    """

    key_kind: str
    keys: np.ndarray
    original: np.ndarray
    embedded: np.ndarray
    ratio: np.ndarray
    c1: float
    c2: float
    distortion: float
    certified_bound: float | None = None
    ell_assignment: dict = field(default_factory=dict)
    lambdas: tuple = ()
    split_scale: dict = field(default_factory=dict)

    @property
    def certified(self):
        return self.certified_bound is None or self.distortion <= self.certified_bound + config.TOL


def _report(kind, keys, original, embedded, **extra):
    original = np.asarray(original, dtype=np.float64)
    embedded = np.asarray(embedded, dtype=np.float64)
    zero = np.flatnonzero(embedded <= 0)
    if zero.size:
        raise InfiniteDistortion(int(keys[zero[0]]))
    ratio = embedded / original
    if ratio.size:
        c1 = float(np.max(original / embedded))
        c2 = float(np.max(ratio))
    else:
        c1 = c2 = 1.0
    return EmbeddingReport(kind, np.asarray(keys), original, embedded, ratio, c1, c2, c1 * c2, **extra)


def _values_of(obj):
    if isinstance(obj, FiniteDiversity):
        return obj.n, obj.values
    if isinstance(obj, PointConfiguration):
        return obj.n, l1_values(obj)
    if isinstance(obj, SplitWeighting):
        return obj.n, split_values(obj)
    raise TypeError(f"cannot evaluate {type(obj).__name__} as a diversity")


def distortion(original, embedded):
    """Distortion of the identity map from ``original`` onto ``embedded``."""
    n, orig = _values_of(original)
    m, emb = _values_of(embedded)
    if n != m:
        raise ValueError(f"ground sets differ: {n} vs {m}")
    keys = np.flatnonzero(popcounts(n) >= 2)
    if np.any(orig[keys] <= 0):
        raise ValueError("original must be positive on sets of size >= 2")
    return _report("subset", keys, orig[keys], emb[keys])


@dataclass
class SymmetricEmbedding:
    weights: SplitWeighting | None
    report: EmbeddingReport
    majorant: tuple
    embedded_profile: tuple
    method: str = "construction"


def build_symmetric_embedding(profile, materialize=None, cap=config.EMBED_CAP,
                              exact_if_embeddable=False, tol=config.TOL):
    """Split weighting for a symmetric profile, certified to distortion <= 40.

    The report is computed per set size.  Splits are materialized (every
    ``ell``-subset listed) when ``materialize`` is true, which defaults to
    ``n <= cap``.  With ``exact_if_embeddable`` a profile whose
    per-cardinality Möbius weights are all non-negative is embedded exactly
    from those weights instead of through the majorant construction.
    """
    if not isinstance(profile, SymmetricProfile):
        profile = SymmetricProfile(profile)
    f = profile.f
    n = len(f)
    if n < 2:
        raise ValueError("embedding needs n >= 2")
    if materialize is None:
        materialize = n <= cap
    elif materialize and n > cap:
        raise ValueError(f"materializing splits for n={n} exceeds cap {cap}")
    g = concave_majorant(profile)
    lam = basis_coefficients(g)

    method = "construction"
    ell_of = {}
    per_split = {}
    if exact_if_embeddable:
        mob = symmetric_mobius_weights(f)
        scale = max((abs(v) for v in mob.values()), default=0)
        if all(v >= -tol * scale for v in mob.values()):
            kept = {ell: float(v) for ell, v in mob.items() if v > 0}
            rebuilt = [
                math.fsum(w * _cut_count(n, ell, k) for ell, w in kept.items()) for k in range(n)
            ]
            # non-negative weights alone do not certify a decomposition
            if all(abs(a - float(b)) <= tol * max(1.0, abs(float(b))) for a, b in zip(rebuilt, f)):
                method, per_split, embedded = "exact", kept, rebuilt
    if method == "construction":
        for i in lam.active():
            ell = choose_ell(n, i)
            ell_of[i] = ell
            per_split[ell] = per_split.get(ell, 0.0) + float(lam[i]) / (2 * binom(n - 2, ell - 1))
        rows = {ell: phi_row(n, ell) for ell in ell_of.values()}
        embedded = [
            math.fsum(float(lam[i]) * rows[ell_of[i]][k] for i in ell_of) for k in range(n)
        ]
    report = _report(
        "cardinality",
        np.arange(2, n + 1),
        [float(v) for v in f[1:]],
        embedded[1:],
        certified_bound=float(config.CERTIFIED_BOUND),
        ell_assignment=ell_of,
        lambdas=tuple(float(v) for v in lam.lam),
        split_scale=dict(sorted(per_split.items())),
    )

    weights = None
    if materialize:
        weights = _uniform_split_weights(n, report.split_scale)
    return SymmetricEmbedding(weights, report, tuple(float(v) for v in g), tuple(embedded), method)


def _uniform_split_weights(n, scale):
    full = (1 << n) - 1
    acc = {}
    for ell, w in scale.items():
        for combo in combinations(range(n), ell):
            mask = 0
            for i in combo:
                mask |= 1 << i
            key = full ^ mask if mask & 1 else mask
            acc[key] = acc.get(key, 0.0) + w
    return SplitWeighting(n, acc)


def embed_diversity(div):
    """Symmetrize ``div`` then embed the profile; the map is the identity on points.

    Returns ``(weights, report, gamma)`` where ``report`` measures ``div``
    against the split combination on every subset and certifies
    ``40 * gamma``.
    """
    gamma = skewness(div)
    built = build_symmetric_embedding(symmetrize(div), materialize=True)
    report = distortion(div, built.weights)
    report.certified_bound = config.CERTIFIED_BOUND * gamma
    report.ell_assignment = built.report.ell_assignment
    report.lambdas = built.report.lambdas
    report.split_scale = built.report.split_scale
    return built.weights, report, gamma


def coordinates_from_weights(w):
    """One coordinate per positive split: points on the stored side sit at ``w_B``."""
    active = [(b, wt) for b, wt in w.weights.items() if wt > 0]
    pts = np.zeros((w.n, len(active)))
    for col, (b, wt) in enumerate(active):
        for p in range(w.n):
            if b >> p & 1:
                pts[p, col] = wt
    return PointConfiguration(pts)


def saturated_phi_ratio(n):
    """Minimum of ``phi(n, ell, k) / min(x(ell), k)`` over ``ell <= n//2`` and ``k >= x(ell)``."""
    if n < 2:
        raise ValueError("need n >= 2")
    best = math.inf
    for ell in range(1, n // 2 + 1):
        total = binom(n, ell)
        x = x_of_ell(n, ell, exact=True)
        for k in range(math.ceil(x), n):
            # phi / x(ell) = cut_count / C(n, ell)
            ratio = _cut_count(n, ell, k) / total
            if ratio < best:
                best = ratio
    return best


def symmetric_mobius_weights(f):
    """Per-cardinality split weights ``w_ℓ`` of a symmetric profile, exactly.

    ``w_ℓ = 1/2 * sum_{k=ℓ}^{n} C(n-ℓ, k-ℓ) (-1)^(k+ℓ+1) f(k-1)``; the
    profile is L1-embeddable iff all are non-negative and they rebuild it.
    """
    vals = f.f if isinstance(f, SymmetricProfile) else f
    f = [Fraction(v) for v in vals]
    n = len(f)
    out = {}
    for ell in range(1, n):
        s = sum(binom(n - ell, k - ell) * (-1) ** (k + ell + 1) * f[k - 1] for k in range(ell, n + 1))
        out[ell] = s / 2
    return out
