"""Finite diversities on bitmask-indexed subsets and the split-diversity calculus."""
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _kernels, config
from .points import PointConfiguration
from .profiles import SymmetricProfile
from .subsets import as_mask, canonical_split, from_mask, popcounts

__all__ = [
    "DiversityError",
    "CapExceeded",
    "Verdict",
    "FiniteDiversity",
    "Metric",
    "SplitWeighting",
    "MobiusResult",
    "evaluate",
    "check_axioms_exhaustive",
    "check_axioms_reduced",
    "induced_metric",
    "skewness",
    "symmetrize",
    "split_diversity_eval",
    "eval_split_combination",
    "split_values",
    "split_weights_from_diversity",
    "symmetric_diversity",
]


class DiversityError(ValueError):
    pass


class CapExceeded(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    """Outcome of an axiom check; ``witness`` is a violating ``(A, B, C)`` of bitmasks."""

    ok: bool
    witness: tuple | None = None

    def __bool__(self):
        return self.ok

    def describe(self):
        if self.ok:
            return "pass"
        a, b, c = (from_mask(m) for m in self.witness)
        return f"D2 violated: A={a} B={b} C={c}"


@dataclass(frozen=True, eq=False)
class FiniteDiversity:
    """Total assignment of values to the ``2**n`` subsets of ``{0..n-1}``.

    ``values[mask]`` is the value of the subset encoded by ``mask``.  D1 is
    checked at construction unless ``validate=False`` (used for
    pseudo-diversities such as split combinations, which may vanish on
    larger sets).
    """

    n: int
    values: np.ndarray = field(repr=False)

    def __init__(self, n, values, validate=True):
        if n < 1:
            raise DiversityError("ground set must be non-empty")
        if n > config.DENSE_CAP:
            raise CapExceeded(f"n={n} exceeds dense storage cap {config.DENSE_CAP}")
        arr = np.array(values, dtype=np.float64)
        if arr.shape != (1 << n,):
            raise DiversityError(f"expected {1 << n} values, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise DiversityError("values must be finite")
        small = popcounts(n) <= 1
        if validate:
            if np.any(arr < 0):
                raise DiversityError("values must be non-negative")
            if np.any(arr[small] != 0):
                raise DiversityError("sets of size <= 1 must have value 0")
            if np.any(arr[~small] <= 0):
                bad = int(np.flatnonzero((arr <= 0) & ~small)[0])
                raise DiversityError(f"set {from_mask(bad)} of size >= 2 has value 0")
        else:
            arr[small] = 0.0
        arr.setflags(write=False)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "values", arr)

    @classmethod
    def from_function(cls, n, fn, validate=True):
        """Build from ``fn(list_of_indices) -> value`` evaluated on every subset."""
        vals = np.zeros(1 << n)
        for mask in range(1 << n):
            if mask & (mask - 1):
                vals[mask] = fn(from_mask(mask))
        return cls(n, vals, validate=validate)

    @classmethod
    def from_mapping(cls, n, mapping, validate=True):
        """Build from ``{subset: value}``; every subset of size >= 2 must appear."""
        vals = np.full(1 << n, np.nan)
        small = popcounts(n) <= 1
        vals[small] = 0.0
        for key, value in mapping.items():
            mask = as_mask(key, n)
            if small[mask]:
                if value != 0:
                    raise DiversityError(f"set {from_mask(mask)} of size <= 1 must be 0")
                continue
            vals[mask] = value
        missing = np.flatnonzero(np.isnan(vals))
        if missing.size:
            raise DiversityError(f"no value for subset {from_mask(int(missing[0]))}")
        return cls(n, vals, validate=validate)

    def __call__(self, subset):
        return evaluate(self, subset)

    def items(self, min_size=2):
        sizes = popcounts(self.n)
        for mask in range(1 << self.n):
            if sizes[mask] >= min_size:
                yield mask, float(self.values[mask])

    def __eq__(self, other):
        return (
            isinstance(other, FiniteDiversity)
            and self.n == other.n
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None


def evaluate(div, subset):
    mask = as_mask(subset, div.n)
    return float(div.values[mask])


def symmetric_diversity(profile):
    """The diversity ``A -> f[|A|-1]`` as an explicit table."""
    f = profile.f if isinstance(profile, SymmetricProfile) else tuple(profile)
    n = len(f)
    table = np.array([0.0] + [float(v) for v in f])
    return FiniteDiversity(n, table[popcounts(n)], validate=n > 1)


def _check_cap(n, cap, what):
    if n > cap:
        raise CapExceeded(f"{what}: n={n} exceeds cap {cap}")


def check_axioms_exhaustive(div, cap=config.EXHAUSTIVE_CAP, slack=config.D2_SLACK):
    """Test D2 on every triple ``(A, B, C)`` with ``B`` non-empty (``8**n`` work)."""
    _check_cap(div.n, cap, "exhaustive D2 check")
    hit = _kernels.d2_first_violation(div.values, div.n, slack)
    return Verdict(hit is None, hit)


def check_axioms_reduced(div, slack=config.D2_SLACK):
    """Monotonicity plus D2 restricted to singleton ``B``.

    A monotonicity failure ``A ⊂ A+b`` is itself the D2 violation
    ``(A, {b}, ∅)``, so both parts report triples.
    """
    hit = _kernels.monotone_first_violation(div.values, div.n, slack)
    if hit is None:
        hit = _kernels.singleton_d2_first_violation(div.values, div.n, slack)
    return Verdict(hit is None, hit)


@dataclass(frozen=True, eq=False)
class Metric:
    """Symmetric distance matrix with zero diagonal."""

    d: np.ndarray = field(repr=False)

    def __init__(self, d, validate=True, tol=config.TOL):
        arr = np.array(d, dtype=np.float64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DiversityError("distance matrix must be square")
        if validate:
            n = arr.shape[0]
            if not np.all(np.isfinite(arr)) or np.any(arr < 0):
                raise DiversityError("distances must be finite and non-negative")
            if np.any(np.diag(arr) != 0) or not np.allclose(arr, arr.T, rtol=0, atol=tol):
                raise DiversityError("distance matrix must be symmetric with zero diagonal")
            if n > 1 and np.any(arr[~np.eye(n, dtype=bool)] <= 0):
                raise DiversityError("distinct points must have positive distance")
            # d[a, c] <= d[a, b] + d[b, c]
            if np.any(arr[:, None, :] > arr[:, :, None] + arr[None, :, :] + tol):
                raise DiversityError("triangle inequality violated")
        arr.setflags(write=False)
        object.__setattr__(self, "d", arr)

    @property
    def n(self):
        return self.d.shape[0]

    @classmethod
    def from_points(cls, points, p=2):
        if not isinstance(points, PointConfiguration):
            points = PointConfiguration(points)
        pts = points.points
        diff = pts[:, None, :] - pts[None, :, :]
        if p == 1:
            d = np.abs(diff).sum(axis=-1)
        else:
            d = np.sqrt((diff**2).sum(axis=-1))
        return cls(d)

    def __call__(self, a, b):
        return float(self.d[a, b])


def induced_metric(div):
    n = div.n
    d = np.zeros((n, n))
    for a in range(n):
        for b in range(a + 1, n):
            d[a, b] = d[b, a] = div.values[(1 << a) | (1 << b)]
    return Metric(d, validate=False)


def skewness(div):
    """Largest ratio of values between two subsets of equal size >= 2."""
    if div.n < 2:
        raise DiversityError("skewness needs n >= 2")
    sizes = popcounts(div.n)
    gamma = 1.0
    for k in range(2, div.n + 1):
        vals = div.values[sizes == k]
        gamma = max(gamma, float(vals.max() / vals.min()))
    return gamma


def symmetrize(div):
    """Profile of the cardinality-wise maxima: ``f[k] = max{δ(A) : |A| = k+1}``."""
    sizes = popcounts(div.n)
    f = [0.0] + [float(div.values[sizes == k].max()) for k in range(2, div.n + 1)]
    return SymmetricProfile(f)


def split_diversity_eval(n, split, subset):
    """1 when ``split`` separates ``subset`` into two non-empty parts, else 0."""
    u = as_mask(split, n)
    full = (1 << n) - 1
    if u == 0 or u == full:
        raise DiversityError("split side must be a non-empty proper subset")
    a = as_mask(subset, n)
    return int(bool(a & u) and bool(a & ~u & full))


@dataclass(frozen=True)
class SplitWeighting:
    """Non-negative weights on splits, keyed by the side not containing element 0."""

    n: int
    weights: dict

    def __init__(self, n, weights=None, validate=True):
        weights = dict(weights or {})
        if validate:
            for mask, w in weights.items():
                if mask & 1 or mask == 0 or mask >> n:
                    raise DiversityError(f"{from_mask(mask)} is not a canonical split representative")
                if not w >= 0:
                    raise DiversityError(f"negative weight {w} on split {from_mask(mask)}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "weights", dict(sorted(weights.items())))

    @classmethod
    def from_items(cls, n, items):
        """Accumulate ``(side, weight)`` pairs; either side of a split may be given."""
        acc = {}
        for side, w in items:
            key = canonical_split(as_mask(side, n), n)
            acc[key] = acc.get(key, 0.0) + w
        return cls(n, acc)

    def __len__(self):
        return len(self.weights)

    def positive(self):
        return SplitWeighting(self.n, {m: w for m, w in self.weights.items() if w > 0})

    def to_diversity(self):
        return FiniteDiversity(self.n, split_values(self), validate=False)


def eval_split_combination(w, subset):
    a = as_mask(subset, w.n)
    full = (1 << w.n) - 1
    if not a & (a - 1):
        return 0.0
    # subset is cut by B iff it meets both B and its complement
    return math.fsum(wt for b, wt in w.weights.items() if a & b and a & (full ^ b))


def split_values(w):
    """Values of the split combination on all ``2**n`` subsets at once."""
    n = w.n
    full = (1 << n) - 1
    sides = np.zeros(1 << n)
    for b, wt in w.weights.items():
        sides[b] += wt
        sides[full ^ b] += wt
    total = math.fsum(w.weights.values())
    inside = _kernels.superset_sum(sides, n)
    vals = total - inside
    vals[popcounts(n) <= 1] = 0.0
    return np.maximum(vals, 0.0)


@dataclass(frozen=True)
class MobiusResult:
    """Signed split weights recovered by Möbius inversion.

    ``weights`` holds the summed weight ``w_B + w_{X-B}`` per canonical split;
    ``embeddable`` means those weights are non-negative and reproduce the
    diversity.
    """

    n: int
    weights: dict
    embeddable: bool
    max_residual: float
    clamped: SplitWeighting


def _mobius_float(values, n):
    sizes = popcounts(n)
    sign = np.where(sizes % 2 == 0, 1.0, -1.0)
    t = _kernels.superset_sum(sign * values, n)
    # w_B = 1/2 * sum_{A ⊇ B} (-1)^{|A|+|B|+1} δ(A)
    return 0.5 * (-sign) * t


def _mobius_exact(values, n):
    size = 1 << n
    sizes = popcounts(n)
    t = [Fraction(float(v)) * (1 if sizes[m] % 2 == 0 else -1) for m, v in enumerate(values)]
    for i in range(n):
        bit = 1 << i
        for m in range(size):
            if not m & bit:
                t[m] += t[m | bit]
    return [Fraction(1, 2) * (-1 if sizes[m] % 2 == 0 else 1) * t[m] for m in range(size)]


def split_weights_from_diversity(div, exact=False, tol=config.TOL, cap=config.MOBIUS_CAP):
    """Möbius-invert ``div`` into split weights and decide L1-embeddability.

    ``exact=True`` runs the alternating sums over rationals (the stored
    doubles converted exactly), avoiding cancellation; allowed for
    ``n <= 12``.
    """
    n = div.n
    _check_cap(n, cap, "Möbius inversion")
    if n == 1:
        return MobiusResult(1, {}, True, 0.0, SplitWeighting(1))
    if exact:
        _check_cap(n, config.EXACT_MOBIUS_CAP, "exact Möbius inversion")
        raw = _mobius_exact(div.values, n)
    else:
        raw = _mobius_float(div.values, n)
    full = (1 << n) - 1
    signed = {}
    for b in range(2, full, 2):  # canonical sides: non-empty, without element 0
        signed[b] = raw[b] + raw[full ^ b]
    clamped = SplitWeighting(n, {b: float(v) for b, v in signed.items() if v > 0})
    residual = float(np.max(np.abs(split_values(clamped) - div.values)))
    embeddable = all(v >= -tol for v in signed.values()) and residual <= tol
    if not exact:
        signed = {b: float(v) for b, v in signed.items()}
    return MobiusResult(n, signed, embeddable, residual, clamped)
