"""Symmetric profiles, their least concave majorant, and the truncation basis.

A symmetric diversity on ``n`` points is fixed by its profile ``f`` where
``f[k]`` is the value of every ``(k+1)``-element set.  Everything here works
on plain Python numbers, so ``fractions.Fraction`` input stays exact.
"""
from dataclasses import dataclass

from . import config

__all__ = [
    "ProfileError",
    "ProfileVerdict",
    "SymmetricProfile",
    "ConcaveProfile",
    "BasisCoefficients",
    "validate_profile",
    "psi",
    "concave_majorant",
    "basis_coefficients",
    "reconstruct_from_basis",
]


class ProfileError(ValueError):
    pass


@dataclass(frozen=True)
class ProfileVerdict:
    ok: bool
    axiom: str | None = None
    detail: str = ""

    def __bool__(self):
        return self.ok


def validate_profile(f, slack=config.D2_SLACK):
    """Check (S1) positivity, (S2) monotonicity and (S3) subadditivity.

    The verdict names the first violated axiom, checked in that order.
    """
    f = list(f)
    if not f:
        return ProfileVerdict(False, "S1", "empty profile")
    if f[0] != 0:
        return ProfileVerdict(False, "S1", f"f[0] = {f[0]} != 0")
    for k in range(1, len(f)):
        if not f[k] > 0:
            return ProfileVerdict(False, "S1", f"f[{k}] = {f[k]} is not positive")
    for k in range(1, len(f)):
        if f[k] < f[k - 1] - slack * max(1, abs(f[k - 1])):
            return ProfileVerdict(False, "S2", f"f[{k}] < f[{k - 1}]")
    m = len(f)
    for j in range(1, m):
        for k in range(j, m - j):
            s = f[j + k]
            if s > f[j] + f[k] + slack * max(1, abs(s)):
                return ProfileVerdict(False, "S3", f"f[{j + k}] > f[{j}] + f[{k}]")
    return ProfileVerdict(True)


@dataclass(frozen=True)
class SymmetricProfile:
    """Profile ``f`` of a symmetric diversity; ``f[k]`` is the value of (k+1)-sets."""

    f: tuple

    def __init__(self, f, validate=True):
        object.__setattr__(self, "f", tuple(f))
        if validate:
            verdict = validate_profile(self.f)
            if not verdict:
                raise ProfileError(f"invalid profile ({verdict.axiom}): {verdict.detail}")

    @property
    def n(self):
        return len(self.f)

    def __len__(self):
        return len(self.f)

    def __getitem__(self, k):
        return self.f[k]

    def __iter__(self):
        return iter(self.f)

    def value(self, size):
        """Value of any set with ``size`` elements."""
        return 0 if size <= 1 else self.f[size - 1]


@dataclass(frozen=True)
class ConcaveProfile:
    g: tuple

    @property
    def n(self):
        return len(self.g)

    def __getitem__(self, k):
        return self.g[k]

    def __iter__(self):
        return iter(self.g)

    def is_concave(self, tol=config.TOL):
        g = self.g
        return all(2 * g[k] >= g[k - 1] + g[k + 1] - tol for k in range(1, len(g) - 1))


@dataclass(frozen=True)
class BasisCoefficients:
    """Coefficients ``lam[i-1]`` of ``psi_i`` for ``i = 1..n-1``."""

    n: int
    lam: tuple

    def __getitem__(self, i):
        return self.lam[i - 1]

    def active(self, tol=0.0):
        return [i for i in range(1, self.n) if self.lam[i - 1] > tol]


def psi(i, j, n=None):
    """Truncation ``min(i, j)``; pass ``n`` to enforce ``1 <= i, j+1 <= n-1``."""
    if i < 1 or j < 0:
        raise ValueError(f"psi({i}, {j}) out of range")
    if n is not None and (i > n - 1 or j > n - 1):
        raise ValueError(f"psi({i}, {j}) out of range for n={n}")
    return min(i, j)


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _upper_hull(points):
    # monotone chain over x-sorted points, keeping right turns only
    hull = []
    for p in points:
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) >= 0:
            hull.pop()
        hull.append(p)
    return hull


def concave_majorant(f, validate=True):
    """Least concave function above ``f`` on ``0..n-1``, clamped to be non-decreasing."""
    if not isinstance(f, SymmetricProfile):
        f = SymmetricProfile(f, validate=validate)
    elif validate:
        verdict = validate_profile(f.f)
        if not verdict:
            raise ProfileError(f"invalid profile ({verdict.axiom}): {verdict.detail}")
    vals = f.f
    n = len(vals)
    hull = _upper_hull([(k, vals[k]) for k in range(n)])
    g = [None] * n
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        for k in range(x0, x1):
            g[k] = y0 + (y1 - y0) * (k - x0) / (x1 - x0)
    g[-1] = hull[-1][1]
    top = g[-1]
    return ConcaveProfile(tuple(min(v, top) for v in g))


def basis_coefficients(g, tol=config.TOL):
    """Second differences of ``g``: ``g = sum_i lam_i * psi_i`` exactly."""
    if not isinstance(g, ConcaveProfile):
        g = ConcaveProfile(tuple(g))
    vals = g.g
    n = len(vals)
    if n == 1:
        return BasisCoefficients(1, ())
    if vals[0] != 0:
        raise ProfileError("concave profile must start at 0")
    lam = [2 * vals[i] - vals[i + 1] - vals[i - 1] for i in range(1, n - 1)]
    lam.append(vals[n - 1] - vals[n - 2])
    if any(v < -tol for v in lam):
        raise ProfileError("profile is not concave and non-decreasing")
    # rounding noise below tol is cleared so coefficients stay non-negative
    lam = [v if v >= 0 else 0 * v for v in lam]
    return BasisCoefficients(n, tuple(lam))


def reconstruct_from_basis(lam, j):
    """Evaluate ``sum_i lam_i * min(i, j)``."""
    if not 0 <= j <= lam.n - 1:
        raise ValueError(f"j={j} out of range for n={lam.n}")
    total = 0
    for i, c in enumerate(lam.lam, start=1):
        total += c * min(i, j)
    return total
