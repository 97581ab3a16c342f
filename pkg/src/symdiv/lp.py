"""Dense two-phase simplex and the optimal split-embedding distortion LP."""
from dataclasses import dataclass, field

import numpy as np

from . import config
from .diversity import CapExceeded, SplitWeighting
from .subsets import popcounts

__all__ = [
    "LpProblem",
    "LpSolution",
    "LpError",
    "IterationLimit",
    "solve_lp",
    "dump_lp",
    "load_lp",
    "split_distortion_lp",
    "optimal_split_distortion",
]

SENSES = ("<=", ">=", "=")


class LpError(ValueError):
    pass


class IterationLimit(RuntimeError):
    pass


@dataclass
class LpProblem:
    """Minimize ``c @ x`` subject to ``A[i] @ x (sense[i]) b[i]`` and ``0 <= x <= upper``."""

    c: np.ndarray
    A: np.ndarray
    senses: list
    b: np.ndarray
    upper: np.ndarray | None = None

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=np.float64).ravel()
        nvar = self.c.size
        self.A = np.asarray(self.A, dtype=np.float64).reshape(-1, nvar)
        self.b = np.asarray(self.b, dtype=np.float64).ravel()
        self.senses = list(self.senses)
        if self.b.size != self.A.shape[0] or len(self.senses) != self.A.shape[0]:
            raise LpError("constraint rows, senses and right-hand sides disagree in length")
        if any(s not in SENSES for s in self.senses):
            raise LpError(f"senses must be one of {SENSES}")
        if self.upper is not None:
            self.upper = np.asarray(self.upper, dtype=np.float64).ravel()
            if self.upper.size != nvar:
                raise LpError("upper bounds must have one entry per variable")
        for arr in (self.c, self.A, self.b):
            if not np.all(np.isfinite(arr)):
                raise LpError("coefficients must be finite")

    @property
    def num_vars(self):
        return self.c.size


@dataclass
class LpSolution:
    status: str
    objective: float = float("nan")
    x: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0


class _Tableau:
    """Dense tableau ``B^-1 [A | b]``, rebuilt from the original rows every ``refresh`` pivots."""

    def __init__(self, rows, rhs, basis, tol, refresh=40):
        self.orig = np.hstack([rows, rhs[:, None]])
        self.T = self.orig.copy()
        self.basis = list(basis)
        self.tol = tol
        self.refresh = refresh
        self.iterations = 0

    def pivot(self, r, j):
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        self.obj -= self.obj[j] * T[r]
        self.basis[r] = j
        self.iterations += 1
        if self.iterations % self.refresh == 0:
            self.reinvert()

    def reinvert(self):
        B = self.orig[:, self.basis]
        self.T = np.linalg.solve(B, self.orig)
        self.T[:, self.basis] = np.eye(len(self.basis))
        self.set_objective(self.cost)

    def drop_columns(self, keep_rows, ncol):
        self.orig = np.hstack([self.orig[keep_rows, :ncol], self.orig[keep_rows, -1:]])
        self.T = np.hstack([self.T[keep_rows, :ncol], self.T[keep_rows, -1:]])
        self.basis = [self.basis[r] for r in keep_rows]

    def set_objective(self, cost):
        self.cost = cost
        obj = np.append(cost, 0.0)
        for r, j in enumerate(self.basis):
            if obj[j] != 0.0:
                obj = obj - obj[j] * self.T[r]
        self.obj = obj

    def run(self, allowed, max_iter, stall=50):
        """Dantzig pricing; after ``stall`` consecutive degenerate pivots switch to Bland's rule.

        Bland (lowest-index improving column, ratio ties to the lowest basic
        index) stays on until a pivot makes progress, so cycling is impossible.
        """
        degenerate = 0
        while True:
            if self.iterations >= max_iter:
                raise IterationLimit(f"simplex exceeded {max_iter} pivots")
            red = np.where(allowed, self.obj[:-1], 0.0)
            cand = np.flatnonzero(red < -self.tol)
            if cand.size == 0:
                return "optimal"
            bland = degenerate >= stall
            j = int(cand[0]) if bland else int(cand[np.argmin(red[cand])])
            T = self.T
            col = T[:, j]
            rows = np.flatnonzero(col > self.tol)
            if rows.size == 0:
                return "unbounded"
            ratios = np.maximum(T[rows, -1], 0.0) / col[rows]
            best = ratios.min()
            ties = rows[ratios <= best + self.tol * max(1.0, abs(best))]
            if bland:
                r = int(min(ties, key=lambda i: self.basis[i]))
            else:
                # among ratio ties prefer the largest pivot element for stability
                r = int(ties[np.argmax(col[ties])])
            degenerate = degenerate + 1 if best <= self.tol else 0
            self.pivot(r, j)


def solve_lp(p, max_iter=None, pivot_tol=config.PIVOT_TOL, feas_tol=config.FEAS_TOL):
    """Two-phase dense simplex; Bland's rule takes over on degenerate stalls."""
    A, b, senses = p.A, p.b, list(p.senses)
    nvar = p.num_vars
    if p.upper is not None:
        finite = np.flatnonzero(np.isfinite(p.upper))
        A = np.vstack([A, np.eye(nvar)[finite]])
        b = np.concatenate([b, p.upper[finite]])
        senses += ["<="] * finite.size
    A = A.copy()
    b = b.copy()
    flip = b < 0
    A[flip] *= -1
    b[flip] *= -1
    senses = [
        {"<=": ">=", ">=": "<=", "=": "="}[s] if f else s for s, f in zip(senses, flip)
    ]
    m = len(senses)
    n_slack = sum(s != "=" for s in senses)
    n_art = sum(s != "<=" for s in senses)
    ncol = nvar + n_slack + n_art
    rows = np.zeros((m, ncol))
    rows[:, :nvar] = A
    basis = [0] * m
    s_col, a_col = nvar, nvar + n_slack
    for i, s in enumerate(senses):
        if s == "<=":
            rows[i, s_col] = 1.0
            basis[i] = s_col
            s_col += 1
        else:
            if s == ">=":
                rows[i, s_col] = -1.0
                s_col += 1
            rows[i, a_col] = 1.0
            basis[i] = a_col
            a_col += 1
    if max_iter is None:
        max_iter = 50 * (m + ncol) + 1000

    tab = _Tableau(rows, b, basis, pivot_tol)
    art_start = nvar + n_slack
    if n_art:
        cost1 = np.zeros(ncol)
        cost1[art_start:] = 1.0
        tab.set_objective(cost1)
        tab.run(np.ones(ncol, dtype=bool), max_iter)
        if -tab.obj[-1] > feas_tol * max(1.0, float(np.abs(b).max(initial=0.0))):
            return LpSolution("infeasible", iterations=tab.iterations)
        # drive zero-level artificials out of the basis; drop rows that are redundant
        keep = []
        for r in range(m):
            if tab.basis[r] < art_start:
                keep.append(r)
                continue
            row = tab.T[r, :art_start]
            nz = np.flatnonzero(np.abs(row) > pivot_tol)
            if nz.size:
                tab.pivot(r, int(nz[0]))
                keep.append(r)
        tab.drop_columns(keep, art_start)
    cost2 = np.zeros(art_start)
    cost2[:nvar] = p.c
    tab.set_objective(cost2)
    status = tab.run(np.ones(art_start, dtype=bool), max_iter)
    if status == "unbounded":
        return LpSolution("unbounded", iterations=tab.iterations)
    x = np.zeros(art_start)
    for r, j in enumerate(tab.basis):
        x[j] = tab.T[r, -1]
    x = x[:nvar]
    return LpSolution("optimal", float(p.c @ x), x, tab.iterations)


def dump_lp(p):
    """Plain-text form: ``min`` row, one constraint per line, optional ``upper`` row."""
    fmt = lambda v: repr(float(v))  # noqa: E731
    lines = ["min " + " ".join(fmt(v) for v in p.c)]
    for row, s, rhs in zip(p.A, p.senses, p.b):
        lines.append(" ".join(fmt(v) for v in row) + f" {s} {fmt(rhs)}")
    if p.upper is not None:
        lines.append("upper " + " ".join(fmt(v) for v in p.upper))
    return "\n".join(lines) + "\n"


def load_lp(text):
    lines = [ln.split() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or lines[0][0] != "min":
        raise LpError("LP dump must start with a 'min' row")
    c = [float(v) for v in lines[0][1:]]
    A, senses, b, upper = [], [], [], None
    for parts in lines[1:]:
        if parts[0] == "upper":
            upper = [float(v) for v in parts[1:]]
            continue
        A.append([float(v) for v in parts[:-2]])
        senses.append(parts[-2])
        b.append(float(parts[-1]))
    return LpProblem(np.array(c), np.array(A).reshape(-1, len(c)), senses, np.array(b), upper)


def _incidence(div, order):
    n = div.n
    full = (1 << n) - 1
    splits = list(range(2, full, 2))
    if order is not None:
        splits = [splits[i] for i in order]
    targets = np.flatnonzero(popcounts(n) >= 2)
    sb = np.array(splits, dtype=np.int64)
    # inc[a, j] = 1 when split j cuts target set a
    inc = ((targets[:, None] & sb[None, :]) != 0) & ((targets[:, None] & (full ^ sb)[None, :]) != 0)
    return inc.astype(np.float64), div.values[targets], splits


def split_distortion_lp(div, order=None, form="lower"):
    """LP over split weights ``w_B >= 0`` plus one scale variable (last).

    ``form="lower"``: minimize ``c`` with ``δ <= Σ w_B δ_B <= c δ`` and ``c >= 1``.
    ``form="upper"``: maximize ``t`` with ``t δ <= Σ w_B δ_B <= δ``; the origin
    is feasible so no phase 1 is needed, and the optimum is ``c = 1/t``.
    Returns ``(problem, splits)``; ``splits[j]`` is the canonical side of
    variable ``j``.  ``order`` permutes the split variables.
    """
    inc, vals, splits = _incidence(div, order)
    t_rows, k = inc.shape
    c = np.zeros(k + 1)
    if form == "lower":
        floor = np.zeros((1, k + 1))
        floor[0, -1] = 1.0
        A = np.vstack([
            np.hstack([inc, np.zeros((t_rows, 1))]),
            np.hstack([inc, -vals[:, None]]),
            floor,
        ])
        b = np.concatenate([vals, np.zeros(t_rows), [1.0]])
        senses = [">="] * t_rows + ["<="] * t_rows + [">="]
        c[-1] = 1.0
    elif form == "upper":
        A = np.vstack([
            np.hstack([inc, np.zeros((t_rows, 1))]),
            np.hstack([-inc, vals[:, None]]),
        ])
        b = np.concatenate([vals, np.zeros(t_rows)])
        senses = ["<="] * (2 * t_rows)
        c[-1] = -1.0
    else:
        raise LpError(f"unknown form {form!r}")
    return LpProblem(c, A, senses, b), splits


def optimal_split_distortion(div, cap=config.LP_CAP, order=None, form="upper"):
    """Least distortion over all non-negative split combinations.

    The witness is scaled so that ``δ(A) <= Σ w_B δ_B(A) <= c δ(A)`` for
    every ``|A| >= 2``.  Returns ``(c, witness, solution)``.
    """
    if div.n > cap:
        raise CapExceeded(f"optimal LP: n={div.n} exceeds cap {cap}")
    if div.n < 2:
        return 1.0, SplitWeighting(div.n), LpSolution("optimal", 1.0, np.ones(1))
    problem, splits = split_distortion_lp(div, order=order, form=form)
    sol = solve_lp(problem)
    if sol.status != "optimal":
        raise RuntimeError(f"split-distortion LP returned {sol.status}; this indicates a solver bug")
    w = np.maximum(sol.x[:-1], 0.0)
    if form == "upper":
        t = sol.x[-1]
        if t <= 0:
            raise RuntimeError("split-distortion LP found no positive scale; solver bug")
        c, w = 1.0 / t, w / t
    else:
        c = sol.x[-1]
    # rounding can land a hair below the true minimum of 1
    c = max(c, 1.0)
    witness = SplitWeighting(div.n, {s: float(v) for s, v in zip(splits, w) if v > 0})
    return float(c), witness, sol
