import numpy as np
import pytest
from scipy.optimize import linprog

from symdiv import (
    CapExceeded,
    FiniteDiversity,
    LpProblem,
    SplitWeighting,
    build_symmetric_embedding,
    eval_split_combination,
    l1_box_diversity,
    optimal_split_distortion,
    phi_row,
    random_points,
    solve_lp,
    symmetric_diversity,
    truncation_diversity,
)
from symdiv.lp import IterationLimit, LpError, dump_lp, load_lp, split_distortion_lp
from symdiv.subsets import popcount


def test_feasibility_only():
    sol = solve_lp(LpProblem([0.0], [[1.0]], ["<="], [1.0]))
    assert sol.status == "optimal" and sol.objective == 0


def test_max_of_lower_bounds():
    sol = solve_lp(LpProblem([1.0], [[1.0], [1.0]], [">=", ">="], [2.0, 3.0]))
    assert sol.status == "optimal"
    assert sol.objective == pytest.approx(3)


def test_two_variable_vertex():
    # max 3x + 2y s.t. x + y <= 4, x + 3y <= 6, x <= 3  ->  (3, 1), value 11
    p = LpProblem([-3.0, -2.0], [[1, 1], [1, 3]], ["<=", "<="], [4, 6], upper=[3, np.inf])
    sol = solve_lp(p)
    assert sol.status == "optimal"
    np.testing.assert_allclose(sol.x, [3, 1], atol=1e-9)
    assert sol.objective == pytest.approx(-11)


def test_equality_and_negative_rhs():
    # x - y = -1, x + y >= 3, min x  ->  x = 1, y = 2
    sol = solve_lp(LpProblem([1.0, 0.0], [[1, -1], [1, 1]], ["=", ">="], [-1, 3]))
    np.testing.assert_allclose(sol.x, [1, 2], atol=1e-9)


def test_infeasible_and_unbounded():
    assert solve_lp(LpProblem([1.0], [[1.0], [1.0]], ["<=", ">="], [1.0, 2.0])).status == "infeasible"
    assert solve_lp(LpProblem([-1.0], [[1.0]], [">="], [1.0])).status == "unbounded"


def test_redundant_equalities():
    sol = solve_lp(LpProblem([1.0, 1.0], [[1, 1], [2, 2]], ["=", "="], [2, 4]))
    assert sol.status == "optimal" and sol.objective == pytest.approx(2)


def test_problem_validation():
    with pytest.raises(LpError):
        LpProblem([1.0], [[1.0]], ["<="], [1.0, 2.0])
    with pytest.raises(LpError):
        LpProblem([1.0], [[1.0]], ["<"], [1.0])
    with pytest.raises(LpError):
        LpProblem([np.nan], [[1.0]], ["<="], [1.0])
    with pytest.raises(LpError):
        LpProblem([1.0], [[1.0]], ["<="], [1.0], upper=[1, 2])


def test_iteration_cap_is_reported():
    p = LpProblem([-1.0, -1.0], [[1, 2], [2, 1]], ["<=", "<="], [4, 4])
    with pytest.raises(IterationLimit):
        solve_lp(p, max_iter=1)


@pytest.mark.parametrize("seed", range(40))
def test_random_lps_match_reference_solver(seed):
    rng = np.random.default_rng(seed)
    nv, m = rng.integers(2, 7), rng.integers(1, 8)
    A = rng.integers(-3, 4, size=(m, nv)).astype(float)
    b = rng.integers(-4, 8, size=m).astype(float)
    senses = list(rng.choice(["<=", ">=", "="], size=m, p=[0.6, 0.3, 0.1]))
    c = rng.integers(-3, 4, size=nv).astype(float)
    upper = np.where(rng.random(nv) < 0.5, rng.integers(1, 6, size=nv), np.inf)
    ours = solve_lp(LpProblem(c, A, senses, b, upper))
    ub = [A[i] if s == "<=" else -A[i] for i, s in enumerate(senses) if s != "="]
    ubb = [b[i] if s == "<=" else -b[i] for i, s in enumerate(senses) if s != "="]
    eq = [i for i, s in enumerate(senses) if s == "="]
    ref = linprog(
        c,
        A_ub=np.array(ub) if ub else None,
        b_ub=np.array(ubb) if ub else None,
        A_eq=A[eq] if eq else None,
        b_eq=b[eq] if eq else None,
        bounds=[(0, None if np.isinf(u) else u) for u in upper],
        method="highs",
    )
    expected = {0: "optimal", 2: "infeasible", 3: "unbounded"}[ref.status]
    assert ours.status == expected
    if expected == "optimal":
        assert ours.objective == pytest.approx(ref.fun, abs=1e-7)
        x = ours.x
        assert np.all(x >= -1e-7) and np.all(x <= upper + 1e-7)
        lhs = A @ x
        for v, s, r in zip(lhs, senses, b):
            assert {"<=": v <= r + 1e-7, ">=": v >= r - 1e-7, "=": abs(v - r) <= 1e-7}[s]


def test_dump_round_trip():
    p = LpProblem([-3.0, -2.0], [[1, 1], [1, 3]], ["<=", ">="], [4, 0.1], upper=[3, np.inf])
    q = load_lp(dump_lp(p))
    assert np.array_equal(q.c, p.c) and np.array_equal(q.A, p.A) and np.array_equal(q.b, p.b)
    assert q.senses == p.senses and np.array_equal(q.upper, p.upper)
    with pytest.raises(LpError):
        load_lp("1 2 <= 3\n")


# split distortion -------------------------------------------------------------


def _witness_sandwich(div, c, w):
    for m, v in div.items():
        got = eval_split_combination(w, m)
        assert v - 1e-6 <= got <= c * v + 1e-6


def test_embeddable_inputs_have_distortion_one():
    for seed in range(3):
        div = l1_box_diversity(random_points(6, 2, seed))
        c, w, _ = optimal_split_distortion(div)
        assert c == pytest.approx(1, abs=1e-6)
        _witness_sandwich(div, c, w)
    div = symmetric_diversity(phi_row(6, 2))
    c, w, _ = optimal_split_distortion(div)
    assert c == pytest.approx(1, abs=1e-6)


def test_single_truncation_n4():
    div = symmetric_diversity([0, 1, 1, 1])
    c, w, _ = optimal_split_distortion(div)
    built = build_symmetric_embedding([0, 1, 1, 1])
    assert 1 <= c <= 40
    assert c <= built.report.distortion + 1e-9
    _witness_sandwich(div, c, w)


def test_both_formulations_agree():
    for f in ([0, 1, 1, 1, 1], [0, 1, 1.5, 2, 2], list(range(5))):
        div = symmetric_diversity(f)
        lower = optimal_split_distortion(div, form="lower")[0]
        upper = optimal_split_distortion(div, form="upper")[0]
        assert lower == pytest.approx(upper, abs=1e-7)


def test_permuted_variables_same_value():
    div = symmetric_diversity([0, 1, 1, 2, 2, 2])
    base = optimal_split_distortion(div)[0]
    rng = np.random.default_rng(3)
    for _ in range(3):
        order = rng.permutation((1 << (div.n - 1)) - 1)
        assert optimal_split_distortion(div, order=order)[0] == pytest.approx(base, abs=1e-7)


def test_symmetrized_witness_stays_optimal():
    div = symmetric_diversity(truncation_diversity(6, 2).f)
    c, w, _ = optimal_split_distortion(div)
    n = div.n
    groups = {}
    for b in range(2, (1 << n) - 1, 2):
        groups.setdefault(popcount(b), []).append(b)
    avg = {}
    for size, members in groups.items():
        mean = sum(w.weights.get(b, 0.0) for b in members) / len(members)
        avg.update({b: mean for b in members})
    sym = SplitWeighting(n, avg)
    _witness_sandwich(div, c, sym)
    lo = min(eval_split_combination(sym, m) / v for m, v in div.items())
    hi = max(eval_split_combination(sym, m) / v for m, v in div.items())
    assert hi / lo == pytest.approx(c, abs=1e-7)


def test_lp_formulation_shape():
    div = symmetric_diversity([0, 1, 1, 1])
    p, splits = split_distortion_lp(div)
    assert len(splits) == 7 and p.num_vars == 8
    assert p.A.shape[0] == 2 * 11 + 1
    with pytest.raises(LpError):
        split_distortion_lp(div, form="sideways")


def test_lp_cap():
    with pytest.raises(CapExceeded):
        optimal_split_distortion(symmetric_diversity([0] + [1] * 8))


def test_trivial_ground_sets():
    assert optimal_split_distortion(FiniteDiversity(1, [0, 0]))[0] == 1
    c, w, _ = optimal_split_distortion(symmetric_diversity([0, 2.0]))
    assert c == pytest.approx(1) and eval_split_combination(w, {0, 1}) == pytest.approx(2)
