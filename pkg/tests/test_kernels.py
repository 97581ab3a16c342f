import itertools

import numpy as np
import pytest

import oracles
from symdiv import _kernels
from symdiv.generators import random_points
from symdiv.diversity import Metric

SLACK = 1e-12


def test_cython_backend_is_built():
    # the extension is part of the normal install; the fallback stays selectable
    assert "cython" in _kernels.BACKENDS
    assert "python" in _kernels.BACKENDS


def _random_table(rng, n):
    vals = rng.random(1 << n) * 3
    vals[[m for m in range(1 << n) if bin(m).count("1") <= 1]] = 0.0
    return vals


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_checks_agree_across_backends(rng, n):
    for _ in range(30):
        vals = _random_table(rng, n)
        got = {
            b: (
                _kernels.d2_first_violation(vals, n, SLACK, backend=b),
                _kernels.monotone_first_violation(vals, n, SLACK, backend=b),
                _kernels.singleton_d2_first_violation(vals, n, SLACK, backend=b),
            )
            for b in _kernels.BACKENDS
        }
        assert len(set(got.values())) == 1


def test_d2_violation_is_first_in_loop_order(backend, rng):
    n = 3
    for _ in range(50):
        vals = _random_table(rng, n)
        expected = None
        for a, b, c in itertools.product(range(8), range(1, 8), range(8)):
            rhs = vals[a | c]
            if vals[a | b] + vals[b | c] < rhs - SLACK * max(1, abs(rhs)):
                expected = (a, b, c)
                break
        assert _kernels.d2_first_violation(vals, n, SLACK, backend=backend) == expected


@pytest.mark.parametrize("n", [1, 3, 6])
def test_superset_sum(backend, rng, n):
    arr = rng.random(1 << n)
    got = _kernels.superset_sum(arr, n, backend=backend)
    want = [sum(arr[t] for t in range(1 << n) if t & s == s) for s in range(1 << n)]
    np.testing.assert_allclose(got, want, rtol=1e-12)
    assert not np.shares_memory(got, arr)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_tsp_matches_permutation_oracle(backend, n):
    d = Metric.from_points(random_points(n, 2, n)).d
    got = _kernels.tsp_half_tours(d, n, backend=backend)
    for s in oracles.subsets(n):
        assert got[oracles.mask(s)] == pytest.approx(oracles.tsp_half(d.tolist(), s), abs=1e-12)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_steiner_matches_spanning_tree_oracle(backend, n):
    d = Metric.from_points(random_points(n, 2, 100 + n)).d
    got = _kernels.steiner_values(d, n, backend=backend)
    for s in oracles.subsets(n):
        assert got[oracles.mask(s)] == pytest.approx(oracles.steiner(d.tolist(), n, s), abs=1e-12)


def test_backends_agree_on_generators(rng):
    if len(_kernels.BACKENDS) < 2:
        pytest.skip("only one backend available")
    n = 8
    d = Metric.from_points(rng.random((n, 3))).d
    for fn in (_kernels.tsp_half_tours, _kernels.steiner_values):
        np.testing.assert_allclose(fn(d, n, backend="cython"), fn(d, n, backend="python"), rtol=1e-12)
