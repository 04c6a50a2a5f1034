from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import _kernels as K

IMPLS = sorted(K.IMPLS)


def bool_mats(rows, cols):
    return st.lists(st.booleans(), min_size=rows * cols, max_size=rows * cols).map(
        lambda xs: np.array(xs, dtype=np.bool_).reshape(rows, cols))


shapes = st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5))


def oracle_matmul(a, b, add, mul, zero):
    n, k = a.shape
    m = b.shape[1]
    a, b = a.tolist(), b.tolist()
    return [[_fold(add, zero, [mul(a[i][t], b[t][j]) for t in range(k)])
             for j in range(m)] for i in range(n)]


def _fold(op, acc, xs):
    for x in xs:
        acc = op(acc, x)
    return acc


@pytest.mark.parametrize("impl", IMPLS)
@given(shapes.flatmap(lambda s: st.tuples(bool_mats(s[0], s[1]), bool_mats(s[1], s[2]))))
def test_bool_matmul(impl, ab):
    a, b = ab
    got = K.IMPLS[impl]["bool_matmul"](a, b)
    want = oracle_matmul(a, b, lambda x, y: x or y, lambda x, y: x and y, False)
    assert got.shape == (a.shape[0], b.shape[1])
    assert got.tolist() == want


@pytest.mark.parametrize("impl", IMPLS)
@given(st.integers(0, 2**32 - 1), st.integers(1, 5), st.integers(1, 5), st.integers(1, 5))
def test_nat_matmul(impl, seed, n, k, m):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, 7, (n, k)).astype(np.int64)
    b = rng.integers(0, 7, (k, m)).astype(np.int64)
    got = K.IMPLS[impl]["nat_matmul"](a, b)
    assert got.tolist() == oracle_matmul(a, b, int.__add__, int.__mul__, 0)


@pytest.mark.parametrize("impl", IMPLS)
@given(st.tuples(st.integers(1, 3), st.integers(1, 3), st.integers(1, 3), st.integers(1, 3))
       .flatmap(lambda s: st.tuples(bool_mats(s[0], s[1]), bool_mats(s[2], s[3]))))
def test_bool_kron(impl, ab):
    a, b = ab
    got = K.IMPLS[impl]["bool_kron"](a, b)
    r, s = b.shape
    for i, j, k, l in itertools.product(range(a.shape[0]), range(a.shape[1]), range(r), range(s)):
        assert got[i * r + k, j * s + l] == (a[i, j] and b[k, l])


def _perm(n, p):
    m = np.zeros((n, n), dtype=np.bool_)
    m[np.arange(n), p] = True
    return m


@pytest.mark.parametrize("impl", IMPLS)
def test_inverse_search_finds_permutation_inverses(impl):
    for p in itertools.permutations(range(3)):
        f = _perm(3, list(p))
        found, g = K.IMPLS[impl]["bool_inverse_search"](f)
        assert found
        assert np.array_equal(g, f.T)


@pytest.mark.parametrize("impl", IMPLS)
def test_inverse_search_rejects_non_permutations(impl):
    f = np.array([[1, 1], [0, 1]], dtype=np.bool_)
    found, _ = K.IMPLS[impl]["bool_inverse_search"](f)
    assert not found


def test_boolean_invertibles_are_exactly_permutations():
    # independent count: 2x2 boolean matrices with an inverse are the 2 permutations
    hits = 0
    for bits in itertools.product([0, 1], repeat=4):
        f = np.array(bits, dtype=np.bool_).reshape(2, 2)
        hits += K.bool_inverse_search(f) is not None
    assert hits == 2


def test_dispatch_caps_search_dimension():
    with pytest.raises(ValueError):
        K.bool_inverse_search(np.eye(K.MAX_SEARCH_DIM + 1, dtype=np.bool_))


def test_numba_is_available_and_honours_flag():
    assert "numba" in K.IMPLS
    assert K.JIT_ENABLED == (not K.DISABLE_JIT)


def test_benchmark_runs_both_variants():
    import importlib.util
    from pathlib import Path

    path = Path(__file__).resolve().parent.parent / "benchmarks" / "bench_kernels.py"
    spec = importlib.util.spec_from_file_location("bench_kernels", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    rows = mod.bench([2], repeat=1)
    assert {r[0] for r in rows} == set(K.IMPLS["numpy"])
    assert all(set(t) == set(K.IMPLS) for _, _, t in rows)
