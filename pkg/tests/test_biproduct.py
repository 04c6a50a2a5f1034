from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import biproduct as BP
from procat.errors import ShapeMismatch
from procat.randgen import random_matrix
from procat.semiring import BOOL, COMPLEX, NAT

SEMIRINGS = {"mat-c": COMPLEX, "mat-b": BOOL, "mat-n": NAT}
seeds = st.integers(0, 2**32 - 1)
parts = st.lists(st.integers(0, 3), min_size=1, max_size=4)


@pytest.mark.parametrize("name", SEMIRINGS)
@given(p=parts)
def test_delta_equations(name, p):
    assert BP.delta_equations(SEMIRINGS[name], p)
    assert BP.product_coproduct_iso(SEMIRINGS[name], p)


def test_injection_projection_shapes():
    q = BP.injection(NAT, [2, 3], 1)
    assert q.shape == (5, 3)
    assert q[2:, :].tolist() == np.eye(3, dtype=int).tolist()
    assert BP.projection(NAT, [2, 3], 0).tolist() == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]
    with pytest.raises(ShapeMismatch):
        BP.injection(NAT, [2], 1)


@pytest.mark.parametrize("name", SEMIRINGS)
@given(seed=seeds)
def test_biproduct_sum_is_entrywise(name, seed):
    rng = np.random.default_rng(seed)
    sr = SEMIRINGS[name]
    f, g = random_matrix(rng, name, 2, 3), random_matrix(rng, name, 2, 3)
    want = np.array([[sr.add(x, y) for x, y in zip(r, s)] for r, s in zip(f, g)], dtype=sr.dtype)
    assert sr.allclose(BP.sum_via_biproduct(sr, f, g), want)


@pytest.mark.parametrize("name", SEMIRINGS)
@given(seed=seeds)
def test_blocks_roundtrip_and_product(name, seed):
    rng = np.random.default_rng(seed)
    sr = SEMIRINGS[name]
    f = random_matrix(rng, name, 3, 4)
    g = random_matrix(rng, name, 2, 3)
    bf = BP.blocks(sr, f, (1, 2), (3, 1))
    assert sr.allclose(BP.from_blocks(sr, bf), f)
    bg = BP.blocks(sr, g, (2,), (1, 2))
    prod = BP.block_product(sr, bg, bf)
    assert sr.allclose(BP.from_blocks(sr, prod), sr.matmul(g, f))


def test_block_string():
    bm = BP.blocks(NAT, np.arange(4, dtype=np.int64).reshape(2, 2), (1, 1), (2,))
    assert str(bm).splitlines() == ["rows [1, 1] cols [2]", "  (0,0) 1x2 [0 1]", "  (1,0) 1x2 [2 3]"]


def test_zero_object_maps_are_unique():
    z = BP.zero_map(COMPLEX, 3, 0)
    assert z.shape == (0, 3)
    assert BP.zero_map(NAT, [1, 1], 2).tolist() == [[0, 0], [0, 0]]


@pytest.mark.parametrize("a1, a2, c", [(1, 1, 2), (2, 1, 3), (0, 2, 2), (1, 2, 1)])
def test_dist_is_identity_and_dist_left_a_shuffle(a1, a2, c):
    # row-major kron puts (i, k) at i*c + k, which is already the block order
    assert np.array_equal(BP.dist(NAT, a1, a2, c), np.eye((a1 + a2) * c, dtype=np.int64))
    m = BP.dist_left(NAT, c, a1, a2)
    assert BP.is_permutation(m)
    for k in range(c):
        for i in range(a1 + a2):
            dst = k * a1 + i if i < a1 else c * a1 + k * a2 + (i - a1)
            assert m[dst, k * (a1 + a2) + i] == 1


def test_dist_left_is_not_identity_in_general():
    assert not np.array_equal(BP.dist_left(NAT, 2, 1, 1), np.eye(4, dtype=np.int64))


@pytest.mark.parametrize("name", SEMIRINGS)
@given(seed=seeds)
def test_dist_naturality_and_bilinearity(name, seed):
    rng = np.random.default_rng(seed)
    sr = SEMIRINGS[name]
    f1, f2 = random_matrix(rng, name, 2, 1), random_matrix(rng, name, 1, 2)
    g = random_matrix(rng, name, 2, 2)
    assert BP.dist_naturality(sr, f1, f2, g)
    assert BP.dist_left_naturality(sr, g, f1, f2)
    h1, h2 = random_matrix(rng, name, 3, 2), random_matrix(rng, name, 3, 2)
    assert BP.distributivity_law(sr, h1, h2, random_matrix(rng, name, 2, 3))


@pytest.mark.parametrize("name", SEMIRINGS)
def test_matrix_construction_snake(name):
    be = BP.matrix_construction(SEMIRINGS[name])
    assert not be.semiring.fast
    for n in (1, 2, 3):
        assert be.semiring.allclose(BP.snake_matrix(be, n), be.identity(n))


def test_is_permutation():
    assert BP.is_permutation(np.array([[0, 1], [1, 0]]))
    assert not BP.is_permutation(np.array([[1, 1], [0, 1]]))
    assert not BP.is_permutation(np.array([[2, 0], [0, 1]]))
    assert not BP.is_permutation(np.ones((2, 3)))
