from __future__ import annotations

import itertools
import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import backends as B
from procat import dsl
from procat import signature as S
from procat.errors import BindingError, CapExceeded, ShapeMismatch, UnboundBox, UnsupportedInBackend
from procat.randgen import TermGen, random_matrix
from procat.semiring import BOOL, COMPLEX, NAT

A = S.Base("A")
seeds = st.integers(0, 2**32 - 1)


def cup_oracle(dims):
    """Entry (rev(i), i) of the flattened cup is one for every multi-index i."""
    total = int(np.prod(dims)) if dims else 1
    col = np.zeros((total * total, 1))
    for idx in itertools.product(*[range(d) for d in dims]):
        flat = 0
        for d, x in zip(dims, idx):
            flat = flat * d + x
        rev = 0
        for d, x in zip(reversed(dims), reversed(idx)):
            rev = rev * d + x
        col[rev * total + flat, 0] = 1
    return col


@pytest.mark.parametrize("dims", [[], [1], [2], [3], [2, 3], [2, 1, 3]])
def test_cup_matches_index_formula(dims):
    be = B.backend("mat-c")
    assert np.array_equal(be.cup(dims).real, cup_oracle(dims))


def test_single_wire_cup_is_bell_vector():
    assert B.backend("mat-c").cup([2]).real.ravel().tolist() == [1, 0, 0, 1]


@pytest.mark.parametrize("name", B.MATRIX_BACKENDS)
def test_snake_is_identity_in_every_backend(name):
    be = B.backend(name)
    for dims in ([2], [3], [2, 3]):
        n = int(np.prod(dims))
        step1 = be.tensor(be.identity(n), be.cup(dims))
        step2 = be.tensor(be.compose(be.sym([n], [n]), be.cap(dims)), be.identity(n))
        assert be.semiring.allclose(be.compose(step1, step2), be.identity(n))


def test_loop_value_is_dimension():
    assert B.backend("mat-n").loop_value(3) == 3
    assert B.backend("mat-b").loop_value(3) is True
    assert B.backend("mat-b").loop_value(0) is False


def test_unknown_backend():
    with pytest.raises(UnsupportedInBackend):
        B.backend("mat-q")


@given(seeds, st.sampled_from(B.MATRIX_BACKENDS))
def test_evaluate_agrees_with_graph_contraction(seed, name):
    rng = np.random.default_rng(seed)
    gen = TermGen(rng)
    t = gen.term(depth=4)
    sig = gen.signature()
    b = gen.binding(name, max_dim=3)
    from procat import graph as G

    direct = B.evaluate(b, sig, t)
    via = B.evaluate_graph(b, sig, G.to_graph(sig, t))
    assert b.semiring.allclose(via.astype(b.semiring.dtype), direct)


@given(seeds)
def test_generic_semiring_matches_fast_path(seed):
    rng = np.random.default_rng(seed)
    for name, sr in (("mat-c", COMPLEX), ("mat-b", BOOL), ("mat-n", NAT)):
        a = random_matrix(rng, name, 3, 2)
        b = random_matrix(rng, name, 2, 4)
        g = sr.generic()
        assert sr.allclose(g.matmul(a, b), sr.matmul(a, b))
        assert sr.allclose(g.kron(a, b), sr.kron(a, b))
        assert sr.allclose(g.adjoint(a), sr.adjoint(a))


def test_fixture_evaluations():
    prog = dsl.parse_file("fixtures/compact.sig")
    bc = B.load_bindings("fixtures/compact_c.json")
    bn = B.load_bindings("fixtures/compact_n.json")
    sig = prog.signature
    assert B.evaluate(bc, sig, prog.term("cupA")).real.ravel().tolist() == [1, 0, 0, 1]
    assert np.allclose(B.evaluate(bc, sig, prog.term("teleport")), np.eye(2))
    assert B.evaluate(bn, sig, prog.term("circle")).tolist() == [[3]]


def test_unbound_box_and_bad_shape():
    sig = S.Signature.build(["A"], {"f": ("A", "A")})
    b = B.Binding("mat-c", {"A": 2}, {})
    with pytest.raises(UnboundBox):
        B.evaluate(b, sig, S.Box("f"))
    b = B.Binding("mat-c", {"A": 2}, {"f": np.eye(3, dtype=complex)})
    with pytest.raises(ShapeMismatch):
        B.evaluate(b, sig, S.Box("f"))


@pytest.mark.parametrize("doc, path", [
    ({"backend": "mat-x"}, "$.backend"),
    ({"backend": "mat-c", "objects": {"A": -1}}, "$.objects.A"),
    ({"backend": "mat-b", "objects": {"A": 1}, "boxes": {"f": [[2]]}}, "$.boxes.f[0][0]"),
    ({"backend": "mat-n", "objects": {"A": 2}, "boxes": {"f": [[1, 2], [3]]}}, "$.boxes.f[1]"),
    ({"backend": "mat-c", "objects": {"A": 1}, "boxes": {"f": [["x"]]}}, "$.boxes.f[0][0]"),
])
def test_binding_errors_carry_json_path(doc, path):
    with pytest.raises(BindingError) as exc:
        B.parse_bindings(json.dumps(doc))
    assert exc.value.path == path


def test_malformed_json_reports_line():
    with pytest.raises(BindingError) as exc:
        B.parse_bindings('{\n  "backend": }', "x.json")
    assert exc.value.pos[0] == 2


@pytest.mark.parametrize("name", B.MATRIX_BACKENDS + ("finset",))
def test_bindings_roundtrip(name):
    if name == "finset":
        b = B.load_bindings("fixtures/cartesian_set.json")
    else:
        rng = np.random.default_rng(3)
        b = B.Binding(name, {"A": 2}, {"f": random_matrix(rng, name, 2, 2)})
    again = B.parse_bindings(B.dump_bindings(b))
    assert again.backend == b.backend and dict(again.objects) == dict(b.objects)
    for k, v in b.boxes.items():
        if name == "finset":
            assert again.boxes[k] == v
        else:
            assert b.semiring.allclose(again.boxes[k], v)


@pytest.mark.parametrize("x, text", [
    (1 + 0j, "1+0i"),
    (-0.5 - 2j, "-0.5-2i"),
    (1 / 3 + 1e-7j, "0.333333+1e-07i"),
    (-0.0 - 0.0j, "0+0i"),
])
def test_complex_entry_format(x, text):
    assert B.format_entry(x, COMPLEX) == text


def test_other_entry_formats():
    assert B.format_entry(np.bool_(True), BOOL) == "1"
    assert B.format_entry(np.int64(7), NAT) == "7"


def test_states_of_enumerates_subsets():
    b = B.Binding("mat-b", {"X": 3})
    states = B.states_of(b, "X")
    assert len(states) == 8
    assert len({s.tobytes() for s in states}) == 8
    assert states[5].ravel().tolist() == [True, False, True]
    with pytest.raises(CapExceeded):
        B.states_of(B.Binding("mat-b", {"X": 20}), "X")
    with pytest.raises(UnsupportedInBackend):
        B.states_of(B.Binding("mat-c", {"X": 2}), "X")


@given(seeds)
def test_state_decomposition_roundtrip(seed):
    rng = np.random.default_rng(seed)
    for name in B.MATRIX_BACKENDS:
        b = B.Binding(name, {"X": 4})
        psi = random_matrix(rng, name, 4, 1)
        parts = B.decompose_state(b, psi)
        assert b.semiring.allclose(B.recompose_state(b, parts, 4), psi)


def test_inner_product_of_terms():
    prog = dsl.parse_file("fixtures/compact.sig")
    bc = B.load_bindings("fixtures/compact_c.json")
    cup = prog.term("cupA")
    # <cup|cup> is the dimension of A
    assert abs(B.inner(bc, prog.signature, cup, cup) - 2) < 1e-12
