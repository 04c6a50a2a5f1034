from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import dsl
from procat import finset as F
from procat import signature as S
from procat.backends import load_bindings, parse_bindings
from procat.errors import BindingError, TypeMismatch, UnsupportedInBackend

X = ("a", "b", "c")
Y = ("0", "1")


def tables(dom, cod):
    return st.lists(st.sampled_from(cod), min_size=len(dom), max_size=len(dom)).map(
        lambda imgs: F.FunctionTable(dom, cod, tuple(imgs)))


def test_all_functions_count():
    assert len(list(F.all_functions(X, Y))) == 2 ** 3
    assert len(set(F.all_functions(Y, X))) == 3 ** 2
    assert list(F.all_functions((), Y)) == [F.FunctionTable((), Y, ())]


def test_table_validation():
    with pytest.raises(ValueError):
        F.FunctionTable(X, Y, ("0",))
    with pytest.raises(ValueError):
        F.FunctionTable(Y, Y, ("0", "2"))
    with pytest.raises(TypeMismatch):
        F.identity(X).then(F.identity(Y))


@given(tables(X, X), tables(X, Y))
def test_pairing_and_projections(f, g):
    h = F.pair(f, g)
    assert h.then(F.proj1(X, Y)) == f
    assert h.then(F.proj2(X, Y)) == g
    assert F.pair(h.then(F.proj1(X, Y)), h.then(F.proj2(X, Y))) == h


@given(tables(X, Y), tables(Y, Y))
def test_copairing_and_injections(f, g):
    c = F.copair(f, g)
    assert F.inj1(X, Y).then(c) == f
    assert F.inj2(X, Y).then(c) == g


@given(tables(X, Y), tables(Y, X))
def test_times_is_componentwise(f, g):
    t = F.times(f, g)
    for x, y in itertools.product(X, Y):
        assert t((x, y)) == (f(x), g(y))


def test_diagonal_and_codiagonal():
    assert F.diagonal(Y).mapping() == {"0": ("0", "0"), "1": ("1", "1")}
    assert F.codiagonal(Y)((1, "0")) == "0"


def test_eval_cartesian_fixture():
    prog = dsl.parse_file("fixtures/cartesian.sig")
    b = load_bindings("fixtures/cartesian_set.json")
    ft = F.eval_set(b, prog.signature, prog.term("twice"))
    assert ft.mapping() == {("0",): ("0",), ("1",): ("1",)}
    cs = F.eval_set(b, prog.signature, prog.term("copy_then_swap"))
    assert cs.mapping() == {("0",): ("0", "0"), ("1",): ("1", "1")}
    assert F.format_table(cs) == "0 -> (0,0)\n1 -> (1,1)"


def test_duals_are_rejected():
    sig = S.Signature.build(["Bit"])
    b = load_bindings("fixtures/cartesian_set.json")
    with pytest.raises(UnsupportedInBackend):
        F.eval_set(b, sig, S.Cup(S.Base("Bit")))


def test_table_parse_errors():
    with pytest.raises(BindingError):
        parse_bindings('{"backend": "finset", "objects": {"X": 3}}')
    with pytest.raises(BindingError):
        parse_bindings('{"backend": "finset", "objects": {"X": ["a"]}, "boxes": {"f": 3}}')
    with pytest.raises(BindingError):
        parse_bindings('{"backend": "finset", "objects": {"X": ["a"]}, "boxes": {"f": [[1]]}}')
