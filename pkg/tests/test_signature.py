from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import signature as S
from procat.errors import TypeMismatch, UnknownBox, UnknownObject
from procat.signature import Wire

A, B = S.Base("A"), S.Base("B")
SIG = S.Signature.build(["A", "B"], {"f": ("A", "B"), "g": ("B", A @ B), "e": ("A", "A")})

wires = st.lists(st.builds(Wire, st.sampled_from("AB"), st.sampled_from("+-")), max_size=5)


def test_strictify_flattens_and_dualizes():
    obj = S.Tensor(S.Dual(S.Tensor(A, B)), S.Unit())
    assert S.strictify(obj) == (Wire("B", "-"), Wire("A", "-"))
    assert S.strictify(S.Dual(S.Dual(A))) == (Wire("A", "+"),)


def test_strictify_rejects_undeclared():
    with pytest.raises(UnknownObject):
        S.strictify(S.Base("Z"), {"A"})


@given(wires)
def test_dual_is_involutive(ws):
    ws = tuple(ws)
    assert S.dual_wires(S.dual_wires(ws)) == ws
    assert S.strictify(S.from_wires(ws)) == ws
    assert S.strictify(S.from_wires(ws).dual()) == S.dual_wires(ws)


def test_infer_types_of_structure():
    assert S.infer_type(SIG, S.Cup(A)).cod == (Wire("A", "-"), Wire("A", "+"))
    assert S.infer_type(SIG, S.Cap(A)).dom == (Wire("A", "-"), Wire("A", "+"))
    t = S.infer_type(SIG, S.Sym(A, B))
    assert (t.dom, t.cod) == ((Wire("A", "+"), Wire("B", "+")), (Wire("B", "+"), Wire("A", "+")))
    assert S.infer_type(SIG, S.Dag(S.Box("f"))).dom == (Wire("B", "+"),)


def test_seq_type_mismatch_reports_both_sides():
    with pytest.raises(TypeMismatch) as exc:
        S.infer_type(SIG, S.Box("f") >> S.Box("f"))
    assert exc.value.expected == (Wire("B", "+"),)
    assert exc.value.actual == (Wire("A", "+"),)


def test_unknown_box():
    with pytest.raises(UnknownBox):
        S.infer_type(SIG, S.Box("nope"))


def test_dagger_pushdown():
    t = S.Box("f") >> S.Box("g")
    d = S.dagger(t)
    assert d == S.Seq(S.Dag(S.Box("g")), S.Dag(S.Box("f")))
    assert S.dagger(S.Cup(A)) == S.Cap(A)
    assert S.dagger(S.Sym(A, B)) == S.Sym(B, A)
    assert S.dagger(d) == t


def test_name_of_identity_is_cup():
    assert S.name(SIG, S.Id(A)) == S.Cup(A)


def test_unname_needs_a_state():
    with pytest.raises(TypeMismatch):
        S.unname(SIG, S.Box("f"))


def test_derived_constructor_types():
    tt = S.infer_type(SIG, S.transpose(SIG, S.Box("f")))
    assert (tt.dom, tt.cod) == ((Wire("B", "-"),), (Wire("A", "-"),))
    nt = S.infer_type(SIG, S.name(SIG, S.Box("f")))
    assert (nt.dom, nt.cod) == ((), (Wire("A", "-"), Wire("B", "+")))
    un = S.infer_type(SIG, S.unname(SIG, S.name(SIG, S.Box("f"))))
    assert (un.dom, un.cod) == ((Wire("A", "+"),), (Wire("B", "+"),))
    for side in ("left", "right"):
        s = S.infer_type(SIG, S.snake(A, side))
        assert s.dom == s.cod


def test_depth():
    assert S.depth(S.Box("f")) == 0
    assert S.depth(S.Box("f") >> (S.Id(B) @ S.Cup(A))) == 2
    assert S.depth(S.Dag(S.Box("f"))) == 1


def test_term_str_roundtrips_through_the_parser():
    from procat import dsl

    t = (S.Box("f") @ S.Cup(A)) >> S.Par(S.Id(B), S.Par(S.Id(S.Dual(A)), S.Dag(S.Box("e"))))
    text = "object A B\nbox f : A -> B\nbox e : A -> A\nterm t = " + S.term_str(t)
    again = dsl.parse(text).term("t")
    assert S.infer_type(SIG, again) == S.infer_type(SIG, t)
    assert S.term_str(again) == S.term_str(t)
