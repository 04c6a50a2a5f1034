from __future__ import annotations

import pytest

from procat import dsl
from procat import signature as S
from procat.errors import ParseError, TypeMismatch, UnknownObject, UnknownTerm


SRC = """\
object A B C   # comments are ignored
box f : A -> B
box g : B -> C
box h : C -> A @ B
box k : B @ C -> I
term fg = f ; g
term loop = h ; (f @ id(B))
"""


def test_counts_and_order():
    prog = dsl.parse(SRC)
    assert len(prog.signature.objects) == 3
    assert set(prog.signature.boxes) == {"f", "g", "h", "k"}
    assert list(prog.terms) == ["fg", "loop"]


def test_semicolon_binds_looser_than_tensor():
    prog = dsl.parse("object A B\nbox f : A -> B\nterm t = f @ f ; id(B) @ id(B)")
    t = prog.term("t")
    assert isinstance(t, S.Seq)
    assert isinstance(t.first, S.Par)


def test_type_error_points_at_semicolon():
    with pytest.raises(TypeMismatch) as exc:
        dsl.parse("object A B\nbox f : A -> B\nterm t = f ; f")
    assert exc.value.pos == (3, 12)


def test_unknown_object_carries_name_and_position():
    with pytest.raises(UnknownObject) as exc:
        dsl.parse("object A\nbox f : A -> Zed")
    assert "Zed" in str(exc.value)
    assert exc.value.pos[0] == 2


def test_unknown_term():
    with pytest.raises(UnknownTerm):
        dsl.parse(SRC).term("missing")


@pytest.mark.parametrize("bad", [
    "objekt A",
    "object A\nbox f A -> A",
    "object A\nbox f : A -> A\nterm t = f ;",
    "object A A",
    "object A\nterm t = id(A",
])
def test_parse_errors(bad):
    with pytest.raises((ParseError, TypeMismatch)):
        dsl.parse(bad)


def test_terms_reference_earlier_terms_and_derived_forms():
    prog = dsl.parse(
        "object A B\nbox f : A -> B\n"
        "term n = name(f)\nterm back = unname(n)\nterm tt = transpose(transpose(f))\n"
        "term st = sym(A, B^) ; dag(sym(A, B^))\n"
    )
    sig = prog.signature
    assert S.infer_type(sig, prog.term("back")).dom == S.infer_type(sig, S.Box("f")).dom
    assert S.infer_type(sig, prog.term("tt")).cod == (S.Wire("B", "+"),)


def test_unit_and_coherence_keywords():
    prog = dsl.parse("object A\nterm u = lunit(A) ; runit(A) ; id(A @ I)\n"
                     "term a = assoc(A, A, A)\n")
    assert S.infer_type(prog.signature, prog.term("u")).dom == (S.Wire("A", "+"),)
