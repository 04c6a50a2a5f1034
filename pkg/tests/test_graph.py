from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import dsl
from procat import graph as G
from procat import signature as S
from procat.backends import evaluate, evaluate_graph
from procat.errors import ProcatError, TypeMismatch
from procat.randgen import TermGen

A = S.Base("A")
SIG = S.Signature.build(["A", "B"], {"f": ("A", "B"), "e": ("A", "A"), "s": ("I", "A")})
seeds = st.integers(0, 2**32 - 1)


def graph_of(t):
    return G.to_graph(SIG, t)


def test_identity_and_symmetry_make_no_nodes():
    g = graph_of(S.Id(A @ S.Base("B")) >> S.Sym(A, S.Base("B")))
    assert g.nodes == {}
    assert g.wires == {("in", 0): ("out", 1), ("in", 1): ("out", 0)}


def test_snake_normalizes_to_identity():
    for side, obj in (("left", A), ("right", S.Dual(A))):
        g, trace = G.normalize(graph_of(S.snake(A, side)))
        assert [s.rule for s in trace] == ["snake"]
        assert g.nodes == {} and g.wires == G.identity(g.dom).wires
        assert g.dom == S.strictify(obj)


def test_circle_is_extracted_as_loop():
    g, trace = G.normalize(graph_of(S.Cup(A) >> S.Cap(A)))
    assert [s.rule for s in trace] == ["loop-extract"]
    assert g.loops == ("A",)
    assert G.canonical_form(g).endswith("loop(A)")


def test_disconnected_effect_is_scalar_isolated():
    closed = S.Box("s") >> S.Dag(S.Box("s"))
    g, trace = G.normalize(graph_of(S.Par(S.Box("f"), closed)))
    assert [s.rule for s in trace] == ["scalar-isolate"]
    assert len(g.scalars) == 1 and len(g.boxes()) == 1


@given(seeds)
def test_normal_form_is_a_fixed_point_and_replays(seed):
    gen = TermGen(np.random.default_rng(seed))
    t = gen.term(depth=4)
    raw = G.to_graph(gen.signature(), t)
    raw.check()
    nf, trace = G.normalize(raw)
    nf.check()
    again, more = G.normalize(nf)
    assert more == []
    assert G.canonical_form(again) == G.canonical_form(nf)
    assert G.canonical_form(G.replay(raw, trace)) == G.canonical_form(nf)


@given(seeds)
def test_graph_contraction_matches_functorial_evaluation(seed):
    rng = np.random.default_rng(seed)
    gen = TermGen(rng)
    t = gen.term(depth=4)
    sig = gen.signature()
    b = gen.binding("mat-c", max_dim=3)
    direct = evaluate(b, sig, t)
    nf, _ = G.normalize(G.to_graph(sig, t))
    assert np.allclose(evaluate_graph(b, sig, nf), direct, atol=1e-9)


@given(seeds)
def test_canonical_form_ignores_node_numbering(seed):
    gen = TermGen(np.random.default_rng(seed))
    t = gen.term(depth=3)
    g = G.to_graph(gen.signature(), t)
    shift = 17
    nodes, wires = G._relabel(g, shift)
    moved = G.PortGraph(g.dom, g.cod, nodes, wires, g.loops, g.scalars)
    assert G.canonical_form(moved) == G.canonical_form(g)


def test_equal_verdicts():
    prog = dsl.parse_file("fixtures/compact.sig")
    sig = prog.signature
    assert G.equal(sig, prog.term("abc"), prog.term("a_bc")).verdict == "equal"
    assert G.equal(sig, prog.term("named"), prog.term("plain")).verdict == "equal"
    res = G.equal(sig, prog.term("endo"), prog.term("dag_e"))
    assert res.verdict == "inequal" and res.left != res.right
    with pytest.raises(TypeMismatch):
        G.equal(sig, prog.term("plain"), prog.term("dag_f"))


def test_tiny_budget_gives_unknown():
    t = S.Box("e") >> S.Box("e")
    assert G.equal(SIG, t, t, budget=1).verdict == "unknown"
    with pytest.raises(G.BudgetExceeded):
        G.canonical_form(graph_of(t), budget=1)


def test_bad_step_is_rejected():
    g = graph_of(S.Cup(A) >> S.Cap(A))
    (step,) = G.normalize(g)[1]
    with pytest.raises(ProcatError):
        G.apply_step(g, G.Step("snake", step.location))
    with pytest.raises(ProcatError):
        G.apply_step(g, G.Step("sym-elim", ()))
