from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from procat import demos
from procat import graph as G
from procat import render as R
from procat import signature as S
from procat.randgen import TermGen

A = S.Base("A")
SIG = S.Signature.build(["A"], {"f": ("A", "A"), "s": ("I", "A")})


def test_text_of_raw_teleport():
    g = G.to_graph(SIG, (S.Id(A) @ S.Cup(A)) >> (S.Cap(S.Dual(A)) @ S.Id(A)))
    assert R.to_text(g) == "\n".join([
        "[A+] -> [A+]",
        "layer 1: #0 cup A : [] -> [A+ A-]",
        "layer 2: #1 cap A : [A+ A-] -> []",
        "wires:",
        "  in0 -> #1.i0 : A+",
        "  #0.o0 -> out0 : A+",
        "  #0.o1 -> #1.i1 : A-",
    ])


def test_empty_and_loop_rendering():
    assert R.to_text(G.identity(())) == "[] -> []\n(empty diagram)"
    g, _ = G.normalize(G.to_graph(SIG, S.Cup(A) >> S.Cap(A)))
    assert R.to_text(g).splitlines()[-1] == "loops: loop(A)"


def test_scalars_are_indented():
    g, _ = G.normalize(G.to_graph(SIG, S.Box("f") @ (S.Box("s") >> S.Dag(S.Box("s")))))
    text = R.to_text(g)
    assert "scalar 0:" in text
    assert "\n  [] -> []" in text


def test_layers_follow_longest_path():
    g = G.to_graph(SIG, S.Box("f") >> S.Box("f") >> S.Box("f"))
    assert sorted(R.layers(g).values()) == [1, 2, 3]


@given(st.integers(0, 2**32 - 1))
def test_renderings_are_deterministic(seed):
    gen = TermGen(np.random.default_rng(seed))
    t = gen.term(depth=3)
    g = G.to_graph(gen.signature(), t)
    for fmt in R.FORMATS:
        assert R.render(g, fmt) == R.render(g, fmt)
    dot = R.to_dot(g)
    assert dot.startswith("digraph") and dot.rstrip().endswith("}")


def test_unknown_format():
    with pytest.raises(ValueError):
        R.render(G.identity(()), "svg")


@pytest.mark.parametrize("name", demos.DEMOS)
def test_demos_succeed(name):
    rep = demos.run_demo(name)
    assert rep.ok and rep.name == name and rep.text


def test_teleport_demo_content():
    text = demos.teleport().text
    assert "snake" in text and "verdict: teleportation is the identity" in text


def test_classical_bit_sizes():
    assert demos.classical_bit(n=3, seed=1).ok


def test_unknown_demo():
    with pytest.raises(ValueError):
        demos.run_demo("bogus")
