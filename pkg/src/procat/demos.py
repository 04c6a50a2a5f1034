"""Self-contained demonstrations; each returns its printout and a verdict."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import biproduct as BP
from . import dsl
from . import graph as G
from . import laws as L
from .backends import Binding, evaluate, evaluate_graph, format_matrix
from .randgen import random_matrix
from .render import to_text
from .semiring import BOOL, COMPLEX

DEMOS = ("teleport", "no-cloning", "no-cloning-rel", "scalar-commute", "classical-bit")

TELEPORT_SRC = """\
# Alice's qubit Q meets one half of a Bell pair; the Bell effect on
# Alice's side leaves the state on Bob's wire.
object Q
term teleport = (id(Q) @ cup(Q)) ; (cap(Q^) @ id(Q))
"""

SCALARS_SRC = """\
object A
box s : I -> I
box t : I -> I
term st = s ; t
term ts = t ; s
"""


@dataclass(frozen=True)
class DemoReport:
    name: str
    text: str
    ok: bool


def _int_vec(m: np.ndarray) -> str:
    return "(" + ",".join(str(int(np.real(x))) for x in m.reshape(-1)) + ")^T"


def teleport() -> DemoReport:
    prog = dsl.parse(TELEPORT_SRC)
    t = prog.term("teleport")
    g, trace = G.normalize(G.to_graph(prog.signature, t))
    b = Binding("mat-c", {"Q": 2})
    m = evaluate(b, prog.signature, t)
    mg = evaluate_graph(b, prog.signature, g)
    single_wire = (not g.nodes and not g.loops and not g.scalars
                   and g.wires == {("in", 0): ("out", 0)})
    exact_id = np.array_equal(m, np.eye(2)) and np.array_equal(mg, np.eye(2))
    lines = ["fixture:", TELEPORT_SRC.rstrip(), "", "trace:"]
    lines += [f"  {s}" for s in trace] or ["  (none)"]
    lines += ["", "normal form:", to_text(g), "", "mat-c, dim Q = 2:", format_matrix(m, COMPLEX)]
    ok = single_wire and exact_id
    lines.append(f"verdict: {'teleportation is the identity' if ok else 'FAILED'}")
    return DemoReport("teleport", "\n".join(lines), ok)


def no_cloning() -> DemoReport:
    r = L.no_cloning_fdhilb()
    w = r.witness
    lhs, rhs = w["lhs"], w["rhs"]
    ok = (not r.ok and np.array_equal(lhs, L.BELL) and np.array_equal(rhs, L.PRODUCT))
    lines = [
        "candidate: copy-in-basis diagonal X => X @ X in mat-c",
        "test morphism: f = (1,1)^T : 1 -> 2",
        f"f ; diag_2          = {_int_vec(lhs)}   (Bell state)",
        f"diag_1 ; (f @ f)    = {_int_vec(rhs)}   (product state)",
        f"naturality: {r.status} (expected FAIL)",
        f"verdict: {'no natural diagonal, as expected' if ok else 'UNEXPECTED'}",
    ]
    return DemoReport("no-cloning", "\n".join(lines), ok)


def no_cloning_rel() -> DemoReport:
    r = L.no_cloning_rel()
    res = L.run_law("naturality.no-cloning-mat-b")
    w = res.witness
    show = lambda rel: "{" + ", ".join(f"({a},{b})" for a, b in rel) + "}"  # noqa: E731
    lines = [
        "candidate: relational diagonal X => X @ X in mat-b",
        "test relation: R = {(*,0), (*,1)}",
        f"R ; diag          = {show(w['lhs_relation'])}",
        f"diag ; (R @ R)    = {show(w['rhs_relation'])}",
        f"naturality: {r.status} (expected FAIL)",
        f"verdict: {'no natural diagonal, as expected' if res.ok else 'UNEXPECTED'}",
    ]
    return DemoReport("no-cloning-rel", "\n".join(lines), res.ok)


def scalar_commute() -> DemoReport:
    prog = dsl.parse(SCALARS_SRC)
    sig = prog.signature
    eq = G.equal(sig, prog.term("st"), prog.term("ts"))
    b = Binding("mat-c", {"A": 1}, {"s": np.array([[2 + 1j]]), "t": np.array([[-1 + 3j]])})
    v1, v2 = evaluate(b, sig, prog.term("st")), evaluate(b, sig, prog.term("ts"))
    lines = [
        "fixture:", SCALARS_SRC.rstrip(), "",
        f"canonical(s ; t) = {eq.left}",
        f"canonical(t ; s) = {eq.right}",
        f"structural: {eq.verdict}",
        f"mat-c with s = 2+1i, t = -1+3i: {format_matrix(v1, COMPLEX)} vs {format_matrix(v2, COMPLEX)}",
    ]
    ok = bool(eq) and COMPLEX.allclose(v1, v2)
    lines.append(f"verdict: {'scalars commute' if ok else 'FAILED'}")
    return DemoReport("scalar-commute", "\n".join(lines), ok)


def classical_bit(n: int = 2, seed: int = 0) -> DemoReport:
    d = BP.dist(COMPLEX, 1, 1, n)
    fixture = L.classical_bit_fixture(COMPLEX, n)
    iso = L.check_iso(d, "mat-c")
    rng = np.random.default_rng(seed)
    cat = L.MatrixCat(COMPLEX, "mat-c")
    cand = L.NaturalityCandidate((L.arg(0) + L.arg(1)) @ L.arg(2),
                                 (L.arg(0) @ L.arg(2)) + (L.arg(1) @ L.arg(2)),
                                 lambda o: BP.dist(COMPLEX, *o), "dist")
    tuples = []
    for _ in range(20):
        f1 = random_matrix(rng, "mat-c", 1, 1)
        f2 = random_matrix(rng, "mat-c", 1, 1)
        g = random_matrix(rng, "mat-c", n, n)
        tuples.append((f1, f2, g))
    nat = L.check_naturality(cand, cat, tuples, "naturality.dist-classical-bit", seed)
    rel = BP.dist(BOOL, 1, 1, n)
    lines = [
        f"dist(1,1,{n}) : (I + I) @ Agent -> Agent + Agent, Agent of dim {n}",
        format_matrix(d, COMPLEX),
        f"permutation: {BP.is_permutation(rel)}",
        f"matches classical-bit encoding: {np.array_equal(d, fixture)}",
        f"iso: {iso.status} (inverse is the transpose: "
        f"{iso.ok and np.array_equal(iso.witness['inverse'], d.T)})",
        nat.line(),
    ]
    ok = (BP.is_permutation(rel) and np.array_equal(d, fixture) and iso.ok and nat.ok)
    lines.append(f"verdict: {'natural classical control' if ok else 'FAILED'}")
    return DemoReport("classical-bit", "\n".join(lines), ok)


_RUNNERS = {
    "teleport": teleport,
    "no-cloning": no_cloning,
    "no-cloning-rel": no_cloning_rel,
    "scalar-commute": scalar_commute,
    "classical-bit": classical_bit,
}


def run_demo(name: str) -> DemoReport:
    try:
        return _RUNNERS[name]()
    except KeyError:
        raise ValueError(f"unknown demo {name!r}; expected one of {', '.join(DEMOS)}") from None
