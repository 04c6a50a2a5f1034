"""Port-graph normal forms for terms.

A diagram is a set of nodes (boxes, elementary cups and caps) whose ports are
joined by wires. Each wire runs from a *source* (a boundary input or a node
out-port) to a *target* (a boundary output or a node in-port), and both ends
carry the same signed wire type. Identities and symmetries produce no nodes
at all, so interchange and symmetry sliding are equalities of the
representation itself.

:func:`normalize` removes every cup-cap contact (the snake rule), turns
closed cup-cap circles into symbolic loops and moves closed components that
contain boxes into the scalar multiset. :func:`canonical_form` then gives a
string that is equal for two normal forms exactly when they are isomorphic
relative to the boundary.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import NamedTuple

from . import signature as S
from .errors import ProcatError, TypeMismatch
from .signature import Wire

# Ports are plain tuples:
#   ("in", k)       boundary input k         (a source)
#   ("out", k)      boundary output k        (a target)
#   ("o", n, k)     out-port k of node n     (a source)
#   ("i", n, k)     in-port k of node n      (a target)


@dataclass(frozen=True)
class Node:
    kind: str  # "box" | "cup" | "cap"
    label: str  # box name, or base object name for cups and caps
    dagger: bool
    ins: tuple
    outs: tuple

    def key(self) -> str:
        flag = "+dag" if self.dagger else ""
        return (
            f"{self.kind}:{self.label}{flag}"
            f"[{S.wires_str(self.ins)}|{S.wires_str(self.outs)}]"
        )


def _cup_node(base: str) -> Node:
    return Node("cup", base, False, (), (Wire(base, "+"), Wire(base, "-")))


def _cap_node(base: str) -> Node:
    return Node("cap", base, False, (Wire(base, "+"), Wire(base, "-")), ())


@dataclass(frozen=True)
class PortGraph:
    """Immutable diagram. ``wires`` maps each source port to its target."""

    dom: tuple
    cod: tuple
    nodes: dict = field(hash=False)  # node id -> Node
    wires: dict = field(hash=False)  # source port -> target port
    loops: tuple = ()  # sorted base names of closed circles
    scalars: tuple = ()  # closed PortGraphs with empty boundary

    def sources_of(self) -> dict:
        return {t: s for s, t in self.wires.items()}

    def port_type(self, port) -> Wire:
        tag = port[0]
        if tag == "in":
            return self.dom[port[1]]
        if tag == "out":
            return self.cod[port[1]]
        node = self.nodes[port[1]]
        return (node.outs if tag == "o" else node.ins)[port[2]]

    def boxes(self) -> list:
        return [n for _, n in sorted(self.nodes.items()) if n.kind == "box"]

    def check(self) -> None:
        """Assert the structural invariants; used by tests."""
        sources = [("in", k) for k in range(len(self.dom))]
        targets = [("out", k) for k in range(len(self.cod))]
        for nid, node in self.nodes.items():
            sources += [("o", nid, k) for k in range(len(node.outs))]
            targets += [("i", nid, k) for k in range(len(node.ins))]
        assert sorted(self.wires) == sorted(sources), "every source has one wire"
        assert sorted(self.wires.values()) == sorted(targets), "every target has one wire"
        for s, t in self.wires.items():
            assert self.port_type(s) == self.port_type(t), (s, t)
        for sc in self.scalars:
            assert not sc.dom and not sc.cod
            sc.check()


# ---------------------------------------------------------------------------
# construction


def _shift(port, node_off: int, in_off: int, out_off: int):
    tag = port[0]
    if tag == "in":
        return ("in", port[1] + in_off)
    if tag == "out":
        return ("out", port[1] + out_off)
    return (tag, port[1] + node_off, port[2])


def _relabel(g: PortGraph, node_off: int, in_off: int = 0, out_off: int = 0):
    nodes = {nid + node_off: n for nid, n in g.nodes.items()}
    wires = {
        _shift(s, node_off, in_off, out_off): _shift(t, node_off, in_off, out_off)
        for s, t in g.wires.items()
    }
    return nodes, wires


def _next_id(g: PortGraph) -> int:
    return max(g.nodes, default=-1) + 1


def identity(ws) -> PortGraph:
    ws = tuple(ws)
    return PortGraph(ws, ws, {}, {("in", k): ("out", k) for k in range(len(ws))})


def box_graph(name: str, dom, cod, dagger: bool = False) -> PortGraph:
    node = Node("box", name, dagger, tuple(dom), tuple(cod))
    wires = {("in", k): ("i", 0, k) for k in range(len(dom))}
    wires.update({("o", 0, k): ("out", k) for k in range(len(cod))})
    return PortGraph(tuple(dom), tuple(cod), {0: node}, wires)


def compose(g1: PortGraph, g2: PortGraph) -> PortGraph:
    """Glue the outputs of ``g1`` to the inputs of ``g2``."""
    if g1.cod != g2.dom:
        raise TypeMismatch(
            f"cannot glue [{S.wires_str(g1.cod)}] onto [{S.wires_str(g2.dom)}]",
            expected=g1.cod, actual=g2.dom,
        )
    off = _next_id(g1)
    n2, w2 = _relabel(g2, off)
    nodes = dict(g1.nodes)
    nodes.update(n2)
    feed = {t[1]: s for s, t in g1.wires.items() if t[0] == "out"}
    wires = {s: t for s, t in g1.wires.items() if t[0] != "out"}
    for s, t in w2.items():
        if s[0] == "in":
            wires[feed[s[1]]] = t
        else:
            wires[s] = t
    return PortGraph(
        g1.dom, g2.cod, nodes, wires,
        tuple(sorted(g1.loops + g2.loops)), g1.scalars + g2.scalars,
    )


def tensor(g1: PortGraph, g2: PortGraph) -> PortGraph:
    off = _next_id(g1)
    n2, w2 = _relabel(g2, off, len(g1.dom), len(g1.cod))
    nodes = dict(g1.nodes)
    nodes.update(n2)
    wires = dict(g1.wires)
    wires.update(w2)
    return PortGraph(
        g1.dom + g2.dom, g1.cod + g2.cod, nodes, wires,
        tuple(sorted(g1.loops + g2.loops)), g1.scalars + g2.scalars,
    )


def _cup_graph(a) -> PortGraph:
    n = len(a)
    cod = S.dual_wires(a) + a
    nodes, wires = {}, {}
    for i, w in enumerate(a):
        nodes[i] = _cup_node(w.base)
        right, left = n + i, n - 1 - i
        pos_port, neg_port = (right, left) if w.sign == "+" else (left, right)
        wires[("o", i, 0)] = ("out", pos_port)
        wires[("o", i, 1)] = ("out", neg_port)
    return PortGraph((), cod, nodes, wires)


def _cap_graph(a) -> PortGraph:
    n = len(a)
    dom = S.dual_wires(a) + a
    nodes, wires = {}, {}
    for i, w in enumerate(a):
        nodes[i] = _cap_node(w.base)
        right, left = n + i, n - 1 - i
        pos_port, neg_port = (right, left) if w.sign == "+" else (left, right)
        wires[("in", pos_port)] = ("i", i, 0)
        wires[("in", neg_port)] = ("i", i, 1)
    return PortGraph(dom, (), nodes, wires)


def _sym_graph(a, b) -> PortGraph:
    na, nb = len(a), len(b)
    wires = {}
    for k in range(na):
        wires[("in", k)] = ("out", nb + k)
    for k in range(nb):
        wires[("in", na + k)] = ("out", k)
    return PortGraph(a + b, b + a, {}, wires)


def to_graph(sig: S.Signature, t) -> PortGraph:
    """Interpret a term (or :class:`TypedTerm`) as a port graph.

    Functorial by construction: sequential composition glues boundaries and
    parallel composition is disjoint union.
    """
    if isinstance(t, S.TypedTerm):
        t = t.term
    S.infer_type(sig, t)
    return _build(sig, t)


def _obj(sig, a):
    return S.strictify(a, sig.objects)


def _build(sig: S.Signature, t) -> PortGraph:
    if isinstance(t, S.Id):
        return identity(_obj(sig, t.obj))
    if isinstance(t, S.Box):
        dom, cod = sig.box_type(t.name, t.pos)
        return box_graph(t.name, dom, cod)
    if isinstance(t, S.Dag):
        if isinstance(t.inner, S.Box):
            dom, cod = sig.box_type(t.inner.name, t.inner.pos)
            return box_graph(t.inner.name, cod, dom, dagger=True)
        return _build(sig, S.dagger(t.inner))
    if isinstance(t, S.Seq):
        return compose(_build(sig, t.first), _build(sig, t.then))
    if isinstance(t, S.Par):
        return tensor(_build(sig, t.left), _build(sig, t.right))
    if isinstance(t, S.Sym):
        return _sym_graph(_obj(sig, t.a), _obj(sig, t.b))
    if isinstance(t, S.Cup):
        return _cup_graph(_obj(sig, t.obj))
    if isinstance(t, S.Cap):
        return _cap_graph(_obj(sig, t.obj))
    if isinstance(t, S.Assoc):
        return identity(_obj(sig, t.a) + _obj(sig, t.b) + _obj(sig, t.c))
    if isinstance(t, (S.LUnit, S.RUnit)):
        return identity(_obj(sig, t.obj))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# rewriting


RULES = ("snake", "loop-extract", "scalar-isolate", "identity-elim", "sym-elim")


class Step(NamedTuple):
    rule: str
    location: tuple

    def __str__(self) -> str:
        return f"{self.rule} {self.location}"


def _find_contact(g: PortGraph):
    for s, t in sorted(g.wires.items()):
        if s[0] == "o" and t[0] == "i":
            if g.nodes[s[1]].kind == "cup" and g.nodes[t[1]].kind == "cap":
                return s, t
    return None


def _contract(g: PortGraph, cup_port, cap_port) -> tuple[PortGraph, Step]:
    """Remove one cup-cap contact, yanking the wire straight."""
    c, p = cup_port[1], cup_port[2]
    k, q = cap_port[1], cap_port[2]
    if g.wires.get(cup_port) != cap_port:
        raise ProcatError(f"no wire between cup {c} and cap {k}")
    other_cup = ("o", c, 1 - p)
    other_cap = ("i", k, 1 - q)
    x = g.wires[other_cup]
    y = g.sources_of()[other_cap]
    wires = dict(g.wires)
    nodes = dict(g.nodes)
    del wires[cup_port], wires[other_cup]
    del nodes[c], nodes[k]
    loops = g.loops
    if x == other_cap:
        loops = tuple(sorted(loops + (g.nodes[c].label,)))
        rule = "loop-extract"
    else:
        del wires[y]
        wires[y] = x
        rule = "snake"
    out = PortGraph(g.dom, g.cod, nodes, wires, loops, g.scalars)
    return out, Step(rule, (c, p, k, q))


def _components(g: PortGraph):
    """Connected components of nodes that touch no boundary port."""
    parent = {nid: nid for nid in g.nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    anchored = set()
    for s, t in g.wires.items():
        a = s[1] if s[0] == "o" else None
        b = t[1] if t[0] == "i" else None
        if a is not None and b is not None:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
        elif a is not None:
            anchored.add(a)
        elif b is not None:
            anchored.add(b)
    anchored_roots = {find(a) for a in anchored}
    groups: dict = {}
    for nid in sorted(g.nodes):
        r = find(nid)
        if r not in anchored_roots:
            groups.setdefault(r, []).append(nid)
    return [tuple(v) for _, v in sorted(groups.items())]


def _extract(g: PortGraph, ids) -> tuple[PortGraph, PortGraph]:
    ids = set(ids)
    inner_nodes = {n: g.nodes[n] for n in sorted(ids)}
    inner_wires = {s: t for s, t in g.wires.items() if s[1] in ids and s[0] == "o"}
    closed = PortGraph((), (), inner_nodes, inner_wires)
    rest_nodes = {n: v for n, v in g.nodes.items() if n not in ids}
    rest_wires = {s: t for s, t in g.wires.items() if s not in inner_wires}
    rest = PortGraph(g.dom, g.cod, rest_nodes, rest_wires, g.loops, g.scalars + (closed,))
    return rest, closed


def apply_step(g: PortGraph, step: Step) -> PortGraph:
    if step.rule in ("snake", "loop-extract"):
        c, p, k, q = step.location
        out, done = _contract(g, ("o", c, p), ("i", k, q))
        if done.rule != step.rule:
            raise ProcatError(f"step {step} does not apply: it is a {done.rule}")
        return out
    if step.rule == "scalar-isolate":
        return _extract(g, step.location)[0]
    raise ProcatError(f"rule {step.rule!r} does not rewrite port graphs")


def replay(g: PortGraph, trace) -> PortGraph:
    for step in trace:
        g = apply_step(g, step)
    return g


def normalize(g: PortGraph) -> tuple[PortGraph, list]:
    """Rewrite to the fixed point; returns the normal form and its trace.

    Each snake or loop step removes two nodes and each scalar step removes a
    closed component from the body, so the process terminates.
    """
    trace = []
    while True:
        hit = _find_contact(g)
        if hit is None:
            break
        g, step = _contract(g, *hit)
        trace.append(step)
    for comp in _components(g):
        g, _ = _extract(g, comp)
        trace.append(Step("scalar-isolate", comp))
    if trace:
        g = PortGraph(
            g.dom, g.cod, g.nodes, g.wires, g.loops,
            tuple(sorted(g.scalars, key=_closed_key)),
        )
    return g, trace


def isolate_scalars(g: PortGraph) -> tuple[Counter, PortGraph]:
    """Split ``g`` into its closed parts (as a multiset) and its open body.

    Multiset keys are canonical strings of closed components and
    ``loop(X)`` for circles, so placement of scalars is forgotten.
    """
    for comp in _components(g):
        g, _ = _extract(g, comp)
    part = Counter(f"loop({x})" for x in g.loops)
    part.update(_closed_key(sc) for sc in g.scalars)
    body = PortGraph(g.dom, g.cod, g.nodes, g.wires)
    return part, body


# ---------------------------------------------------------------------------
# canonical form


class BudgetExceeded(ProcatError):
    kind = "BudgetExceeded"


DEFAULT_BUDGET = 200_000


class _Budget:
    def __init__(self, limit: int):
        self.left = limit

    def spend(self, n: int = 1):
        self.left -= n
        if self.left < 0:
            raise BudgetExceeded("automorphism search budget exhausted")


def _traverse(g: PortGraph, starts, origin, budget: _Budget):
    """Number nodes in discovery order, following wires from ``starts``.

    ``starts`` is a list of ports (boundary ports) or ``origin`` a node id
    that receives number 0. Every port has exactly one partner, so the order
    is fully determined by the starting point.
    """
    src_of = g.sources_of()
    order: dict = {}
    queue: deque = deque()

    def visit(port):
        if port[0] in ("o", "i") and port[1] not in order:
            order[port[1]] = len(order)
            queue.append(port[1])

    if origin is not None:
        order[origin] = 0
        queue.append(origin)
    for port in starts:
        if port[0] == "in":
            visit(g.wires[port])
        else:
            visit(src_of[port])
        while queue:
            _expand(g, src_of, queue, visit, budget)
    while queue:
        _expand(g, src_of, queue, visit, budget)
    return order


def _expand(g, src_of, queue, visit, budget):
    nid = queue.popleft()
    budget.spend()
    node = g.nodes[nid]
    for k in range(len(node.ins)):
        visit(src_of[("i", nid, k)])
    for k in range(len(node.outs)):
        visit(g.wires[("o", nid, k)])


def _encode(g: PortGraph, order: dict) -> str:
    def name(port):
        if port[0] in ("in", "out"):
            return f"{port[0]}{port[1]}"
        return f"n{order[port[1]]}.{port[0]}{port[2]}"

    rank = sorted(order, key=order.get)
    parts = [f"n{i}={g.nodes[nid].key()}" for i, nid in enumerate(rank)]
    ws = sorted(
        f"{name(s)}>{name(t)}" for s, t in g.wires.items()
        if (s[0] == "in" or s[1] in order) and (t[0] == "out" or t[1] in order)
    )
    return ";".join(parts) + "|" + ",".join(ws)


def _closed_canon(g: PortGraph, ids, budget: _Budget) -> str:
    best = None
    for start in ids:
        order = _traverse(g, [], start, budget)
        enc = _encode(g, order)
        if best is None or enc < best:
            best = enc
    return "{" + best + "}"


def _closed_key(sc: PortGraph, budget: _Budget | None = None) -> str:
    return _closed_canon(sc, sorted(sc.nodes), budget or _Budget(DEFAULT_BUDGET))


def canonical_form(g: PortGraph, budget: int = DEFAULT_BUDGET) -> str:
    """Text key equal for two graphs iff they are boundary-isomorphic.

    Closed components still inside the body are keyed just like isolated
    scalars, so an un-normalized graph yields a key as well.
    """
    b = _Budget(budget)
    starts = [("in", k) for k in range(len(g.dom))] + [("out", k) for k in range(len(g.cod))]
    order = _traverse(g, starts, None, b)
    head = f"dom[{S.wires_str(g.dom)}] cod[{S.wires_str(g.cod)}]"
    body = _encode(g, order)
    closed = []
    rest = [nid for nid in g.nodes if nid not in order]
    if rest:
        for comp in _components(g):
            closed.append(_closed_canon(g, comp, b))
    closed += [_closed_canon(sc, sorted(sc.nodes), b) for sc in g.scalars]
    closed.extend(f"loop({x})" for x in g.loops)
    return f"{head} :: {body} :: " + " ".join(sorted(closed))


# ---------------------------------------------------------------------------
# equality


@dataclass(frozen=True)
class Equality:
    verdict: str  # "equal" | "inequal" | "unknown"
    left: str | None
    right: str | None

    def __bool__(self) -> bool:
        return self.verdict == "equal"


def equal(sig: S.Signature, t1, t2, budget: int = DEFAULT_BUDGET) -> Equality:
    """Decide equality in the free dagger compact closed category.

    Both sides are normalized and compared by canonical form; the canonical
    strings are returned as the witness.
    """
    a = t1 if isinstance(t1, S.TypedTerm) else S.infer_type(sig, t1)
    b = t2 if isinstance(t2, S.TypedTerm) else S.infer_type(sig, t2)
    if (a.dom, a.cod) != (b.dom, b.cod):
        raise TypeMismatch(
            f"terms have different types: [{S.wires_str(a.dom)}] -> [{S.wires_str(a.cod)}]"
            f" vs [{S.wires_str(b.dom)}] -> [{S.wires_str(b.cod)}]",
            expected=(a.dom, a.cod), actual=(b.dom, b.cod),
        )
    g1, _ = normalize(to_graph(sig, a.term))
    g2, _ = normalize(to_graph(sig, b.term))
    try:
        k1 = canonical_form(g1, budget)
        k2 = canonical_form(g2, budget)
    except BudgetExceeded:
        return Equality("unknown", None, None)
    return Equality("equal" if k1 == k2 else "inequal", k1, k2)
