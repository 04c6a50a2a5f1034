"""Deterministic text and Graphviz renderings of port graphs."""

from __future__ import annotations

from . import signature as S
from .graph import PortGraph

FORMATS = ("text", "dot")


def _port(p) -> str:
    tag = p[0]
    if tag in ("in", "out"):
        return f"{tag}{p[1]}"
    return f"#{p[1]}.{tag}{p[2]}"


def _node_label(node) -> str:
    if node.kind == "box":
        return f"dag({node.label})" if node.dagger else node.label
    return f"{node.kind} {node.label}"


def layers(g: PortGraph) -> dict:
    """Longest-path layer of every node, counting boundary inputs as layer 0."""
    src = g.sources_of()
    memo: dict = {}

    def depth(nid: int) -> int:
        if nid not in memo:
            best = 0
            for k in range(len(g.nodes[nid].ins)):
                s = src[("i", nid, k)]
                if s[0] == "o":
                    best = max(best, depth(s[1]))
            memo[nid] = best + 1
        return memo[nid]

    for nid in sorted(g.nodes):
        depth(nid)
    return memo


def to_text(g: PortGraph, indent: str = "") -> str:
    lines = [f"{indent}[{S.wires_str(g.dom)}] -> [{S.wires_str(g.cod)}]"]
    by_layer: dict = {}
    for nid, d in layers(g).items():
        by_layer.setdefault(d, []).append(nid)
    for d in sorted(by_layer):
        for j, nid in enumerate(sorted(by_layer[d])):
            node = g.nodes[nid]
            head = f"layer {d}:" if j == 0 else ""
            lines.append(
                f"{indent}{head:<9}#{nid} {_node_label(node)} : "
                f"[{S.wires_str(node.ins)}] -> [{S.wires_str(node.outs)}]"
            )
    if g.wires:
        lines.append(f"{indent}wires:")
        for s in sorted(g.wires, key=_port_order):
            lines.append(f"{indent}  {_port(s)} -> {_port(g.wires[s])} : {g.port_type(s)}")
    if g.loops:
        lines.append(f"{indent}loops: " + " ".join(f"loop({x})" for x in g.loops))
    for i, sc in enumerate(g.scalars):
        lines.append(f"{indent}scalar {i}:")
        lines.append(to_text(sc, indent + "  "))
    if not g.nodes and not g.wires and not g.loops and not g.scalars:
        lines.append(f"{indent}(empty diagram)")
    return "\n".join(lines)


def _port_order(p):
    return (0, p[1], 0) if p[0] == "in" else (1, p[1], p[2])


def _dot_body(g: PortGraph, prefix: str, out: list, indent: str) -> None:
    name = lambda p: (f"{prefix}{p[0]}{p[1]}" if p[0] in ("in", "out")  # noqa: E731
                      else f"{prefix}n{p[1]}")
    for k, w in enumerate(g.dom):
        out.append(f'{indent}{prefix}in{k} [shape=plaintext label="{w}"];')
    for k, w in enumerate(g.cod):
        out.append(f'{indent}{prefix}out{k} [shape=plaintext label="{w}"];')
    for nid in sorted(g.nodes):
        node = g.nodes[nid]
        shape = "box" if node.kind == "box" else ("invtriangle" if node.kind == "cup" else "triangle")
        out.append(f'{indent}{prefix}n{nid} [shape={shape} label="{_node_label(node)}"];')
    for s in sorted(g.wires, key=_port_order):
        t = g.wires[s]
        out.append(f'{indent}{name(s)} -> {name(t)} [label="{g.port_type(s)}"];')
    for i, x in enumerate(g.loops):
        out.append(f'{indent}{prefix}loop{i} [shape=circle label="loop({x})"];')
    for i, sc in enumerate(g.scalars):
        out.append(f"{indent}subgraph cluster_{prefix}s{i} {{")
        out.append(f'{indent}  label="scalar {i}";')
        _dot_body(sc, f"{prefix}s{i}_", out, indent + "  ")
        out.append(f"{indent}}}")


def to_dot(g: PortGraph, name: str = "diagram") -> str:
    out = [f"digraph {name} {{", "  rankdir=TB;"]
    _dot_body(g, "", out, "  ")
    out.append("}")
    return "\n".join(out)


def render(g: PortGraph, fmt: str = "text") -> str:
    if fmt == "text":
        return to_text(g)
    if fmt == "dot":
        return to_dot(g)
    raise ValueError(f"unknown format {fmt!r}; expected one of {', '.join(FORMATS)}")
