"""Finite sets and total functions, with the cartesian product structure.

An element of a wire list ``[X, Y, ...]`` is a tuple with one label per
wire; the unit's only element is the empty tuple, shown as ``*``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import signature as S
from .errors import BindingError, TypeMismatch, UnboundBox, UnboundObject, UnsupportedInBackend


@dataclass(frozen=True)
class FunctionTable:
    dom: tuple  # carrier: tuple of elements
    cod: tuple
    table: tuple  # image of dom[i] is table[i]

    def __post_init__(self):
        if len(self.table) != len(self.dom):
            raise ValueError("a function table needs one image per domain element")
        codset = set(self.cod)
        for y in self.table:
            if y not in codset:
                raise ValueError(f"image {y!r} is outside the codomain")

    @classmethod
    def from_map(cls, dom, cod, fn) -> "FunctionTable":
        dom, cod = tuple(dom), tuple(cod)
        return cls(dom, cod, tuple(fn(x) for x in dom))

    def __call__(self, x):
        return self.table[self.dom.index(x)]

    def mapping(self) -> dict:
        return dict(zip(self.dom, self.table))

    def then(self, g: "FunctionTable") -> "FunctionTable":
        """``self`` followed by ``g``."""
        if set(self.cod) != set(g.dom):
            raise TypeMismatch("codomain and domain carriers differ")
        gm = g.mapping()
        return FunctionTable(self.dom, g.cod, tuple(gm[y] for y in self.table))

    def __eq__(self, other):
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (set(self.dom) == set(other.dom) and set(self.cod) == set(other.cod)
                and self.mapping() == other.mapping())

    def __hash__(self):
        return hash(frozenset(self.mapping().items()))


def identity(carrier) -> FunctionTable:
    carrier = tuple(carrier)
    return FunctionTable(carrier, carrier, carrier)


def all_functions(dom, cod):
    """Every total function ``dom -> cod`` (``len(cod) ** len(dom)`` of them)."""
    dom, cod = tuple(dom), tuple(cod)
    for images in product(cod, repeat=len(dom)):
        yield FunctionTable(dom, cod, images)


def show(x) -> str:
    if x == ():
        return "*"
    if isinstance(x, tuple):
        if len(x) == 1:
            return show(x[0])
        return "(" + ",".join(show(v) for v in x) + ")"
    return str(x)


# ---------------------------------------------------------------------------
# products and coproducts


def product_carrier(a, b) -> tuple:
    return tuple((x, y) for x in a for y in b)


def coproduct_carrier(a, b) -> tuple:
    return tuple((0, x) for x in a) + tuple((1, y) for y in b)


def proj1(a, b) -> FunctionTable:
    return FunctionTable.from_map(product_carrier(a, b), a, lambda p: p[0])


def proj2(a, b) -> FunctionTable:
    return FunctionTable.from_map(product_carrier(a, b), b, lambda p: p[1])


def pair(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    """``[f, g]: C -> A x B`` from ``f: C -> A`` and ``g: C -> B``."""
    if set(f.dom) != set(g.dom):
        raise TypeMismatch("pairing needs a common domain")
    return FunctionTable.from_map(f.dom, product_carrier(f.cod, g.cod), lambda c: (f(c), g(c)))


def inj1(a, b) -> FunctionTable:
    return FunctionTable.from_map(a, coproduct_carrier(a, b), lambda x: (0, x))


def inj2(a, b) -> FunctionTable:
    return FunctionTable.from_map(b, coproduct_carrier(a, b), lambda y: (1, y))


def copair(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    """``A + B -> C`` from ``f: A -> C`` and ``g: B -> C``."""
    if set(f.cod) != set(g.cod):
        raise TypeMismatch("copairing needs a common codomain")
    return FunctionTable.from_map(
        coproduct_carrier(f.dom, g.dom), f.cod, lambda t: f(t[1]) if t[0] == 0 else g(t[1])
    )


def diagonal(a) -> FunctionTable:
    return pair(identity(a), identity(a))


def codiagonal(a) -> FunctionTable:
    return copair(identity(a), identity(a))


def times(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    """``f x g = [f o p1, g o p2]``."""
    return pair(proj1(f.dom, g.dom).then(f), proj2(f.dom, g.dom).then(g))


# ---------------------------------------------------------------------------
# terms in Set


def carrier(b, ws) -> tuple:
    parts = []
    for w in ws:
        if w.sign != "+":
            raise UnsupportedInBackend(f"dual object {w} has no meaning in finset")
        try:
            parts.append(b.objects[w.base])
        except KeyError:
            raise UnboundObject(f"object {w.base!r} has no carrier") from None
    return tuple(product(*parts))


def eval_set(b, sig: S.Signature, t) -> FunctionTable:
    """Evaluate a term of the cartesian fragment as a function table."""
    if b.backend != "finset":
        raise UnsupportedInBackend(f"eval_set needs a finset binding, not {b.backend}")
    term = t.term if isinstance(t, S.TypedTerm) else t
    S.infer_type(sig, term)
    return _eval(b, sig, term)


def _eval(b, sig, t) -> FunctionTable:
    ws = lambda a: S.strictify(a, sig.objects)  # noqa: E731
    if isinstance(t, S.Id):
        return identity(carrier(b, ws(t.obj)))
    if isinstance(t, (S.Assoc, S.LUnit, S.RUnit)):
        return identity(carrier(b, S.infer_type(sig, t).dom))
    if isinstance(t, S.Box):
        dom, cod = sig.box_type(t.name, t.pos)
        try:
            raw = b.boxes[t.name]
        except KeyError:
            raise UnboundBox(f"box {t.name!r} has no function table") from None
        return _table_for(raw, carrier(b, dom), carrier(b, cod), t.name)
    if isinstance(t, S.Seq):
        return _eval(b, sig, t.first).then(_eval(b, sig, t.then))
    if isinstance(t, S.Par):
        f, g = _eval(b, sig, t.left), _eval(b, sig, t.right)
        k = len(f.dom[0]) if f.dom else 0
        dom = tuple(x + y for x in f.dom for y in g.dom)
        cod = tuple(x + y for x in f.cod for y in g.cod)
        return FunctionTable.from_map(dom, cod, lambda z: f(z[:k]) + g(z[k:]))
    if isinstance(t, S.Sym):
        a, c = ws(t.a), ws(t.b)
        dom = carrier(b, a + c)
        k = len(a)
        return FunctionTable.from_map(dom, carrier(b, c + a), lambda z: z[k:] + z[:k])
    raise UnsupportedInBackend(f"{type(t).__name__} is not in the cartesian fragment")


def _table_for(raw, dom, cod, name) -> FunctionTable:
    """Match a parsed table (keys as label tuples) against the carriers."""
    images = []
    for x in dom:
        if x not in raw:
            raise BindingError(f"no image for {show(x)}", f"$.boxes.{name}")
        y = raw[x]
        if y not in cod:
            raise BindingError(f"image {show(y)} of {show(x)} is not in the codomain",
                               f"$.boxes.{name}")
        images.append(y)
    return FunctionTable(dom, cod, tuple(images))


def _element(v, path) -> tuple:
    if v == "*":
        return ()
    if isinstance(v, list):
        return tuple(str(x) for x in v)
    if isinstance(v, (str, int)) and not isinstance(v, bool):
        return (str(v),)
    raise BindingError("labels are strings, integers, arrays or '*'", path)


def parse_table(doc, path) -> dict:
    """A table is either ``{"x": "y"}`` or a list of ``[input, output]`` pairs."""
    out = {}
    if isinstance(doc, dict):
        items = [(k, v, f"{path}.{k}") for k, v in doc.items()]
    elif isinstance(doc, list):
        items = []
        for i, pairv in enumerate(doc):
            if not (isinstance(pairv, list) and len(pairv) == 2):
                raise BindingError("expected an [input, output] pair", f"{path}[{i}]")
            items.append((pairv[0], pairv[1], f"{path}[{i}]"))
    else:
        raise BindingError("a function table is an object or a list of pairs", path)
    for k, v, p in items:
        out[_element(k, p)] = _element(v, p)
    return out


def dump_table(raw) -> list:
    if isinstance(raw, FunctionTable):
        raw = raw.mapping()
    return [[list(k), list(v)] for k, v in raw.items()]


def format_table(f: FunctionTable) -> str:
    return "\n".join(f"{show(x)} -> {show(y)}" for x, y in zip(f.dom, f.table))
