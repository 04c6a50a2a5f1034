"""Typed syntax for the free dagger compact closed category over a signature.

Objects are expressions over declared base names, the unit ``I``, duals and
tensors. They are strictified into flat lists of signed wires, so the
associator and unitors carry no information and coherence holds by
construction. Morphisms are :class:`Term` trees; composition ``f >> g``
reads left to right ("f then g").

>>> sig = Signature.build(["A", "B"], {"f": ("A", "B")})
>>> t = infer_type(sig, Box("f") >> Id(Base("B")))
>>> wires_str(t.dom), wires_str(t.cod)
('A+', 'B+')
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Union

from .errors import TypeMismatch, UnknownBox, UnknownObject

# ---------------------------------------------------------------------------
# objects


class Wire(NamedTuple):
    base: str
    sign: str  # '+' or '-'

    def flip(self) -> "Wire":
        return Wire(self.base, "-" if self.sign == "+" else "+")

    def __str__(self) -> str:
        return f"{self.base}{self.sign}"


WireList = tuple  # tuple[Wire, ...]


def wires_str(ws: Iterable[Wire]) -> str:
    return " ".join(str(w) for w in ws)


def dual_wires(ws: WireList) -> WireList:
    return tuple(w.flip() for w in reversed(ws))


class ObjExpr:
    """Base for object expressions; ``a @ b`` is tensor, ``a.dual()`` the dual."""

    def __matmul__(self, other: "ObjExpr") -> "ObjExpr":
        return Tensor(self, other)

    def dual(self) -> "ObjExpr":
        return Dual(self)


@dataclass(frozen=True)
class Unit(ObjExpr):
    def __str__(self):
        return "I"


@dataclass(frozen=True)
class Base(ObjExpr):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Dual(ObjExpr):
    inner: ObjExpr

    def __str__(self):
        s = str(self.inner)
        return f"{s}^" if isinstance(self.inner, (Base, Unit, Dual)) else f"({s})^"


@dataclass(frozen=True)
class Tensor(ObjExpr):
    left: ObjExpr
    right: ObjExpr

    def __str__(self):
        return f"{self.left} @ {self.right}"


ObjLike = Union[ObjExpr, str]


def as_obj(x: ObjLike) -> ObjExpr:
    """Coerce ``"A"`` to ``Base("A")`` and ``"I"`` to ``Unit()``."""
    if isinstance(x, ObjExpr):
        return x
    if x == "I":
        return Unit()
    return Base(x)


def strictify(a: ObjExpr, objects: Iterable[str] | None = None) -> WireList:
    """Flatten an object expression into its signed wire list.

    When ``objects`` is given, every base name must be a member of it.
    """
    known = None if objects is None else frozenset(objects)

    def go(x: ObjExpr) -> WireList:
        if isinstance(x, Unit):
            return ()
        if isinstance(x, Base):
            if known is not None and x.name not in known:
                raise UnknownObject(f"object {x.name!r} is not declared")
            return (Wire(x.name, "+"),)
        if isinstance(x, Dual):
            return dual_wires(go(x.inner))
        if isinstance(x, Tensor):
            return go(x.left) + go(x.right)
        raise TypeError(f"not an object expression: {x!r}")

    return go(a)


def from_wires(ws: Iterable[Wire]) -> ObjExpr:
    """Inverse of :func:`strictify` up to bracketing: rebuild an expression."""
    parts = [Base(w.base) if w.sign == "+" else Dual(Base(w.base)) for w in ws]
    if not parts:
        return Unit()
    out = parts[0]
    for p in parts[1:]:
        out = Tensor(out, p)
    return out


def internal_hom(a: ObjExpr, b: ObjExpr) -> ObjExpr:
    """``A => B`` in a compact closed category is ``A^ @ B``."""
    return Tensor(Dual(a), b)


# ---------------------------------------------------------------------------
# signature


@dataclass(frozen=True)
class Signature:
    objects: frozenset
    boxes: Mapping[str, tuple[ObjExpr, ObjExpr]]

    def __post_init__(self):
        for name, (dom, cod) in self.boxes.items():
            for side in (dom, cod):
                try:
                    strictify(side, self.objects)
                except UnknownObject as exc:
                    raise UnknownObject(f"box {name!r}: {exc.message}") from None

    @classmethod
    def build(cls, objects: Iterable[str], boxes: Mapping[str, tuple] | None = None):
        parsed = {}
        for name, (dom, cod) in (boxes or {}).items():
            parsed[name] = (as_obj(dom), as_obj(cod))
        return cls(frozenset(objects), parsed)

    def box_type(self, name: str, pos=None) -> tuple[WireList, WireList]:
        try:
            dom, cod = self.boxes[name]
        except KeyError:
            raise UnknownBox(f"box {name!r} is not declared", pos) from None
        return strictify(dom, self.objects), strictify(cod, self.objects)


# ---------------------------------------------------------------------------
# terms


class Term:
    """Morphism syntax. ``f >> g`` is sequential, ``f @ g`` parallel."""

    def __rshift__(self, other: "Term") -> "Term":
        return Seq(self, other)

    def __matmul__(self, other: "Term") -> "Term":
        return Par(self, other)


_POS = dict(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Id(Term):
    obj: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Box(Term):
    name: str
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Seq(Term):
    first: Term
    then: Term
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Par(Term):
    left: Term
    right: Term
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Sym(Term):
    a: ObjExpr
    b: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Cup(Term):
    """Bell state ``I -> A^ @ A``."""

    obj: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Cap(Term):
    """Bell costate ``A^ @ A -> I``; the adjoint of :class:`Cup`."""

    obj: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Dag(Term):
    """Formal adjoint. Use :func:`dagger` to push it down to the boxes."""

    inner: Term
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class Assoc(Term):
    a: ObjExpr
    b: ObjExpr
    c: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class LUnit(Term):
    obj: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class RUnit(Term):
    obj: ObjExpr
    pos: tuple | None = field(**_POS)


@dataclass(frozen=True)
class TypedTerm:
    term: Term
    dom: WireList
    cod: WireList


def infer_type(sig: Signature, t: Term) -> TypedTerm:
    """Infer ``(dom, cod)`` bottom-up; raises on the first inconsistency."""
    dom, cod = _infer(sig, t)
    return TypedTerm(t, dom, cod)


def _obj(sig: Signature, a: ObjExpr, pos) -> WireList:
    try:
        return strictify(a, sig.objects)
    except UnknownObject as exc:
        raise UnknownObject(exc.message, pos) from None


def _infer(sig: Signature, t: Term) -> tuple[WireList, WireList]:
    if isinstance(t, Id):
        w = _obj(sig, t.obj, t.pos)
        return w, w
    if isinstance(t, Box):
        return sig.box_type(t.name, t.pos)
    if isinstance(t, Seq):
        d1, c1 = _infer(sig, t.first)
        d2, c2 = _infer(sig, t.then)
        if c1 != d2:
            raise TypeMismatch(
                f"cannot compose: left codomain is [{wires_str(c1)}] "
                f"but right domain is [{wires_str(d2)}]",
                t.pos, expected=c1, actual=d2,
            )
        return d1, c2
    if isinstance(t, Par):
        d1, c1 = _infer(sig, t.left)
        d2, c2 = _infer(sig, t.right)
        return d1 + d2, c1 + c2
    if isinstance(t, Sym):
        a, b = _obj(sig, t.a, t.pos), _obj(sig, t.b, t.pos)
        return a + b, b + a
    if isinstance(t, Cup):
        a = _obj(sig, t.obj, t.pos)
        return (), dual_wires(a) + a
    if isinstance(t, Cap):
        a = _obj(sig, t.obj, t.pos)
        return dual_wires(a) + a, ()
    if isinstance(t, Dag):
        d, c = _infer(sig, t.inner)
        return c, d
    if isinstance(t, Assoc):
        w = _obj(sig, t.a, t.pos) + _obj(sig, t.b, t.pos) + _obj(sig, t.c, t.pos)
        return w, w
    if isinstance(t, (LUnit, RUnit)):
        w = _obj(sig, t.obj, t.pos)
        return w, w
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# derived constructors


def depth(t: Term) -> int:
    """Nesting depth of composite constructors; generators and structure maps are 0."""
    if isinstance(t, Seq):
        return 1 + max(depth(t.first), depth(t.then))
    if isinstance(t, Par):
        return 1 + max(depth(t.left), depth(t.right))
    if isinstance(t, Dag):
        return 1 + depth(t.inner)
    return 0


def dagger(t: Term) -> Term:
    """Push the adjoint down to the generators.

    Sequential composites reverse, cups and caps swap, and a formal adjoint
    of a box is the only place a :class:`Dag` node survives.
    """
    if isinstance(t, Id):
        return t
    if isinstance(t, Box):
        return Dag(t)
    if isinstance(t, Dag):
        return t.inner
    if isinstance(t, Seq):
        return Seq(dagger(t.then), dagger(t.first))
    if isinstance(t, Par):
        return Par(dagger(t.left), dagger(t.right))
    if isinstance(t, Sym):
        return Sym(t.b, t.a)
    if isinstance(t, Cup):
        return Cap(t.obj)
    if isinstance(t, Cap):
        return Cup(t.obj)
    if isinstance(t, Assoc):
        return Id(Tensor(Tensor(t.a, t.b), t.c))
    if isinstance(t, (LUnit, RUnit)):
        return Id(t.obj)
    raise TypeError(f"not a term: {t!r}")


def _is_unit(a: ObjExpr) -> bool:
    if isinstance(a, Unit):
        return True
    if isinstance(a, Dual):
        return _is_unit(a.inner)
    if isinstance(a, Tensor):
        return _is_unit(a.left) and _is_unit(a.right)
    return False


def simplify(t: Term) -> Term:
    """Drop identities from composites and elaborate coherence maps.

    Purely syntactic: ``f >> id``, ``id >> f`` and ``id(I) @ f`` collapse.
    """
    if isinstance(t, Assoc):
        return Id(Tensor(Tensor(t.a, t.b), t.c))
    if isinstance(t, (LUnit, RUnit)):
        return Id(t.obj)
    if isinstance(t, Seq):
        f, g = simplify(t.first), simplify(t.then)
        if isinstance(f, Id):
            return g
        if isinstance(g, Id):
            return f
        return Seq(f, g)
    if isinstance(t, Par):
        f, g = simplify(t.left), simplify(t.right)
        if isinstance(f, Id) and _is_unit(f.obj):
            return g
        if isinstance(g, Id) and _is_unit(g.obj):
            return f
        if isinstance(f, Id) and isinstance(g, Id):
            return Id(Tensor(f.obj, g.obj))
        return Par(f, g)
    if isinstance(t, Dag):
        inner = simplify(t.inner)
        if isinstance(inner, Box):
            return Dag(inner)
        return simplify(dagger(inner))
    return t


def _types(sig: Signature, f: Term) -> tuple[ObjExpr, ObjExpr]:
    tt = infer_type(sig, f)
    return from_wires(tt.dom), from_wires(tt.cod)


def transpose(sig: Signature, f: Term) -> Term:
    """Cup/cap conjugate of ``f: A -> B``, of type ``B^ -> A^``."""
    a, b = _types(sig, f)
    return simplify(
        Par(Cup(a), Id(Dual(b)))
        >> Par(Par(Id(Dual(a)), f), Id(Dual(b)))
        >> Par(Id(Dual(a)), Cap(Dual(b)))
    )


def name(sig: Signature, f: Term) -> Term:
    """Map-state duality: ``f: A -> B`` becomes a state ``I -> A^ @ B``."""
    a, _ = _types(sig, f)
    return simplify(Cup(a) >> Par(Id(Dual(a)), f))


def unname(sig: Signature, t: Term, dom: ObjExpr | None = None) -> Term:
    """Recover ``A -> B`` from a state ``I -> A^ @ B``.

    ``dom`` is ``A``. When omitted, the largest prefix of the codomain that
    consists of negative wires is taken as ``A^``.
    """
    tt = infer_type(sig, t)
    if tt.dom:
        raise TypeMismatch(
            f"unname expects a state with empty domain, got [{wires_str(tt.dom)}]",
            getattr(t, "pos", None), expected=(), actual=tt.dom,
        )
    if dom is None:
        k = 0
        while k < len(tt.cod) and tt.cod[k].sign == "-":
            k += 1
        a_wires = dual_wires(tt.cod[:k])
    else:
        a_wires = strictify(dom, sig.objects)
        prefix = dual_wires(a_wires)
        if tt.cod[: len(prefix)] != prefix:
            raise TypeMismatch(
                f"state codomain [{wires_str(tt.cod)}] does not start with "
                f"[{wires_str(prefix)}]",
                getattr(t, "pos", None), expected=prefix, actual=tt.cod,
            )
    a = from_wires(a_wires)
    b = from_wires(tt.cod[len(a_wires):])
    return simplify(Par(Id(a), t) >> Par(Cap(Dual(a)), Id(b)))


def scalar_mul(s: Term, f: Term) -> Term:
    """``s . f`` realised as ``f @ s`` (right unitor is the identity here)."""
    return Par(f, s)


def snake(a: ObjExpr, orientation: str = "left") -> Term:
    """The zig-zag side of the yanking equation.

    ``left`` has type ``A -> A``::

        (1_A @ cup_A) ; ((sym(A, A^) ; cap_A) @ 1_A)

    ``right`` is the mirror zig-zag, of type ``A^ -> A^``::

        (cup_A @ 1_A^) ; (1_A^ @ (sym(A, A^) ; cap_A))
    """
    if orientation == "left":
        return Par(Id(a), Cup(a)) >> Par(Sym(a, Dual(a)) >> Cap(a), Id(a))
    if orientation == "right":
        return Par(Cup(a), Id(Dual(a))) >> Par(Id(Dual(a)), Sym(a, Dual(a)) >> Cap(a))
    raise ValueError(f"orientation must be 'left' or 'right', not {orientation!r}")


def term_str(t: Term) -> str:
    """Render a term back in the DSL's concrete syntax."""
    if isinstance(t, Id):
        return f"id({t.obj})"
    if isinstance(t, Box):
        return t.name
    if isinstance(t, Seq):
        return f"{term_str(t.first)} ; {term_str(t.then)}"
    if isinstance(t, Par):
        left, right = term_str(t.left), term_str(t.right)
        if isinstance(t.left, Seq):
            left = f"({left})"
        if isinstance(t.right, (Seq, Par)):
            right = f"({right})"
        return f"{left} @ {right}"
    if isinstance(t, Sym):
        return f"sym({t.a}, {t.b})"
    if isinstance(t, Cup):
        return f"cup({t.obj})"
    if isinstance(t, Cap):
        return f"cap({t.obj})"
    if isinstance(t, Dag):
        return f"dag({term_str(t.inner)})"
    if isinstance(t, Assoc):
        return f"assoc({t.a}, {t.b}, {t.c})"
    if isinstance(t, LUnit):
        return f"lunit({t.obj})"
    if isinstance(t, RUnit):
        return f"runit({t.obj})"
    raise TypeError(f"not a term: {t!r}")
