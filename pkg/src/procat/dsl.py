"""Line-oriented signature language.

::

    object A B           # one or more base objects
    box f : A -> B @ A^  # typed generator
    term t = f ; (id(B) @ cup(A))

``@`` is tensor, postfix ``^`` is dual, ``;`` is sequential composition and
binds looser than ``@``. Terms may mention boxes and earlier terms, plus the
derived forms ``name(e)``, ``unname(e[, obj])`` and ``transpose(e)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import signature as S
from .errors import ParseError, ProcatError, UnknownBox, UnknownObject, UnknownTerm

_TOKEN = re.compile(
    r"\s*(?:(?P<arrow>->)|(?P<ident>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[()@^;:,=]))"
)

_KEYWORDS = {
    "id", "sym", "cup", "cap", "dag", "name", "unname", "transpose",
    "assoc", "lunit", "runit", "I", "object", "box", "term",
}


@dataclass
class Program:
    signature: S.Signature
    terms: dict  # name -> Term, in declaration order
    term_lines: dict  # name -> line number

    def term(self, name: str) -> S.Term:
        try:
            return self.terms[name]
        except KeyError:
            raise UnknownTerm(f"no term named {name!r}") from None


class _Tokens:
    def __init__(self, text: str, line: int, col0: int = 0):
        self.items = []
        pos = col0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if m is None or m.end() == pos:
                col = pos + len(text[pos:]) - len(text[pos:].lstrip()) + 1
                raise ParseError(f"unexpected character {text[col - 1]!r}", (line, col))
            kind = m.lastgroup
            start = m.start(kind) + 1
            self.items.append((kind, m.group(kind), (line, start)))
            pos = m.end()
        self.i = 0
        self.line = line
        self.end_col = len(text) + 1

    def peek(self):
        if self.i < len(self.items):
            return self.items[self.i]
        return ("eof", "", (self.line, self.end_col))

    def next(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.next()
        if val != value:
            shown = "end of line" if kind == "eof" else repr(val)
            raise ParseError(f"expected {value!r}, found {shown}", pos)
        return pos

    def ident(self, what: str):
        kind, val, pos = self.next()
        if kind != "ident":
            shown = "end of line" if kind == "eof" else repr(val)
            raise ParseError(f"expected {what}, found {shown}", pos)
        return val, pos

    def at(self, value: str) -> bool:
        return self.peek()[1] == value

    def done(self):
        kind, val, pos = self.peek()
        if kind != "eof":
            raise ParseError(f"unexpected {val!r}", pos)


class _Parser:
    def __init__(self, objects, sig: S.Signature | None, terms: dict):
        self.objects = objects
        self.sig = sig
        self.terms = terms

    # objects ------------------------------------------------------------
    def obj(self, toks: _Tokens) -> S.ObjExpr:
        left = self.obj_atom(toks)
        while toks.at("@"):
            toks.next()
            left = S.Tensor(left, self.obj_atom(toks))
        return left

    def obj_atom(self, toks: _Tokens) -> S.ObjExpr:
        kind, val, pos = toks.peek()
        if val == "(":
            toks.next()
            out = self.obj(toks)
            toks.expect(")")
        elif kind == "ident":
            toks.next()
            if val == "I":
                out = S.Unit()
            else:
                if val not in self.objects:
                    raise UnknownObject(f"object {val!r} is not declared", pos)
                out = S.Base(val)
        else:
            shown = "end of line" if kind == "eof" else repr(val)
            raise ParseError(f"expected an object, found {shown}", pos)
        while toks.at("^"):
            toks.next()
            out = S.Dual(out)
        return out

    # terms --------------------------------------------------------------
    def expr(self, toks: _Tokens) -> S.Term:
        left = self.par(toks)
        while toks.at(";"):
            pos = toks.next()[2]
            left = S.Seq(left, self.par(toks), pos=pos)
        return left

    def par(self, toks: _Tokens) -> S.Term:
        left = self.atom(toks)
        while toks.at("@"):
            pos = toks.next()[2]
            left = S.Par(left, self.atom(toks), pos=pos)
        return left

    def _args(self, toks: _Tokens, kinds: str):
        toks.expect("(")
        out = []
        for i, k in enumerate(kinds):
            if k == "?":
                if toks.at(","):
                    toks.next()
                    out.append(self.obj(toks))
                else:
                    out.append(None)
                continue
            if i:
                toks.expect(",")
            out.append(self.obj(toks) if k == "o" else self.expr(toks))
        toks.expect(")")
        return out

    def atom(self, toks: _Tokens) -> S.Term:
        kind, val, pos = toks.peek()
        if val == "(":
            toks.next()
            out = self.expr(toks)
            toks.expect(")")
            return out
        if kind != "ident":
            shown = "end of line" if kind == "eof" else repr(val)
            raise ParseError(f"expected a term, found {shown}", pos)
        toks.next()
        if val == "id":
            (a,) = self._args(toks, "o")
            return S.Id(a, pos=pos)
        if val == "sym":
            a, b = self._args(toks, "oo")
            return S.Sym(a, b, pos=pos)
        if val == "cup":
            (a,) = self._args(toks, "o")
            return S.Cup(a, pos=pos)
        if val == "cap":
            (a,) = self._args(toks, "o")
            return S.Cap(a, pos=pos)
        if val == "dag":
            (e,) = self._args(toks, "e")
            return S.Dag(e, pos=pos)
        if val == "assoc":
            a, b, c = self._args(toks, "ooo")
            return S.Assoc(a, b, c, pos=pos)
        if val == "lunit":
            (a,) = self._args(toks, "o")
            return S.LUnit(a, pos=pos)
        if val == "runit":
            (a,) = self._args(toks, "o")
            return S.RUnit(a, pos=pos)
        if val in ("name", "unname", "transpose"):
            args = self._args(toks, "e?" if val == "unname" else "e")
            try:
                if val == "name":
                    return S.name(self.sig, args[0])
                if val == "transpose":
                    return S.transpose(self.sig, args[0])
                return S.unname(self.sig, args[0], args[1])
            except ProcatError as exc:
                if exc.pos is None:
                    exc.pos = pos
                raise
        if val in self.terms:
            return self.terms[val]
        if self.sig is not None and val in self.sig.boxes:
            return S.Box(val, pos=pos)
        raise UnknownBox(f"no box or term named {val!r}", pos)


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def parse(text: str) -> Program:
    """Parse and type-check a whole file.

    Objects and boxes are collected first, so their declaration order does
    not matter; terms are elaborated in file order.
    """
    lines = [_strip_comment(raw) for raw in text.splitlines()]
    objects: list[str] = []
    box_decls = []
    term_decls = []
    for lineno, line in enumerate(lines, start=1):
        toks = _Tokens(line, lineno)
        kind, val, pos = toks.peek()
        if kind == "eof":
            continue
        if val == "object":
            toks.next()
            if toks.peek()[0] == "eof":
                raise ParseError("expected an object name", toks.peek()[2])
            while toks.peek()[0] != "eof":
                name, npos = toks.ident("an object name")
                if name in _KEYWORDS:
                    raise ParseError(f"{name!r} is reserved", npos)
                if name in objects:
                    raise ParseError(f"object {name!r} declared twice", npos)
                objects.append(name)
                if toks.at(","):
                    toks.next()
        elif val == "box":
            box_decls.append((lineno, toks))
        elif val == "term":
            term_decls.append((lineno, toks))
        else:
            raise ParseError(
                f"expected 'object', 'box' or 'term', found {val!r}", pos
            )

    boxes = {}
    parser = _Parser(set(objects), None, {})
    for lineno, toks in box_decls:
        toks.next()
        name, npos = toks.ident("a box name")
        if name in _KEYWORDS:
            raise ParseError(f"{name!r} is reserved", npos)
        if name in boxes:
            raise ParseError(f"box {name!r} declared twice", npos)
        toks.expect(":")
        dom = parser.obj(toks)
        toks.expect("->")
        cod = parser.obj(toks)
        toks.done()
        boxes[name] = (dom, cod)
    sig = S.Signature(frozenset(objects), boxes)

    terms: dict = {}
    term_lines = {}
    parser = _Parser(set(objects), sig, terms)
    for lineno, toks in term_decls:
        toks.next()
        name, npos = toks.ident("a term name")
        if name in terms or name in boxes or name in _KEYWORDS:
            raise ParseError(f"term name {name!r} is already in use", npos)
        toks.expect("=")
        term = parser.expr(toks)
        toks.done()
        S.infer_type(sig, term)
        terms[name] = term
        term_lines[name] = lineno
    return Program(sig, terms, term_lines)


def parse_file(path) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
