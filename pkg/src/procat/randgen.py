"""Seeded generation of random well-typed terms and matching bindings."""

from __future__ import annotations

import numpy as np

from . import signature as S
from .backends import Binding
from .signature import Wire


class TermGen:
    """Grow random terms over fresh boxes.

    Every box is created on demand with the type the generator needs, so any
    produced term type-checks against :meth:`signature`. ``max_width`` bounds
    the number of wires at every horizontal cut.
    """

    def __init__(self, rng: np.random.Generator, objects=("A", "B", "C"),
                 max_width: int = 3, duals: bool = True, prefix: str = "b"):
        self.rng = rng
        self.objects = tuple(objects)
        self.max_width = max_width
        self.duals = duals
        self.prefix = prefix
        self.boxes: dict = {}

    # signature ------------------------------------------------------------
    def signature(self) -> S.Signature:
        return S.Signature(
            frozenset(self.objects),
            {k: (S.from_wires(d), S.from_wires(c)) for k, (d, c) in self.boxes.items()},
        )

    def wire(self) -> Wire:
        sign = "-" if self.duals and self.rng.random() < 0.3 else "+"
        return Wire(str(self.rng.choice(self.objects)), sign)

    def wires(self, n: int) -> tuple:
        return tuple(self.wire() for _ in range(n))

    def fresh_box(self, dom, cod) -> S.Box:
        name = f"{self.prefix}{len(self.boxes)}"
        self.boxes[name] = (tuple(dom), tuple(cod))
        return S.Box(name)

    def binding(self, backend: str, max_dim: int = 4, dims: dict | None = None) -> Binding:
        rng = self.rng
        if dims is None:
            dims = {o: int(rng.integers(1, max_dim + 1)) for o in self.objects}
        mats = {}
        for name, (dom, cod) in self.boxes.items():
            rows = int(np.prod([dims[w.base] for w in cod], dtype=np.int64)) if cod else 1
            cols = int(np.prod([dims[w.base] for w in dom], dtype=np.int64)) if dom else 1
            mats[name] = random_matrix(rng, backend, rows, cols)
        return Binding(backend, dims, mats)

    # terms ----------------------------------------------------------------
    def term(self, dom=None, depth: int = 4) -> S.Term:
        if dom is None:
            dom = self.wires(int(self.rng.integers(0, self.max_width + 1)))
        return self._gen(tuple(dom), depth, 0)

    def _gen(self, dom, depth, extra) -> S.Term:
        r = self.rng.random()
        if depth <= 0 or r < 0.3:
            return self._leaf(dom, extra)
        if r < 0.65:
            t1 = self._gen(dom, depth - 1, extra)
            mid = S.infer_type(self.signature(), t1).cod
            return S.Seq(t1, self._gen(mid, depth - 1, extra))
        if r < 0.9:
            k = int(self.rng.integers(0, len(dom) + 1))
            t1 = self._gen(dom[:k], depth - 1, extra + len(dom) - k)
            c1 = S.infer_type(self.signature(), t1).cod
            t2 = self._gen(dom[k:], depth - 1, extra + len(c1))
            return S.Par(t1, t2)
        inner = self._gen(dom, depth - 1, extra)
        return S.Dag(S.dagger(inner))

    def _leaf(self, dom, extra) -> S.Term:
        limit = self.max_width - extra
        options = ["id", "box", "box"]
        if len(dom) >= 2:
            options.append("sym")
        caps = [i for i in range(len(dom) - 1) if dom[i] == dom[i + 1].flip()]
        if caps:
            options += ["cap", "cap"]
        if len(dom) + 2 <= limit:
            options += ["cup", "cup"]
            if dom:
                options += ["zigzag", "bent"]
        choice = options[int(self.rng.integers(len(options)))]
        if choice in ("zigzag", "bent"):
            i = int(self.rng.integers(0, len(dom)))
            return _pad(dom[:i], self._bend(dom[i], choice), dom[i + 1:])
        if choice == "id":
            return S.Id(S.from_wires(dom))
        if choice == "box":
            n_out = int(self.rng.integers(0, max(0, min(2, limit)) + 1))
            cod = self.wires(n_out)
            if self.rng.random() < 0.25:
                return S.Dag(self.fresh_box(cod, dom))
            return self.fresh_box(dom, cod)
        if choice == "sym":
            i = int(self.rng.integers(0, len(dom) - 1))
            j = int(self.rng.integers(i + 1, len(dom)))
            k = int(self.rng.integers(j + 1, len(dom) + 1))
            mid = S.Sym(S.from_wires(dom[i:j]), S.from_wires(dom[j:k]))
            return _pad(dom[:i], mid, dom[k:])
        if choice == "cap":
            i = caps[int(self.rng.integers(len(caps)))]
            return _pad(dom[:i], S.Cap(_wire_obj(dom[i + 1])), dom[i + 2:])
        i = int(self.rng.integers(0, len(dom) + 1))
        return _pad(dom[:i], S.Cup(_wire_obj(self.wire())), dom[i:])

    def _bend(self, w: Wire, kind: str) -> S.Term:
        """A yanked wire with a box on it, or a transposed box; input is ``w``."""
        a = _wire_obj(w)
        if kind == "bent":
            out = self.wire()
            f = self.fresh_box((out.flip(),), (w.flip(),))
            return S.transpose(self.signature(), f)
        g = self.fresh_box((w,), (w,))
        side = S.Sym(a, a.dual())
        return S.Seq(
            S.Par(S.Id(a), S.Cup(a)),
            S.Seq(S.Par(g, S.Id(S.Tensor(a.dual(), a))), S.Par(S.Seq(side, S.Cap(a)), S.Id(a))),
        )


def _wire_obj(w: Wire) -> S.ObjExpr:
    return S.Base(w.base) if w.sign == "+" else S.Dual(S.Base(w.base))


def _pad(before, mid: S.Term, after) -> S.Term:
    out = mid
    if before:
        out = S.Par(S.Id(S.from_wires(before)), out)
    if after:
        out = S.Par(out, S.Id(S.from_wires(after)))
    return out


def random_matrix(rng: np.random.Generator, backend: str, rows: int, cols: int) -> np.ndarray:
    """Entries from a small grid: complex parts in -2..2, booleans, naturals 0..2."""
    if backend == "mat-c":
        re = rng.integers(-2, 3, size=(rows, cols))
        im = rng.integers(-2, 3, size=(rows, cols))
        return (re + 1j * im).astype(np.complex128)
    if backend == "mat-b":
        return rng.random((rows, cols)) < 0.5
    if backend == "mat-n":
        return rng.integers(0, 3, size=(rows, cols)).astype(np.int64)
    raise ValueError(f"no random matrices for backend {backend!r}")
