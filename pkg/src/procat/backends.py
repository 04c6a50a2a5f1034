"""Evaluation of terms and port graphs as matrices over a semiring.

Three matrix backends ship: ``mat-c`` (complex numbers, standing in for
finite dimensional Hilbert spaces), ``mat-b`` (booleans, i.e. relations) and
``mat-n`` (natural numbers). A :class:`Binding` fixes a dimension for every
base object and a matrix for every box; matrices are ``dim(cod) x dim(dom)``
and act on column vectors, so ``f ; g`` evaluates to ``G @ F``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import count
from typing import Mapping

import numpy as np

from . import graph as G
from . import signature as S
from .errors import (
    BindingError,
    CapExceeded,
    ShapeMismatch,
    TypeMismatch,
    UnboundBox,
    UnboundObject,
    UnsupportedInBackend,
)
from .semiring import BOOL, COMPLEX, NAT, Semiring

MATRIX_BACKENDS = ("mat-c", "mat-b", "mat-n")


@dataclass(frozen=True)
class MatrixBackend:
    """Compact closed category of matrices: objects are dimensions."""

    name: str
    semiring: Semiring

    def identity(self, n: int) -> np.ndarray:
        return self.semiring.eye(n)

    def compose(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """``f`` then ``g``."""
        return self.semiring.matmul(g, f)

    def tensor(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        return self.semiring.kron(f, g)

    def sym(self, dims_a, dims_b) -> np.ndarray:
        """Permutation ``A (x) B -> B (x) A``; ``dims_*`` are wire dimension lists."""
        return self.permutation(list(dims_a) + list(dims_b),
                                list(range(len(dims_a), len(dims_a) + len(dims_b)))
                                + list(range(len(dims_a))))

    def permutation(self, dims, order) -> np.ndarray:
        """Matrix sending wire ``order[j]`` of the input to output position ``j``."""
        total = int(np.prod(dims, dtype=np.int64)) if dims else 1
        idx = np.arange(total).reshape(tuple(dims) if dims else ())
        out_idx = np.transpose(idx, order).reshape(-1) if dims else idx.reshape(-1)
        m = self.semiring.zeros(total, total)
        for row, col in enumerate(out_idx):
            m[row, col] = self.semiring.one
        return m

    def cup(self, dims) -> np.ndarray:
        """Column for ``I -> A^ (x) A``; the dual's wires are in reverse order."""
        dims = list(dims)
        n = len(dims)
        total = int(np.prod(dims, dtype=np.int64)) if dims else 1
        eye = np.arange(total)
        col = self.semiring.zeros(total * total, 1)
        if n == 0:
            col[0, 0] = self.semiring.one
            return col
        for flat in eye:
            multi = np.unravel_index(flat, dims)
            rev = np.ravel_multi_index(tuple(reversed(multi)), tuple(reversed(dims)))
            col[int(rev) * total + int(flat), 0] = self.semiring.one
        return col

    def cap(self, dims) -> np.ndarray:
        return self.semiring.adjoint(self.cup(dims))

    def loop_value(self, d: int):
        acc = self.semiring.zero
        for _ in range(d):
            acc = self.semiring.add(acc, self.semiring.one)
        return acc


BACKENDS = {
    "mat-c": MatrixBackend("mat-c", COMPLEX),
    "mat-b": MatrixBackend("mat-b", BOOL),
    "mat-n": MatrixBackend("mat-n", NAT),
}


def backend(name: str) -> MatrixBackend:
    try:
        return BACKENDS[name]
    except KeyError:
        raise UnsupportedInBackend(
            f"unknown matrix backend {name!r}; expected one of {', '.join(BACKENDS)}"
        ) from None


# ---------------------------------------------------------------------------
# bindings


@dataclass(frozen=True)
class Binding:
    backend: str
    objects: Mapping[str, object]  # name -> dimension, or label list for finset
    boxes: Mapping[str, object] = field(default_factory=dict)

    @property
    def semiring(self) -> Semiring:
        return backend(self.backend).semiring


def dim(b: Binding, ws) -> int:
    """Dimension of a wire list: product of base dimensions, 1 when empty."""
    out = 1
    for w in ws:
        try:
            d = b.objects[w.base]
        except KeyError:
            raise UnboundObject(f"object {w.base!r} has no dimension") from None
        out *= d if isinstance(d, int) else len(d)
    return out


def _wire_dims(b: Binding, ws) -> list[int]:
    return [dim(b, (w,)) for w in ws]


def _entry(value, semiring: Semiring, path: str):
    if semiring is COMPLEX:
        if isinstance(value, (int, float)) and not isinstance(value, bool):
            return complex(value)
        if (isinstance(value, list) and len(value) == 2
                and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
            return complex(value[0], value[1])
        raise BindingError("complex entries are numbers or [re, im] pairs", path)
    if semiring is BOOL:
        if value in (0, 1) and not isinstance(value, float):
            return bool(value)
        raise BindingError("boolean entries must be 0 or 1", path)
    if isinstance(value, int) and not isinstance(value, bool) and value >= 0:
        return value
    raise BindingError("natural-number entries must be non-negative integers", path)


def _matrix(rows, semiring: Semiring, path: str) -> np.ndarray:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise BindingError("a matrix is a list of row arrays", path)
    width = len(rows[0]) if rows else 0
    out = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise BindingError(f"row has {len(row)} entries, expected {width}", f"{path}[{i}]")
        out.append([_entry(v, semiring, f"{path}[{i}][{j}]") for j, v in enumerate(row)])
    arr = np.empty((len(rows), width), dtype=semiring.dtype)
    for i, row in enumerate(out):
        for j, v in enumerate(row):
            arr[i, j] = v
    return arr


def parse_bindings(text: str, source: str = "<bindings>") -> Binding:
    """Parse a JSON bindings document; errors carry a JSON path or line."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        err = BindingError(exc.msg, "$", (exc.lineno, exc.colno))
        err.source = source
        raise err from None
    if not isinstance(doc, dict):
        raise BindingError("top level must be an object", "$")
    name = doc.get("backend")
    if name not in MATRIX_BACKENDS + ("finset",):
        raise BindingError(
            f"backend must be one of {', '.join(MATRIX_BACKENDS + ('finset',))}", "$.backend"
        )
    objs = doc.get("objects", {})
    if not isinstance(objs, dict):
        raise BindingError("must be an object", "$.objects")
    objects = {}
    for k, v in objs.items():
        path = f"$.objects.{k}"
        if name == "finset":
            if not isinstance(v, list):
                raise BindingError("finset objects are label lists", path)
            objects[k] = tuple(str(x) for x in v)
        else:
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise BindingError("dimension must be a non-negative integer", path)
            objects[k] = v
    raw_boxes = doc.get("boxes", {})
    if not isinstance(raw_boxes, dict):
        raise BindingError("must be an object", "$.boxes")
    boxes = {}
    for k, v in raw_boxes.items():
        path = f"$.boxes.{k}"
        if name == "finset":
            from .finset import parse_table

            boxes[k] = parse_table(v, path)
        else:
            boxes[k] = _matrix(v, BACKENDS[name].semiring, path)
    return Binding(name, objects, boxes)


def load_bindings(path) -> Binding:
    with open(path, encoding="utf-8") as fh:
        return parse_bindings(fh.read(), str(path))


def dump_bindings(b: Binding) -> str:
    """Serialize back to the bindings file format (used for witnesses)."""
    def enc(m: np.ndarray):
        rows = []
        for row in m:
            if b.backend == "mat-c":
                rows.append([[float(np.real(x)), float(np.imag(x))] for x in row])
            else:
                rows.append([int(x) for x in row])
        return rows

    doc = {"backend": b.backend, "objects": dict(b.objects)}
    if b.backend == "finset":
        from .finset import dump_table

        doc["objects"] = {k: list(v) for k, v in b.objects.items()}
        doc["boxes"] = {k: dump_table(v) for k, v in b.boxes.items()}
    else:
        doc["boxes"] = {k: enc(v) for k, v in b.boxes.items()}
    return json.dumps(doc, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# term evaluation


def _box_matrix(b: Binding, sig: S.Signature, name: str, dagger: bool) -> np.ndarray:
    try:
        m = b.boxes[name]
    except KeyError:
        raise UnboundBox(f"box {name!r} has no matrix") from None
    dom, cod = sig.box_type(name)
    want = (dim(b, cod), dim(b, dom))
    if m.shape != want:
        raise ShapeMismatch(f"box {name!r} is bound to a {m.shape} matrix, expected {want}")
    return b.semiring.adjoint(m) if dagger else m


def evaluate(b: Binding, sig: S.Signature, t) -> np.ndarray:
    """Evaluate a term functorially in the binding's matrix backend."""
    if b.backend == "finset":
        raise UnsupportedInBackend("use procat.finset.eval_set for the finset backend")
    be = backend(b.backend)
    term = t.term if isinstance(t, S.TypedTerm) else t
    S.infer_type(sig, term)
    return _eval(b, be, sig, term)


def _eval(b, be: MatrixBackend, sig, t) -> np.ndarray:
    obj = lambda a: S.strictify(a, sig.objects)  # noqa: E731
    if isinstance(t, S.Id):
        return be.identity(dim(b, obj(t.obj)))
    if isinstance(t, S.Box):
        return _box_matrix(b, sig, t.name, False)
    if isinstance(t, S.Dag):
        if isinstance(t.inner, S.Box):
            return _box_matrix(b, sig, t.inner.name, True)
        return _eval(b, be, sig, S.dagger(t.inner))
    if isinstance(t, S.Seq):
        return be.compose(_eval(b, be, sig, t.first), _eval(b, be, sig, t.then))
    if isinstance(t, S.Par):
        return be.tensor(_eval(b, be, sig, t.left), _eval(b, be, sig, t.right))
    if isinstance(t, S.Sym):
        return be.sym(_wire_dims(b, obj(t.a)), _wire_dims(b, obj(t.b)))
    if isinstance(t, S.Cup):
        return be.cup(_wire_dims(b, obj(t.obj)))
    if isinstance(t, S.Cap):
        return be.cap(_wire_dims(b, obj(t.obj)))
    if isinstance(t, S.Assoc):
        return be.identity(dim(b, obj(t.a) + obj(t.b) + obj(t.c)))
    if isinstance(t, (S.LUnit, S.RUnit)):
        return be.identity(dim(b, obj(t.obj)))
    raise TypeError(f"not a term: {t!r}")


# ---------------------------------------------------------------------------
# graph evaluation (tensor contraction, independent of the term structure)


def _contract_pair(x, lx, y, ly, clip):
    labels = {lab: i for i, lab in enumerate(dict.fromkeys(lx + ly))}
    shared = set(lx) & set(ly)
    out = [lab for lab in dict.fromkeys(lx + ly) if lab not in shared]
    res = np.einsum(x, [labels[v] for v in lx], y, [labels[v] for v in ly],
                    [labels[v] for v in out])
    return (np.minimum(res, 1) if clip else res), out


def _self_trace(x, lx, clip):
    labels = {lab: i for i, lab in enumerate(dict.fromkeys(lx))}
    seen = [lab for lab in lx if lx.count(lab) == 1]
    res = np.einsum(x, [labels[v] for v in lx], [labels[v] for v in seen])
    return (np.minimum(res, 1) if clip else res), seen


def _network_value(tensors, open_labels, semiring: Semiring):
    """Contract ``[(array, labels), ...]`` leaving ``open_labels`` in order."""
    clip = semiring is BOOL
    work = []
    for arr, labs in tensors:
        if len(set(labs)) < len(labs):
            arr, labs = _self_trace(arr, list(labs), clip)
        work.append((arr, list(labs)))
    while len(work) > 1:
        best = None
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                shared = set(work[i][1]) & set(work[j][1])
                if not shared:
                    continue
                size = 1
                for lab in set(work[i][1]) ^ set(work[j][1]):
                    pos = work[i][1].index(lab) if lab in work[i][1] else None
                    size *= work[i][0].shape[pos] if pos is not None else \
                        work[j][0].shape[work[j][1].index(lab)]
                if best is None or size < best[0]:
                    best = (size, i, j)
        if best is None:
            # disconnected pieces: outer product of the first two
            (x, lx), (y, ly) = work[0], work[1]
            res, lab = _contract_pair(x, lx, y, ly, clip)
            work = [(res, lab)] + work[2:]
            continue
        _, i, j = best
        (x, lx), (y, ly) = work[i], work[j]
        res, lab = _contract_pair(x, lx, y, ly, clip)
        work = [w for k, w in enumerate(work) if k not in (i, j)] + [(res, lab)]
    if not work:
        return np.ones((), dtype=np.int64 if clip else semiring.dtype)
    arr, labs = work[0]
    return np.transpose(arr, [labs.index(v) for v in open_labels]) if open_labels else arr


def evaluate_graph(b: Binding, sig: S.Signature, g: G.PortGraph) -> np.ndarray:
    """Evaluate a port graph by contracting its tensor network."""
    be = backend(b.backend)
    sr = be.semiring
    if not sr.fast:
        raise UnsupportedInBackend("graph evaluation needs a built-in semiring")
    work_dtype = np.int64 if sr is BOOL else sr.dtype
    fresh = count()
    wire_label = {s: next(fresh) for s in g.wires}
    target_label = {t: wire_label[s] for s, t in g.wires.items()}
    tensors = []

    def delta(d):
        return np.eye(d, dtype=work_dtype)

    for nid, node in sorted(g.nodes.items()):
        outs = [wire_label[("o", nid, k)] for k in range(len(node.outs))]
        ins = [target_label[("i", nid, k)] for k in range(len(node.ins))]
        if node.kind == "box":
            m = _box_matrix(b, sig, node.label, node.dagger).astype(work_dtype)
            shape = _wire_dims(b, node.outs) + _wire_dims(b, node.ins)
            tensors.append((m.reshape(shape), outs + ins))
        else:
            d = dim(b, node.outs[:1] or node.ins[:1])
            tensors.append((delta(d), outs + ins))
    in_labels, out_labels = [], []
    for k, w in enumerate(g.dom):
        lab = next(fresh)
        in_labels.append(lab)
        tensors.append((delta(dim(b, (w,))), [lab, wire_label[("in", k)]]))
    for k, w in enumerate(g.cod):
        lab = next(fresh)
        out_labels.append(lab)
        tensors.append((delta(dim(b, (w,))), [target_label[("out", k)], lab]))
    arr = _network_value(tensors, out_labels + in_labels, sr)
    m = np.asarray(arr).reshape(dim(b, g.cod), dim(b, g.dom))
    factor = None
    for base in g.loops:
        v = be.loop_value(dim(b, (S.Wire(base, "+"),)))
        factor = v if factor is None else sr.mul(factor, v)
    for sc in g.scalars:
        v = evaluate_graph(b, sig, sc)[0, 0]
        factor = v if factor is None else sr.mul(factor, v)
    if sr is BOOL:
        m = m > 0
        if factor is not None and not factor:
            m = np.zeros_like(m)
        return m
    m = m.astype(sr.dtype)
    if factor is not None:
        m = m * factor
    return m


# ---------------------------------------------------------------------------
# states


def inner(b: Binding, sig: S.Signature, psi, phi):
    """``<phi|psi>``: the adjoint of ``phi`` after ``psi``."""
    tp = S.infer_type(sig, psi.term if isinstance(psi, S.TypedTerm) else psi)
    tf = S.infer_type(sig, phi.term if isinstance(phi, S.TypedTerm) else phi)
    if tp.dom or tf.dom or tp.cod != tf.cod:
        raise TypeMismatch(
            f"inner product needs two states of one type, got "
            f"[{S.wires_str(tp.dom)}] -> [{S.wires_str(tp.cod)}] and "
            f"[{S.wires_str(tf.dom)}] -> [{S.wires_str(tf.cod)}]",
            expected=tp.cod, actual=tf.cod,
        )
    return evaluate(b, sig, S.Seq(tp.term, S.dagger(tf.term)))[0, 0]


MAX_STATES_DIM = 16


def states_of(b: Binding, base: str, cap: int = MAX_STATES_DIM) -> list[np.ndarray]:
    """All relations ``{*} -> X``: one boolean column per subset of ``X``.

    Subset ``k`` has entry ``i`` set iff bit ``i`` of ``k`` is set.
    """
    if b.backend != "mat-b":
        raise UnsupportedInBackend("states are enumerable only in mat-b")
    d = dim(b, (S.Wire(base, "+"),))
    if d > cap:
        raise CapExceeded(f"2**{d} states exceeds the cap of 2**{cap}")
    out = []
    for k in range(1 << d):
        col = np.array([[(k >> i) & 1] for i in range(d)], dtype=np.bool_).reshape(d, 1)
        out.append(col)
    return out


def decompose_state(b: Binding, psi: np.ndarray) -> list[tuple[int, object]]:
    """Coefficients of ``psi`` over the standard basis, zeros omitted."""
    sr = b.semiring
    if psi.ndim != 2 or psi.shape[1] != 1:
        raise ShapeMismatch(f"a state is a column vector, got shape {psi.shape}")
    return [(i, psi[i, 0]) for i in range(psi.shape[0]) if not sr.is_zero(psi[i, 0])]


def recompose_state(b: Binding, parts, d: int) -> np.ndarray:
    sr = b.semiring
    out = sr.zeros(d, 1)
    for i, c in parts:
        basis = sr.zeros(d, 1)
        basis[i, 0] = sr.one
        out = sr.madd(out, sr.scale(c, basis))
    return out


# ---------------------------------------------------------------------------
# formatting


def format_entry(x, semiring: Semiring) -> str:
    if semiring.dtype is np.complex128:
        re, im = float(np.real(x)), float(np.imag(x))
        re = 0.0 if re == 0 else re
        im = 0.0 if im == 0 else im
        sign = "-" if im < 0 else "+"
        return f"{re:.6g}{sign}{abs(im):.6g}i"
    if semiring.dtype is np.bool_:
        return "1" if x else "0"
    return str(int(x)) if semiring.dtype is np.int64 else str(x)


def format_matrix(m: np.ndarray, semiring: Semiring) -> str:
    if m.size == 0:
        return f"[] ({m.shape[0]}x{m.shape[1]})"
    cells = [[format_entry(x, semiring) for x in row] for row in m]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)
