"""Executable law suites, a naturality-square checker and iso detection.

Every law is a function producing a :class:`LawResult`. Random samples come
from ``numpy.random.default_rng([seed, crc32(law name)])`` so a law gives the
same verdict whether it runs alone, inside its suite, or inside ``all``.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field, replace
from itertools import permutations, product
from pathlib import Path
from typing import Callable, Iterable

import numpy as np

from . import _kernels
from . import biproduct as BP
from . import finset as FS
from . import graph as G
from . import signature as S
from .backends import MATRIX_BACKENDS, Binding, backend, dump_bindings, evaluate, evaluate_graph
from .errors import InvalidCandidate, NotInvertible
from .randgen import TermGen, random_matrix
from .semiring import BOOL, COMPLEX, NAT, Semiring

ALL_BACKENDS = MATRIX_BACKENDS + ("finset",)
SUITES = ("category", "monoidal", "scalars", "compact", "biproduct", "products-finset",
          "naturality", "all")
SEMIRINGS = {"mat-c": COMPLEX, "mat-b": BOOL, "mat-n": NAT}


@dataclass(frozen=True)
class LawResult:
    name: str
    status: str  # "PASS" or "FAIL"
    samples: int
    witness: dict | None = None
    seed: int | None = None

    @property
    def ok(self) -> bool:
        return self.status == "PASS"

    def line(self, witness_path: str | None = None) -> str:
        out = f"LAW {self.name} {self.status} samples={self.samples}"
        if witness_path:
            out += f" witness={witness_path}"
        return out


def _pass(name, n, seed=None, witness=None) -> LawResult:
    return LawResult(name, "PASS", n, witness, seed)


def _fail(name, n, witness, seed=None) -> LawResult:
    return LawResult(name, "FAIL", n, dict(witness, seed=seed), seed)


def exact(sr: Semiring) -> Semiring:
    """Same semiring compared without tolerance."""
    return replace(sr, tol=None)


# ---------------------------------------------------------------------------
# categories the naturality checker works in


class MatrixCat:
    """Objects are dimensions, morphisms ``cod x dom`` matrices."""

    def __init__(self, sr: Semiring, name: str):
        self.sr = sr
        self.name = name

    def dom(self, f):
        return f.shape[1]

    def cod(self, f):
        return f.shape[0]

    def unit(self):
        return 1

    def tensor_obj(self, a, b):
        return a * b

    def oplus_obj(self, a, b):
        return a + b

    def id(self, a):
        return self.sr.eye(a)

    def tensor(self, f, g):
        return self.sr.kron(f, g)

    def oplus(self, f, g):
        return BP.oplus(self.sr, f, g)

    def then(self, f, g):
        return self.sr.matmul(g, f)

    def eq(self, f, g) -> bool:
        return self.sr.allclose(f, g)

    def valid(self, m, dom, cod) -> bool:
        return isinstance(m, np.ndarray) and m.shape == (cod, dom)


class FinSetCat:
    """Objects are carriers (tuples of elements), morphisms function tables."""

    name = "finset"

    def dom(self, f):
        return f.dom

    def cod(self, f):
        return f.cod

    def unit(self):
        return ((),)

    def tensor_obj(self, a, b):
        return FS.product_carrier(a, b)

    def oplus_obj(self, a, b):
        return FS.coproduct_carrier(a, b)

    def id(self, a):
        return FS.identity(a)

    def tensor(self, f, g):
        return FS.times(f, g)

    def oplus(self, f, g):
        return FS.copair(f.then(FS.inj1(f.cod, g.cod)), g.then(FS.inj2(f.cod, g.cod)))

    def then(self, f, g):
        return f.then(g)

    def eq(self, f, g) -> bool:
        return f == g

    def valid(self, m, dom, cod) -> bool:
        return (isinstance(m, FS.FunctionTable) and set(m.dom) == set(dom)
                and set(m.cod) == set(cod))


# ---------------------------------------------------------------------------
# functor expressions


@dataclass(frozen=True)
class Functor:
    """Built from argument selection, the constant unit, ``@`` and ``+``."""

    op: str  # "arg", "unit", "tensor", "oplus"
    args: tuple = ()

    def __matmul__(self, other: "Functor") -> "Functor":
        return Functor("tensor", (self, other))

    def __add__(self, other: "Functor") -> "Functor":
        return Functor("oplus", (self, other))

    @property
    def arity(self) -> int:
        if self.op == "arg":
            return self.args[0] + 1
        return max((a.arity for a in self.args), default=0)

    def on_objects(self, cat, objs):
        if self.op == "arg":
            return objs[self.args[0]]
        if self.op == "unit":
            return cat.unit()
        l, r = (a.on_objects(cat, objs) for a in self.args)
        return cat.tensor_obj(l, r) if self.op == "tensor" else cat.oplus_obj(l, r)

    def on_morphisms(self, cat, fs):
        if self.op == "arg":
            return fs[self.args[0]]
        if self.op == "unit":
            return cat.id(cat.unit())
        l, r = (a.on_morphisms(cat, fs) for a in self.args)
        return cat.tensor(l, r) if self.op == "tensor" else cat.oplus(l, r)

    def __str__(self) -> str:
        if self.op == "arg":
            return f"X{self.args[0]}"
        if self.op == "unit":
            return "I"
        sym = "@" if self.op == "tensor" else "+"
        return f"({self.args[0]} {sym} {self.args[1]})"


def arg(i: int) -> Functor:
    return Functor("arg", (i,))


UNIT = Functor("unit")


@dataclass(frozen=True)
class NaturalityCandidate:
    source: Functor
    target: Functor
    component: Callable  # tuple of objects -> morphism source(objs) -> target(objs)
    name: str = "xi"


def check_naturality(c: NaturalityCandidate, cat, tuples: Iterable, name: str | None = None,
                     seed: int | None = None) -> LawResult:
    """Check ``Lambda(f...) ; xi_B == xi_A ; Xi(f...)`` for every tuple of morphisms.

    The witness of a failure records the inputs, ``lhs`` (via ``Lambda`` then
    the component at the codomains) and ``rhs`` (component at the domains,
    then ``Xi``).
    """
    name = name or f"naturality.{c.name}"
    n = 0
    for fs in tuples:
        fs = tuple(fs)
        doms = tuple(cat.dom(f) for f in fs)
        cods = tuple(cat.cod(f) for f in fs)
        xa, xb = c.component(doms), c.component(cods)
        for objs, x in ((doms, xa), (cods, xb)):
            src, tgt = c.source.on_objects(cat, objs), c.target.on_objects(cat, objs)
            if not cat.valid(x, src, tgt):
                got = getattr(x, "shape", None)
                raise InvalidCandidate(
                    f"component of {c.name} at {objs!r} must go {c.source} -> {c.target}, got {got}"
                )
        lhs = cat.then(c.source.on_morphisms(cat, fs), xb)
        rhs = cat.then(xa, c.target.on_morphisms(cat, fs))
        n += 1
        if not cat.eq(lhs, rhs):
            return _fail(name, n, {"backend": cat.name, "inputs": fs, "lhs": lhs, "rhs": rhs},
                         seed)
    return _pass(name, n, seed)


def copy_in_basis(sr: Semiring) -> Callable:
    """Component of the basis copying map ``n -> n (x) n``."""
    def comp(objs):
        (n,) = objs
        m = sr.zeros(n * n, n)
        for i in range(n):
            m[i * n + i, i] = sr.one
        return m
    return comp


def diagonal_candidate(cat) -> NaturalityCandidate:
    if isinstance(cat, FinSetCat):
        comp = lambda objs: FS.diagonal(objs[0])  # noqa: E731
    else:
        comp = copy_in_basis(cat.sr)
    return NaturalityCandidate(arg(0), arg(0) @ arg(0), comp, "diagonal")


def relation_pairs(m: np.ndarray, dom_labels, cod_labels) -> set:
    """A boolean matrix read as a set of ``(input, output)`` label pairs."""
    return {(dom_labels[j], cod_labels[i]) for i in range(m.shape[0])
            for j in range(m.shape[1]) if m[i, j]}


# ---------------------------------------------------------------------------
# isomorphisms


MAX_PERM_SEARCH = 8


def _permutation_inverse(sr: Semiring, m: np.ndarray) -> np.ndarray | None:
    n = m.shape[0]
    if BP.is_permutation(m):
        return m.T.copy().astype(sr.dtype)
    if n > MAX_PERM_SEARCH:
        return None
    # over semirings without subtraction any inverse is a permutation matrix
    for perm in permutations(range(n)):
        g = sr.zeros(n, n)
        for i, j in enumerate(perm):
            g[i, j] = sr.one
        if _is_inverse(sr, m, g):
            return g
    return None


def _is_inverse(sr, m, g) -> bool:
    n = m.shape[0]
    return sr.allclose(sr.matmul(g, m), sr.eye(n)) and sr.allclose(sr.matmul(m, g), sr.eye(n))


def invert(sr: Semiring, m: np.ndarray) -> np.ndarray | None:
    """Two-sided inverse of a square matrix, or ``None``.

    Complex matrices use numpy's solver and then verify both products to the
    semiring tolerance. Boolean matrices up to 4x4 are searched exhaustively;
    above that, and for the naturals, only permutation matrices can be
    invertible, so those are searched.
    """
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise NotInvertible(f"shape {m.shape} is not square")
    n = m.shape[0]
    if n == 0:
        return sr.zeros(0, 0)
    if sr.tol is not None and np.issubdtype(sr.dtype, np.inexact):
        try:
            g = np.linalg.inv(m).astype(sr.dtype)
        except np.linalg.LinAlgError:
            return None
        return g if _is_inverse(sr, m, g) else None
    if sr.dtype is np.bool_ and n <= _kernels.MAX_SEARCH_DIM:
        return _kernels.bool_inverse_search(np.asarray(m, dtype=np.bool_))
    return _permutation_inverse(sr, m)


def check_iso(f, be="mat-c", sig: S.Signature | None = None,
              binding: Binding | None = None) -> LawResult:
    """Is ``f`` (a matrix, or a term evaluated under ``binding``) invertible?"""
    if isinstance(f, S.Term):
        if sig is None or binding is None:
            raise ValueError("a term needs a signature and a binding")
        be = binding.backend
        f = evaluate(binding, sig, f)
    sr = be if isinstance(be, Semiring) else SEMIRINGS[be]
    f = np.asarray(f, dtype=sr.dtype)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise NotInvertible(f"shape {f.shape} is not square")
    g = invert(sr, f)
    if g is None:
        return LawResult("iso", "FAIL", 1, {"backend": _backend_name(sr), "matrix": f})
    return LawResult("iso", "PASS", 1, {"backend": _backend_name(sr), "matrix": f, "inverse": g})


def _backend_name(sr: Semiring) -> str:
    for k, v in SEMIRINGS.items():
        if v.dtype is sr.dtype:
            return k
    return sr.name


# ---------------------------------------------------------------------------
# witnesses


def _encode(x, be: str):
    if isinstance(x, FS.FunctionTable):
        return FS.dump_table(x)
    if isinstance(x, np.ndarray):
        if np.iscomplexobj(x):
            return [[[float(v.real), float(v.imag)] for v in row] for row in x]
        return [[int(v) for v in row] for row in x]
    if isinstance(x, (tuple, list)):
        return [_encode(v, be) for v in x]
    if isinstance(x, (np.integer, np.bool_)):
        return int(x)
    if isinstance(x, (set, frozenset)):
        return sorted(_encode(v, be) for v in x)
    return x


def witness_document(result: LawResult) -> dict:
    """Witness as a bindings-format document.

    Inputs, ``lhs`` and ``rhs`` become boxes named ``in0, in1, ...``, ``lhs``
    and ``rhs``, so ``parse_bindings`` reads the file back.
    """
    w = dict(result.witness or {})
    binding = w.pop("binding", None)
    be = w.pop("backend", binding.backend if binding else "mat-c")
    if binding is not None:
        doc = json.loads(dump_bindings(binding))
    else:
        doc = {"backend": be, "objects": {}, "boxes": {}}
    boxes = doc["boxes"]
    for i, x in enumerate(w.pop("inputs", ())):
        boxes[f"in{i}"] = _encode(x, be)
    for side in ("lhs", "rhs", "matrix", "inverse"):
        if side in w:
            boxes[side] = _encode(w.pop(side), be)
    doc["law"] = result.name
    doc["seed"] = result.seed
    doc["samples"] = result.samples
    doc["details"] = {k: _encode(v, be) for k, v in sorted(w.items()) if k != "seed"}
    return doc


def dump_witness(result: LawResult, directory) -> Path:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    path = directory / f"{result.name}.json"
    path.write_text(json.dumps(witness_document(result), indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")
    return path


def report(results, witness_dir=None) -> str:
    """One line per law; failed laws get their witness written to ``witness_dir``."""
    lines = []
    for r in results:
        path = None
        if not r.ok and r.witness is not None and witness_dir is not None:
            path = str(dump_witness(r, witness_dir))
        lines.append(r.line(path))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# law registry


@dataclass
class Ctx:
    seed: int
    samples: int | None
    backends: tuple

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng([self.seed, zlib.crc32(name.encode())])

    def n(self, default: int) -> int:
        return default if self.samples is None else self.samples

    @property
    def matrix_backends(self) -> tuple:
        return tuple(b for b in self.backends if b in MATRIX_BACKENDS)


@dataclass(frozen=True)
class Law:
    name: str
    suite: str
    fn: Callable
    needs: tuple = field(default=())  # backends that must be selected


LAWS: list[Law] = []


def law(name: str, suite: str, needs: tuple = ()):
    def deco(fn):
        LAWS.append(Law(name, suite, fn, needs))
        return fn
    return deco


def run_law(name: str, seed: int = 0, samples: int | None = None,
            backends: Iterable[str] = ALL_BACKENDS) -> LawResult:
    for lw in LAWS:
        if lw.name == name:
            return lw.fn(Ctx(seed, samples, tuple(backends)), name)
    raise KeyError(name)


def run_suite(name: str = "all", backends: Iterable[str] = ALL_BACKENDS, seed: int = 0,
              samples: int | None = None) -> list[LawResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
    backends = tuple(backends)
    for b in backends:
        if b not in ALL_BACKENDS:
            raise ValueError(f"unknown backend {b!r}")
    ctx = Ctx(seed, samples, backends)
    out = []
    for lw in LAWS:
        if name != "all" and lw.suite != name:
            continue
        if any(b not in backends for b in lw.needs):
            continue
        out.append(lw.fn(ctx, lw.name))
    return out


# ---------------------------------------------------------------------------
# shared helpers for term laws


def _verdict(sig, t1, t2) -> str:
    try:
        return G.equal(sig, t1, t2).verdict
    except G.BudgetExceeded:
        return "unknown"


def _semantic(ctx: Ctx, gen: TermGen, rng, sig, t1, t2, max_dim: int = 3):
    """First backend where ``t1`` and ``t2`` evaluate differently, or ``None``."""
    for be in ctx.matrix_backends:
        b = gen.binding(be, max_dim=max_dim)
        l, r = evaluate(b, sig, t1), evaluate(b, sig, t2)
        if not SEMIRINGS[be].allclose(l, r):
            return {"binding": b, "backend": be, "lhs": l, "rhs": r}
    return None


def _term_pair_law(ctx: Ctx, name: str, n: int, make, max_dim: int = 3) -> LawResult:
    """``make(gen)`` returns two terms that must be equal structurally and semantically."""
    rng = ctx.rng(name)
    for i in range(n):
        gen = TermGen(rng)
        t1, t2 = make(gen)
        sig = gen.signature()
        terms = {"lhs_term": S.term_str(t1), "rhs_term": S.term_str(t2), "sample": i}
        v = _verdict(sig, t1, t2)
        if v != "equal":
            return _fail(name, i + 1, dict(terms, verdict=v), ctx.seed)
        bad = _semantic(ctx, gen, rng, sig, t1, t2, max_dim)
        if bad is not None:
            return _fail(name, i + 1, dict(terms, **bad), ctx.seed)
    return _pass(name, n, ctx.seed)


def _cod(gen: TermGen, t) -> tuple:
    return S.infer_type(gen.signature(), t).cod


def _dom(gen: TermGen, t) -> tuple:
    return S.infer_type(gen.signature(), t).dom


def _scalar(gen: TermGen, depth: int = 3) -> S.Term:
    """A random closed diagram, capped off with a fresh effect."""
    t = gen.term(dom=(), depth=depth)
    cod = _cod(gen, t)
    return S.Seq(t, gen.fresh_box(cod, ())) if cod else t


# ---------------------------------------------------------------------------
# category


@law("category.identity", "category")
def _identity(ctx, name):
    def make(gen):
        f = gen.term(depth=3)
        d, c = _dom(gen, f), _cod(gen, f)
        side = gen.rng.random() < 0.5
        t = S.Seq(S.Id(S.from_wires(d)), f) if side else S.Seq(f, S.Id(S.from_wires(c)))
        return t, f
    return _term_pair_law(ctx, name, ctx.n(60), make)


@law("category.associativity", "category")
def _associativity(ctx, name):
    def make(gen):
        f = gen.term(depth=2)
        g = gen.term(dom=_cod(gen, f), depth=2)
        h = gen.term(dom=_cod(gen, g), depth=2)
        return S.Seq(S.Seq(f, g), h), S.Seq(f, S.Seq(g, h))
    return _term_pair_law(ctx, name, ctx.n(60), make)


# ---------------------------------------------------------------------------
# monoidal


def interchange_pair(gen: TermGen):
    """``(f1 @ f2) ; (g1 @ g2)`` and ``(f1 ; g1) @ (f2 ; g2)``."""
    d1 = gen.wires(int(gen.rng.integers(0, 2)))
    d2 = gen.wires(int(gen.rng.integers(0, 2)))
    f1 = gen._gen(d1, 2, len(d2))
    f2 = gen._gen(d2, 2, len(_cod(gen, f1)))
    g1 = gen._gen(_cod(gen, f1), 2, len(_cod(gen, f2)))
    g2 = gen._gen(_cod(gen, f2), 2, len(_cod(gen, g1)))
    return S.Seq(S.Par(f1, f2), S.Par(g1, g2)), S.Par(S.Seq(f1, g1), S.Seq(f2, g2))


@law("monoidal.interchange", "monoidal")
def _interchange(ctx, name):
    """Both orderings give byte-identical canonical forms before any rewriting."""
    rng = ctx.rng(name)
    n = ctx.n(200)
    for i in range(n):
        gen = TermGen(rng)
        t1, t2 = interchange_pair(gen)
        sig = gen.signature()
        c1 = G.canonical_form(G.to_graph(sig, t1))
        c2 = G.canonical_form(G.to_graph(sig, t2))
        terms = {"lhs_term": S.term_str(t1), "rhs_term": S.term_str(t2), "sample": i}
        if c1 != c2:
            return _fail(name, i + 1, dict(terms, lhs_canon=c1, rhs_canon=c2), ctx.seed)
        bad = _semantic(ctx, gen, rng, sig, t1, t2)
        if bad is not None:
            return _fail(name, i + 1, dict(terms, **bad), ctx.seed)
    return _pass(name, n, ctx.seed)


@law("monoidal.tensor-identity", "monoidal")
def _tensor_identity(ctx, name):
    def make(gen):
        a = S.from_wires(gen.wires(int(gen.rng.integers(0, 3))))
        b = S.from_wires(gen.wires(int(gen.rng.integers(0, 3))))
        return S.Par(S.Id(a), S.Id(b)), S.Id(S.Tensor(a, b))
    return _term_pair_law(ctx, name, ctx.n(30), make)


@law("monoidal.symmetry-involution", "monoidal")
def _sym_involution(ctx, name):
    def make(gen):
        a = S.from_wires(gen.wires(int(gen.rng.integers(0, 3))))
        b = S.from_wires(gen.wires(int(gen.rng.integers(0, 3))))
        return S.Seq(S.Sym(a, b), S.Sym(b, a)), S.Id(S.Tensor(a, b))
    return _term_pair_law(ctx, name, ctx.n(30), make)


@law("monoidal.symmetry-naturality", "monoidal")
def _sym_naturality(ctx, name):
    def make(gen):
        d1, d2 = gen.wires(1), gen.wires(1)
        f = gen._gen(d1, 2, 1)
        g = gen._gen(d2, 2, len(_cod(gen, f)))
        a, b = S.from_wires(d1), S.from_wires(d2)
        c, d = S.from_wires(_cod(gen, f)), S.from_wires(_cod(gen, g))
        return S.Seq(S.Par(f, g), S.Sym(c, d)), S.Seq(S.Sym(a, b), S.Par(g, f))
    return _term_pair_law(ctx, name, ctx.n(40), make)


@law("monoidal.unit-coherence", "monoidal")
def _unit_coherence(ctx, name):
    """``sym(I, A) ; lunit(A) = runit(A)`` and ``lunit(I) = runit(I)``."""
    def make(gen):
        if gen.rng.random() < 0.3:
            return S.LUnit(S.Unit()), S.RUnit(S.Unit())
        a = S.from_wires(gen.wires(int(gen.rng.integers(1, 3))))
        return S.Seq(S.Sym(S.Unit(), a), S.LUnit(a)), S.RUnit(a)
    return _term_pair_law(ctx, name, ctx.n(20), make)


@law("monoidal.associator-naturality", "monoidal")
def _assoc_naturality(ctx, name):
    def make(gen):
        f = gen._gen(gen.wires(1), 1, 2)
        g = gen._gen(gen.wires(1), 1, 1 + len(_cod(gen, f)))
        h = gen._gen(gen.wires(1), 1, len(_cod(gen, f)) + len(_cod(gen, g)))
        obj = lambda w: S.from_wires(w)  # noqa: E731
        da, db, dc = (obj(_dom(gen, x)) for x in (f, g, h))
        ca, cb, cc = (obj(_cod(gen, x)) for x in (f, g, h))
        lhs = S.Seq(S.Par(S.Par(f, g), h), S.Assoc(ca, cb, cc))
        rhs = S.Seq(S.Assoc(da, db, dc), S.Par(f, S.Par(g, h)))
        return lhs, rhs
    return _term_pair_law(ctx, name, ctx.n(30), make)


# ---------------------------------------------------------------------------
# scalars


@law("scalars.commutative", "scalars")
def _scalars_commute(ctx, name):
    def make(gen):
        s, t = _scalar(gen), _scalar(gen)
        if gen.rng.random() < 0.5:
            return S.Seq(s, t), S.Seq(t, s)
        return S.Seq(s, t), S.Par(t, s)
    return _term_pair_law(ctx, name, ctx.n(120), make)


def all_bool_matrices(rows: int, cols: int):
    for bits in product((False, True), repeat=rows * cols):
        yield np.array(bits, dtype=np.bool_).reshape(rows, cols)


@law("scalars.boolean-monoid", "scalars", needs=("mat-b",))
def _bool_scalars(ctx, name):
    """The scalars of mat-b are exactly {0, 1}, composing by AND and adding by OR."""
    scalars = list(all_bool_matrices(1, 1))
    values = sorted(bool(s[0, 0]) for s in scalars)
    if values != [False, True]:
        return _fail(name, len(scalars), {"scalars": values})
    n = 0
    for s, t in product(scalars, repeat=2):
        n += 1
        x, y = bool(s[0, 0]), bool(t[0, 0])
        comp = bool(BOOL.matmul(t, s)[0, 0])
        tens = bool(BOOL.kron(s, t)[0, 0])
        plus = bool(BP.sum_via_biproduct(BOOL, s, t)[0, 0])
        if comp != (x and y) or tens != (x and y) or plus != (x or y):
            return _fail(name, n, {"backend": "mat-b", "inputs": (s, t),
                                   "composite": comp, "tensor": tens, "sum": plus})
    return _pass(name, n)


def _scalar_value(sr, m):
    return m[0, 0]


@law("scalars.mobility", "scalars")
def _mobility(ctx, name):
    """``(s.f) ; (t.g) = (s;t).(f;g)`` and ``(s.f) @ (t.g) = (s;t).(f @ g)``.

    Checked structurally and, in every selected backend, against the scalar
    multiple computed entrywise.
    """
    rng = ctx.rng(name)
    n = ctx.n(100)
    for i in range(n):
        gen = TermGen(rng)
        s, t = gen.fresh_box((), ()), gen.fresh_box((), ())
        f = gen.term(depth=2)
        seq = rng.random() < 0.5
        g = gen.term(dom=_cod(gen, f) if seq else None, depth=2)
        if not seq and len(_dom(gen, f)) + len(_dom(gen, g)) > 4:
            g = gen.term(dom=(), depth=1)
        if seq:
            lhs = S.Seq(S.scalar_mul(s, f), S.scalar_mul(t, g))
            rhs = S.scalar_mul(S.Seq(s, t), S.Seq(f, g))
            core = S.Seq(f, g)
        else:
            lhs = S.Par(S.scalar_mul(s, f), S.scalar_mul(t, g))
            rhs = S.scalar_mul(S.Seq(s, t), S.Par(f, g))
            core = S.Par(f, g)
        sig = gen.signature()
        terms = {"lhs_term": S.term_str(lhs), "rhs_term": S.term_str(rhs), "sample": i}
        v = _verdict(sig, lhs, rhs)
        if v != "equal":
            return _fail(name, i + 1, dict(terms, verdict=v), ctx.seed)
        for be in ctx.matrix_backends:
            sr = SEMIRINGS[be]
            b = gen.binding(be, max_dim=3)
            l, r = evaluate(b, sig, lhs), evaluate(b, sig, rhs)
            st = sr.mul(_scalar_value(sr, b.boxes[s.name]), _scalar_value(sr, b.boxes[t.name]))
            oracle = sr.scale(st, evaluate(b, sig, core))
            if not (sr.allclose(l, r) and sr.allclose(l, oracle)):
                return _fail(name, i + 1, dict(terms, binding=b, backend=be, lhs=l, rhs=r,
                                               oracle=oracle), ctx.seed)
    return _pass(name, n, ctx.seed)


@law("scalars.state-costate", "scalars")
def _state_costate(ctx, name):
    """A costate followed by a state equals their tensor: ``pi ; psi = pi @ psi``."""
    def make(gen):
        a = gen.wires(int(gen.rng.integers(1, 3)))
        psi, pi = gen.fresh_box((), a), gen.fresh_box(a, ())
        return S.Seq(pi, psi), S.Par(pi, psi)
    return _term_pair_law(ctx, name, ctx.n(30), make)


# ---------------------------------------------------------------------------
# compact closure and dagger


SNAKE_DIMS = (1, 2, 3, 4, 5)


@law("compact.snake", "compact")
def _snake(ctx, name):
    """Both snakes normalize to a bare wire and evaluate to the identity."""
    n = 0
    sig = S.Signature.build(["A", "B"])
    objs = [S.Base("A"), S.Tensor(S.Base("A"), S.Base("B")), S.Dual(S.Base("A"))]
    for d in SNAKE_DIMS:
        for obj in objs:
            for side in ("left", "right"):
                t = S.snake(obj, side)
                n += 1
                g, trace = G.normalize(G.to_graph(sig, t))
                ws = S.infer_type(sig, t).dom
                if g.nodes or g.loops or g.scalars or [s.rule for s in trace] != ["snake"] * len(ws):
                    return _fail(name, n, {"term": S.term_str(t), "dim": d,
                                           "trace": [str(s) for s in trace]})
                if G.canonical_form(g) != G.canonical_form(G.identity(ws)):
                    return _fail(name, n, {"term": S.term_str(t), "dim": d})
                for be in ctx.matrix_backends:
                    b = Binding(be, {"A": d, "B": 2})
                    m = evaluate(b, sig, t)
                    want = SEMIRINGS[be].eye(m.shape[0])
                    ok = (np.max(np.abs(m - want), initial=0.0) <= 1e-12 if be == "mat-c"
                          else np.array_equal(m, want))
                    if not ok:
                        return _fail(name, n, {"binding": b, "backend": be, "lhs": m,
                                               "rhs": want, "term": S.term_str(t)})
    return _pass(name, n)


@law("compact.dagger", "compact")
def _dagger(ctx, name):
    """``dag`` is involutive and evaluates to the conjugate transpose."""
    rng = ctx.rng(name)
    n = ctx.n(60)
    for i in range(n):
        gen = TermGen(rng)
        f = gen.term(depth=3)
        sig = gen.signature()
        terms = {"term": S.term_str(f), "sample": i}
        v = _verdict(sig, S.Dag(S.Dag(f)), f)
        if v != "equal":
            return _fail(name, i + 1, dict(terms, verdict=v), ctx.seed)
        for be in ctx.matrix_backends:
            sr = SEMIRINGS[be]
            b = gen.binding(be, max_dim=3)
            l = evaluate(b, sig, S.Dag(f))
            r = sr.adjoint(evaluate(b, sig, f))
            if not sr.allclose(l, r) or not sr.allclose(evaluate(b, sig, S.dagger(f)), r):
                return _fail(name, i + 1, dict(terms, binding=b, backend=be, lhs=l, rhs=r),
                             ctx.seed)
    return _pass(name, n, ctx.seed)


@law("compact.dagger-cup", "compact")
def _dagger_cup(ctx, name):
    """The cap is the adjoint of the cup, so the structure is dagger compact."""
    def make(gen):
        a = S.from_wires(gen.wires(int(gen.rng.integers(1, 3))))
        return S.Dag(S.Cup(a)), S.Cap(a)
    return _term_pair_law(ctx, name, ctx.n(20), make)


def _single_wire_map(gen: TermGen):
    a, b = gen.wires(1), gen.wires(1)
    return gen.fresh_box(a, b), a, b


@law("compact.name-unname", "compact")
def _name_unname(ctx, name):
    """``unname(name(f)) = f``, and ``name(f)`` lists the entries of ``f``."""
    rng = ctx.rng(name)
    n = ctx.n(50)
    for i in range(n):
        gen = TermGen(rng)
        f, a, _ = _single_wire_map(gen)
        f = S.Seq(f, gen.term(dom=_cod(gen, f), depth=2))
        sig = gen.signature()
        dom = S.from_wires(a)
        back = S.unname(sig, S.name(sig, f), dom)
        terms = {"term": S.term_str(f), "sample": i}
        v = _verdict(sig, back, f)
        if v != "equal":
            return _fail(name, i + 1, dict(terms, verdict=v), ctx.seed)
        for be in ctx.matrix_backends:
            b = gen.binding(be, max_dim=3)
            m = evaluate(b, sig, f)
            named = evaluate(b, sig, S.name(sig, f))
            oracle = m.T.reshape(-1, 1)  # entry (x, y) of A^ (x) B is <y|f|x>
            if not (SEMIRINGS[be].allclose(named, oracle)
                    and SEMIRINGS[be].allclose(evaluate(b, sig, back), m)):
                return _fail(name, i + 1, dict(terms, binding=b, backend=be, lhs=named,
                                               rhs=oracle), ctx.seed)
    return _pass(name, n, ctx.seed)


@law("compact.transpose", "compact")
def _transpose(ctx, name):
    """Transposing twice is the identity; once, it is the plain matrix transpose."""
    rng = ctx.rng(name)
    n = ctx.n(50)
    for i in range(n):
        gen = TermGen(rng)
        f, _, _ = _single_wire_map(gen)
        f = S.Seq(f, gen.term(dom=_cod(gen, f), depth=2))
        cod = _cod(gen, f)
        if len(cod) != 1:
            f = S.Seq(f, gen.fresh_box(cod, gen.wires(1)))
        sig = gen.signature()
        tt = S.transpose(sig, S.transpose(sig, f))
        terms = {"term": S.term_str(f), "sample": i}
        v = _verdict(sig, tt, f)
        if v != "equal":
            return _fail(name, i + 1, dict(terms, verdict=v), ctx.seed)
        for be in ctx.matrix_backends:
            b = gen.binding(be, max_dim=3)
            m = evaluate(b, sig, f)
            t1 = evaluate(b, sig, S.transpose(sig, f))
            if not SEMIRINGS[be].allclose(t1, m.T):
                return _fail(name, i + 1, dict(terms, binding=b, backend=be, lhs=t1, rhs=m.T),
                             ctx.seed)
    return _pass(name, n, ctx.seed)


FUZZ_DEPTH = 8
FUZZ_MAX_DIM = 4


def fuzz_terms(rng: np.random.Generator, n: int):
    """``n`` random terms of syntactic depth at most ``FUZZ_DEPTH``, each with its generator.

    Leaves are small gadgets (padded cups, zig-zags) that add depth of their
    own, so terms are drawn with a growth budget and redrawn when too deep.
    """
    made = 0
    while made < n:
        gen = TermGen(rng)
        t = gen.term(depth=int(rng.integers(1, 6)))
        if S.depth(t) <= FUZZ_DEPTH:
            made += 1
            yield gen, t


@law("compact.normalize-soundness", "compact")
def _normalize_sound(ctx, name):
    """Normalization preserves semantics and its trace replays."""
    rng = ctx.rng(name)
    n = ctx.n(500)
    for i, (gen, t) in enumerate(fuzz_terms(rng, n)):
        sig = gen.signature()
        g0 = G.to_graph(sig, t)
        g1, trace = G.normalize(g0)
        terms = {"term": S.term_str(t), "sample": i}
        if G.canonical_form(G.replay(g0, trace)) != G.canonical_form(g1):
            return _fail(name, i + 1, dict(terms, trace=[str(s) for s in trace]), ctx.seed)
        for be in ctx.matrix_backends:
            b = gen.binding(be, max_dim=FUZZ_MAX_DIM)
            l, r = evaluate(b, sig, t), evaluate_graph(b, sig, g1)
            sr = SEMIRINGS[be]
            if not sr.allclose(l, r):
                return _fail(name, i + 1, dict(terms, binding=b, backend=be, lhs=l, rhs=r),
                             ctx.seed)
    return _pass(name, n, ctx.seed)


# ---------------------------------------------------------------------------
# biproducts


def partitions(max_total: int = 6):
    """Every ordered partition into positive parts with total at most ``max_total``."""
    out = [()]

    def grow(prefix, left):
        for k in range(1, left + 1):
            p = prefix + (k,)
            out.append(p)
            grow(p, left - k)
    grow((), max_total)
    return out


def _matrix_semirings(ctx):
    return [(be, exact(SEMIRINGS[be])) for be in ctx.matrix_backends]


@law("biproduct.delta", "biproduct")
def _delta(ctx, name):
    """``p_i . q_j = delta_ij`` and ``sum_i q_i . p_i = 1``, exactly."""
    n = 0
    for be, sr in _matrix_semirings(ctx):
        for parts in partitions(6):
            n += 1
            chk = BP.delta_equations(sr, parts)
            if not chk:
                return _fail(name, n, dict(chk.witness, backend=be, parts=parts))
    return _pass(name, n)


@law("biproduct.product-coproduct", "biproduct")
def _prod_coprod(ctx, name):
    n = 0
    for be, sr in _matrix_semirings(ctx):
        for parts in partitions(6):
            n += 1
            chk = BP.product_coproduct_iso(sr, parts)
            if not chk:
                return _fail(name, n, dict(chk.witness, backend=be, parts=parts))
    return _pass(name, n)


@law("biproduct.sum", "biproduct")
def _sum(ctx, name):
    """The sum built from diagonal and codiagonal equals entrywise addition."""
    rng = ctx.rng(name)
    n = 0
    if "mat-b" in ctx.backends:
        mats = list(all_bool_matrices(2, 2))
        for f, g in product(mats, repeat=2):
            n += 1
            via = BP.sum_via_biproduct(BOOL, f, g)
            if not np.array_equal(via, np.logical_or(f, g)):
                return _fail(name, n, {"backend": "mat-b", "inputs": (f, g), "lhs": via,
                                       "rhs": np.logical_or(f, g)})
    count = ctx.n(100)
    for be in ("mat-c", "mat-n"):
        if be not in ctx.backends:
            continue
        sr = SEMIRINGS[be]
        for _ in range(count):
            rows, cols = (int(x) for x in rng.integers(1, 5, size=2))
            f, g = (random_matrix(rng, be, rows, cols) for _ in range(2))
            n += 1
            via = BP.sum_via_biproduct(sr, f, g)
            direct = f + g
            tol = 1e-12 if be == "mat-c" else 0
            if np.max(np.abs(via - direct)) > tol:
                return _fail(name, n, {"backend": be, "inputs": (f, g), "lhs": via,
                                       "rhs": direct}, ctx.seed)
    return _pass(name, n, ctx.seed)


@law("biproduct.commutative-monoid", "biproduct")
def _cmon(ctx, name):
    """Hom-sets are commutative monoids under the sum, with the zero map as unit."""
    rng = ctx.rng(name)
    n = 0
    cases = []
    if "mat-b" in ctx.backends:
        mats = list(all_bool_matrices(2, 2))
        cases += [(BOOL, "mat-b", trip) for trip in product(mats, repeat=3)]
    for be in ("mat-c", "mat-n"):
        if be in ctx.backends:
            for _ in range(ctx.n(50)):
                rows, cols = (int(x) for x in rng.integers(1, 4, size=2))
                cases.append((SEMIRINGS[be], be,
                              tuple(random_matrix(rng, be, rows, cols) for _ in range(3))))
    for sr, be, (f, g, h) in cases:
        n += 1
        plus = lambda x, y: BP.sum_via_biproduct(sr, x, y)  # noqa: E731
        z = BP.zero_map(sr, f.shape[1], f.shape[0])
        ok = (sr.allclose(plus(plus(f, g), h), plus(f, plus(g, h)))
              and sr.allclose(plus(f, g), plus(g, f))
              and sr.allclose(plus(f, z), f))
        if not ok:
            return _fail(name, n, {"backend": be, "inputs": (f, g, h)}, ctx.seed)
    return _pass(name, n, ctx.seed)


@law("biproduct.bilinear", "biproduct")
def _bilinear(ctx, name):
    """Composition distributes over the sum on both sides."""
    rng = ctx.rng(name)
    n = 0
    for be in ctx.matrix_backends:
        sr = SEMIRINGS[be]
        for _ in range(ctx.n(50)):
            a, b, c, d = (int(x) for x in rng.integers(1, 4, size=4))
            f1, f2 = random_matrix(rng, be, b, c), random_matrix(rng, be, b, c)
            g, h = random_matrix(rng, be, c, a), random_matrix(rng, be, d, b)
            n += 1
            chk = BP.distributivity_law(sr, f1, f2, g, h)
            if not chk:
                w = chk.witness
                return _fail(name, n, {"backend": be, "inputs": (f1, f2, g, h), "lhs": w["lhs"],
                                       "rhs": w["rhs"], "side": w["side"]}, ctx.seed)
    return _pass(name, n, ctx.seed)


def _random_parts(rng, total_max=5):
    k = int(rng.integers(1, 4))
    return tuple(int(x) for x in rng.integers(1, total_max // 2 + 2, size=k))


@law("biproduct.blocks", "biproduct")
def _blocks(ctx, name):
    """Blocks round-trip exactly, and block products compute matrix products."""
    rng = ctx.rng(name)
    n = 0
    for be in ctx.matrix_backends:
        sr = SEMIRINGS[be]
        ex = exact(sr)
        for _ in range(ctx.n(100)):
            rp, mp, cp = _random_parts(rng), _random_parts(rng), _random_parts(rng)
            f = random_matrix(rng, be, sum(mp), sum(cp))
            g = random_matrix(rng, be, sum(rp), sum(mp))
            n += 1
            if not ex.allclose(BP.from_blocks(sr, BP.blocks(sr, f, mp, cp)), f):
                return _fail(name, n, {"backend": be, "inputs": (f,), "parts": (mp, cp)},
                             ctx.seed)
            lhs = BP.blocks(sr, sr.matmul(g, f), rp, cp)
            rhs = BP.block_product(sr, BP.blocks(sr, g, rp, mp), BP.blocks(sr, f, mp, cp))
            if not sr.allclose(BP.from_blocks(sr, lhs), BP.from_blocks(sr, rhs)):
                return _fail(name, n, {"backend": be, "inputs": (g, f),
                                       "lhs": BP.from_blocks(sr, lhs),
                                       "rhs": BP.from_blocks(sr, rhs),
                                       "parts": (rp, mp, cp)}, ctx.seed)
    return _pass(name, n, ctx.seed)


@law("biproduct.zero-object", "biproduct")
def _zero_object(ctx, name):
    """Hom-sets into and out of the zero object are singletons; zero maps factor."""
    rng = ctx.rng(name)
    n = 0
    for be in ctx.matrix_backends:
        sr = exact(SEMIRINGS[be])
        for a in range(0, 5):
            for b in range(0, 5):
                n += 1
                into, out = sr.zeros(0, a), sr.zeros(b, 0)
                z = sr.matmul(out, into)
                if into.size or out.size or not sr.allclose(z, BP.zero_map(sr, a, b)):
                    return _fail(name, n, {"backend": be, "dims": (a, b)})
                f = random_matrix(rng, be, a, b)
                if not sr.allclose(sr.matmul(f, BP.zero_map(sr, a, b)), BP.zero_map(sr, a, a)):
                    return _fail(name, n, {"backend": be, "inputs": (f,)}, ctx.seed)
    return _pass(name, n, ctx.seed)


def classical_bit_fixture(sr: Semiring, n: int) -> np.ndarray:
    """``(I (+) I) (x) Agent -> Agent (+) Agent`` built from basis vectors.

    Bit ``b`` tensored with agent state ``e_a`` goes to ``e_a`` in summand ``b``.
    """
    out = sr.zeros(2 * n, 2 * n)
    for b in range(2):
        for a in range(n):
            x = np.kron(np.eye(2, dtype=np.int64)[:, b], np.eye(n, dtype=np.int64)[:, a])
            y = np.eye(2 * n, dtype=np.int64)[:, b * n + a]
            out[np.argmax(y), np.argmax(x)] = sr.one
    return out


@law("biproduct.dist", "biproduct")
def _dist(ctx, name):
    """DIST is a natural permutation; at (1, 1, n) it is the classical-bit encoding."""
    rng = ctx.rng(name)
    n = 0
    for be in ctx.matrix_backends:
        sr = SEMIRINGS[be]
        for a1, a2, c in product(range(4), repeat=3):
            n += 1
            for m in (BP.dist(sr, a1, a2, c), BP.dist_left(sr, c, a1, a2)):
                if m.size and not BP.is_permutation(m):
                    return _fail(name, n, {"backend": be, "matrix": m, "dims": (a1, a2, c)})
        for k in range(1, 5):
            n += 1
            if not np.array_equal(BP.dist(sr, 1, 1, k), classical_bit_fixture(sr, k)):
                return _fail(name, n, {"backend": be, "lhs": BP.dist(sr, 1, 1, k),
                                       "rhs": classical_bit_fixture(sr, k)})
        for _ in range(ctx.n(100)):
            dims = [int(x) for x in rng.integers(1, 4, size=6)]
            f1 = random_matrix(rng, be, dims[0], dims[1])
            f2 = random_matrix(rng, be, dims[2], dims[3])
            g = random_matrix(rng, be, dims[4], dims[5])
            n += 1
            for chk in (BP.dist_naturality(sr, f1, f2, g), BP.dist_left_naturality(sr, g, f1, f2)):
                if not chk:
                    return _fail(name, n, {"backend": be, "inputs": (f1, f2, g),
                                           "lhs": chk.witness["lhs"], "rhs": chk.witness["rhs"]},
                                 ctx.seed)
    return _pass(name, n, ctx.seed)


@law("biproduct.matrix-construction", "biproduct", needs=("mat-b",))
def _construction(ctx, name):
    """Matrices over the boolean semiring, built generically, are mat-b."""
    be = BP.matrix_construction(BOOL)
    fast = backend("mat-b")
    mats = list(all_bool_matrices(2, 2))
    n = 0
    for f, g in product(mats, repeat=2):
        n += 1
        got = be.compose(f, g)
        rel = {(x, z) for x in range(2) for z in range(2)
               if any(f[y, x] and g[z, y] for y in range(2))}
        oracle = np.array([[(x, z) in rel for x in range(2)] for z in range(2)], dtype=np.bool_)
        if not (np.array_equal(got, fast.compose(f, g)) and np.array_equal(got, oracle)):
            return _fail(name, n, {"backend": "mat-b", "inputs": (f, g), "lhs": got,
                                   "rhs": oracle})
    snake = BP.snake_matrix(be, 3)
    n += 1
    if not np.array_equal(snake, np.eye(3, dtype=np.bool_)):
        return _fail(name, n, {"backend": "mat-b", "lhs": snake, "rhs": np.eye(3, dtype=bool)})
    return _pass(name, n)


@law("biproduct.iso", "biproduct")
def _iso(ctx, name):
    """Permutations and DIST are isos with their transpose as inverse; zero is not."""
    n = 0
    for be in ctx.matrix_backends:
        sr = SEMIRINGS[be]
        cases = [(backend(be).sym([2], [3]), True), (BP.dist(sr, 1, 1, 2), True),
                 (BP.dist_left(sr, 2, 1, 2), True), (sr.zeros(2, 2), False)]
        for m, want in cases:
            n += 1
            r = check_iso(m, be)
            if r.ok != want or (want and not np.array_equal(r.witness["inverse"], m.T)):
                return _fail(name, n, {"backend": be, "matrix": m})
    return _pass(name, n)


# ---------------------------------------------------------------------------
# finite sets: products and coproducts


CARRIERS = [tuple(str(i) for i in range(k)) for k in range(4)]


def _hom(a, b):
    return list(FS.all_functions(a, b))


@law("finset.pairing", "products-finset", needs=("finset",))
def _pairing(ctx, name):
    """``p1 . [f, g] = f`` and ``p2 . [f, g] = g`` for all f, g out of carriers of size at most 3."""
    n = 0
    for c, a, b in product(CARRIERS, repeat=3):
        for f in _hom(c, a):
            for g in _hom(c, b):
                n += 1
                h = FS.pair(f, g)
                if h.then(FS.proj1(a, b)) != f or h.then(FS.proj2(a, b)) != g:
                    return _fail(name, n, {"backend": "finset", "inputs": (f, g)})
    return _pass(name, n)


@law("finset.unpairing", "products-finset", needs=("finset",))
def _unpairing(ctx, name):
    """``[p1 . h, p2 . h] = h`` for every h into a product."""
    n = 0
    for c, a, b in product(CARRIERS, repeat=3):
        for h in _hom(c, FS.product_carrier(a, b)):
            n += 1
            if FS.pair(h.then(FS.proj1(a, b)), h.then(FS.proj2(a, b))) != h:
                return _fail(name, n, {"backend": "finset", "inputs": (h,)})
    return _pass(name, n)


@law("finset.coproduct", "products-finset", needs=("finset",))
def _coproduct(ctx, name):
    n = 0
    for a, b, c in product(CARRIERS, repeat=3):
        for f in _hom(a, c):
            for g in _hom(b, c):
                n += 1
                h = FS.copair(f, g)
                if FS.inj1(a, b).then(h) != f or FS.inj2(a, b).then(h) != g:
                    return _fail(name, n, {"backend": "finset", "inputs": (f, g)})
        for h in _hom(FS.coproduct_carrier(a, b), c):
            n += 1
            if FS.copair(FS.inj1(a, b).then(h), FS.inj2(a, b).then(h)) != h:
                return _fail(name, n, {"backend": "finset", "inputs": (h,)})
    for a in CARRIERS:
        n += 1
        nab = FS.codiagonal(a)
        if FS.inj1(a, a).then(nab) != FS.identity(a) or FS.inj2(a, a).then(nab) != FS.identity(a):
            return _fail(name, n, {"backend": "finset", "carrier": a})
    return _pass(name, n)


@law("finset.entanglement-exclusion", "products-finset", needs=("finset",))
def _no_entanglement(ctx, name):
    """Every state of a product is the pairing of its two marginals."""
    n = 0
    unit = ((),)
    for a, b in product(CARRIERS, repeat=2):
        for psi in _hom(unit, FS.product_carrier(a, b)):
            n += 1
            left, right = psi.then(FS.proj1(a, b)), psi.then(FS.proj2(a, b))
            if FS.pair(left, right) != psi:
                return _fail(name, n, {"backend": "finset", "inputs": (psi,)})
    return _pass(name, n)


@law("finset.projection-naturality", "products-finset", needs=("finset",))
def _proj_natural(ctx, name):
    cat = FinSetCat()
    c1 = NaturalityCandidate(arg(0) @ arg(1), arg(0),
                             lambda o: FS.proj1(o[0], o[1]), "proj1")
    c2 = NaturalityCandidate(arg(0) @ arg(1), arg(1),
                             lambda o: FS.proj2(o[0], o[1]), "proj2")
    small = CARRIERS[1:3]
    tuples = [(f, g) for a, b, c, d in product(small, repeat=4)
              for f in _hom(a, b) for g in _hom(c, d)]
    n = 0
    for cand in (c1, c2):
        r = check_naturality(cand, cat, tuples, name)
        n += r.samples
        if not r.ok:
            return r
    return _pass(name, n)


# ---------------------------------------------------------------------------
# naturality: the diagonal and its counterexamples


BELL = np.array([[1], [0], [0], [1]])
PRODUCT = np.array([[1], [1], [1], [1]])


def no_cloning_fdhilb() -> LawResult:
    cat = MatrixCat(COMPLEX, "mat-c")
    f = np.array([[1], [1]], dtype=np.complex128)
    return check_naturality(diagonal_candidate(cat), cat, [(f,)], "naturality.diagonal-mat-c")


def no_cloning_rel() -> LawResult:
    cat = MatrixCat(BOOL, "mat-b")
    r = np.array([[True], [True]])
    return check_naturality(diagonal_candidate(cat), cat, [(r,)], "naturality.diagonal-mat-b")


REL_LABELS_IN = ("*",)
REL_LABELS_OUT = ("(0,0)", "(0,1)", "(1,0)", "(1,1)")


@law("naturality.no-cloning-mat-c", "naturality", needs=("mat-c",))
def _fixture_fdhilb(ctx, name):
    """Expected failure: copying a basis is not natural for f = (1, 1)."""
    r = no_cloning_fdhilb()
    w = r.witness or {}
    ok = (not r.ok and np.array_equal(w["lhs"], BELL) and np.array_equal(w["rhs"], PRODUCT))
    return LawResult(name, "PASS" if ok else "FAIL", r.samples, w)


@law("naturality.no-cloning-mat-b", "naturality", needs=("mat-b",))
def _fixture_rel(ctx, name):
    """Expected failure: the relational diagonal against R = {(*, 0), (*, 1)}."""
    r = no_cloning_rel()
    w = dict(r.witness or {})
    if r.ok:
        return LawResult(name, "FAIL", r.samples, w)
    lhs = relation_pairs(w["lhs"], REL_LABELS_IN, REL_LABELS_OUT)
    rhs = relation_pairs(w["rhs"], REL_LABELS_IN, REL_LABELS_OUT)
    want_l = {("*", "(0,0)"), ("*", "(1,1)")}
    want_r = {("*", x) for x in REL_LABELS_OUT}
    w.update(lhs_relation=sorted(lhs), rhs_relation=sorted(rhs))
    return LawResult(name, "PASS" if (lhs == want_l and rhs == want_r) else "FAIL", r.samples, w)


@law("naturality.diagonal-finset", "naturality", needs=("finset",))
def _diag_set(ctx, name):
    """The diagonal is natural in finite sets: exhaustive over carriers of size at most 3."""
    cat = FinSetCat()
    tuples = [(f,) for a, b in product(CARRIERS, repeat=2) for f in _hom(a, b)]
    return check_naturality(diagonal_candidate(cat), cat, tuples, name)


@law("naturality.symmetry", "naturality")
def _sym_natural(ctx, name):
    rng = ctx.rng(name)
    n = 0
    for be in ctx.matrix_backends:
        sr = SEMIRINGS[be]
        cat = MatrixCat(sr, be)
        mb = backend(be)
        cand = NaturalityCandidate(arg(0) @ arg(1), arg(1) @ arg(0),
                                   lambda o, mb=mb: mb.sym([o[0]], [o[1]]), "sym")
        tuples = []
        for _ in range(ctx.n(40)):
            d = [int(x) for x in rng.integers(1, 4, size=4)]
            tuples.append((random_matrix(rng, be, d[0], d[1]), random_matrix(rng, be, d[2], d[3])))
        r = check_naturality(cand, cat, tuples, name, ctx.seed)
        n += r.samples
        if not r.ok:
            return r
    return _pass(name, n, ctx.seed)


@law("naturality.dist", "naturality")
def _dist_natural(ctx, name):
    """DIST seen as a family ``(X0 + X1) @ X2 => (X0 @ X2) + (X1 @ X2)``."""
    rng = ctx.rng(name)
    n = 0
    for be in ctx.matrix_backends:
        sr = SEMIRINGS[be]
        cat = MatrixCat(sr, be)
        cand = NaturalityCandidate((arg(0) + arg(1)) @ arg(2), (arg(0) @ arg(2)) + (arg(1) @ arg(2)),
                                   lambda o, sr=sr: BP.dist(sr, *o), "dist")
        tuples = []
        for _ in range(ctx.n(40)):
            d = [int(x) for x in rng.integers(1, 4, size=6)]
            tuples.append(tuple(random_matrix(rng, be, d[2 * k], d[2 * k + 1]) for k in range(3)))
        r = check_naturality(cand, cat, tuples, name, ctx.seed)
        n += r.samples
        if not r.ok:
            return r
    return _pass(name, n, ctx.seed)
