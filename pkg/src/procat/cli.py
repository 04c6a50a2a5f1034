"""Command-line front end.

Exit codes: 0 success (equal, all laws pass), 1 negative verdict, 2 usage,
parse, type or binding error. Results go to stdout, diagnostics to stderr.

A diagnostic line reads ``file:line:col: Kind: message``. Line and column
are 0 when the error has no source position; content errors in a bindings
file name the offending JSON node instead.
"""

from __future__ import annotations

import argparse
import sys

from . import demos, dsl, finset, laws
from . import graph as G
from . import signature as S
from .backends import MATRIX_BACKENDS, backend, evaluate, format_matrix, load_bindings
from .errors import ProcatError, TypeMismatch, UnsupportedInBackend
from .render import FORMATS, render

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


def _diagnostic(path: str, err: ProcatError) -> str:
    line, col = err.pos if err.pos else (0, 0)
    out = f"{path}:{line}:{col}: {err.kind}: {err.message}"
    if isinstance(err, TypeMismatch) and err.expected is not None:
        out += f" [expected {_ws(err.expected)}; actual {_ws(err.actual)}]"
    return out


def _ws(x) -> str:
    """A wire list, or a ``(dom, cod)`` pair of wire lists."""
    if all(isinstance(w, S.Wire) for w in x):
        return f"[{S.wires_str(x)}]"
    dom, cod = x
    return f"[{S.wires_str(dom)}] -> [{S.wires_str(cod)}]"


def _load(path: str) -> dsl.Program:
    return dsl.parse_file(path)


def cmd_check(args) -> int:
    prog = _load(args.file)
    sig = prog.signature
    print(f"OK: {len(sig.objects)} objects, {len(sig.boxes)} boxes, {len(prog.terms)} terms")
    return EXIT_OK


def _graph_of(args):
    prog = _load(args.file)
    t = prog.term(args.term)
    return prog, t, G.to_graph(prog.signature, t)


def cmd_normalize(args) -> int:
    _, _, g0 = _graph_of(args)
    g, trace = G.normalize(g0)
    print(render(g, args.format))
    mark = "//" if args.format == "dot" else ""
    rules = " ".join(s.rule for s in trace) if trace else "(empty)"
    print(f"{mark}trace: {rules}")
    for s in trace:
        print(f"{mark}  {s}")
    return EXIT_OK


def cmd_render(args) -> int:
    _, _, g = _graph_of(args)
    if not args.raw:
        g, _ = G.normalize(g)
    print(render(g, args.format))
    return EXIT_OK


def _binding(args):
    try:
        b = load_bindings(args.bindings)
        if args.backend and args.backend != b.backend:
            raise UnsupportedInBackend(
                f"bindings file is for {b.backend}, but --backend is {args.backend}"
            )
    except ProcatError as err:
        err.source = err.source or args.bindings
        raise
    return b


def cmd_eval(args) -> int:
    prog = _load(args.file)
    t = prog.term(args.term)
    b = _binding(args)
    if b.backend == "finset":
        print(finset.format_table(finset.eval_set(b, prog.signature, t)))
    else:
        print(format_matrix(evaluate(b, prog.signature, t), backend(b.backend).semiring))
    return EXIT_OK


def cmd_equal(args) -> int:
    prog = _load(args.file)
    names = [n.strip() for n in args.terms.split(",")]
    if len(names) != 2:
        raise SystemExit(_usage("--terms expects exactly two comma-separated names"))
    t1, t2 = prog.term(names[0]), prog.term(names[1])
    eq = G.equal(prog.signature, t1, t2)
    print(f"structural: {eq.verdict}")
    ok = bool(eq)
    if args.semantic:
        if not args.bindings:
            raise SystemExit(_usage("--semantic needs --bindings"))
        b = _binding(args)
        if b.backend == "finset":
            same = finset.eval_set(b, prog.signature, t1) == finset.eval_set(b, prog.signature, t2)
        else:
            sr = backend(b.backend).semiring
            same = sr.allclose(evaluate(b, prog.signature, t1), evaluate(b, prog.signature, t2))
        print(f"semantic ({b.backend}): {'equal' if same else 'inequal'}")
        ok = ok and same
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_laws(args) -> int:
    backends = tuple(args.backend.split(",")) if args.backend else laws.ALL_BACKENDS
    for b in backends:
        if b not in laws.ALL_BACKENDS:
            raise SystemExit(_usage(f"unknown backend {b!r}"))
    results = laws.run_suite(args.suite, backends, args.seed, args.samples)
    print(laws.report(results, args.witness_dir))
    failed = [r for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} laws passed")
    return EXIT_OK if not failed else EXIT_NEGATIVE


def cmd_demo(args) -> int:
    rep = demos.run_demo(args.name)
    print(rep.text)
    return EXIT_OK if rep.ok else EXIT_NEGATIVE


def _usage(msg: str) -> int:
    print(f"procat: error: {msg}", file=sys.stderr)
    return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="procat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="parse and type-check a signature file")
    c.add_argument("file")
    c.set_defaults(fn=cmd_check)

    for name, fn, helptext in (("normalize", cmd_normalize, "normal form and rewrite trace"),
                               ("render", cmd_render, "draw a term's diagram")):
        c = sub.add_parser(name, help=helptext)
        c.add_argument("file")
        c.add_argument("--term", required=True)
        c.add_argument("--format", choices=FORMATS, default="text")
        if name == "render":
            c.add_argument("--raw", action="store_true", help="skip normalization")
        c.set_defaults(fn=fn)

    c = sub.add_parser("eval", help="evaluate a term under a bindings file")
    c.add_argument("file")
    c.add_argument("--term", required=True)
    c.add_argument("--backend", choices=MATRIX_BACKENDS + ("finset",))
    c.add_argument("--bindings", required=True)
    c.set_defaults(fn=cmd_eval)

    c = sub.add_parser("equal", help="decide equality of two terms")
    c.add_argument("file")
    c.add_argument("--terms", required=True, metavar="T1,T2")
    c.add_argument("--semantic", action="store_true")
    c.add_argument("--backend", choices=MATRIX_BACKENDS + ("finset",))
    c.add_argument("--bindings")
    c.set_defaults(fn=cmd_equal)

    c = sub.add_parser("laws", help="run law suites")
    c.add_argument("--suite", choices=laws.SUITES, default="all")
    c.add_argument("--backend", help="comma-separated subset of "
                                     + ",".join(laws.ALL_BACKENDS))
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--samples", type=int, help="override random sample counts")
    c.add_argument("--witness-dir", default="witnesses",
                   help="where witnesses of failed laws are written")
    c.set_defaults(fn=cmd_laws)

    c = sub.add_parser("demo", help="run a built-in demonstration")
    c.add_argument("name", choices=demos.DEMOS)
    c.set_defaults(fn=cmd_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    path = getattr(args, "file", "<input>")
    try:
        return args.fn(args)
    except ProcatError as err:
        print(_diagnostic(err.source or path, err), file=sys.stderr)
        return EXIT_ERROR
    except OSError as err:
        print(f"{path}:0:0: IOError: {err.strerror}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
