"""Command-line front end.

Every command reads a network or matrix file (``-`` for stdin), writes its
result to stdout and diagnostics to stderr. Exit codes: 0 success, 1 bad
input or failed verification, 2 size cap exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import __version__
from .boolfn import minterm_form, render_kmap
from .formats import (
    FormatError,
    detect_format,
    format_matrix,
    format_network,
    parse_matrix,
    parse_network,
)
from .network import (
    MAX_DENSE_N,
    MAX_LOGICAL_N,
    BooleanNetwork,
    check_n,
    matrix_from_tables,
    net_kmap,
    simulate,
    to_matrix,
)
from .reconstruct import (
    cheng_reduce,
    dependencies,
    matrix_kmap,
    reconstruct_canonical,
    reconstruct_kmap,
    reconstruct_minimal,
    reconstruct_tables,
)
from .stp import LogicalMatrix, SizeLimitError, decode_bits, encode_bits, stp_logical

EXIT_OK = 0
EXIT_USER = 1
EXIT_LIMIT = 2


class UserError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USER, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UserError(f"cannot read {path}: {exc.strerror}") from None


def _load(args) -> BooleanNetwork | LogicalMatrix:
    text = _read(args.input)
    kind = args.format or detect_format(text)
    if kind == "net":
        bn = parse_network(text)
        check_n(bn.n, args.max_n)
        return bn
    L = parse_matrix(text)
    check_n(L.n_vars, args.max_n)
    return L


def _need(obj, kind, command: str):
    if not isinstance(obj, kind):
        want = "network" if kind is BooleanNetwork else "matrix"
        raise UserError(f"{command} expects a {want} file")
    return obj


def _matrix_of(obj, max_n) -> LogicalMatrix:
    return obj if isinstance(obj, LogicalMatrix) else to_matrix(obj, max_n)


def _tables_of(obj, max_n):
    return obj.tables() if isinstance(obj, BooleanNetwork) else reconstruct_tables(obj, max_n)


def cmd_to_matrix(args, out) -> int:
    bn = _need(_load(args), BooleanNetwork, "to-matrix")
    out.write(format_matrix(to_matrix(bn, args.max_n)))
    return EXIT_OK


def cmd_from_matrix(args, out) -> int:
    L = _need(_load(args), LogicalMatrix, "from-matrix")
    if args.mode == "canonical":
        forms = reconstruct_canonical(L, args.max_n)
        bn = reconstruct_kmap(L, args.max_n)
        out.write(format_network(bn, [f"sum {m}" for m in forms]))
    else:
        out.write(format_network(reconstruct_minimal(L, args.max_n)))
    return EXIT_OK


def cmd_kmap(args, out) -> int:
    obj = _load(args)
    if isinstance(obj, BooleanNetwork):
        n, cells = obj.n, net_kmap(obj, args.max_n).cells
    else:
        km = matrix_kmap(obj)
        n, cells = km.n, km.cells
    out.write("decimal:\n")
    out.write(render_kmap(cells, n) + "\n\n")
    out.write("binary:\n")
    out.write(render_kmap(cells, n, lambda c: format(c, f"0{n}b")) + "\n")
    return EXIT_OK


def _fmt_dense(m) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in m.tolist()) + "]"


def _fmt_structure(M: LogicalMatrix) -> str:
    return f"delta {M.rows} [{' '.join(map(str, M.cols))}]"


def cmd_cheng(args, out) -> int:
    L = _matrix_of(_load(args), args.max_n)
    report = cheng_reduce(L)
    n = report.n
    out.write(f"swap convention: {report.convention}\n")
    for node in report.nodes:
        i = node.node
        out.write(f"node x{i}\n")
        out.write(f"  M_{i} = {_fmt_structure(node.structure)}\n")
        for j, res in enumerate(node.residuals, 1):
            verdict = "= 0" if res.is_zero() else "!= 0"
            out.write(f"  j={j}: residual {_fmt_dense(res)} {verdict}\n")
        removable = ",".join(f"x{j}" for j in sorted(node.removable)) or "none"
        out.write(f"  removable: {removable}\n")
        if node.failed:
            out.write(f"  FAILED: no variable removable at full arity {n}\n")
        else:
            inputs = ",".join(f"x{j}" for j in node.remaining) or "(constant)"
            out.write(f"  reduced over {inputs}: {_fmt_structure(node.reduced)}\n")
            out.write(f"  in-degree: {node.in_degree}\n")
    return EXIT_OK


def cmd_graph(args, out) -> int:
    tables = _tables_of(_load(args), args.max_n)
    deps = [dependencies(t) for t in tables]
    out.write("digraph bn {\n")
    for i, d in enumerate(deps, 1):
        out.write(f"  x{i} [indegree={len(d)}];\n")
    for i, d in enumerate(deps, 1):
        for j in d:
            out.write(f"  x{j} -> x{i};\n")
    out.write("}\n")
    return EXIT_OK


def cmd_verify(args, out) -> int:
    obj = _load(args)
    if isinstance(obj, BooleanNetwork):
        L = to_matrix(obj, args.max_n)
        expected = obj.tables()
    else:
        L = obj
        expected = reconstruct_tables(L, args.max_n)
    n = len(expected)
    if n <= MAX_DENSE_N:
        rebuilt = reconstruct_kmap(L, args.max_n)
        got = rebuilt.tables()
        L2 = to_matrix(rebuilt, args.max_n)
    else:
        # canonical forms would hold up to 2^(n-1) minterms each; compare tables
        out.write(f"note: n = {n} > {MAX_DENSE_N}, canonical forms compared as truth tables\n")
        got = reconstruct_tables(L, args.max_n)
        L2 = matrix_from_tables(got)
    ok = True
    for r, (a, b) in enumerate(zip(expected, got), 1):
        if a != b:
            ok = False
            diff = [k for k, (x, y) in enumerate(zip(a.bits, b.bits)) if x != y]
            out.write(f"x{r}: FAIL rows differ {diff[:16]}\n")
        else:
            out.write(f"x{r}: ok ({len(minterm_form(a).on_set)} minterms)\n")
    if L2 != L:
        ok = False
        out.write(f"matrix: FAIL {format_matrix(L).strip()} != {format_matrix(L2).strip()}\n")
    out.write("PASS\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_USER


def cmd_simulate(args, out) -> int:
    obj = _load(args)
    n = obj.n if isinstance(obj, BooleanNetwork) else obj.n_vars
    init = args.init.strip()
    if len(init) != n or set(init) - {"0", "1"}:
        raise UserError(f"--init must be a {n}-character bitstring, got {args.init!r}")
    if args.steps < 0:
        raise UserError("--steps must be non-negative")
    state = tuple(int(c) for c in init)
    if isinstance(obj, BooleanNetwork):
        states = simulate(obj, state, args.steps)
    else:
        states = _simulate_matrix(obj, state, args.steps)
    for s in states:
        out.write("".join(map(str, s)) + "\n")
    return EXIT_OK


def _simulate_matrix(L: LogicalMatrix, state, steps: int):
    v = encode_bits(state)
    yield state
    for _ in range(steps):
        v = stp_logical(L, v)
        yield decode_bits(v)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-n", type=int, default=argparse.SUPPRESS,
        help=f"largest accepted number of nodes (default {MAX_LOGICAL_N})",
    )
    common.add_argument(
        "--format", choices=("net", "mat"), default=argparse.SUPPRESS,
        help="input type; detected from content by default",
    )

    parser = _Parser(
        prog="bnkmap",
        parents=[common],
        description="Convert Boolean networks between update rules and transition matrices.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("input", help="input file, or - for stdin")
        p.set_defaults(func=func)
        return p

    add("to-matrix", cmd_to_matrix, "network file -> transition matrix")
    p = add("from-matrix", cmd_from_matrix, "transition matrix -> network file")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--canonical", dest="mode", action="store_const", const="canonical",
                      help="sum-of-minterms rules")
    mode.add_argument("--minimal", dest="mode", action="store_const", const="minimal",
                      help="minimized sum-of-products rules (default)")
    p.set_defaults(mode="minimal")
    add("kmap", cmd_kmap, "print the composed K-map")
    add("cheng", cmd_cheng, "structure-matrix reduction report")
    add("graph", cmd_graph, "dependency graph in DOT format")
    add("verify", cmd_verify, "round-trip self-check")
    p = add("simulate", cmd_simulate, "synchronous trajectory")
    p.add_argument("--init", required=True, help="initial state, e.g. 101")
    p.add_argument("--steps", type=int, required=True, help="number of updates")
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    args.max_n = getattr(args, "max_n", None)
    args.format = getattr(args, "format", None)
    try:
        return args.func(args, out)
    except SizeLimitError as exc:
        print(f"bnkmap: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (UserError, FormatError, ValueError) as exc:
        print(f"bnkmap: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
