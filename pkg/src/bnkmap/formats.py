"""Text formats for networks and transition matrices.

Network files hold one rule per line::

    # comment
    x1' = x1 | x2
    x2' = x1 & x2

Matrix files hold a single ``delta <2^n> [i_1 i_2 ... i_{2^n}]`` line with
1-based indices; comments and line breaks inside the brackets are allowed.
"""

from __future__ import annotations

import re

from .boolfn import ExprSyntaxError, format_expr, parse_expr
from .network import BooleanNetwork
from .stp import LogicalMatrix


class FormatError(ValueError):
    """Input file does not follow the expected grammar."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None) -> None:
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def detect_format(text: str) -> str:
    """``"mat"`` when the first meaningful token is ``delta``, else ``"net"``."""
    for line in text.splitlines():
        body = _strip_comment(line).strip()
        if body:
            return "mat" if body.startswith("delta") else "net"
    raise FormatError("input is empty")


_RULE = re.compile(r"\s*x(\d+)\s*'\s*=")


def parse_network(text: str) -> BooleanNetwork:
    rules: dict[int, tuple[int, int, str]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = _strip_comment(line)
        if not body.strip():
            continue
        m = _RULE.match(body)
        if m is None:
            col = len(body) - len(body.lstrip()) + 1
            raise FormatError("expected a rule of the form x<r>' = <expr>", lineno, col)
        r = int(m.group(1))
        if r in rules:
            raise FormatError(f"x{r} is defined twice (first on line {rules[r][0]})", lineno, 1)
        rules[r] = (lineno, m.end(), body[m.end():])
    if not rules:
        raise FormatError("no rules found")
    n = len(rules)
    if sorted(rules) != list(range(1, n + 1)):
        missing = min(set(range(1, n + 1)) - set(rules))
        raise FormatError(f"rules must define x1..x{n}; x{missing} is missing")
    exprs = []
    for r in range(1, n + 1):
        lineno, offset, src = rules[r]
        try:
            exprs.append(parse_expr(src, n))
        except ExprSyntaxError as exc:
            raise FormatError(exc.reason, lineno, offset + exc.pos + 1) from None
    return BooleanNetwork(tuple(exprs))


def format_network(bn: BooleanNetwork, comments: list[str] | None = None) -> str:
    lines = []
    for r, e in enumerate(bn.rules, 1):
        line = f"x{r}' = {format_expr(e)}"
        if comments and comments[r - 1]:
            line += f"  # {comments[r - 1]}"
        lines.append(line)
    return "\n".join(lines) + "\n"


_MATRIX = re.compile(r"\s*delta\s+(\d+)\s*\[([^\]]*)\]\s*$")


def parse_matrix(text: str) -> LogicalMatrix:
    lines = [_strip_comment(line) for line in text.splitlines()]
    start = next((i for i, line in enumerate(lines, 1) if line.strip()), 1)
    m = _MATRIX.match(" ".join(lines))
    if m is None:
        raise FormatError("expected 'delta <2^n> [i_1 ... i_{2^n}]'", start)
    dim = int(m.group(1))
    if dim < 2 or dim & (dim - 1):
        raise FormatError(f"dimension {dim} is not a power of two >= 2", start)
    items = m.group(2).split()
    try:
        cols = [int(x) for x in items]
    except ValueError:
        bad = next(x for x in items if not x.lstrip("-").isdigit())
        raise FormatError(f"index {bad!r} is not an integer", start) from None
    if len(cols) != dim:
        raise FormatError(f"expected {dim} indices, got {len(cols)}", start)
    for pos, c in enumerate(cols, 1):
        if not 1 <= c <= dim:
            raise FormatError(f"index #{pos} = {c} is outside 1..{dim}", start)
    return LogicalMatrix(dim, tuple(cols))


def format_matrix(L: LogicalMatrix) -> str:
    return f"delta {L.rows} [{' '.join(map(str, L.cols))}]\n"
