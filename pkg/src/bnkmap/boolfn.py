"""Boolean expressions, truth tables, minterm forms and single-function K-maps.

Row numbering follows the usual truth-table convention: the assignment
``(x_1, ..., x_n)`` has row number ``k`` whose most significant bit is ``x_1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

import numpy as np

from .stp import LogicalMatrix


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Not:
    child: "BoolExpr"


@dataclass(frozen=True)
class And:
    children: tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Or:
    children: tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Xor:
    children: tuple["BoolExpr", ...]


BoolExpr = Union[Var, Const, Not, And, Or, Xor]

FALSE_EXPR = Const(0)
TRUE_EXPR = Const(1)


class ExprSyntaxError(ValueError):
    """Malformed expression text. ``pos`` is the 0-based character offset."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} at column {pos + 1}")
        self.pos = pos
        self.reason = message


# ---------------------------------------------------------------- parsing

_TOKEN = re.compile(r"\s*(?:(x(\d+))|([01])|([!&^|()])|(\S))")


def _tokenize(text: str) -> list[tuple[str, object, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("var", int(m.group(2)), start))
        elif m.group(3):
            tokens.append(("const", int(m.group(3)), start))
        elif m.group(4):
            tokens.append((m.group(4), None, start))
        else:
            raise ExprSyntaxError(f"unexpected character {m.group(5)!r}", start)
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # precedence, loosest first
    _LEVELS = (("|", Or), ("^", Xor), ("&", And))

    def __init__(self, text: str, n_vars: int) -> None:
        self.tokens = _tokenize(text)
        self.i = 0
        self.n_vars = n_vars

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def binary(self, level: int) -> BoolExpr:
        if level == len(self._LEVELS):
            return self.unary()
        op, node = self._LEVELS[level]
        items = [self.binary(level + 1)]
        while self.peek()[0] == op:
            self.take()
            items.append(self.binary(level + 1))
        return items[0] if len(items) == 1 else node(tuple(items))

    def unary(self) -> BoolExpr:
        kind, value, pos = self.take()
        if kind == "!":
            return Not(self.unary())
        if kind == "(":
            inner = self.binary(0)
            if self.peek()[0] != ")":
                raise ExprSyntaxError("expected ')'", self.peek()[2])
            self.take()
            return inner
        if kind == "var":
            if not 1 <= value <= self.n_vars:
                raise ExprSyntaxError(
                    f"variable x{value} outside x1..x{self.n_vars}", pos
                )
            return Var(value)
        if kind == "const":
            return Const(value)
        if kind == "end":
            raise ExprSyntaxError("unexpected end of expression", pos)
        raise ExprSyntaxError(f"unexpected {kind!r}", pos)


def parse_expr(text: str, n_vars: int) -> BoolExpr:
    """Parse ``x1 & !x2 | x3`` style text; precedence ``!`` > ``&`` > ``^`` > ``|``."""
    if not text.strip():
        raise ExprSyntaxError("empty expression", 0)
    p = _Parser(text, n_vars)
    expr = p.binary(0)
    kind, _, pos = p.peek()
    if kind != "end":
        raise ExprSyntaxError(f"unexpected {kind!r}", pos)
    return expr


_PREC = {Or: 1, Xor: 2, And: 3}
_GLYPH = {Or: " | ", Xor: " ^ ", And: " & "}


def format_expr(e: BoolExpr) -> str:
    """Render in the parser's grammar with minimal parentheses.

    A nested operand of the same operator keeps its brackets, so
    ``parse_expr(format_expr(e))`` rebuilds ``e`` node for node.
    """
    return _fmt(e, 0)


def _fmt(e: BoolExpr, outer: int) -> str:
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Not):
        return "!" + _fmt(e.child, 4)
    prec = _PREC[type(e)]
    # an operand of the same operator must be bracketed to keep the tree shape
    parts = [_fmt(c, prec + 1) for c in e.children]
    s = _GLYPH[type(e)].join(parts)
    return f"({s})" if prec < outer else s


def variables(e: BoolExpr) -> set[int]:
    if isinstance(e, Var):
        return {e.index}
    if isinstance(e, Const):
        return set()
    if isinstance(e, Not):
        return variables(e.child)
    out: set[int] = set()
    for c in e.children:
        out |= variables(c)
    return out


def eliminate_xor(e: BoolExpr) -> BoolExpr:
    """Rewrite every Xor using only Not/And/Or."""
    if isinstance(e, (Var, Const)):
        return e
    if isinstance(e, Not):
        return Not(eliminate_xor(e.child))
    children = tuple(eliminate_xor(c) for c in e.children)
    if isinstance(e, Xor):
        acc = children[0]
        for c in children[1:]:
            acc = Or((And((acc, Not(c))), And((Not(acc), c))))
        return acc
    return type(e)(children)


# ------------------------------------------------------------- evaluation

def eval_expr(e: BoolExpr, assignment: Sequence[int]) -> int:
    """Value of ``e`` when ``x_r`` takes ``assignment[r-1]``."""
    if isinstance(e, Var):
        return 1 if assignment[e.index - 1] else 0
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return 1 - eval_expr(e.child, assignment)
    vals = [eval_expr(c, assignment) for c in e.children]
    if isinstance(e, And):
        return int(all(vals))
    if isinstance(e, Or):
        return int(any(vals))
    return sum(vals) & 1


@lru_cache(maxsize=256)
def _var_mask(n: int, r: int) -> int:
    # bit k of the mask is bit (n - r) of k
    k = np.arange(2**n, dtype=np.int64)
    packed = np.packbits(((k >> (n - r)) & 1).astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _eval_mask(e: BoolExpr, n: int, full: int) -> int:
    """All 2^n values at once as an integer bitset (bit k = row k)."""
    if isinstance(e, Var):
        return _var_mask(n, e.index)
    if isinstance(e, Const):
        return full if e.value else 0
    if isinstance(e, Not):
        return full ^ _eval_mask(e.child, n, full)
    masks = [_eval_mask(c, n, full) for c in e.children]
    acc = masks[0]
    for m in masks[1:]:
        if isinstance(e, And):
            acc &= m
        elif isinstance(e, Or):
            acc |= m
        else:
            acc ^= m
    return acc


def _mask_bits(mask: int, size: int) -> tuple[int, ...]:
    raw = np.frombuffer(mask.to_bytes((size + 7) // 8, "little"), dtype=np.uint8)
    return tuple(np.unpackbits(raw, bitorder="little")[:size].tolist())


@dataclass(frozen=True)
class TruthTable:
    """Function values ``bits[k]`` indexed by row number ``k``."""

    n_vars: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bits", tuple(1 if b else 0 for b in self.bits))
        if self.n_vars < 0 or len(self.bits) != 2**self.n_vars:
            raise ValueError(
                f"truth table for {self.n_vars} variables needs {2 ** self.n_vars} bits,"
                f" got {len(self.bits)}"
            )

    @classmethod
    def from_on_set(cls, n_vars: int, on_set) -> TruthTable:
        bits = [0] * 2**n_vars
        for k in on_set:
            bits[k] = 1
        return cls(n_vars, tuple(bits))

    def array(self) -> np.ndarray:
        return np.asarray(self.bits, dtype=bool)

    def __str__(self) -> str:
        return "".join(map(str, self.bits))


def truth_table(e: BoolExpr, n_vars: int) -> TruthTable:
    size = 2**n_vars
    return TruthTable(n_vars, _mask_bits(_eval_mask(e, n_vars, (1 << size) - 1), size))


# -------------------------------------------------------- canonical forms

@dataclass(frozen=True)
class MintermForm:
    n_vars: int
    on_set: tuple[int, ...]

    def __post_init__(self) -> None:
        on = tuple(self.on_set)
        object.__setattr__(self, "on_set", on)
        if any(b <= a for a, b in zip(on, on[1:])):
            raise ValueError("on-set must be strictly increasing")
        if on and not (0 <= on[0] and on[-1] < 2**self.n_vars):
            raise ValueError(f"minterm out of range for {self.n_vars} variables")

    def __str__(self) -> str:
        return f"m({','.join(map(str, self.on_set))})"


def minterm_form(t: TruthTable) -> MintermForm:
    return MintermForm(t.n_vars, tuple(k for k, b in enumerate(t.bits) if b))


def minterm_expr(k: int, n_vars: int) -> BoolExpr:
    """The product of all n literals true only on row k."""
    lits = []
    for r in range(1, n_vars + 1):
        v = Var(r)
        lits.append(v if (k >> (n_vars - r)) & 1 else Not(v))
    if not lits:
        return TRUE_EXPR
    return lits[0] if len(lits) == 1 else And(tuple(lits))


def minterm_to_expr(m: MintermForm) -> BoolExpr:
    if not m.on_set:
        return FALSE_EXPR
    if len(m.on_set) == 2**m.n_vars:
        return TRUE_EXPR
    terms = tuple(minterm_expr(k, m.n_vars) for k in m.on_set)
    return terms[0] if len(terms) == 1 else Or(terms)


def structure_matrix(t: TruthTable) -> LogicalMatrix:
    """The 2 x 2^n logical matrix of ``t``: column r holds the value on row ``2^n - r``."""
    return LogicalMatrix(2, tuple(1 if b else 2 for b in reversed(t.bits)))


def table_from_structure(m: LogicalMatrix) -> TruthTable:
    if m.rows != 2:
        raise ValueError("structure matrices have two rows")
    return TruthTable(m.n_vars, tuple(1 if c == 1 else 0 for c in reversed(m.cols)))


# ------------------------------------------------------------------ K-maps

def gray_code(bits: int) -> list[int]:
    return [g ^ (g >> 1) for g in range(2**bits)]


def kmap_layout(n_vars: int) -> tuple[int, int, list[list[int]]]:
    """Row-numbers in K-map order.

    Columns carry the first ``ceil(n/2)`` variables and rows the remaining
    ``floor(n/2)``, both in reflected Gray order; for three variables the
    top row reads m0 m2 m6 m4 and the bottom row m1 m3 m7 m5.

    Returns ``(row_vars, col_vars, grid)`` where ``grid[i][j]`` is a row number.
    """
    row_vars = n_vars // 2
    col_vars = n_vars - row_vars
    grid = [[(c << row_vars) | r for c in gray_code(col_vars)] for r in gray_code(row_vars)]
    return row_vars, col_vars, grid


@dataclass(frozen=True)
class FnKMap:
    """A single-function K-map; ``cells[k]`` equals the truth-table bit k."""

    table: TruthTable

    @property
    def cells(self) -> tuple[int, ...]:
        return self.table.bits

    def grid(self) -> list[list[int]]:
        _, _, layout = kmap_layout(self.table.n_vars)
        return [[self.cells[k] for k in row] for row in layout]

    def render(self) -> str:
        return render_kmap(self.cells, self.table.n_vars)


def render_kmap(cells: Sequence[int], n_vars: int, fmt=str) -> str:
    """Text grid with Gray-code headers.

    ``fmt`` turns a cell value into its label (e.g. a fixed-width binary string).
    """
    row_vars, col_vars, layout = kmap_layout(n_vars)
    col_names = "".join(f"x{r}" for r in range(1, col_vars + 1))
    row_names = "".join(f"x{r}" for r in range(col_vars + 1, n_vars + 1))
    col_heads = [format(g, f"0{col_vars}b") if col_vars else "" for g in gray_code(col_vars)]
    row_heads = [format(g, f"0{row_vars}b") if row_vars else "" for g in gray_code(row_vars)]
    labels = [[fmt(cells[k]) for k in row] for row in layout]
    width = max(len(s) for s in col_heads + [x for row in labels for x in row])
    corner = f"{row_names}\\{col_names}"
    left = max(len(corner), *(len(h) for h in row_heads))
    lines = [corner.rjust(left) + " |" + "".join(" " + h.rjust(width) for h in col_heads)]
    lines.append("-" * left + "-+" + "-" * ((width + 1) * len(col_heads)))
    for head, row in zip(row_heads, labels):
        lines.append(head.rjust(left) + " |" + "".join(" " + x.rjust(width) for x in row))
    return "\n".join(lines)
