"""Boolean networks and their conversion to transition matrices."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .boolfn import BoolExpr, TruthTable, eval_expr, format_expr, truth_table, variables
from .stp import LogicalMatrix, LogicalVector, SizeLimitError, decode_bits, encode_bits

#: Default cap on n for operations that keep a 2^n-long index sequence.
MAX_LOGICAL_N = 20
#: Default cap on n for anything that expands to a dense 2^n x 2^n matrix.
MAX_DENSE_N = 12


def check_n(n: int, max_n: int | None = None) -> None:
    cap = MAX_LOGICAL_N if max_n is None else max_n
    if n > cap:
        raise SizeLimitError(f"network has {n} nodes; the cap is {cap} (see --max-n)")


@dataclass(frozen=True)
class BooleanNetwork:
    """Synchronous network: node r is updated to ``rules[r-1]`` of the current state."""

    rules: tuple[BoolExpr, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.rules:
            raise ValueError("a network needs at least one node")
        n = len(self.rules)
        for r, rule in enumerate(self.rules, 1):
            bad = [v for v in variables(rule) if not 1 <= v <= n]
            if bad:
                raise ValueError(f"rule for x{r} references x{bad[0]} but n = {n}")

    @property
    def n(self) -> int:
        return len(self.rules)

    def tables(self) -> list[TruthTable]:
        return [truth_table(rule, self.n) for rule in self.rules]

    def __str__(self) -> str:
        return "\n".join(f"x{r}' = {format_expr(e)}" for r, e in enumerate(self.rules, 1))


@dataclass(frozen=True)
class NetKMap:
    """Composed K-map: bit r (x_1 most significant) of ``cells[k]`` is f_r on row k."""

    n: int
    cells: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(int(c) for c in self.cells))
        size = 2**self.n
        if len(self.cells) != size or any(not 0 <= c < size for c in self.cells):
            raise ValueError(f"K-map of {self.n} nodes needs {size} cells in 0..{size - 1}")


def _kmap_cells(tables: Sequence[TruthTable]) -> np.ndarray:
    n = len(tables)
    cells = np.zeros(2**n, dtype=np.int64)
    for r, table in enumerate(tables, 1):
        cells |= np.asarray(table.bits, dtype=np.int64) << (n - r)
    return cells


def net_kmap(bn: BooleanNetwork, max_n: int | None = None) -> NetKMap:
    check_n(bn.n, max_n)
    return NetKMap(bn.n, tuple(_kmap_cells(bn.tables()).tolist()))


def matrix_from_tables(tables: Sequence[TruthTable]) -> LogicalMatrix:
    """Transition matrix from the composed K-map: ``i_r = 2^n - c_{2^n - r}``."""
    size = 2 ** len(tables)
    if any(t.n_vars != len(tables) for t in tables):
        raise ValueError("every node table must have one input per node")
    cells = _kmap_cells(tables)
    return LogicalMatrix(size, tuple((size - cells[::-1]).tolist()))


def to_matrix(bn: BooleanNetwork, max_n: int | None = None) -> LogicalMatrix:
    check_n(bn.n, max_n)
    return matrix_from_tables(bn.tables())


def to_matrix_oracle(bn: BooleanNetwork, max_n: int | None = None) -> LogicalMatrix:
    """Transition matrix by stepping every state through the rules one at a time."""
    check_n(bn.n, max_n)
    size = 2**bn.n
    cols = [0] * size
    for k in range(size):
        state = decode_bits(LogicalVector(size, size - k))
        succ = encode_bits([eval_expr(rule, state) for rule in bn.rules])
        cols[size - k - 1] = succ.index
    return LogicalMatrix(size, tuple(cols))


def step(bn: BooleanNetwork, state: Sequence[int]) -> tuple[int, ...]:
    if len(state) != bn.n:
        raise ValueError(f"state has {len(state)} bits, network has {bn.n} nodes")
    return tuple(eval_expr(rule, state) for rule in bn.rules)


def simulate(bn: BooleanNetwork, state: Sequence[int], steps: int) -> Iterator[tuple[int, ...]]:
    """Yield the initial state followed by ``steps`` synchronous successors."""
    s = tuple(state)
    yield s
    for _ in range(steps):
        s = step(bn, s)
        yield s
