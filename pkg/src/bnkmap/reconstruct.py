"""Recover update rules from a transition matrix.

Two routes are provided. The K-map route (:func:`reconstruct_kmap`) reads
the composed K-map straight off the matrix with ``d_k = 2^n - i_{2^n-k}``,
splits it into one bit-plane per node and writes each plane as a sum of
minterms. It works for every logical matrix.

The structure-matrix route (:func:`cheng_reduce`) extracts each node's
structure matrix with ``S_i^n`` and removes a variable ``x_j`` only when
``M_i W_[2,2^(j-1)] (M_not - I_2) = 0``. It cannot say anything about a
node that depends on every variable, and the report flags such nodes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .boolfn import MintermForm, TruthTable, minterm_form, minterm_to_expr, structure_matrix
from .minimize import minimize, sop_to_expr
from .network import MAX_DENSE_N, BooleanNetwork, check_n
from .stp import (
    M_NOT,
    TRUE,
    DenseMatrix,
    DimensionError,
    LogicalMatrix,
    s_matrix,
    stp,
    swap_matrix,
)


@dataclass(frozen=True)
class MatrixKMap:
    n: int
    cells: tuple[int, ...]


def _require_transition(L: LogicalMatrix) -> int:
    if not L.is_square:
        raise DimensionError(f"transition matrix must be square, got {L.rows}x{L.width}")
    n = L.n_vars
    if n < 1:
        raise DimensionError("transition matrix must be at least 2x2")
    return n


def matrix_kmap(L: LogicalMatrix) -> MatrixKMap:
    n = _require_transition(L)
    size = 2**n
    return MatrixKMap(n, tuple(size - L.cols[size - k - 1] for k in range(size)))


def bitplane(km: MatrixKMap, r: int) -> TruthTable:
    """Truth table of node r: bit r (x_1 most significant) of each cell."""
    if not 1 <= r <= km.n:
        raise ValueError(f"node index {r} outside 1..{km.n}")
    shift = km.n - r
    return TruthTable(km.n, tuple((d >> shift) & 1 for d in km.cells))


def reconstruct_tables(L: LogicalMatrix, max_n: int | None = None) -> list[TruthTable]:
    n = _require_transition(L)
    check_n(n, max_n)
    km = matrix_kmap(L)
    return [bitplane(km, r) for r in range(1, n + 1)]


def reconstruct_canonical(L: LogicalMatrix, max_n: int | None = None) -> list[MintermForm]:
    return [minterm_form(t) for t in reconstruct_tables(L, max_n)]


def reconstruct_kmap(L: LogicalMatrix, max_n: int | None = None) -> BooleanNetwork:
    """Network whose rules are the minterm canonical forms read off the K-map of ``L``."""
    return BooleanNetwork(tuple(minterm_to_expr(m) for m in reconstruct_canonical(L, max_n)))


def reconstruct_minimal(L: LogicalMatrix, max_n: int | None = None) -> BooleanNetwork:
    """Like :func:`reconstruct_kmap` but with each rule minimized to a shortest SOP."""
    return BooleanNetwork(
        tuple(sop_to_expr(minimize(m)) for m in reconstruct_canonical(L, max_n))
    )


def dependence_oracle(t: TruthTable, j: int) -> bool:
    """True iff ``t`` never changes when x_j is flipped, i.e. it ignores x_j."""
    if not 1 <= j <= t.n_vars:
        raise ValueError(f"variable index {j} outside 1..{t.n_vars}")
    bit = 1 << (t.n_vars - j)
    return all(t.bits[k] == t.bits[k | bit] for k in range(len(t.bits)) if not k & bit)


def in_degree(t: TruthTable) -> int:
    return sum(not dependence_oracle(t, j) for j in range(1, t.n_vars + 1))


def dependencies(t: TruthTable) -> list[int]:
    return [j for j in range(1, t.n_vars + 1) if not dependence_oracle(t, j)]


# ----------------------------------------------- structure-matrix method

def cheng_structure(L: LogicalMatrix, i: int) -> LogicalMatrix:
    """Structure matrix of node i as ``S_i^n L``."""
    n = _require_transition(L)
    check_n(n, MAX_DENSE_N)
    if not 1 <= i <= n:
        raise ValueError(f"node index {i} outside 1..{n}")
    return LogicalMatrix.from_dense(stp(s_matrix(i, n), L))


def _swap(j: int, convention: str) -> DenseMatrix:
    if convention == "standard":
        return swap_matrix(2, 2 ** (j - 1))
    if convention == "transposed":
        return swap_matrix(2 ** (j - 1), 2)
    raise ValueError(f"unknown swap convention {convention!r}")


_NOT_MINUS_I = M_NOT.to_dense() - DenseMatrix.identity(2)


def _check_structure(M: LogicalMatrix, j: int, n: int) -> None:
    if M.rows != 2 or M.width != 2**n:
        raise DimensionError(f"expected a 2x{2 ** n} structure matrix, got {M.rows}x{M.width}")
    if not 1 <= j <= n:
        raise ValueError(f"variable index {j} outside 1..{n}")


def cheng_residual(M: LogicalMatrix, j: int, n: int, convention: str | None = None) -> DenseMatrix:
    """``M W_[2,2^(j-1)] (M_not - I_2)``; zero exactly when the function ignores x_j."""
    _check_structure(M, j, n)
    convention = convention or swap_convention()
    return stp(stp(M, _swap(j, convention)), _NOT_MINUS_I)


def cheng_condition(
    M: LogicalMatrix, j: int, n: int, convention: str | None = None
) -> tuple[bool, DenseMatrix]:
    residual = cheng_residual(M, j, n, convention)
    return residual.is_zero(), residual


def cheng_eliminate(M: LogicalMatrix, j: int, n: int, convention: str | None = None) -> LogicalMatrix:
    """``M W_[2,2^(j-1)] delta_2^1``: the 2 x 2^(n-1) matrix with x_j dropped."""
    _check_structure(M, j, n)
    convention = convention or swap_convention()
    return LogicalMatrix.from_dense(stp(stp(M, _swap(j, convention)), TRUE))


@lru_cache(maxsize=None)
def swap_convention() -> str:
    """Pick the swap-matrix orientation that makes the residual test sound.

    Every structure matrix of up to three variables is checked against
    :func:`dependence_oracle`; the standard ``W_[m,p] (x (x) y) = y (x) x``
    is preferred and the transposed orientation is the fallback.
    """
    for convention in ("standard", "transposed"):
        if _convention_agrees(convention):
            return convention
    raise RuntimeError("neither swap convention reproduces variable independence")


def _convention_agrees(convention: str) -> bool:
    for n in (1, 2, 3):
        for bits in product((0, 1), repeat=2**n):
            t = TruthTable(n, bits)
            M = structure_matrix(t)
            for j in range(1, n + 1):
                ok, _ = cheng_condition(M, j, n, convention)
                if ok != dependence_oracle(t, j):
                    return False
    return True


@dataclass(frozen=True)
class NodeReport:
    node: int
    structure: LogicalMatrix
    residuals: tuple[DenseMatrix, ...]  # one per j at full arity
    removable: frozenset[int]
    reduced: LogicalMatrix
    remaining: tuple[int, ...]
    failed: bool

    @property
    def in_degree(self) -> int:
        return len(self.remaining)


@dataclass(frozen=True)
class ChengReport:
    n: int
    convention: str
    nodes: tuple[NodeReport, ...] = field(default_factory=tuple)

    @property
    def failed_nodes(self) -> list[int]:
        return [r.node for r in self.nodes if r.failed]


def cheng_reduce(L: LogicalMatrix) -> ChengReport:
    """Per node, drop removable variables one at a time, smallest index first.

    A node is marked failed when no variable is removable at full arity,
    which is exactly when it depends on all n variables.
    """
    n = _require_transition(L)
    convention = swap_convention()
    reports = []
    for i in range(1, n + 1):
        M = cheng_structure(L, i)
        checks = [cheng_condition(M, j, n, convention) for j in range(1, n + 1)]
        removable = frozenset(j for j, (ok, _) in enumerate(checks, 1) if ok)
        remaining = list(range(1, n + 1))
        reduced = M
        while remaining:
            arity = len(remaining)
            j = next(
                (j for j in range(1, arity + 1) if cheng_condition(reduced, j, arity, convention)[0]),
                None,
            )
            if j is None:
                break
            reduced = cheng_eliminate(reduced, j, arity, convention)
            del remaining[j - 1]
        reports.append(
            NodeReport(
                node=i,
                structure=M,
                residuals=tuple(res for _, res in checks),
                removable=removable,
                reduced=reduced,
                remaining=tuple(remaining),
                failed=not removable,
            )
        )
    return ChengReport(n, convention, tuple(reports))
