"""Exact integer matrices, the semi-tensor product and logical matrices.

Dense matrices are backed by read-only ``int64`` numpy arrays. Entries in
this domain stay in {-1, 0, 1} or small counts, so int64 arithmetic is exact.

Logical matrices use 1-based column indices, ``delta(4, [1, 2, 2, 4])``
being the 4x4 matrix whose r-th column is the ``i_r``-th unit vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import lcm
from typing import Iterable, Sequence

import numpy as np

#: Largest number of entries any dense result may hold.
MAX_DENSE_ENTRIES = 2**24


class SizeLimitError(ValueError):
    """An operation would exceed a configured size cap."""


class DimensionError(ValueError):
    """Operand dimensions are incompatible."""


def _check_size(rows: int, cols: int, limit: int | None = None) -> None:
    limit = MAX_DENSE_ENTRIES if limit is None else limit
    if rows * cols > limit:
        raise SizeLimitError(
            f"result would be {rows}x{cols} = {rows * cols} entries (limit {limit})"
        )


class DenseMatrix:
    """Immutable integer matrix."""

    __slots__ = ("_a",)

    def __init__(self, data) -> None:
        a = np.array(data, dtype=np.int64, copy=True)
        if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionError(f"expected a non-empty 2-d matrix, got shape {a.shape}")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def _wrap(cls, a: np.ndarray) -> DenseMatrix:
        m = cls.__new__(cls)
        a = np.ascontiguousarray(a, dtype=np.int64)
        a.setflags(write=False)
        m._a = a
        return m

    @classmethod
    def identity(cls, n: int) -> DenseMatrix:
        _check_size(n, n)
        return cls._wrap(np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> DenseMatrix:
        _check_size(rows, cols)
        return cls._wrap(np.zeros((rows, cols), dtype=np.int64))

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def entries(self) -> tuple[int, ...]:
        """Row-major entries."""
        return tuple(self._a.ravel().tolist())

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the backing array."""
        return self._a

    def tolist(self) -> list[list[int]]:
        return self._a.tolist()

    def is_zero(self) -> bool:
        return not self._a.any()

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        _check_size(self.rows, other.cols)
        return DenseMatrix._wrap(self._a @ other._a)

    def __add__(self, other: DenseMatrix) -> DenseMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return DenseMatrix._wrap(self._a + other._a)

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {other.shape} from {self.shape}")
        return DenseMatrix._wrap(self._a - other._a)

    def __neg__(self) -> DenseMatrix:
        return DenseMatrix._wrap(-self._a)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._a, other._a))

    def __hash__(self) -> int:
        return hash((self.shape, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"DenseMatrix({self.tolist()!r})"


@dataclass(frozen=True)
class LogicalVector:
    """The unit column vector with a 1 at 1-based position ``index``."""

    dim: int
    index: int

    def __post_init__(self) -> None:
        if self.dim < 1 or not 1 <= self.index <= self.dim:
            raise ValueError(f"invalid logical vector delta_{self.dim}^{self.index}")

    def to_dense(self) -> DenseMatrix:
        _check_size(self.dim, 1)
        a = np.zeros((self.dim, 1), dtype=np.int64)
        a[self.index - 1, 0] = 1
        return DenseMatrix._wrap(a)

    def __str__(self) -> str:
        return f"delta_{self.dim}^{self.index}"


#: Logical True and False.
TRUE = LogicalVector(2, 1)
FALSE = LogicalVector(2, 2)


@dataclass(frozen=True)
class LogicalMatrix:
    """A 0/1 matrix with exactly one 1 per column, stored as 1-based row indices.

    ``rows`` is the height; the width is ``len(cols)``. Transition matrices
    are square with both sides ``2**n_vars``; structure matrices have two rows.
    """

    rows: int
    cols: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cols", tuple(int(c) for c in self.cols))
        if self.rows < 1 or not self.cols:
            raise ValueError("logical matrix needs at least one row and one column")
        lo, hi = min(self.cols), max(self.cols)
        if lo < 1 or hi > self.rows:
            bad = lo if lo < 1 else hi
            raise ValueError(f"column index {bad} outside 1..{self.rows}")

    @property
    def width(self) -> int:
        return len(self.cols)

    @property
    def n_vars(self) -> int:
        """Number of Boolean inputs, i.e. log2 of the width."""
        w = len(self.cols)
        if w & (w - 1):
            raise ValueError(f"width {w} is not a power of two")
        return w.bit_length() - 1

    @property
    def is_square(self) -> bool:
        return self.rows == len(self.cols)

    def column(self, r: int) -> LogicalVector:
        """The r-th column (1-based)."""
        return LogicalVector(self.rows, self.cols[r - 1])

    def to_dense(self) -> DenseMatrix:
        _check_size(self.rows, self.width)
        a = np.zeros((self.rows, self.width), dtype=np.int64)
        a[np.asarray(self.cols) - 1, np.arange(self.width)] = 1
        return DenseMatrix._wrap(a)

    @classmethod
    def from_dense(cls, m: DenseMatrix) -> LogicalMatrix:
        a = m.array
        if not (np.isin(a, (0, 1)).all() and (a.sum(axis=0) == 1).all()):
            raise ValueError("matrix is not logical (need exactly one 1 per column)")
        return cls(m.rows, tuple((a.argmax(axis=0) + 1).tolist()))

    @classmethod
    def identity(cls, dim: int) -> LogicalMatrix:
        return cls(dim, tuple(range(1, dim + 1)))

    def __str__(self) -> str:
        return f"delta_{self.rows}[{','.join(map(str, self.cols))}]"


def delta(rows: int, cols: Iterable[int]) -> LogicalMatrix:
    """Shorthand constructor mirroring the usual ``delta_k[i_1, ..., i_r]`` notation."""
    return LogicalMatrix(rows, tuple(cols))


def as_dense(m: DenseMatrix | LogicalMatrix | LogicalVector) -> DenseMatrix:
    return m if isinstance(m, DenseMatrix) else m.to_dense()


def kron(a: DenseMatrix, b: DenseMatrix) -> DenseMatrix:
    _check_size(a.rows * b.rows, a.cols * b.cols)
    return DenseMatrix._wrap(np.kron(a.array, b.array))


def stp(a, b) -> DenseMatrix:
    """Semi-tensor product ``(a (x) I_{t/n}) (b (x) I_{t/p})`` with ``t = lcm(n, p)``.

    Accepts dense or logical operands and always returns a dense matrix.
    The identity padding is applied through reshapes rather than built.
    """
    a, b = as_dense(a), as_dense(b)
    m, n = a.shape
    p, q = b.shape
    t = lcm(n, p)
    ka, kb = t // n, t // p
    _check_size(m * ka, q * kb)
    right = b.array
    if kb > 1:
        if ka == 1:
            # a (b (x) I_kb): split each column of a into p blocks of kb
            out = np.einsum("mpk,pq->mqk", a.array.reshape(m, p, kb), right)
            return DenseMatrix._wrap(out.reshape(m, q * kb))
        _check_size(p * kb, q * kb)
        right = np.kron(right, np.eye(kb, dtype=np.int64))
    if ka > 1:
        # (a (x) I_ka) r: row block i of the result is a @ (rows of r with offset i)
        r = right.reshape(n, ka, -1)
        out = np.einsum("mn,nkr->mkr", a.array, r)
        return DenseMatrix._wrap(out.reshape(m * ka, -1))
    return DenseMatrix._wrap(a.array @ right)


def stp_chain(factors: Sequence) -> DenseMatrix:
    """Left-to-right semi-tensor product of one or more factors."""
    if not factors:
        raise ValueError("stp_chain needs at least one factor")
    return reduce(stp, factors[1:], as_dense(factors[0]))


def stp_logical(a: LogicalMatrix, v: LogicalVector) -> LogicalVector:
    """``a`` applied to a unit vector: simply picks column ``v.index``."""
    if v.dim != a.width:
        raise DimensionError(f"vector of dimension {v.dim} against {a.width} columns")
    return LogicalVector(a.rows, a.cols[v.index - 1])


def logical_product(a: LogicalMatrix, b: LogicalMatrix) -> LogicalMatrix:
    """Conventional product of two logical matrices without expansion."""
    if a.width != b.rows:
        raise DimensionError(f"cannot multiply width {a.width} by height {b.rows}")
    return LogicalMatrix(a.rows, tuple(a.cols[i - 1] for i in b.cols))


def swap_matrix(m: int, p: int) -> DenseMatrix:
    """Permutation ``W`` with ``W (x (x) y) = y (x) x`` for ``x`` of size m, ``y`` of size p."""
    if m < 1 or p < 1:
        raise ValueError("swap matrix dimensions must be positive")
    _check_size(m * p, m * p)
    # x_i (x) y_j sits at row i*p + j; it must land on y_j (x) x_i at row j*m + i
    i, j = np.divmod(np.arange(m * p), p)
    a = np.zeros((m * p, m * p), dtype=np.int64)
    a[j * m + i, i * p + j] = 1
    return DenseMatrix._wrap(a)


def s_matrix(i: int, n: int) -> LogicalMatrix:
    """The 2 x 2^n matrix that extracts the i-th of n factors from a state vector."""
    if not 1 <= i <= n:
        raise ValueError(f"node index {i} outside 1..{n}")
    block = 2 ** (n - i)
    return LogicalMatrix(2, tuple(1 + (r // block) % 2 for r in range(2**n)))


#: Structure matrix of negation.
M_NOT = delta(2, [2, 1])


def encode_bits(bits: Sequence[int]) -> LogicalVector:
    """Vector form of an assignment ``(b_1, ..., b_n)`` with True = 1.

    The assignment with minterm number ``k`` maps to position ``2**n - k``.
    """
    n = len(bits)
    k = 0
    for b in bits:
        k = (k << 1) | (1 if b else 0)
    return LogicalVector(2**n, 2**n - k)


def decode_bits(v: LogicalVector) -> tuple[int, ...]:
    n = v.dim.bit_length() - 1
    if v.dim != 2**n:
        raise ValueError(f"dimension {v.dim} is not a power of two")
    k = v.dim - v.index
    return tuple((k >> (n - r)) & 1 for r in range(1, n + 1))
