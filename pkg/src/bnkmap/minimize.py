"""Exact two-level (sum-of-products) minimization.

Prime implicants come from Quine-McCluskey tabulation; the cover is chosen
by taking essential primes and then branch-and-bound over what is left.
Cost is ordered by implicant count, then literal count, then the
lexicographic order of the implicants, so results are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .boolfn import FALSE_EXPR, TRUE_EXPR, And, BoolExpr, MintermForm, Not, Or, Var
from .stp import SizeLimitError

#: Largest arity accepted by the exact minimizer.
MAX_MINIMIZE_N = 12


@dataclass(frozen=True)
class Implicant:
    """A product term. Variable r corresponds to bit ``n_vars - r`` of a row number.

    ``care`` has a 1 for each variable present in the product; ``values``
    gives its polarity and is 0 outside ``care``.
    """

    n_vars: int
    care: int
    values: int

    def __post_init__(self) -> None:
        if self.values & ~self.care:
            raise ValueError("values must be zero where care is zero")

    def covers(self, k: int) -> bool:
        return k & self.care == self.values

    def minterms(self) -> list[int]:
        free = [b for b in range(self.n_vars) if not (self.care >> b) & 1]
        out = []
        for combo in range(2 ** len(free)):
            k = self.values
            for i, b in enumerate(free):
                if (combo >> i) & 1:
                    k |= 1 << b
            out.append(k)
        return sorted(out)

    @property
    def literal_count(self) -> int:
        return bin(self.care).count("1")

    def literals(self) -> list[tuple[int, int]]:
        """``(variable, polarity)`` pairs in variable order."""
        out = []
        for r in range(1, self.n_vars + 1):
            bit = 1 << (self.n_vars - r)
            if self.care & bit:
                out.append((r, 1 if self.values & bit else 0))
        return out

    @cached_property
    def key(self) -> tuple[int, ...]:
        # per variable: 0 = positive literal, 1 = negated, 2 = absent
        key = []
        for r in range(1, self.n_vars + 1):
            bit = 1 << (self.n_vars - r)
            key.append((0 if self.values & bit else 1) if self.care & bit else 2)
        return tuple(key)

    def __str__(self) -> str:
        lits = self.literals()
        if not lits:
            return "1"
        return " & ".join(f"x{r}" if p else f"!x{r}" for r, p in lits)


@dataclass(frozen=True)
class SopForm:
    n_vars: int
    implicants: tuple[Implicant, ...]

    @property
    def literal_count(self) -> int:
        return sum(i.literal_count for i in self.implicants)

    def on_set(self) -> set[int]:
        out: set[int] = set()
        for imp in self.implicants:
            out.update(imp.minterms())
        return out

    def __str__(self) -> str:
        if not self.implicants:
            return "0"
        return " | ".join(map(str, self.implicants))


def _check_arity(n: int) -> None:
    if n > MAX_MINIMIZE_N:
        raise SizeLimitError(f"exact minimization is capped at {MAX_MINIMIZE_N} variables, got {n}")


def prime_implicants(m: MintermForm) -> set[Implicant]:
    """All maximal product terms contained in the on-set."""
    n = m.n_vars
    _check_arity(n)
    full = (1 << n) - 1
    # cubes as (care, values); merge pairs differing in exactly one cared bit
    current = {(full, k) for k in m.on_set}
    primes: set[Implicant] = set()
    while current:
        merged: set[tuple[int, int]] = set()
        used: set[tuple[int, int]] = set()
        by_care: dict[int, set[int]] = {}
        for care, vals in current:
            by_care.setdefault(care, set()).add(vals)
        for care, vals_set in by_care.items():
            for vals in vals_set:
                bits = care & ~vals  # cared positions holding a 0
                while bits:
                    b = bits & -bits
                    bits ^= b
                    partner = vals | b
                    if partner in vals_set:
                        merged.add((care & ~b, vals))
                        used.add((care, vals))
                        used.add((care, partner))
        for cube in current - used:
            primes.add(Implicant(n, *cube))
        current = merged
    return primes


def _key(imp: Implicant) -> tuple[int, ...]:
    return imp.key


def _cost_key(chosen: Iterable[Implicant]) -> tuple:
    chosen = sorted(chosen, key=_key)
    return (len(chosen), sum(i.literal_count for i in chosen), tuple(i.key for i in chosen))


def minimal_cover(primes: Iterable[Implicant], on_set: Iterable[int]) -> SopForm:
    """Minimum-cost subset of ``primes`` covering ``on_set``."""
    primes = sorted(set(primes), key=_key)
    on = sorted(set(on_set))
    n_vars = primes[0].n_vars if primes else 0
    if not on:
        return SopForm(n_vars, ())
    cover_of = {k: [p for p in primes if p.covers(k)] for k in on}
    missing = [k for k, ps in cover_of.items() if not ps]
    if missing:
        raise ValueError(f"primes do not cover minterm {missing[0]}")

    chosen: list[Implicant] = []
    uncovered = set(on)
    # essentials: a minterm with a single covering prime forces that prime
    for k in on:
        ps = cover_of[k]
        if len(ps) == 1 and ps[0] not in chosen:
            chosen.append(ps[0])
    for p in chosen:
        uncovered -= {k for k in uncovered if p.covers(k)}

    best: list = [None, None]  # [key, selection]

    def search(selected: list[Implicant], left: frozenset[int]) -> None:
        if not left:
            key = _cost_key(chosen + selected)
            if best[0] is None or key < best[0]:
                best[0], best[1] = key, list(selected)
            return
        if best[0] is not None:
            count, lits = best[0][0], best[0][1]
            base = len(chosen) + len(selected)
            if base + 1 > count:
                return
            if base + 1 == count:
                # one more implicant at most: prune on literals too
                cur = sum(p.literal_count for p in chosen + selected)
                cheapest = min(p.literal_count for k in left for p in cover_of[k])
                if cur + cheapest > lits:
                    return
        # branch on the uncovered minterm with the fewest options
        pivot = min(left, key=lambda k: (len(cover_of[k]), k))
        for p in cover_of[pivot]:
            search(selected + [p], left - {k for k in left if p.covers(k)})

    search([], frozenset(uncovered))
    result = sorted(chosen + best[1], key=_key)
    return SopForm(n_vars, tuple(result))


def minimize(m: MintermForm) -> SopForm:
    if not m.on_set:
        return SopForm(m.n_vars, ())
    return minimal_cover(prime_implicants(m), m.on_set)


def sop_to_expr(s: SopForm) -> BoolExpr:
    if not s.implicants:
        return FALSE_EXPR
    terms = []
    for imp in s.implicants:
        lits = [Var(r) if p else Not(Var(r)) for r, p in imp.literals()]
        if not lits:
            return TRUE_EXPR
        terms.append(lits[0] if len(lits) == 1 else And(tuple(lits)))
    return terms[0] if len(terms) == 1 else Or(tuple(terms))
