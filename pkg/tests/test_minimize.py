import itertools
import random

import pytest

from bnkmap.boolfn import And, Const, MintermForm, Or, Var, minterm_form, truth_table
from bnkmap.minimize import (
    Implicant,
    SopForm,
    minimal_cover,
    minimize,
    prime_implicants,
    sop_to_expr,
)
from bnkmap.stp import SizeLimitError


def cube(n, text):
    """'1-0' style cube, first character is x1."""
    care = values = 0
    for r, ch in enumerate(text, 1):
        bit = 1 << (n - r)
        if ch != "-":
            care |= bit
            if ch == "1":
                values |= bit
    return Implicant(n, care, values)


def all_cubes(n):
    for pattern in itertools.product("01-", repeat=n):
        yield cube(n, "".join(pattern))


def brute_force_best(n, on_set):
    """(count, literals) of the cheapest cover, by trying every subset of cubes."""
    on = set(on_set)
    if not on:
        return (0, 0)
    inside = [c for c in all_cubes(n) if set(c.minterms()) <= on]
    for size in range(1, len(on) + 1):
        costs = [
            sum(c.literal_count for c in combo)
            for combo in itertools.combinations(inside, size)
            if set().union(*(c.minterms() for c in combo)) == on
        ]
        if costs:
            return (size, min(costs))
    raise AssertionError("unreachable: minterms always cover")


def brute_force_primes(n, on_set):
    on = set(on_set)
    inside = [c for c in all_cubes(n) if set(c.minterms()) <= on]
    return {c for c in inside if not any(d != c and set(c.minterms()) < set(d.minterms()) for d in inside)}


# ---------------------------------------------------------------- primes

def test_primes_examples():
    assert prime_implicants(MintermForm(2, (1, 2, 3))) == {cube(2, "1-"), cube(2, "-1")}
    assert prime_implicants(MintermForm(3, (0, 2, 4, 6))) == {cube(3, "--0")}
    assert prime_implicants(MintermForm(3, tuple(range(8)))) == {cube(3, "---")}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_primes_match_brute_force(n):
    for bits in itertools.product((0, 1), repeat=2**n):
        on = tuple(k for k, b in enumerate(bits) if b)
        assert prime_implicants(MintermForm(n, on)) == brute_force_primes(n, on)


def test_primes_match_brute_force_random_n4():
    rng = random.Random(44)
    for _ in range(60):
        on = tuple(k for k in range(16) if rng.random() < 0.5)
        assert prime_implicants(MintermForm(4, on)) == brute_force_primes(4, on)


def test_implicant_invariant():
    with pytest.raises(ValueError):
        Implicant(2, 0b10, 0b01)


# ----------------------------------------------------------------- cover

def test_cover_examples():
    m = MintermForm(2, (1, 2, 3))
    assert str(minimal_cover(prime_implicants(m), m.on_set)) == "x1 | x2"
    assert str(minimize(MintermForm(3, (1, 2, 3, 4, 5, 6, 7)))) == "x1 | x2 | x3"
    assert str(minimize(MintermForm(3, (3, 7)))) == "x2 & x3"
    assert str(minimize(MintermForm(3, (0, 2, 4, 6)))) == "!x3"


def test_cover_requires_coverage():
    with pytest.raises(ValueError):
        minimal_cover({cube(2, "1-")}, [1])


def test_cyclic_core_is_solved_exactly():
    # the classic cyclic function: six primes, no essentials, optimum is 3
    m = MintermForm(3, (0, 1, 2, 5, 6, 7))
    s = minimize(m)
    assert len(s.implicants) == 3
    assert s.on_set() == set(m.on_set)


def test_known_greedy_trap_n4():
    # a greedy cover finds five terms here; the optimum has four
    on = (2, 4, 5, 7, 9, 10, 11, 12, 13)
    s = minimize(MintermForm(4, on))
    assert s.on_set() == set(on)
    assert (len(s.implicants), s.literal_count) == brute_force_best(4, on)


def test_minimize_all_three_variable_functions_are_minimal():
    for bits in itertools.product((0, 1), repeat=8):
        on = tuple(k for k, b in enumerate(bits) if b)
        s = minimize(MintermForm(3, on))
        assert s.on_set() == set(on)
        assert (len(s.implicants), s.literal_count) == brute_force_best(3, on)


def test_minimize_sound_random_n4():
    rng = random.Random(16)
    for _ in range(4000):
        bits = tuple(rng.randint(0, 1) for _ in range(16))
        on = tuple(k for k, b in enumerate(bits) if b)
        s = minimize(MintermForm(4, on))
        assert truth_table(sop_to_expr(s), 4).bits == bits


def test_minimize_minimal_random_n4():
    rng = random.Random(4)
    for _ in range(25):
        on = tuple(k for k in range(16) if rng.random() < 0.5)
        s = minimize(MintermForm(4, on))
        assert (len(s.implicants), s.literal_count) == brute_force_best(4, on)


def test_minimize_deterministic():
    rng = random.Random(6)
    for _ in range(30):
        on = tuple(k for k in range(32) if rng.random() < 0.5)
        m = MintermForm(5, on)
        assert str(minimize(m)) == str(minimize(m))


def test_minimize_no_implicant_contains_another():
    rng = random.Random(10)
    for _ in range(100):
        n = rng.randint(1, 6)
        on = tuple(k for k in range(2**n) if rng.random() < 0.4)
        imps = minimize(MintermForm(n, on)).implicants
        for a, b in itertools.permutations(imps, 2):
            assert not set(a.minterms()) <= set(b.minterms())


def test_size_cap():
    with pytest.raises(SizeLimitError):
        prime_implicants(MintermForm(13, (0,)))


# ------------------------------------------------------------ sop_to_expr

def test_sop_to_expr_examples():
    assert sop_to_expr(SopForm(2, (cube(2, "1-"), cube(2, "-1")))) == Or((Var(1), Var(2)))
    assert sop_to_expr(SopForm(3, ())) == Const(0)
    assert sop_to_expr(SopForm(3, (cube(3, "-11"),))) == And((Var(2), Var(3)))
    assert sop_to_expr(SopForm(3, (cube(3, "---"),))) == Const(1)


def test_minimize_constants():
    assert minimize(MintermForm(2, ())).implicants == ()
    assert sop_to_expr(minimize(MintermForm(2, (0, 1, 2, 3)))) == Const(1)
