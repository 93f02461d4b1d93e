import itertools
import random

import pytest

from bnkmap.boolfn import Const, TruthTable, Var, minterm_form, minterm_to_expr, parse_expr, truth_table
from bnkmap.network import (
    BooleanNetwork,
    net_kmap,
    simulate,
    step,
    to_matrix,
    to_matrix_oracle,
)
from bnkmap.stp import LogicalMatrix, SizeLimitError, delta, encode_bits, stp_logical

from helpers import random_expr


def net(*rules):
    return BooleanNetwork(tuple(parse_expr(r, len(rules)) for r in rules))


TWO_NODE = net("x1 | x2", "x1 & x2")
THREE_NODE = net("!x3", "x1 | x2 | x3", "x2 & x3")


def test_net_kmap_examples():
    assert net_kmap(TWO_NODE).cells == (0, 2, 2, 3)
    assert net_kmap(THREE_NODE).cells == (4, 2, 6, 3, 6, 2, 6, 3)


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_net_kmap_identity(n):
    ident = BooleanNetwork(tuple(Var(r) for r in range(1, n + 1)))
    assert net_kmap(ident).cells == tuple(range(2**n))


def test_to_matrix_examples():
    assert to_matrix(TWO_NODE) == delta(4, [1, 2, 2, 4])
    assert to_matrix(THREE_NODE) == delta(8, [5, 2, 6, 2, 5, 2, 6, 4])
    assert to_matrix(net("!x1")) == delta(2, [2, 1])


def test_oracle_examples():
    for bn in (TWO_NODE, THREE_NODE, net("!x1")):
        assert to_matrix_oracle(bn) == to_matrix(bn)
    assert to_matrix_oracle(net("x1")) == delta(2, [1, 2])
    assert to_matrix_oracle(BooleanNetwork((Const(1),))) == delta(2, [1, 1])


def test_step_examples():
    assert step(TWO_NODE, (1, 0)) == (1, 0)
    assert step(TWO_NODE, (1, 1)) == (1, 1)


def test_step_rejects_wrong_length():
    with pytest.raises(ValueError):
        step(TWO_NODE, (1,))


def test_simulate_yields_initial_then_successors():
    assert list(simulate(THREE_NODE, (0, 0, 0), 3)) == [(0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 0)]


def test_network_rejects_out_of_range_variable():
    with pytest.raises(ValueError):
        BooleanNetwork((Var(2),))


def all_two_var_rules():
    return [minterm_to_expr(minterm_form(TruthTable(2, bits))) for bits in itertools.product((0, 1), repeat=4)]


def test_to_matrix_equals_oracle_exhaustive_n2():
    rules = all_two_var_rules()
    for f1, f2 in itertools.product(rules, repeat=2):
        bn = BooleanNetwork((f1, f2))
        assert to_matrix(bn) == to_matrix_oracle(bn)


def test_to_matrix_equals_oracle_random(rng):
    for _ in range(1200):
        n = rng.randint(1, 3)
        bn = BooleanNetwork(tuple(random_expr(rng, n, 4) for _ in range(n)))
        L = to_matrix(bn)
        assert L == to_matrix_oracle(bn)
        LogicalMatrix.from_dense(L.to_dense())  # exactly one 1 per column


def test_step_commutes_with_matrix(rng):
    for n in (1, 2, 4, 7, 10):
        bn = BooleanNetwork(tuple(random_expr(rng, n, 3) for _ in range(n)))
        L = to_matrix(bn)
        for state in itertools.product((0, 1), repeat=n):
            assert stp_logical(L, encode_bits(state)) == encode_bits(step(bn, state))


def test_kmap_bits_are_rule_tables(rng):
    for _ in range(100):
        n = rng.randint(1, 6)
        bn = BooleanNetwork(tuple(random_expr(rng, n, 3) for _ in range(n)))
        cells = net_kmap(bn).cells
        for r, rule in enumerate(bn.rules, 1):
            table = truth_table(rule, n)
            assert [(c >> (n - r)) & 1 for c in cells] == list(table.bits)


def test_size_cap():
    bn = BooleanNetwork(tuple(Var(r) for r in range(1, 5)))
    with pytest.raises(SizeLimitError):
        to_matrix(bn, max_n=3)
    with pytest.raises(SizeLimitError):
        to_matrix_oracle(bn, max_n=3)


def test_twenty_nodes_through_logical_path():
    # shift register with feedback: x1' = x20 ^ x1, xr' = x(r-1)
    n = 20
    rules = [parse_expr("x20 ^ x1", n)] + [Var(r - 1) for r in range(2, n + 1)]
    bn = BooleanNetwork(tuple(rules))
    L = to_matrix(bn)
    assert L.width == 2**n
    rng = random.Random(4)
    for _ in range(50):
        state = tuple(rng.randint(0, 1) for _ in range(n))
        assert stp_logical(L, encode_bits(state)) == encode_bits(step(bn, state))
