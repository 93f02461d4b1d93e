import random

from hypothesis import strategies as st

from bnkmap.boolfn import And, Const, Not, Or, Var, Xor


def random_expr(rng: random.Random, n: int, depth: int = 3):
    """Random expression tree over x1..xn."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.08:
            return Const(rng.randint(0, 1))
        return Var(rng.randint(1, n))
    kind = rng.choice("NAOXAO")
    if kind == "N":
        return Not(random_expr(rng, n, depth - 1))
    node = {"A": And, "O": Or, "X": Xor}[kind]
    return node(tuple(random_expr(rng, n, depth - 1) for _ in range(rng.randint(2, 3))))


def exprs(n: int, max_leaves: int = 12):
    leaves = st.one_of(
        st.integers(1, n).map(Var),
        st.integers(0, 1).map(Const),
    )

    def extend(children):
        many = st.lists(children, min_size=2, max_size=3).map(tuple)
        return st.one_of(
            children.map(Not),
            many.map(And),
            many.map(Or),
            many.map(Xor),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
