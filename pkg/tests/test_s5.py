import math
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from basisml.boolfn import DM, EXTDM, IFF
from basisml.errors import BasisError, NoSplit
from basisml.formula import Apply, conj, parse, render, var, walk_unique
from basisml.gen import random_norm_formula
from basisml.s5 import (apply_prefix, balance, depth_bound, eliminate_iff,
                        eliminate_iff_balanced, prefix_table, recursion_depth_bound,
                        reduce_prefix, reduce_prefix_ops, split)
from basisml.semantics import equivalent

seeds = st.integers(0, 2**32 - 1)
NAMES = ["p", "p1", "p2", "p3"]


def test_split_root_already_balanced():
    phi = parse("or(and(p, q), and(p1, p2))")
    s = split(phi)
    assert render(s.context) == s.hole and s.pivot == phi
    assert s.bounds_hold()


def test_split_walk_stops_below_the_negations():
    # the walk enters the inner conjunction because it still holds 2 of 3 leaves
    phi = parse("not(not(and(and(p, q), p1)))")
    s = split(phi)
    assert render(s.pivot) == "and(p, q)"
    assert render(s.context) == f"not(not(and({s.hole}, p1)))"
    assert s.plug() == phi
    assert s.bounds_hold()


def test_split_single_leaf():
    with pytest.raises(NoSplit):
        split(parse("dia(p)"))


@given(seeds, st.integers(2, 40))
def test_split_bounds(seed, m):
    phi = random_norm_formula(random.Random(seed), EXTDM, NAMES, m)
    s = split(phi)
    assert s.plug() == phi
    assert s.bounds_hold()


def test_prefix_examples():
    p = var("p")
    assert reduce_prefix([], p) == p
    assert reduce_prefix(["not", "not"], p) == p
    out = reduce_prefix(["dia", "not", "dia", "not", "dia"], p)
    assert len(reduce_prefix_ops(["dia", "not", "dia", "not", "dia"])) <= 3
    assert equivalent(out, apply_prefix(["dia", "not", "dia", "not", "dia"], p), "S5")


def test_prefix_table_is_shortlex_minimal():
    table = prefix_table()
    assert len(table) == 31
    p = var("p")
    for pre, short in table.items():
        assert len(short) <= min(3, len(pre))
        # nothing strictly shorter is equivalent
        for n in range(len(short)):
            for cand in product(("not", "dia"), repeat=n):
                assert not equivalent(apply_prefix(cand, p), apply_prefix(pre, p), "S5")


def test_prefix_classes_of_s5():
    # S5 has exactly six distinct not/dia modalities on an atom
    classes = set(prefix_table().values())
    assert len(classes) == 6


def test_balance_chain_of_sixteen():
    phi = var("p1")
    for j in range(2, 17):
        phi = conj(phi, var(f"p{j}"))
    out = balance(phi)
    assert phi.depth == 15
    assert out.depth <= depth_bound(16) == 40
    assert equivalent(out, phi, "S5")


def test_balance_examples():
    assert balance(var("p")) == var("p")
    phi = parse("iff(p, dia(and(p1, and(p2, and(p3, p4)))))", EXTDM)
    out = balance(phi)
    assert out.depth <= depth_bound(phi.norm)
    assert equivalent(out, phi, "S5")


def test_balance_rejects_other_functions():
    from basisml.boolfn import MAJ, Basis
    with pytest.raises(BasisError):
        balance(parse("maj(p, q, p1)", Basis("m", (MAJ,))))


def test_eliminate_iff_examples():
    assert render(eliminate_iff(parse("iff(p, q)", EXTDM))) == \
        "or(and(p, q), and(not(p), not(q)))"
    phi = parse("or(p, q)")
    assert eliminate_iff(phi) == phi
    nested = parse("iff(iff(p, q), dia(p1))", EXTDM)
    out = eliminate_iff_balanced(nested)
    assert all(n.fn in DM for n in walk_unique(out) if isinstance(n, Apply))
    assert out.depth <= 3 * depth_bound(nested.norm)
    assert equivalent(out, nested, "S5")


@settings(max_examples=40)
@given(seeds, st.integers(1, 32))
def test_balance_property(seed, m):
    phi = random_norm_formula(random.Random(seed), EXTDM, NAMES, m)
    out = balance(phi)
    assert out.depth <= depth_bound(m)
    assert out.depth <= recursion_depth_bound(m)
    assert equivalent(out, phi, "S5")
    dm = eliminate_iff(out)
    assert not any(isinstance(n, Apply) and n.fn == IFF for n in walk_unique(dm))
    assert dm.depth <= 3 * depth_bound(m)


def test_recursion_bound_below_closed_form():
    worst = max(recursion_depth_bound(m) - depth_bound(m) for m in range(1, 5000))
    assert worst < 0


@pytest.mark.parametrize("m", [64, 128])
def test_balance_compresses_long_chains(m):
    phi = var("p")
    for j in range(1, m):
        phi = conj(var(f"p{j % 4 + 1}"), phi) if j % 2 else conj(phi, var("p"))
    out = balance(phi)
    assert out.depth <= depth_bound(m) < phi.depth
