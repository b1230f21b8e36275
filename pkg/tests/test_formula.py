import random

import pytest
from hypothesis import given, strategies as st

from basisml.boolfn import DM, EXTDM, MAJ, Basis
from basisml.errors import ArityError, FormulaSyntaxError, UnknownFunction
from basisml.formula import (Apply, Diamond, Var, conj, dia, disj, eo_sets, equiv, fresh_name,
                             linearize, metrics, neg, parse, render, substitute, table_mask,
                             var, variables)
from basisml.gen import random_formula

EXT_MAJ = EXTDM.union(Basis("m", (MAJ,)), name="extdm_maj")
seeds = st.integers(0, 2**32 - 1)


def rand(seed, basis=EXT_MAJ, size=14):
    return random_formula(random.Random(seed), basis, ["p1", "p2", "p3"], size, 3)


def test_parse_phi0():
    phi = parse("and(p0, dia(not(p0)))")
    assert phi == conj(var("p0"), dia(neg(var("p0"))))
    m = metrics(phi)
    assert (m.size, m.norm, m.depth, m.diamond_count) == (5, 2, 3, 1)


def test_parse_constants_are_nullary_applications():
    phi = parse("or(top, bot)")
    assert isinstance(phi.args[0], Apply) and phi.args[0].args == ()
    assert phi.size == 3 and phi.norm == 2


@pytest.mark.parametrize("text, err", [
    ("and(p1)", ArityError),
    ("foo(p1)", UnknownFunction),
    ("r", UnknownFunction),
    ("and(p1, p2", FormulaSyntaxError),
    ("and(p1, p2) p3", FormulaSyntaxError),
    ("dia(p1, p2)", ArityError),
    ("", FormulaSyntaxError),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse(text)


def test_iff_needs_extdm_ambient():
    with pytest.raises(UnknownFunction):
        parse("iff(p, q)")
    assert parse("iff(p, q)", EXTDM) == equiv(var("p"), var("q"))


@given(seeds)
def test_render_parse_roundtrip(seed):
    phi = rand(seed)
    assert parse(render(phi), EXT_MAJ) == phi


@given(seeds)
def test_metric_chain(seed):
    phi = rand(seed)
    assert phi.depth <= phi.size
    assert phi.norm <= phi.size
    assert phi.diamonds < phi.size or phi.size == 0


def test_substitute_maj_example():
    omega = parse("or(and(p1, or(p2, p3)), and(p2, p3))")
    out = substitute(omega, ["p1", "p2", "p3"], [dia(var("p")), var("q"), var("x")])
    assert render(out) == "or(and(dia(p), or(q, x)), and(q, x))"


def test_substitute_is_simultaneous():
    phi = parse("and(p1, p2)")
    assert render(substitute(phi, ["p1", "p2"], [var("p2"), var("p1")])) == "and(p2, p1)"
    with pytest.raises(ValueError):
        substitute(phi, ["p1", "p1"], [var("p"), var("q")])


@given(seeds, seeds)
def test_substitute_size_law(s1, s2):
    gamma = rand(s1)
    alpha = rand(s2, size=6)
    names = sorted(variables(gamma))
    if not names:
        return
    x = names[0]
    k = sum(1 for _ in _leaves(gamma, x))
    out = substitute(gamma, [x], [alpha])
    assert out.size == gamma.size + k * (alpha.size - 1)


def _leaves(phi, name):
    stack = [phi]
    while stack:
        n = stack.pop()
        if isinstance(n, Var):
            if n.name == name:
                yield n
        elif isinstance(n, Diamond):
            stack.append(n.arg)
        else:
            stack.extend(n.args)


def test_eo_sets_examples():
    p0 = var("p0")
    assert eo_sets(p0) == (frozenset(), frozenset())
    phi = conj(p0, dia(neg(p0)))
    assert eo_sets(phi) == (frozenset([neg(p0)]), frozenset())
    assert eo_sets(neg(phi)) == (frozenset(), frozenset([neg(p0)]))
    both = disj(dia(p0), neg(dia(var("p1"))))
    assert eo_sets(both) == (frozenset([p0]), frozenset([var("p1")]))


@given(seeds)
def test_eo_sets_negation_swaps(seed):
    phi = random_formula(random.Random(seed), DM, ["p0", "p1"], 10, 2)
    e, o = eo_sets(phi)
    assert eo_sets(neg(phi)) == (o, e)
    assert eo_sets(neg(neg(phi))) == (e, o)


def test_fresh_names_and_linearize():
    assert fresh_name("z", {"p"}) == "z"
    assert fresh_name("z", {"z", "z1"}) == "z2"
    phi = parse("and(p, or(p, q))")
    lin, names = linearize(phi, "p")
    assert names == ["q1", "q2"]
    assert render(lin) == "and(q1, or(q2, q))"


def test_table_mask_is_truth_table():
    phi = parse("or(and(p1, p2), not(p1))")
    # rows 00,01,10,11 -> 1,1,0,1
    assert table_mask(phi, ["p1", "p2"]) == 0b1011
