from itertools import product
import random

import pytest

from basisml.boolfn import (AND, BOT, DM, EXTDM, IFF, IMP, MAJ, NAND, NOT, OR, TOP, XOR, Basis,
                            TruthTable, is_monotone_in_arg)
from basisml.errors import NoNonmonotoneWitness, NotExpressible, NotLocallyMonotone
from basisml.formula import render, table_mask
from basisml.representations import (Representation, repr_biimplication, repr_disjunction,
                                     repr_dm, repr_extdm, repr_negation, step3_table,
                                     synthesize, with_constants)

from oracles import monotone_in_arg

NAND_B = Basis("nand", (NAND, TOP, BOT))
IMP_B = Basis("imp", (IMP, BOT, TOP))
XOR_B = Basis("andxor", (AND, XOR, TOP, BOT))
BASES = [NAND_B, IMP_B, XOR_B, DM, EXTDM]


def test_synthesize_examples():
    assert render(synthesize(Basis("n", (NAND,)), NOT)) == "nand(p1, p1)"
    with pytest.raises(NotExpressible):
        synthesize(Basis("mono", (AND, OR, TOP, BOT)), NOT)


def _dm_tables_by_size(max_size):
    """Brute force: the set of 2-variable truth tables of dM formulae of each size."""
    by = {1: {0b1100, 0b1010, 0b1111, 0b0000}}
    for n in range(2, max_size + 1):
        out = {~t & 0xF for t in by[n - 1]}
        for a in range(1, n - 1):
            for x in by[a]:
                for y in by[n - 1 - a]:
                    out |= {x & y, x | y}
        by[n] = out
    return by


def test_synthesize_is_smallest():
    by = _dm_tables_by_size(8)
    phi = synthesize(DM, XOR)
    assert table_mask(phi, ["p1", "p2"]) == XOR.mask
    smallest = min(n for n, ts in by.items() if XOR.mask in ts)
    assert phi.size == smallest == 8


def test_repr_extdm_examples():
    rep = repr_extdm(IFF, 1)
    rep.check()
    for i in (1, 2, 3):
        repr_extdm(MAJ, i).check()


def test_repr_dm_examples():
    rep = repr_dm(MAJ, 1)
    rep.check()
    assert rep.uses_only_basis()
    repr_dm(IMP, 2).check()
    with pytest.raises(NotLocallyMonotone):
        repr_dm(IFF, 1)


@pytest.mark.parametrize("f", [NOT, AND, OR, IMP, IFF, MAJ, XOR, NAND])
def test_dichotomy_on_named_functions(f):
    for i in range(1, f.arity + 1):
        repr_extdm(f, i).check()
        if is_monotone_in_arg(f, i):
            repr_dm(f, i).check()
        else:
            with pytest.raises(NotLocallyMonotone):
                repr_dm(f, i)


def test_dichotomy_exhaustive_up_to_arity_two():
    for k in (1, 2):
        for bits in product((0, 1), repeat=1 << k):
            f = TruthTable("f", k, bits)
            for i in range(1, k + 1):
                repr_extdm(f, i).check()
                mono = monotone_in_arg(k, bits, i)
                if mono:
                    repr_dm(f, i).check()
                else:
                    with pytest.raises(NotLocallyMonotone):
                        repr_dm(f, i)


def test_dichotomy_on_arity_four_sample():
    rng = random.Random(4)
    for _ in range(10):
        f = TruthTable("f", 4, tuple(rng.randint(0, 1) for _ in range(16)))
        for i in range(1, 5):
            repr_extdm(f, i).check()
            if monotone_in_arg(4, f.bits, i):
                repr_dm(f, i).check()


def test_repr_negation_examples():
    assert render(repr_negation(NAND_B).formula) == "nand(top, p1)"
    assert render(repr_negation(DM).formula) == "not(p1)"
    assert render(repr_negation(IMP_B).formula) == "imp(p1, bot)"


@pytest.mark.parametrize("G", BASES, ids=lambda b: b.name)
def test_step2_and_step3_representations(G):
    neg_rep = repr_negation(G)
    neg_rep.check()
    assert neg_rep.occurrences() == 1
    dis = repr_disjunction(G)
    dis.check()
    assert dis.target.bitstring == "0111"
    if G.locally_monotone:
        with pytest.raises(NoNonmonotoneWitness):
            repr_biimplication(G)
    else:
        bi = repr_biimplication(G)
        bi.check()
        assert bi.target.bitstring == "1001"


def test_repr_disjunction_dm_is_plain_or():
    assert render(repr_disjunction(DM).formula) == "or(p1, p2)"


@pytest.mark.parametrize("G", BASES, ids=lambda b: b.name)
def test_step3_table_entries(G):
    table = step3_table(G)
    expect = {("not", 1), ("or", 1), ("or", 2), ("and", 1), ("and", 2)}
    if not G.locally_monotone:
        expect |= {("iff", 1), ("iff", 2)}
    assert set(table) == expect
    for rep in table.values():
        rep.check()


def test_with_constants_adds_missing_constants():
    Gp = with_constants(Basis("n", (NAND,)))
    assert {f.bits for f in Gp if f.arity == 0} == {(0,), (1,)}


def test_incomplete_basis_rejected():
    with pytest.raises(NotExpressible):
        repr_negation(Basis("mono", (AND, OR, TOP, BOT)))


def test_representation_check_catches_bad_formula():
    from basisml.formula import parse
    bad = Representation(OR, 1, parse("or(p1, or(p1, p2))"), DM)
    assert bad.equivalent_to_target()
    with pytest.raises(AssertionError):
        bad.check()
