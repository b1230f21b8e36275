from itertools import product

import pytest
from hypothesis import given, strategies as st

from basisml.boolfn import (AND, BOT, DM, EXTDM, IFF, IMP, MAJ, MAX_ARITY, NAND, NOT, OR, TOP,
                            XOR, Basis, TruthTable, evaluate, format_basis, is_affine,
                            is_complete, is_locally_monotone, is_monotone_in_arg,
                            monotone_direction, parse_basis, row_index)
from basisml.errors import ArityError, BasisError

from oracles import affine_by_coefficients, complete_by_closure, eval_bits, monotone_in_arg

tables = st.integers(0, 3).flatmap(
    lambda k: st.lists(st.integers(0, 1), min_size=1 << k, max_size=1 << k).map(
        lambda bits: TruthTable("f", k, tuple(bits))))


def test_evaluate_examples():
    assert evaluate(AND, [1, 1]) == 1
    assert evaluate(AND, [1, 0]) == 0
    assert evaluate(MAJ, [1, 0, 1]) == 1
    assert evaluate(MAJ, [1, 0, 0]) == 0
    assert IMP(1, 0) == 0 and IMP(0, 1) == 1


def test_row_order_first_argument_most_significant():
    assert row_index([1, 0]) == 2
    assert row_index([0, 1, 1]) == 3
    f = TruthTable.from_string("first", "0011")
    assert f(1, 0) == 1 and f(0, 1) == 0


@given(tables)
def test_evaluate_agrees_with_oracle(f):
    for r in product((0, 1), repeat=f.arity):
        assert evaluate(f, r) == eval_bits(f.bits, r)


def test_monotonicity_examples():
    assert is_monotone_in_arg(IMP, 1)
    assert monotone_direction(IMP, 1) == -1
    assert monotone_direction(IMP, 2) == 1
    assert not is_monotone_in_arg(IFF, 1)
    for f in (AND, OR, IMP, NOT, TOP, BOT, MAJ, NAND):
        assert is_locally_monotone(f), f.name
    assert not is_locally_monotone(IFF)
    assert not is_locally_monotone(XOR)


def test_affine_examples():
    for f in (NOT, BOT, TOP, IFF, XOR):
        assert is_affine(f), f.name
    for f in (OR, AND, MAJ, NAND):
        assert not is_affine(f), f.name


@given(tables)
def test_classification_agrees_with_oracles(f):
    assert is_affine(f) == affine_by_coefficients(f.arity, f.bits)
    for i in range(1, f.arity + 1):
        assert is_monotone_in_arg(f, i) == monotone_in_arg(f.arity, f.bits, i)


def test_completeness_examples():
    assert is_complete([NAND])
    assert not is_complete([AND, OR, TOP, BOT])
    assert is_complete(DM) and is_complete(EXTDM)
    assert is_complete([IMP, BOT])
    assert not is_complete([IMP])          # preserves 1
    assert is_complete([AND, XOR, TOP])
    assert not is_complete([XOR, IFF, NOT, TOP, BOT])   # all affine


def test_completeness_agrees_with_closure_oracle_on_binary_pairs():
    binary = [TruthTable("g", 2, tuple(b)) for b in product((0, 1), repeat=4)]
    for f in binary:
        assert is_complete([f]) == complete_by_closure([(2, f.bits)]), f.bits
    for f in binary[::3]:
        for g in binary[1::4]:
            expect = complete_by_closure([(2, f.bits), (2, g.bits)])
            assert is_complete([f, g]) == expect


def test_completeness_with_unary_and_nullary():
    for extra in ([NOT], [TOP], [BOT], [TOP, BOT]):
        fns = [AND] + extra
        expect = complete_by_closure([(f.arity, f.bits) for f in fns])
        assert is_complete(fns) == expect


def test_parse_basis_roundtrip_and_errors():
    text = "# comment\nnand 2 1110\n\ntop 0 1\n"
    B = parse_basis(text, "n")
    assert B.names() == ["nand", "top"]
    assert parse_basis(format_basis(B)).functions == B.functions
    with pytest.raises(ArityError):
        parse_basis("f 2 101")
    with pytest.raises(BasisError):
        parse_basis("f 2")
    with pytest.raises(BasisError):
        parse_basis("f 1 10\nf 1 01")
    with pytest.raises(ArityError):
        parse_basis(f"big {MAX_ARITY + 1} 0")


def test_basis_union_and_flags():
    assert EXTDM.complete and not EXTDM.locally_monotone
    assert DM.locally_monotone
    U = DM.union(Basis("m", (MAJ,)))
    assert "maj" in U and len(U) == 6
    with pytest.raises(BasisError):
        DM.union([TruthTable.from_string("and", "0111")])
