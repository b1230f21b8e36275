import random

import pytest
from hypothesis import given, settings, strategies as st

from basisml.boolfn import (AND, BOT, DM, EXTDM, IFF, MAJ, NAND, OR, TOP, XOR, Basis,
                            TruthTable)
from basisml.errors import BasisError, HypothesisViolated, IncompleteTable
from basisml.formula import Apply, Var, dia, parse, render, substitute, var
from basisml.gen import random_formula
from basisml.representations import repr_dm
from basisml.semantics import equivalent
from basisml.translate import (derivative, eliminate, kappa_bound, rank, translate_pipeline)

NAND_B = Basis("nand", (NAND, TOP, BOT))
XOR_B = Basis("andxor", (AND, XOR, TOP, BOT))
EXT_MAJ = EXTDM.union(Basis("m", (MAJ,)), name="extdm_maj")

F_ = TruthTable.from_string("f", "0001")
FP = TruthTable.from_string("fp", "0111")
FPP = TruthTable.from_string("fpp", "1101")
SHARED_F = Basis("F", (F_, FP, FPP))


def rank_two():
    p1, p2 = var("p1"), var("p2")
    fp = Apply(FP, [p1, p2])
    return Apply(F_, [Apply(F_, [fp, fp]), Apply(FPP, [p2, Apply(F_, [p1, p1])])])


def test_rank_two_derivative_and_rank():
    phi = rank_two()
    assert phi.size == 13
    gamma, names, plugs = derivative(phi, SHARED_F)
    assert render(gamma) == "f(f(q1, q2), q3)"
    assert names == ["q1", "q2", "q3"]
    assert substitute(gamma, names, plugs) == phi
    gamma2, names2, plugs2 = derivative(gamma, SHARED_F)
    assert isinstance(gamma2, Var) and len(plugs2) == 1 and plugs2[0] == gamma
    assert rank(phi, SHARED_F) == 2


def test_rank_trivial_cases():
    assert rank(parse("or(p1, p2)"), SHARED_F) == 0
    assert rank(Apply(F_, [var("p1"), var("p2")]), SHARED_F) == 1
    gamma, names, plugs = derivative(parse("or(p1, p2)"), SHARED_F)
    assert render(gamma) == "or(p1, p2)" and plugs == []


seeds = st.integers(0, 2**32 - 1)


@given(seeds)
def test_rank_bound_and_derivative_soundness(seed):
    F = Basis("Fm", (MAJ, IFF))
    phi = random_formula(random.Random(seed), EXT_MAJ, ["p1", "p2"], 14, 2)
    r = rank(phi, F, DM)
    assert phi.size >= 2 ** r - 1
    gamma, names, plugs = derivative(phi, F, DM)
    assert substitute(gamma, names, plugs) == phi
    assert not set(names) & {v.name for v in _vars(phi)}


def _vars(phi):
    from basisml.formula import walk_unique
    return [n for n in walk_unique(phi) if isinstance(n, Var)]


def test_eliminate_maj_over_dm():
    p, q, r = var("p"), var("q"), var("p1")
    phi = Apply(MAJ, [p, q, dia(r)])
    table = {("maj", i): repr_dm(MAJ, i) for i in (1, 2, 3)}
    out = eliminate(phi, Basis("m", (MAJ,)), DM, table)
    assert all(n.fn in DM for n in _apps(out))
    assert equivalent(out, phi, "K")


def _apps(phi):
    from basisml.formula import walk_unique
    return [n for n in walk_unique(phi) if isinstance(n, Apply)]


def test_eliminate_rank_zero_and_missing_entry():
    phi = parse("or(p1, p2)")
    assert eliminate(phi, SHARED_F, DM, {}) is phi
    with pytest.raises(IncompleteTable):
        eliminate(parse("iff(p, dia(q))", EXTDM), Basis("i", (IFF,)), DM, {})
    with pytest.raises(BasisError):
        eliminate(phi, Basis("c", (TOP,)), Basis("n", (NAND,)), {})


def test_kappa_bound():
    assert kappa_bound(2, 1) == 4
    assert kappa_bound(3, 4) == 3 ** 3 * 4
    assert kappa_bound(2, 5) == 2 ** 4 * 5


def test_pipeline_iff_to_xor():
    phi = parse("iff(p1, p2)", EXTDM)
    psi, rep = translate_pipeline(phi, Basis("i", (IFF,)), XOR_B, verify="K")
    assert rep.verified and rep.within_bound and rep.bound_guaranteed
    assert all(n.fn in XOR_B for n in _apps(psi))


def test_pipeline_maj_to_nand():
    phi = parse("maj(p1, p2, p3)", Basis("m", (MAJ,)))
    psi, rep = translate_pipeline(phi, Basis("m", (MAJ,)), Basis("n", (NAND,)), verify="K")
    assert rep.verified and rep.within_bound
    assert all(n.fn == NAND for n in _apps(psi))


def test_pipeline_hypothesis_violated():
    phi = parse("iff(p1, p2)", EXTDM)
    with pytest.raises(HypothesisViolated):
        translate_pipeline(phi, Basis("i", (IFF,)), DM)
    psi, rep = translate_pipeline(phi, Basis("i", (IFF,)), DM, verify="K",
                                  allow_exponential=True)
    assert rep.verified and not rep.bound_guaranteed


def test_pipeline_only_checks_functions_that_occur():
    phi = parse("and(p1, dia(p2))", EXTDM)
    psi, rep = translate_pipeline(phi, EXTDM, NAND_B, verify="K")
    assert rep.bound_guaranteed and rep.verified


def test_pipeline_constants_without_target_constants():
    phi = parse("or(top, dia(bot))")
    psi, rep = translate_pipeline(phi, DM, Basis("n", (NAND,)), verify="K")
    assert rep.verified
    assert rep.z_introduced


@settings(max_examples=25)
@given(seeds)
def test_pipeline_random_sound_and_bounded(seed):
    phi = random_formula(random.Random(seed), EXT_MAJ, ["p1", "p2"], 9, 2)
    psi, rep = translate_pipeline(phi, EXT_MAJ, XOR_B, verify="K")
    assert rep.verified
    assert psi.size <= kappa_bound(rep.kappa_constant, phi.size)


def test_report_json_fields():
    phi = parse("iff(p1, p2)", EXTDM)
    _, rep = translate_pipeline(phi, EXTDM, XOR_B)
    d = rep.as_dict()
    for key in ("source_basis", "target_basis", "input", "output", "rank", "kappa_constant",
                "bound", "verified", "frame_class", "z_introduced", "bound_guaranteed"):
        assert key in d
    assert d["verified"] is None
