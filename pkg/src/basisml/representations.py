"""PL[G]-representations: formulae equivalent to ``f(p1, ..., pk)`` that use a
designated variable ``p_i`` at most once.

* :func:`repr_extdm` and :func:`repr_dm` build representations over the
  (extended) De Morgan basis from a truth table.
* :func:`repr_negation`, :func:`repr_disjunction` and :func:`repr_biimplication`
  build representations of not/or/iff over an arbitrary complete basis that
  contains both constants.
* :func:`synthesize` finds some PL[G] formula for a truth table by
  breadth-first composition; it supplies the starting formulae above.
"""

from __future__ import annotations

from dataclasses import dataclass

from .boolfn import (AND, BOT, DM, EXTDM, IFF, NOT, OR, TOP, Basis, TruthTable,
                     is_complete, is_locally_monotone, monotone_direction)
from .errors import (ArityError, BasisError, NoNonmonotoneWitness, NotExpressible,
                     NotLocallyMonotone)
from .formula import (Apply, Formula, Var, conj, disj, equiv, evaluate_prop, linearize,
                      neg, occurrences, substitute, substitute_map, table_mask,
                      var_mask, variables)


def pvars(k: int) -> list[str]:
    return [f"p{j}" for j in range(1, k + 1)]


@dataclass(frozen=True)
class Representation:
    target: TruthTable
    position: int
    formula: Formula
    basis: Basis

    @property
    def size(self) -> int:
        return self.formula.size

    def occurrences(self) -> int:
        return occurrences(self.formula, f"p{self.position}")

    def equivalent_to_target(self) -> bool:
        names = pvars(self.target.arity)
        if not variables(self.formula) <= set(names):
            return False
        return table_mask(self.formula, names) == self.target.mask

    def uses_only_basis(self) -> bool:
        allowed = set(self.basis)
        stack = [self.formula]
        while stack:
            node = stack.pop()
            if isinstance(node, Apply):
                if node.fn not in allowed:
                    return False
                stack.extend(node.args)
            elif not isinstance(node, Var):
                return False
        return True

    def check(self) -> None:
        """Raise AssertionError unless the defining invariants hold."""
        assert self.uses_only_basis(), f"{self.formula} leaves basis {self.basis.name}"
        assert self.equivalent_to_target(), f"{self.formula} is not {self.target}"
        assert self.occurrences() <= 1, f"p{self.position} occurs {self.occurrences()} times"


def synthesize(basis: Basis, target: TruthTable) -> Formula:
    """A smallest PL[basis] formula over ``p1..pk`` whose table is ``target``.

    Breadth-first by size over the composition closure of the basis; leaves
    are the variables followed by the basis constants, functions are tried in
    basis order. A nullary target is searched as the constant unary function.
    """
    k = max(target.arity, 1)
    n_rows = 1 << k
    full = (1 << n_rows) - 1
    if target.arity == 0:
        goal = full if target.bits[0] else 0
    else:
        goal = target.mask

    found: dict[int, Formula] = {}
    by_size: dict[int, list[int]] = {1: []}

    def record(mask, formula, size):
        if mask not in found:
            found[mask] = formula
            by_size.setdefault(size, []).append(mask)

    for j, name in enumerate(pvars(k)):
        record(var_mask(j, k), Var(name), 1)
    for f in basis:
        if f.arity == 0:
            record(full if f.bits[0] else 0, Apply(f), 1)
    if goal in found:
        return found[goal]

    functions = [f for f in basis if f.arity > 0]
    if not functions:
        raise NotExpressible(f"{target.name} is not expressible over {basis.name}")
    max_arity = max(f.arity for f in functions)
    largest = 1
    size = 1
    while size <= 1 + max_arity * largest:
        size += 1
        for g in functions:
            for parts in _compositions(size - 1, g.arity):
                if any(p not in by_size for p in parts):
                    continue
                for combo in _product([by_size[p] for p in parts]):
                    mask = _apply_rows(g, combo, n_rows)
                    if mask in found:
                        continue
                    record(mask, Apply(g, [found[m] for m in combo]), size)
                    largest = size
                    if mask == goal:
                        return found[mask]
    raise NotExpressible(f"{target.name} is not expressible over {basis.name}")


def _apply_rows(g: TruthTable, masks, n_rows: int) -> int:
    out = 0
    for r in range(n_rows):
        idx = 0
        for m in masks:
            idx = (idx << 1) | ((m >> r) & 1)
        if g.bits[idx]:
            out |= 1 << r
    return out


def _compositions(total: int, parts: int):
    """Ordered ways to write ``total`` as ``parts`` positive summands."""
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for tail in _product(lists[1:]):
            yield (head,) + tail


# --- over the (extended) De Morgan basis -------------------------------------

def _literal(name: str, value: int) -> Formula:
    return Var(name) if value else neg(Var(name))


def _and_all(items: list[Formula]) -> Formula:
    if not items:
        return Apply(TOP)
    out = items[0]
    for it in items[1:]:
        out = conj(out, it)
    return out


def _or_all(items: list[Formula]) -> Formula:
    if not items:
        return Apply(BOT)
    out = items[0]
    for it in items[1:]:
        out = disj(out, it)
    return out


def dnf(rows_true: list[tuple[int, ...]], names: list[str]) -> Formula:
    """Full DNF with one minterm per row, minterms in the given order."""
    return _or_all([_and_all([_literal(n, v) for n, v in zip(names, row)])
                    for row in rows_true])


def _cofactor_rows(f: TruthTable, i: int, value: int) -> list[tuple[int, ...]]:
    """Rows of the other arguments (ascending) where f is 1 with argument i fixed."""
    k = f.arity
    out = []
    for r in range(1 << (k - 1)):
        others = tuple((r >> (k - 2 - j)) & 1 for j in range(k - 1))
        args = others[: i - 1] + (value,) + others[i - 1:]
        if f(*args):
            out.append(others)
    return out


def repr_extdm(f: TruthTable, i: int) -> Representation:
    """``(a & b) | ((a | b) & (p_i <-> a))`` where ``a``/``b`` are the DNFs of the
    cofactors of ``f`` at ``p_i = 1``/``p_i = 0``.

    The textbook shape ``(a & b) | (~(a & b) & (p_i <-> (a & ~b)))`` evaluates to
    ``~p_i`` when both cofactors are false, so the middle conjunct is guarded
    by ``a | b`` instead.
    """
    if f.arity == 0:
        raise ArityError("representations need a function of positive arity")
    if not 1 <= i <= f.arity:
        raise ArityError(f"position {i} out of range for {f.name}/{f.arity}")
    names = pvars(f.arity)
    others = names[: i - 1] + names[i:]
    alpha = dnf(_cofactor_rows(f, i, 1), others)
    beta = dnf(_cofactor_rows(f, i, 0), others)
    formula = disj(conj(alpha, beta),
                   conj(disj(alpha, beta), equiv(Var(names[i - 1]), alpha)))
    return Representation(f, i, formula, EXTDM)


def repr_dm(f: TruthTable, i: int) -> Representation:
    """Representation over the De Morgan basis; exists iff f is monotone in argument i."""
    if f.arity == 0:
        raise ArityError("representations need a function of positive arity")
    direction = monotone_direction(f, i)
    if direction is None:
        raise NotLocallyMonotone(f"{f.name} is not monotone in argument {i}")
    names = pvars(f.arity)
    omega = dnf([row for row in _all_rows(f.arity) if f(*row)], names)
    pi = names[i - 1]
    with_top = substitute_map(omega, {pi: Apply(TOP)})
    with_bot = substitute_map(omega, {pi: Apply(BOT)})
    if direction > 0:
        formula = disj(conj(with_top, Var(pi)), with_bot)
    else:
        formula = disj(conj(with_bot, neg(Var(pi))), with_top)
    return Representation(f, i, formula, DM)


def _all_rows(k: int):
    for r in range(1 << k):
        yield tuple((r >> (k - 1 - j)) & 1 for j in range(k))


# --- over an arbitrary complete basis with both constants -------------------

def _constants(G: Basis) -> tuple[TruthTable, TruthTable]:
    t = next((f for f in G if f.arity == 0 and f.bits[0] == 1), None)
    b = next((f for f in G if f.arity == 0 and f.bits[0] == 0), None)
    if t is None or b is None:
        raise BasisError(
            f"basis {G.name!r} must contain both constants; use G+ = G with top and bot added")
    return t, b


def _require_complete(G: Basis) -> None:
    if not is_complete(G):
        raise NotExpressible(f"basis {G.name!r} is not complete")


def with_constants(G: Basis) -> Basis:
    """G+ : G together with top and bot (skipped if G already has constants of that value)."""
    extra = []
    if not any(f.arity == 0 and f.bits[0] == 1 for f in G):
        extra.append(TOP)
    if not any(f.arity == 0 and f.bits[0] == 0 for f in G):
        extra.append(BOT)
    return G.union(extra, name=f"{G.name}+") if extra else G


def negation_flip_index(alpha_lin: Formula, qs: list[str]) -> int:
    """Smallest i with value 1 on (1^(i-1), 0, 0...) and 0 on (1^i, 0...)."""
    ell = len(qs)
    prev = evaluate_prop(alpha_lin, {q: 0 for q in qs})
    for i in range(1, ell + 1):
        cur = evaluate_prop(alpha_lin, {q: int(j < i) for j, q in enumerate(qs)})
        if prev == 1 and cur == 0:
            return i
        prev = cur
    raise AssertionError("linearized negation formula has no 1->0 switch")


def repr_negation(G: Basis) -> Representation:
    _require_complete(G)
    t, b = _constants(G)
    alpha = synthesize(G, NOT)
    lin, qs = linearize(alpha, "p1")
    i = negation_flip_index(lin, qs)
    plugs = [Apply(t) if j < i else Apply(b) for j in range(1, len(qs) + 1)]
    plugs[i - 1] = Var("p1")
    return Representation(NOT, 1, substitute(lin, qs, plugs), G)


def _swap12(phi: Formula) -> Formula:
    return substitute(phi, ["p1", "p2"], [Var("p2"), Var("p1")])


def _plug_formulas(a, b, i, omega_not: Formula, t: TruthTable, bot_: TruthTable):
    """The gamma_j table: constants where a_j = b_j, p2 / not(p2) where they
    differ, p1 at the witness position ``i`` (1-based)."""
    negated_p2 = substitute(omega_not, ["p1"], [Var("p2")])
    plugs = []
    for j, (aj, bj) in enumerate(zip(a, b), 1):
        if j == i:
            plugs.append(Var("p1"))
        elif aj == bj:
            plugs.append(Apply(t) if aj else Apply(bot_))
        elif aj < bj:
            plugs.append(negated_p2)
        else:
            plugs.append(Var("p2"))
    return plugs


def non_affine_witness(f: TruthTable) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Smallest argument i with a fixing ``a`` where flipping i keeps the value
    and a fixing ``b`` where it changes it. Returned vectors have a_i = b_i = 0."""
    k = f.arity
    for i in range(1, k + 1):
        shift = k - i
        keep = change = None
        for r in range(1 << k):
            if (r >> shift) & 1:
                continue
            same = f.bits[r] == f.bits[r | (1 << shift)]
            if same and keep is None:
                keep = r
            if not same and change is None:
                change = r
        if keep is not None and change is not None:
            return i, _vec(keep, k), _vec(change, k)
    raise AssertionError(f"{f.name} is affine")


def nonmonotone_witness(g: TruthTable) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Smallest i with a fixing ``a`` where g increases and ``b`` where it decreases."""
    k = g.arity
    for i in range(1, k + 1):
        shift = k - i
        up = down = None
        for r in range(1 << k):
            if (r >> shift) & 1:
                continue
            lo, hi = g.bits[r], g.bits[r | (1 << shift)]
            if lo < hi and up is None:
                up = r
            if lo > hi and down is None:
                down = r
        if up is not None and down is not None:
            return i, _vec(up, k), _vec(down, k)
    raise AssertionError(f"{g.name} is locally monotone")


def _vec(r: int, k: int) -> tuple[int, ...]:
    return tuple((r >> (k - 1 - j)) & 1 for j in range(k))


def repr_disjunction(G: Basis, omega_not: Formula | None = None) -> Representation:
    _require_complete(G)
    t, b = _constants(G)
    if omega_not is None:
        omega_not = repr_negation(G).formula
    alpha = synthesize(G, OR)
    lin, q1s = linearize(alpha, "p1")
    lin, q2s = linearize(lin, "p2", used=q1s)
    qs = q1s + q2s
    f_lin = TruthTable("f_alpha", len(qs), _table_bits(lin, qs))
    i, a, bvec = non_affine_witness(f_lin)
    plugs = _plug_formulas(a, bvec, i, omega_not, t, b)
    omega = substitute(lin, qs, plugs)

    def value(phi, x, y):
        return evaluate_prop(phi, {"p1": x, "p2": y})

    if value(omega, 1, 1) != 1:
        omega = substitute(omega_not, ["p1"], [omega])
    if value(omega, 0, 0) != 0:
        omega = substitute(omega, ["p1"], [omega_not])
    return Representation(OR, 1, omega, G)


def _table_bits(phi: Formula, names: list[str]) -> tuple[int, ...]:
    m = table_mask(phi, names)
    return tuple((m >> r) & 1 for r in range(1 << len(names)))


def repr_biimplication(G: Basis, omega_not: Formula | None = None) -> Representation:
    t, b = _constants(G)
    g = next((f for f in G if not is_locally_monotone(f)), None)
    if g is None:
        raise NoNonmonotoneWitness(f"every function of {G.name!r} is locally monotone")
    _require_complete(G)
    if omega_not is None:
        omega_not = repr_negation(G).formula
    i, a, bvec = nonmonotone_witness(g)
    plugs = _plug_formulas(a, bvec, i, omega_not, t, b)
    return Representation(IFF, 1, Apply(g, plugs), G)


def swapped(rep: Representation) -> Representation:
    """The representation of (f, 2) for a symmetric binary f from one of (f, 1)."""
    if rep.target.arity != 2:
        raise ArityError("argument swap needs a binary function")
    return Representation(rep.target, 3 - rep.position, _swap12(rep.formula), rep.basis)


def step3_table(G: Basis) -> dict[tuple[str, int], Representation]:
    """PL[G]-representations of not, or, and (and iff when G has a non-locally
    monotone member), for every argument position. ``and`` is obtained from
    not/or by De Morgan's law."""
    neg_rep = repr_negation(G)
    omega_not = neg_rep.formula
    or1 = repr_disjunction(G, omega_not)
    table = {("not", 1): neg_rep, ("or", 1): or1, ("or", 2): swapped(or1)}
    # and(p1, p2) = not(or(not p1, not p2)); or's p1 slot receives not(p1)
    inner = substitute(or1.formula, ["p1", "p2"],
                       [substitute(omega_not, ["p1"], [Var("p1")]),
                        substitute(omega_not, ["p1"], [Var("p2")])])
    and1 = Representation(AND, 1, substitute(omega_not, ["p1"], [inner]), G)
    table[("and", 1)] = and1
    table[("and", 2)] = swapped(and1)
    if any(not is_locally_monotone(f) for f in G):
        iff1 = repr_biimplication(G, omega_not)
        table[("iff", 1)] = iff1
        table[("iff", 2)] = swapped(iff1)
    return table
