"""Derivatives, ranks and the rank-by-rank elimination of a basis F into a
basis G, plus the end-to-end translation ML[F] -> ML[G].

The elimination replaces every F-application ``f(a1, ..., ak)`` that has at
most one F-containing argument ``ai`` by ``w_{f,i}<a1, ..., ai', ..., ak>``
where ``w_{f,i}`` is a representation of (f, i) over G. Because ``w_{f,i}``
uses ``p_i`` at most once, the (recursively translated) ``ai'`` is never
copied, so each rank costs at most a constant factor.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Mapping

from .boolfn import (AND, BOT, IFF, NOT, OR, TOP, Basis, TruthTable, is_complete,
                     is_locally_monotone, monotone_direction)
from .errors import BasisError, HypothesisViolated, IncompleteTable, NotExpressible
from .formula import (Apply, Diamond, Formula, Metrics, Var, children, fresh_name,
                      fresh_names, metrics, rebuild, substitute, substitute_map,
                      variables, walk_unique)
from .representations import (Representation, pvars, repr_dm, repr_extdm, step3_table,
                              synthesize, with_constants)


# --- N_{F,G}, derivative, rank -------------------------------------------------

class _Marks:
    """Per-node facts for one formula: does it contain F, is it in N_{F,G}."""

    def __init__(self, phi: Formula, F: frozenset):
        self.has_f: dict[int, bool] = {}
        self.in_n: dict[int, bool] = {}
        for node in walk_unique(phi):
            kids = children(node)
            flags = [self.has_f[id(c)] for c in kids]
            is_f = isinstance(node, Apply) and node.fn in F
            self.has_f[id(node)] = is_f or any(flags)
            ok = all(self.in_n[id(c)] for c in kids)
            if is_f and sum(flags) > 1:
                ok = False
            self.in_n[id(node)] = ok


def _function_set(F) -> frozenset:
    return frozenset(F)


def _disjoint(F: Basis, G: Basis) -> frozenset:
    # functions shared with G need no elimination
    return frozenset(f for f in F if f not in G.functions)


def in_n(phi: Formula, F: Basis, G: Basis | None = None) -> bool:
    """Whether every F-application in phi has at most one F-containing argument."""
    Fs = _disjoint(F, G) if G is not None else _function_set(F)
    return _Marks(phi, Fs).in_n[id(phi)]


def derivative(phi: Formula, F: Basis, G: Basis | None = None
               ) -> tuple[Formula, list[str], list[Formula]]:
    """The F-derivative: maximal F-containing subformulae that lie in N_{F,G}
    are replaced, occurrence by occurrence and left to right, by fresh
    variables ``q1, q2, ...`` (smallest indices unused in phi).

    Returns ``(gamma, names, plugs)`` with ``substitute(gamma, names, plugs) == phi``.
    """
    Fs = _disjoint(F, G) if G is not None else _function_set(F)
    marks = _Marks(phi, Fs)
    plugs: list[Formula] = []

    def go(node):
        if not marks.has_f[id(node)]:
            return node
        if marks.in_n[id(node)]:
            plugs.append(node)
            return len(plugs) - 1
        return node, [go(c) for c in children(node)]

    shape = go(phi)
    names = fresh_names("q", variables(phi), len(plugs))

    def build(s):
        if isinstance(s, int):
            return Var(names[s])
        if isinstance(s, Formula):
            return s
        node, kids = s
        return rebuild(node, [build(k) for k in kids])

    return build(shape), names, plugs


def rank(phi: Formula, F: Basis, G: Basis | None = None) -> int:
    """Number of derivative steps until no F symbol remains."""
    Fs = _disjoint(F, G) if G is not None else _function_set(F)
    r = 0
    while True:
        marks = _Marks(phi, Fs)
        if not marks.has_f[id(phi)]:
            return r
        r += 1
        if marks.in_n[id(phi)]:
            return r
        phi, _, _ = derivative(phi, Basis("F", tuple(Fs)))


# --- elimination ---------------------------------------------------------------

Table = Mapping[tuple[str, int], "Representation | Formula"]


def _entry(table: Table, f: TruthTable, i: int) -> Formula:
    try:
        rep = table[(f.name, i)]
    except KeyError:
        raise IncompleteTable(f"no representation for ({f.name}, {i})") from None
    return rep.formula if isinstance(rep, Representation) else rep


def _check_functions(phi: Formula, allowed: frozenset, what: str) -> None:
    for node in walk_unique(phi):
        if isinstance(node, Apply) and node.fn not in allowed:
            raise BasisError(f"{node.fn.name}/{node.fn.arity} is not in {what}")


def eliminate(phi: Formula, F: Basis, G: Basis, table: Table) -> Formula:
    """An ML[G] formula equivalent to phi, of size at most ``c**rank * |phi|``
    where ``c`` is the largest table entry used."""
    Fs = _disjoint(F, G)
    if any(f.arity == 0 for f in Fs):
        raise BasisError("nullary functions of F must belong to G (map them to top/bot)")
    _check_functions(phi, Fs | frozenset(G), f"{F.name} or {G.name}")
    while True:
        marks = _Marks(phi, Fs)
        if not marks.has_f[id(phi)]:
            return phi
        if marks.in_n[id(phi)]:
            return _eliminate_rank1(phi, Fs, table, marks)
        gamma, names, plugs = derivative(phi, Basis("F", tuple(Fs)))
        done = [_eliminate_rank1(p, Fs, table, marks) for p in plugs]
        phi = substitute(gamma, names, done)


def _eliminate_rank1(phi: Formula, Fs: frozenset, table: Table, marks: _Marks) -> Formula:
    out: dict[int, Formula] = {}
    for node in walk_unique(phi):
        if not marks.has_f[id(node)]:
            out[id(node)] = node
            continue
        if isinstance(node, Apply) and node.fn in Fs:
            carrying = [j for j, a in enumerate(node.args) if marks.has_f[id(a)]]
            assert len(carrying) <= 1, "formula is not in N_{F,G}"
            i = carrying[0] + 1 if carrying else 1
            args = list(node.args)
            args[i - 1] = out[id(args[i - 1])]
            omega = _entry(table, node.fn, i)
            out[id(node)] = substitute(omega, pvars(node.fn.arity), args)
        else:
            out[id(node)] = rebuild(node, [out[id(c)] for c in children(node)])
    return out[id(phi)]


# --- end-to-end pipeline -------------------------------------------------------

def kappa_bound(c: int, n: int) -> int:
    """``c ** (1 + ceil(log2 max(n, 2))) * n``."""
    return c ** (1 + math.ceil(math.log2(max(n, 2)))) * n


@dataclass
class TranslationReport:
    source_basis: str
    target_basis: str
    input: Metrics
    output: Metrics
    rank: int
    kappa_constant: int
    bound: int
    verified: bool | None = None
    frame_class: str | None = None
    z_introduced: bool = False
    bound_guaranteed: bool = True
    formula: str | None = field(default=None, repr=False)

    def as_dict(self) -> dict:
        d = {
            "source_basis": self.source_basis,
            "target_basis": self.target_basis,
            "input": self.input.as_dict(),
            "output": self.output.as_dict(),
            "rank": self.rank,
            "kappa_constant": self.kappa_constant,
            "bound": self.bound,
            "verified": self.verified,
            "frame_class": self.frame_class,
            "z_introduced": self.z_introduced,
            "bound_guaranteed": self.bound_guaranteed,
        }
        if self.formula is not None:
            d["formula"] = self.formula
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.as_dict(), **kw)

    @property
    def within_bound(self) -> bool:
        return self.output.size <= self.bound


def _by_table(G: Basis) -> dict[tuple[int, tuple[int, ...]], TruthTable]:
    out = {}
    for g in G:
        out.setdefault((g.arity, g.bits), g)
    return out


def _dm_representation(f: TruthTable, i: int) -> Formula:
    if monotone_direction(f, i) is not None:
        return repr_dm(f, i).formula
    return repr_extdm(f, i).formula


def _to_target(omega: Formula, position: int, G_plus: Basis, step3, same) -> Formula:
    """Rewrite an extdM formula into PL[G+], keeping ``p<position>`` single-use.

    On the path to the designated variable each connective ``h`` is replaced by
    the G+ representation of (h, j), j the child on the path; everything off the
    path is translated with position 1.
    """
    target = f"p{position}"

    def go(node, on_path):
        if isinstance(node, Var):
            return node
        fn = node.fn
        args = node.args
        if on_path:
            holders = [j for j, a in enumerate(args) if target in variables(a)]
        else:
            holders = []
        new_args = [go(a, j in holders) for j, a in enumerate(args)]
        direct = same.get((fn.arity, fn.bits))
        if direct is not None:
            return Apply(direct, new_args)
        j = holders[0] + 1 if holders else 1
        try:
            rep = step3[(fn.name, j)]
        except KeyError:
            raise IncompleteTable(f"no G representation for ({fn.name}, {j})") from None
        return substitute(rep.formula, pvars(fn.arity), new_args)

    return go(omega, True)


def _iff_fallback(step3, G_plus: Basis, same) -> None:
    """Add (iff, 1) and (iff, 2) built from ``(p1 & p2) | (~p1 & ~p2)``.

    These use both variables twice, so the elimination no longer carries the
    polynomial size guarantee; only used when the caller allows it.
    """
    p1, p2 = Var("p1"), Var("p2")
    expansion = Apply(OR, [Apply(AND, [p1, p2]),
                           Apply(AND, [Apply(NOT, [p1]), Apply(NOT, [p2])])])
    for j in (1, 2):
        step3[("iff", j)] = Representation(
            IFF, j, _to_target(expansion, j, G_plus, step3, same), G_plus)


def composed_table(F: Basis, G_plus: Basis, allow_exponential: bool = False
                   ) -> dict[tuple[str, int], Representation]:
    """PL[G+] representations of (f, i) for every non-nullary f in F outside G+.

    Each f is first represented over dM (where f is monotone in i) or extdM,
    then the De Morgan connectives are mapped into G+ along the path to p_i.
    With ``allow_exponential`` a locally monotone G+ still gets entries for
    non-monotone positions, at the price of using p_i more than once.
    """
    same = _by_table(G_plus)
    step3 = step3_table(G_plus)
    if ("iff", 1) not in step3 and allow_exponential:
        _iff_fallback(step3, G_plus, same)
    table: dict[tuple[str, int], Representation] = {}
    for f in F:
        if f.arity == 0 or f in G_plus.functions:
            continue
        direct = same.get((f.arity, f.bits))
        for i in range(1, f.arity + 1):
            if direct is not None:
                formula = Apply(direct, [Var(p) for p in pvars(f.arity)])
            else:
                formula = _to_target(_dm_representation(f, i), i, G_plus, step3, same)
            table[(f.name, i)] = Representation(f, i, formula, G_plus)
    return table


def check_hypothesis(F: Basis, G: Basis) -> None:
    if not F.locally_monotone and G.locally_monotone:
        bad = [f.name for f in F if not is_locally_monotone(f)]
        raise HypothesisViolated(
            f"{bad} not locally monotone while every function of {G.name!r} is; "
            "no polynomial translation is guaranteed")


def constant_formula(G: Basis, value: int, fresh: str) -> Formula:
    """A PL[G] formula for the constant ``value`` over at most the variable ``fresh``."""
    phi = synthesize(G, TOP if value else BOT)
    return substitute_map(phi, {"p1": Var(fresh)})


def translate_pipeline(phi: Formula, F: Basis, G: Basis, verify: str | None = None,
                       budget: int | None = None, allow_exponential: bool = False
                       ) -> tuple[Formula, TranslationReport]:
    """Translate ``phi`` from ML[F] into ML[G]; optionally verify equivalence
    over the frame class ``verify`` (``"K"``, ``"T"`` or ``"S5"``).

    Raises HypothesisViolated when F has a function that is not locally
    monotone and G has none, unless ``allow_exponential`` is set; the
    translation is then still correct but its size is not covered by the
    polynomial bound (``report.bound_guaranteed`` is False).
    """
    _check_functions(phi, frozenset(F) | frozenset(G), f"{F.name} or {G.name}")
    if not is_complete(G):
        raise NotExpressible(f"target basis {G.name!r} is not complete")
    G_plus = with_constants(G)
    same = _by_table(G_plus)
    top_g = same[(0, (1,))]
    bot_g = same[(0, (0,))]

    # nullary F functions are constants; move them to G+
    def lift(node):
        if isinstance(node, Apply) and node.fn.arity == 0 and node.fn not in G_plus.functions:
            return Apply(top_g if node.fn.bits[0] else bot_g)
        return None

    phi0 = _map_nodes(phi, lift)
    used = {n.fn for n in walk_unique(phi0) if isinstance(n, Apply)}
    F_used = Basis(F.name, tuple(f for f in F if f in used and f not in G_plus.functions))
    # the hypothesis only concerns the functions phi actually uses
    guaranteed = True
    try:
        check_hypothesis(F_used, G)
    except HypothesisViolated:
        if not allow_exponential:
            raise
        guaranteed = False
    table = composed_table(F_used, G_plus, allow_exponential=not guaranteed)
    r = rank(phi0, F_used, G_plus)
    psi = eliminate(phi0, F_used, G_plus, table)

    sizes = [rep.size for rep in table.values()]
    extras = [g for g in (top_g, bot_g) if g not in G.functions]
    z_introduced = False
    if extras:
        present = {n.fn for n in walk_unique(psi) if isinstance(n, Apply)}
        replace = {}
        z = fresh_name("z", variables(phi))
        for g in extras:
            if g in present:
                replace[g] = constant_formula(G, g.bits[0], z)
                sizes.append(replace[g].size)
        if replace:
            psi = _map_nodes(psi, lambda n: replace.get(n.fn) if isinstance(n, Apply) else None)
            z_introduced = z in variables(psi)
    c = max(sizes, default=1)
    n = phi.size
    report = TranslationReport(
        source_basis=F.name, target_basis=G.name, input=metrics(phi), output=metrics(psi),
        rank=r, kappa_constant=c, bound=kappa_bound(c, n), z_introduced=z_introduced,
        bound_guaranteed=guaranteed)
    if verify is not None:
        from .semantics import equivalent
        report.verified = equivalent(phi, psi, verify, budget=budget)
        report.frame_class = str(verify)
    return psi, report


def _map_nodes(phi: Formula, fn) -> Formula:
    """Bottom-up rewrite; ``fn(node)`` returns a replacement or None."""
    out: dict[int, Formula] = {}
    for node in walk_unique(phi):
        rebuilt = rebuild(node, [out[id(c)] for c in children(node)])
        repl = fn(rebuilt)
        out[id(node)] = rebuilt if repl is None else repl
    return out[id(phi)]
