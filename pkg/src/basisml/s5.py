"""Depth balancing over S5 and the bi-implication elimination built on it.

:func:`balance` rewrites an extdM formula of norm m into an S5-equivalent one
of depth at most ``8 * (1 + log2 m)``:

* norm 1: the formula is a chain of ``not``/``dia`` over an atom and collapses
  to at most three operators (:func:`reduce_prefix`);
* otherwise :func:`split` finds ``phi = alpha(beta)`` with ``beta = f(b1, b2)``
  and both sides about half the leaves, and the pieces are balanced
  recursively and recombined as ``(alpha(bot) & ~beta) | (alpha(top) & beta)``.
  When the hole sits under a ``dia``, ``alpha`` is cut at the lowest such
  ``dia`` first; in S5 the truth of ``dia(chi)`` is the same at every world of
  a cluster, which makes the cut sound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

from .boolfn import AND, BOT, IFF, NOT, OR, TOP
from .errors import BasisError, NoSplit
from .formula import (Apply, Diamond, Formula, Var, children, conj, dia, disj, fresh_name,
                      neg, rebuild, substitute_map, variables, walk_unique)

NEG, DIA = "not", "dia"
_ALIASES = {"not": NEG, "¬": NEG, "~": NEG, "dia": DIA, "◊": DIA, "<>": DIA}
_BINARY = (AND, OR, IFF)
_EXTDM = frozenset([NOT, AND, OR, IFF, TOP, BOT])


def depth_bound(m: int) -> float:
    """``8 * (1 + log2 m)``."""
    return 8 * (1 + math.log2(m))


@dataclass(frozen=True)
class SplitResult:
    context: Formula
    hole: str
    pivot: Formula
    norm: int

    @property
    def parts(self) -> tuple[Formula, Formula]:
        return self.pivot.args[0], self.pivot.args[1]

    def plug(self) -> Formula:
        return substitute_map(self.context, {self.hole: self.pivot})

    def bounds_hold(self) -> bool:
        """``||b1||, ||b2|| <= floor(m/2)``, ``||alpha|| <= ceil(m/2)`` and ``||beta|| > m/2``."""
        m = self.norm
        b1, b2 = self.parts
        return (2 * b1.norm <= m and 2 * b2.norm <= m
                and self.context.norm <= (m + 1) // 2 and 2 * self.pivot.norm > m)


def _check_extdm(phi: Formula) -> None:
    for node in walk_unique(phi):
        if isinstance(node, Apply) and node.fn not in _EXTDM:
            raise BasisError(f"{node.fn.name} is not in extdm")


def split(phi: Formula, hole: str | None = None) -> SplitResult:
    """Walk from the root towards a child holding more than half the leaves;
    the node where the walk stops is the pivot, its place in phi the hole."""
    m = phi.norm
    if m < 2:
        raise NoSplit("a formula with a single leaf has no binary connective to split at")
    hole = hole or fresh_name("x", variables(phi))
    path: list[tuple[Formula, int]] = []
    node = phi
    while True:
        kids = children(node)
        nxt = next((j for j, c in enumerate(kids) if 2 * c.norm > m), None)
        if nxt is None:
            break
        path.append((node, nxt))
        node = kids[nxt]
    if len(children(node)) != 2:
        raise NoSplit(f"walk stopped at a node of arity {len(children(node))}")
    context: Formula = Var(hole)
    for parent, j in reversed(path):
        kids = list(children(parent))
        kids[j] = context
        context = rebuild(parent, kids)
    return SplitResult(context, hole, node, m)


# --- prefixes ---------------------------------------------------------------

def _normalize_prefix(prefix: Sequence[str]) -> tuple[str, ...]:
    out = []
    for op in prefix:
        try:
            out.append(_ALIASES[op])
        except KeyError:
            raise ValueError(f"prefix operator must be not or dia, got {op!r}") from None
    return tuple(out)


def apply_prefix(prefix: Sequence[str], atom: Formula) -> Formula:
    phi = atom
    for op in reversed(_normalize_prefix(prefix)):
        phi = neg(phi) if op == NEG else dia(phi)
    return phi


def _shortlex(prefix: tuple[str, ...]):
    return len(prefix), tuple(0 if op == NEG else 1 for op in prefix)


@lru_cache(maxsize=None)
def prefix_table(max_len: int = 4) -> dict[tuple[str, ...], tuple[str, ...]]:
    """Map every prefix of length <= max_len to the shortlex-least S5-equivalent
    prefix (``not`` before ``dia``) of length <= 3, as certified by the decider."""
    from .semantics import equivalent

    p = Var("p")
    short = sorted((pre for n in range(4) for pre in product((NEG, DIA), repeat=n)),
                   key=_shortlex)
    table: dict[tuple[str, ...], tuple[str, ...]] = {}
    for n in range(max_len + 1):
        for pre in product((NEG, DIA), repeat=n):
            phi = apply_prefix(pre, p)
            for cand in short:
                if _shortlex(cand) > _shortlex(pre):
                    break
                if equivalent(apply_prefix(cand, p), phi, "S5"):
                    table[pre] = cand
                    break
            else:
                raise AssertionError(f"no short S5 equivalent for {pre}")
    return table


def reduce_prefix_ops(prefix: Sequence[str]) -> tuple[str, ...]:
    """Collapse a not/dia prefix to an S5-equivalent one of length <= 3,
    working from the operator nearest the atom outwards."""
    table = prefix_table()
    cur: tuple[str, ...] = ()
    for op in reversed(_normalize_prefix(prefix)):
        cur = table[(op,) + cur]
    return cur


def reduce_prefix(prefix: Sequence[str], atom: Formula) -> Formula:
    return apply_prefix(reduce_prefix_ops(prefix), atom)


def _as_prefix(phi: Formula) -> tuple[tuple[str, ...], Formula]:
    ops = []
    node = phi
    while not (isinstance(node, Var) or (isinstance(node, Apply) and node.fn.arity == 0)):
        if isinstance(node, Diamond):
            ops.append(DIA)
            node = node.arg
        elif node.fn == NOT:
            ops.append(NEG)
            node = node.args[0]
        else:
            raise AssertionError("a norm-1 extdm formula is a not/dia chain over an atom")
    return tuple(ops), node


# --- balancing --------------------------------------------------------------

def _pull_apart(alpha: Formula, hole: str, beta: Formula) -> Formula:
    """``(alpha(bot) & ~beta) | (alpha(top) & beta)``; just beta if alpha is the hole."""
    if isinstance(alpha, Var) and alpha.name == hole:
        return beta
    a_bot = substitute_map(alpha, {hole: Apply(BOT)})
    a_top = substitute_map(alpha, {hole: Apply(TOP)})
    return disj(conj(a_bot, neg(beta)), conj(a_top, beta))


def _cut_at_last_diamond(context: Formula, hole: str, y: str):
    """``alpha = alpha1(dia(alpha2(x)))`` with x not under a dia in alpha2.
    Returns None when no dia lies above the hole."""
    path = []
    node = context
    while not (isinstance(node, Var) and node.name == hole):
        kids = children(node)
        j = next(i for i, c in enumerate(kids) if hole in variables(c))
        path.append((node, j))
        node = kids[j]
    last = max((k for k, (n, _) in enumerate(path) if isinstance(n, Diamond)), default=None)
    if last is None:
        return None
    alpha2 = path[last][0].arg
    alpha1: Formula = Var(y)
    for parent, j in reversed(path[:last]):
        kids = list(children(parent))
        kids[j] = alpha1
        alpha1 = rebuild(parent, kids)
    return alpha1, alpha2


def balance(phi: Formula) -> Formula:
    """An S5-equivalent extdM formula of depth at most ``8 * (1 + log2 ||phi||)``."""
    _check_extdm(phi)
    return _balance(phi, {})


def _balance(phi: Formula, memo: dict) -> Formula:
    if phi in memo:
        return memo[phi]
    if phi.norm == 1:
        ops, atom = _as_prefix(phi)
        out = reduce_prefix(ops, atom)
    else:
        s = split(phi)
        b1, b2 = s.parts
        beta = Apply(s.pivot.fn, [_balance(b1, memo), _balance(b2, memo)])
        y = fresh_name("y", variables(phi) | {s.hole})
        cut = _cut_at_last_diamond(s.context, s.hole, y)
        if cut is None:
            out = _pull_apart(_balance(s.context, memo), s.hole, beta)
        else:
            alpha1, alpha2 = cut
            psi = _pull_apart(_balance(alpha2, memo), s.hole, beta)
            out = _pull_apart(_balance(alpha1, memo), y, dia(psi))
    memo[phi] = out
    return out


def eliminate_iff(phi: Formula) -> Formula:
    """Replace every ``iff(a, b)`` by ``(a & b) | (~a & ~b)``."""
    out: dict[int, Formula] = {}
    for node in walk_unique(phi):
        kids = [out[id(c)] for c in children(node)]
        if isinstance(node, Apply) and node.fn == IFF:
            a, b = kids
            out[id(node)] = disj(conj(a, b), conj(neg(a), neg(b)))
        else:
            out[id(node)] = rebuild(node, kids)
    return out[id(phi)]


def eliminate_iff_balanced(phi: Formula) -> Formula:
    """A dM formula, S5-equivalent to phi, of depth at most ``24 * (1 + log2 ||phi||)``."""
    return eliminate_iff(balance(phi))


def recursion_depth_bound(m: int) -> int:
    """Worst-case depth produced by :func:`balance` for norm m, following the
    split bounds ``||alpha|| <= ceil(m/2)`` and ``||b_i|| <= floor(m/2)``."""
    return _depth_rec(m)


@lru_cache(maxsize=None)
def _depth_rec(m: int) -> int:
    if m <= 1:
        return 3
    return max(6 + _depth_rec((m + 1) // 2), 8 + _depth_rec(m // 2))
