"""Kripke semantics: pointed models, model checking, satisfiability and
equivalence deciders for the frame classes K, T and S5, and the lower-bound
experiment around the family phi_n.

Deciders
--------
K
    Models of the propositional skeleton (variables and top-level ``dia``
    subformulae as atoms) are enumerated with a SAT solver. For each model,
    every true ``dia(l)`` needs a successor satisfying ``l`` together with the
    negation of every false ``dia(m)``; these successor problems are solved
    recursively (and memoized). A failed successor blocks the responsible
    choice with the clause ``~dia(l) | dia(m1) | ... | dia(mk)``.
T
    ``phi`` is T-satisfiable iff ``tau(phi)`` is K-satisfiable, where ``tau``
    rewrites ``dia(l)`` to ``or(tau(l), dia(tau(l)))``. The reflexive closure of
    a K-model of ``tau(phi)`` is a T-model of ``phi``.
S5
    A single cluster of ``m + 1`` worlds suffices, ``m`` the number of distinct
    ``dia`` subformulae; it is encoded directly into SAT.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from pysat.solvers import Solver

from .boolfn import AND, BOT, DM, IFF, NOT, OR, TOP, TruthTable
from .errors import BasisError, BudgetExceeded, ModelError
from .formula import (Apply, Diamond, Formula, Var, apply_mask, children, conj, dia,
                      eo_sets, equiv, neg, rebuild, var, variables, walk_unique)

DEFAULT_BUDGET = 10 ** 6
SAT_BACKEND = "cd19"


class FrameClass(str, enum.Enum):
    K = "K"
    T = "T"
    S5 = "S5"

    @classmethod
    def parse(cls, value) -> "FrameClass":
        if isinstance(value, FrameClass):
            return value
        try:
            return cls(str(value).upper())
        except ValueError:
            raise ValueError(f"unknown frame class {value!r}; expected K, T or S5") from None

    def __str__(self):
        return self.value


# --- models -----------------------------------------------------------------

@dataclass(frozen=True)
class KripkeModel:
    """Pointed Kripke structure over worlds ``0..worlds-1``."""

    worlds: int
    relation: frozenset
    valuation: Mapping[str, frozenset]
    initial: int = 0
    frame: FrameClass = FrameClass.K
    succ: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relation", frozenset(self.relation))
        object.__setattr__(self, "valuation",
                           {k: frozenset(v) for k, v in sorted(self.valuation.items())})
        object.__setattr__(self, "frame", FrameClass.parse(self.frame))
        if self.worlds < 1:
            raise ModelError("a model needs at least one world")
        if not 0 <= self.initial < self.worlds:
            raise ModelError(f"initial world {self.initial} out of range")
        for u, v in self.relation:
            if not (0 <= u < self.worlds and 0 <= v < self.worlds):
                raise ModelError(f"edge ({u}, {v}) out of range")
        for p, ws in self.valuation.items():
            if any(not 0 <= w < self.worlds for w in ws):
                raise ModelError(f"valuation of {p} mentions an unknown world")
        succ = [0] * self.worlds
        for u, v in self.relation:
            succ[u] |= 1 << v
        object.__setattr__(self, "succ", tuple(succ))
        problem = frame_violation(self.worlds, self.relation, self.frame)
        if problem:
            raise ModelError(f"not a {self.frame} model: {problem}")

    def successors(self, w: int) -> list[int]:
        return [v for v in range(self.worlds) if (self.succ[w] >> v) & 1]

    def with_initial(self, w: int) -> "KripkeModel":
        return KripkeModel(self.worlds, self.relation, self.valuation, w, self.frame)

    def as_text(self) -> str:
        lines = [f"worlds {self.worlds}", f"init {self.initial}", f"frame {self.frame}"]
        lines += [f"edge {u} {v}" for u, v in sorted(self.relation)]
        for p, ws in self.valuation.items():
            lines.append(f"val {p}: " + " ".join(map(str, sorted(ws))))
        return "\n".join(lines) + "\n"


def frame_violation(n: int, relation: Iterable, frame) -> str | None:
    frame = FrameClass.parse(frame)
    rel = set(relation)
    if frame in (FrameClass.T, FrameClass.S5):
        missing = [w for w in range(n) if (w, w) not in rel]
        if missing:
            return f"world {missing[0]} lacks a self-loop"
    if frame is FrameClass.S5:
        for u, v in rel:
            if (v, u) not in rel:
                return f"edge ({u}, {v}) has no reverse"
        for u, v in rel:
            for v2, w in rel:
                if v == v2 and (u, w) not in rel:
                    return f"edges ({u}, {v}), ({v}, {w}) are not closed transitively"
    return None


def close_relation(n: int, relation: Iterable, frame) -> frozenset:
    """Smallest reflexive (T) or equivalence (S5) relation containing ``relation``."""
    frame = FrameClass.parse(frame)
    rel = set(relation)
    if frame is FrameClass.K:
        return frozenset(rel)
    rel |= {(w, w) for w in range(n)}
    if frame is FrameClass.S5:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in rel:
            parent[find(u)] = find(v)
        blocks: dict[int, list[int]] = {}
        for w in range(n):
            blocks.setdefault(find(w), []).append(w)
        rel = {(u, v) for b in blocks.values() for u in b for v in b}
    return frozenset(rel)


def parse_model(text: str, close_frame: bool = False) -> KripkeModel:
    """Read the line format ``worlds N`` / ``init I`` / ``frame K|T|S5`` /
    ``edge U V`` / ``val pJ: W1 W2 ...``; ``#`` starts a comment."""
    n = None
    init = 0
    frame = FrameClass.K
    edges = []
    val: dict[str, set] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        try:
            if head == "worlds":
                n = int(rest)
            elif head == "init":
                init = int(rest)
            elif head == "frame":
                frame = FrameClass.parse(rest.strip())
            elif head == "edge":
                u, v = rest.split()
                edges.append((int(u), int(v)))
            elif head == "val":
                name, _, ws = rest.partition(":")
                name = name.strip()
                if not name:
                    raise ValueError("missing variable name")
                val.setdefault(name, set()).update(int(w) for w in ws.split())
            else:
                raise ValueError(f"unknown directive {head!r}")
        except ValueError as exc:
            raise ModelError(f"line {lineno}: {exc}") from None
    if n is None:
        raise ModelError("missing 'worlds N' line")
    relation = close_relation(n, edges, frame) if close_frame else frozenset(edges)
    return KripkeModel(n, relation, val, init, frame)


def load_model(path: str | Path, close_frame: bool = False) -> KripkeModel:
    return parse_model(Path(path).read_text(), close_frame=close_frame)


# --- model checking ---------------------------------------------------------

def extension(S: KripkeModel, phi: Formula) -> int:
    """Bit mask of the worlds where phi holds."""
    full = (1 << S.worlds) - 1
    pred = [0] * S.worlds
    for u, v in S.relation:
        pred[v] |= 1 << u
    memo: dict[int, int] = {}
    for node in walk_unique(phi):
        if isinstance(node, Var):
            m = 0
            for w in S.valuation.get(node.name, ()):
                m |= 1 << w
            memo[id(node)] = m
        elif isinstance(node, Diamond):
            child = memo[id(node.arg)]
            m = 0
            v = 0
            while child:
                if child & 1:
                    m |= pred[v]
                child >>= 1
                v += 1
            memo[id(node)] = m
        else:
            if not isinstance(node.fn, TruthTable):
                raise BasisError(f"unknown function {node.fn!r}")
            memo[id(node)] = apply_mask(node.fn, [memo[id(a)] for a in node.args], full)
    return memo[id(phi)]


def model_check(S: KripkeModel, w: int | None, phi: Formula) -> bool:
    """``S, w |= phi`` (``w`` defaults to the initial world)."""
    if w is None:
        w = S.initial
    if not 0 <= w < S.worlds:
        raise ModelError(f"world {w} out of range")
    return bool((extension(S, phi) >> w) & 1)


# --- SAT plumbing -----------------------------------------------------------

class _Cnf:
    """Tseitin encoding of formulae; ``atom(node)`` decides which nodes are free."""

    def __init__(self):
        self.ids: dict = {}
        self.clauses: list[list[int]] = []

    def new(self, key) -> int:
        v = self.ids.get(key)
        if v is None:
            v = len(self.ids) + 1
            self.ids[key] = v
        return v

    def gate(self, out: int, fn: TruthTable, ins: list[int]) -> None:
        k = fn.arity
        if k == 0:
            self.clauses.append([out if fn.bits[0] else -out])
            return
        # collapse to the rows that differ when the table is constant
        if all(b == fn.bits[0] for b in fn.bits):
            self.clauses.append([out if fn.bits[0] else -out])
            return
        for r, bit in enumerate(fn.bits):
            clause = []
            for j, x in enumerate(ins):
                clause.append(-x if (r >> (k - 1 - j)) & 1 else x)
            clause.append(out if bit else -out)
            self.clauses.append(clause)


def _encode_skeleton(cnf: _Cnf, roots: Iterable[Formula], world=None):
    """Encode Apply nodes reachable from ``roots`` without passing a diamond.
    Returns (variables, diamonds) met as atoms, each keyed by formula."""
    seen: dict[Formula, int] = {}
    atoms_v: dict[str, int] = {}
    atoms_d: dict[Formula, int] = {}
    stack = list(roots)
    order = []
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        if isinstance(node, Var):
            seen[node] = atoms_v.setdefault(node.name, cnf.new(("v", node.name, world)))
        elif isinstance(node, Diamond):
            seen[node] = atoms_d.setdefault(node, cnf.new(("d", node)))
        else:
            seen[node] = cnf.new(("n", node, world))
            order.append(node)
            stack.extend(node.args)
    for node in order:
        cnf.gate(seen[node], node.fn, [seen[a] for a in node.args])
    return seen, atoms_v, atoms_d


@dataclass
class _Tree:
    true_vars: frozenset
    kids: tuple


class _KDecider:
    def __init__(self, budget: int):
        self.budget = budget
        self.work = 0
        self.memo: dict[frozenset, _Tree | None] = {}

    def charge(self, amount=1):
        self.work += amount
        if self.work > self.budget:
            raise BudgetExceeded(f"decider budget of {self.budget} exhausted")

    def sat(self, lits: frozenset) -> _Tree | None:
        if lits in self.memo:
            return self.memo[lits]
        self.charge()
        cnf = _Cnf()
        seen, atoms_v, atoms_d = _encode_skeleton(cnf, [f for f, _ in lits])
        assumptions = [seen[f] if pos else -seen[f] for f, pos in lits]
        result = None
        with Solver(name=SAT_BACKEND, bootstrap_with=cnf.clauses) as solver:
            while solver.solve(assumptions=assumptions):
                self.charge()
                model = set(l for l in solver.get_model() if l > 0)
                pos = [d for d, v in atoms_d.items() if v in model]
                negs = [d for d, v in atoms_d.items() if v not in model]
                kids = []
                for d in pos:
                    child = frozenset([(d.arg, True)] + [(m.arg, False) for m in negs])
                    t = self.sat(child)
                    if t is None:
                        solver.add_clause([-atoms_d[d]] + [atoms_d[m] for m in negs])
                        kids = None
                        break
                    kids.append(t)
                if kids is not None:
                    true_vars = frozenset(n for n, v in atoms_v.items() if v in model)
                    result = _Tree(true_vars, tuple(kids))
                    break
        self.memo[lits] = result
        return result


def _tree_model(tree: _Tree, frame: FrameClass) -> KripkeModel:
    edges = []
    val: dict[str, set] = {}
    order = [tree]
    index = {id(tree): 0}
    i = 0
    while i < len(order):
        t = order[i]
        for p in t.true_vars:
            val.setdefault(p, set()).add(i)
        for k in t.kids:
            if id(k) not in index:
                index[id(k)] = len(order)
                order.append(k)
            edges.append((i, index[id(k)]))
        i += 1
    n = len(order)
    relation = close_relation(n, edges, frame)
    return KripkeModel(n, relation, val, 0, frame)


def _tau(phi: Formula) -> Formula:
    """dia(l) -> or(l', dia(l')) throughout, sharing rewritten subtrees."""
    memo: dict[int, Formula] = {}
    for node in walk_unique(phi):
        kids = [memo[id(c)] for c in children(node)]
        if isinstance(node, Diamond):
            memo[id(node)] = Apply(OR, [kids[0], Diamond(kids[0])])
        else:
            memo[id(node)] = rebuild(node, kids)
    return memo[id(phi)]


def _diamonds(roots: Iterable[Formula]) -> list[Formula]:
    found = []
    seen = set()
    for r in roots:
        for node in walk_unique(r):
            if isinstance(node, Diamond) and node not in seen:
                seen.add(node)
                found.append(node)
    return found


def _s5_sat(lits: frozenset, budget: int) -> KripkeModel | None:
    roots = [f for f, _ in lits]
    dias = _diamonds(roots)
    m = len(dias)
    worlds = m + 1
    cnf = _Cnf()
    dvar = {d: cnf.new(("d", d)) for d in dias}
    nodes = []
    seen = set()
    for r in roots:
        for node in walk_unique(r):
            if node not in seen:
                seen.add(node)
                nodes.append(node)
    if len(nodes) * worlds > budget:
        raise BudgetExceeded(f"S5 encoding needs {len(nodes) * worlds} variables, "
                             f"budget is {budget}")

    def lit(node, w):
        if isinstance(node, Diamond):
            return dvar[node]
        if isinstance(node, Var):
            return cnf.new(("v", node.name, w))
        return cnf.new(("n", node, w))

    for w in range(worlds):
        for node in nodes:
            if isinstance(node, Apply):
                cnf.gate(lit(node, w), node.fn, [lit(a, w) for a in node.args])
    for d in dias:
        at = [lit(d.arg, w) for w in range(worlds)]
        cnf.clauses.append([-dvar[d]] + at)
        for x in at:
            cnf.clauses.append([-x, dvar[d]])
    for f, pos in lits:
        cnf.clauses.append([lit(f, 0) if pos else -lit(f, 0)])
    names = sorted({n.name for r in roots for n in walk_unique(r) if isinstance(n, Var)})
    with Solver(name=SAT_BACKEND, bootstrap_with=cnf.clauses) as solver:
        if not solver.solve():
            return None
        model = set(l for l in solver.get_model() if l > 0)
    val = {p: {w for w in range(worlds) if cnf.ids.get(("v", p, w)) in model} for p in names}
    relation = {(u, v) for u in range(worlds) for v in range(worlds)}
    return KripkeModel(worlds, relation, val, 0, FrameClass.S5)


def satisfiable_literals(lits: Iterable[tuple[Formula, bool]], frame,
                         budget: int | None = None) -> KripkeModel | None:
    """A model of the conjunction of signed formulae, or None if there is none."""
    frame = FrameClass.parse(frame)
    budget = DEFAULT_BUDGET if budget is None else budget
    lits = frozenset(lits)
    if frame is FrameClass.S5:
        return _s5_sat(lits, budget)
    if frame is FrameClass.T:
        lits = frozenset((_tau(f), pos) for f, pos in lits)
    tree = _KDecider(budget).sat(lits)
    return None if tree is None else _tree_model(tree, frame)


def satisfiable(phi: Formula, frame, budget: int | None = None) -> KripkeModel | None:
    return satisfiable_literals([(phi, True)], frame, budget)


def valid(phi: Formula, frame, budget: int | None = None) -> bool:
    return satisfiable_literals([(phi, False)], frame, budget) is None


def equivalent(phi: Formula, psi: Formula, frame, budget: int | None = None) -> bool:
    """Entailment both ways: neither ``phi & ~psi`` nor ``psi & ~phi`` is satisfiable."""
    if phi == psi:
        return True
    return (satisfiable_literals([(phi, True), (psi, False)], frame, budget) is None
            and satisfiable_literals([(phi, False), (psi, True)], frame, budget) is None)


def counter_model(phi: Formula, psi: Formula, frame,
                  budget: int | None = None) -> KripkeModel | None:
    """A pointed model distinguishing phi and psi, if one exists."""
    return (satisfiable_literals([(phi, True), (psi, False)], frame, budget)
            or satisfiable_literals([(phi, False), (psi, True)], frame, budget))


# --- the formula family phi_n and the lower-bound experiment ----------------

def phi_n(n: int) -> Formula:
    """``phi_0 = p0 & dia(~p0)``, ``phi_{n+1} = p_{(n+1) mod 2} & (p <-> dia(phi_n))``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    phi = conj(var("p0"), dia(neg(var("p0"))))
    for k in range(1, n + 1):
        phi = conj(var(f"p{k % 2}"), equiv(var("p"), dia(phi)))
    return phi


def fig4_model() -> KripkeModel:
    """The reflexive structure S0: kappa (0) -> v (1), iota (2) isolated;
    p0 holds at kappa and iota; every world has a self-loop."""
    return KripkeModel(3, {(0, 0), (1, 1), (2, 2), (0, 1)}, {"p0": {0, 2}}, 0, FrameClass.T)


KAPPA, V_WORLD, IOTA = 0, 1, 2


def diamond_count(phi: Formula) -> int:
    return phi.diamonds


def eo_transfer_check(S: KripkeModel, sw: int, T: KripkeModel, tw: int,
                      psi: Formula) -> bool:
    """False exactly when the three transfer premises hold at (S, sw), (T, tw)
    and yet ``S, sw |= psi`` while ``T, tw`` does not satisfy psi."""
    E, O = eo_sets(psi)
    for p in variables(psi):
        if model_check(S, sw, var(p)) != model_check(T, tw, var(p)):
            return True
    for lam in E:
        if model_check(S, sw, dia(lam)) and not model_check(T, tw, dia(lam)):
            return True
    for lam in O:
        if model_check(T, tw, dia(lam)) and not model_check(S, sw, dia(lam)):
            return True
    return not model_check(S, sw, psi) or model_check(T, tw, psi)


def type_model(names: list[str], frame) -> KripkeModel:
    """A model realizing every modal-depth-1 type over ``names``.

    A world of type (v, S) has valuation v and sees exactly worlds with the
    valuations in S. Two formulae of modal depth at most 1 are equivalent over
    the class iff they hold at the same worlds of this model.
    """
    frame = FrameClass.parse(frame)
    k = len(names)
    vals = list(range(1 << k))
    worlds_val: list[int] = []
    edges: set = set()
    if frame is FrameClass.S5:
        for S in range(1, 1 << len(vals)):
            members = [v for v in vals if (S >> v) & 1]
            base = len(worlds_val)
            worlds_val.extend(members)
            ids = range(base, base + len(members))
            edges |= {(a, b) for a in ids for b in ids}
    else:
        leaves = {}
        for v in vals:
            leaves[v] = len(worlds_val)
            worlds_val.append(v)
            if frame is FrameClass.T:
                edges.add((leaves[v], leaves[v]))
        for v in vals:
            for S in range(1 << len(vals)):
                if frame is FrameClass.T and not (S >> v) & 1:
                    continue
                w = len(worlds_val)
                worlds_val.append(v)
                if frame is FrameClass.T:
                    edges.add((w, w))
                edges |= {(w, leaves[u]) for u in vals if (S >> u) & 1}
    val = {p: {w for w, v in enumerate(worlds_val) if (v >> (k - 1 - j)) & 1}
           for j, p in enumerate(names)}
    return KripkeModel(len(worlds_val), edges, val, 0, frame)


def random_models(names: list[str], frame, count: int, seed: int = 0,
                  max_worlds: int = 6) -> list[KripkeModel]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_worlds)
        edges = {(u, v) for u in range(n) for v in range(n) if rng.random() < 0.35}
        val = {p: {w for w in range(n) if rng.random() < 0.5} for p in names}
        out.append(KripkeModel(n, close_relation(n, edges, frame), val, 0, frame))
    return out


@dataclass
class SearchResult:
    found: Formula | None
    candidates: int
    classes: int
    exact_fingerprints: bool

    @property
    def verdict(self) -> str:
        return "found" if self.found is not None else "none found"


def modal_depth(phi: Formula) -> int:
    return _modal_depth(phi)


def _modal_depth(phi: Formula) -> int:
    memo: dict[int, int] = {}
    for node in walk_unique(phi):
        kids = [memo[id(c)] for c in children(node)]
        memo[id(node)] = max(kids, default=0) + (1 if isinstance(node, Diamond) else 0)
    return memo[id(phi)]


def min_diamond_search(target: Formula, frame, max_diamonds: int, max_size: int,
                       budget: int | None = None, names: list[str] | None = None
                       ) -> SearchResult:
    """Search dM formulae over the variables of ``target`` with at most
    ``max_diamonds`` diamonds and size at most ``max_size`` for one that is
    equivalent to ``target`` over ``frame``.

    Candidates are built bottom-up by size; and/or arguments are ordered
    canonically. A candidate is discarded when an equivalent candidate with no
    more diamonds was kept earlier (equivalence is a congruence, so nothing
    reachable is lost). Equivalence classes are keyed by the candidate's
    extension in :func:`type_model`, which is exact while every candidate has
    modal depth at most 1 (``max_diamonds <= 1``); beyond that, fingerprint
    collisions are settled by the decider.
    """
    frame = FrameClass.parse(frame)
    budget = DEFAULT_BUDGET if budget is None else budget
    names = sorted(variables(target)) if names is None else list(names)
    exact = max_diamonds <= 1 and len(names) <= 3
    if len(names) <= 3:
        model = type_model(names, frame)
    else:
        model = _union_models(random_models(names, frame, 40, seed=1))
    full = (1 << model.worlds) - 1
    pred = [0] * model.worlds
    for u, v in model.relation:
        pred[v] |= 1 << u

    def dia_mask(child):
        m = 0
        v = 0
        while child:
            if child & 1:
                m |= pred[v]
            child >>= 1
            v += 1
        return m

    target_fp = extension(model, target)
    # kept[i] = (formula, size, diamonds, fingerprint)
    kept: list[tuple[Formula, int, int, int]] = []
    by_fp: dict[int, list[int]] = {}
    by_size: dict[int, list[int]] = {}
    count = 0

    def offer(phi: Formula, size: int, d: int, fp: int) -> Formula | None:
        nonlocal count
        count += 1
        if count > budget:
            raise BudgetExceeded(f"search budget of {budget} candidates exhausted")
        for j in by_fp.get(fp, ()):
            other = kept[j]
            if other[2] <= d and (exact or equivalent(other[0], phi, frame)):
                return None
        idx = len(kept)
        kept.append((phi, size, d, fp))
        by_fp.setdefault(fp, []).append(idx)
        by_size.setdefault(size, []).append(idx)
        if fp == target_fp and equivalent(phi, target, frame):
            return phi
        return None

    leaves = [Var(p) for p in names] + [Apply(TOP), Apply(BOT)]
    for leaf in leaves:
        hit = offer(leaf, 1, 0, extension(model, leaf))
        if hit is not None:
            return SearchResult(hit, count, len(kept), exact)
    for size in range(2, max_size + 1):
        for i in list(by_size.get(size - 1, ())):
            phi, _, d, fp = kept[i]
            hit = offer(neg(phi), size, d, full & ~fp)
            if hit is not None:
                return SearchResult(hit, count, len(kept), exact)
            if d < max_diamonds:
                hit = offer(dia(phi), size, d + 1, dia_mask(fp))
                if hit is not None:
                    return SearchResult(hit, count, len(kept), exact)
        for left_size in range(1, size - 1):
            right_size = size - 1 - left_size
            if left_size > right_size:
                break
            lefts = list(by_size.get(left_size, ()))
            rights = list(by_size.get(right_size, ()))
            for a in lefts:
                fa, _, da, pa = kept[a]
                for b in rights:
                    if left_size == right_size and b < a:
                        continue
                    fb, _, db, pb = kept[b]
                    if da + db > max_diamonds:
                        continue
                    for fn, mask in ((AND, pa & pb), (OR, pa | pb)):
                        hit = offer(Apply(fn, [fa, fb]), size, da + db, mask)
                        if hit is not None:
                            return SearchResult(hit, count, len(kept), exact)
    return SearchResult(None, count, len(kept), exact)


def _union_models(models: list[KripkeModel]) -> KripkeModel:
    edges = set()
    val: dict[str, set] = {}
    base = 0
    frame = models[0].frame
    for M in models:
        edges |= {(u + base, v + base) for u, v in M.relation}
        for p, ws in M.valuation.items():
            val.setdefault(p, set()).update(w + base for w in ws)
        base += M.worlds
    return KripkeModel(base, edges, val, 0, frame)
