"""Syntax trees for PL[F] and ML[F].

A formula is a variable, an application ``f(a1, ..., ak)`` of a truth table,
or ``dia(a)``. Constants are applications of nullary tables. Nodes are
immutable and cache their size, norm (leaf count), depth and diamond count,
so metrics are O(1) and subtrees can be shared freely between formulae.

Text grammar::

    formula := var | name | name "(" formula ("," formula)* ")" | "dia" "(" formula ")"
    var     := [pqxyz][0-9]*
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .boolfn import AND, BOT, DM, IFF, NOT, OR, TOP, Basis, TruthTable
from .errors import ArityError, BasisError, FormulaSyntaxError, UnknownFunction

VAR_RE = re.compile(r"^[pqxyz][0-9]*$")


class Formula:
    __slots__ = ("size", "norm", "depth", "diamonds", "_hash")

    def __repr__(self):
        return render(self)

    __str__ = __repr__

    def __ne__(self, other):
        return not self == other


class Var(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        self.name = name
        self.size = self.norm = 1
        self.depth = self.diamonds = 0
        self._hash = hash(("var", name))

    def __eq__(self, other):
        return self is other or (isinstance(other, Var) and other.name == self.name)

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Var, (self.name,))


class Apply(Formula):
    __slots__ = ("fn", "args")

    def __init__(self, fn: TruthTable, args: Sequence[Formula] = ()):
        args = tuple(args)
        if len(args) != fn.arity:
            raise ArityError(f"{fn.name} expects {fn.arity} arguments, got {len(args)}")
        self.fn = fn
        self.args = args
        if args:
            self.size = 1 + sum(a.size for a in args)
            self.norm = sum(a.norm for a in args)
            self.depth = 1 + max(a.depth for a in args)
            self.diamonds = sum(a.diamonds for a in args)
        else:
            self.size = self.norm = 1
            self.depth = self.diamonds = 0
        self._hash = hash(("app", fn.name, fn.bits, tuple(a._hash for a in args)))

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Apply)
            and self._hash == other._hash
            and self.fn == other.fn
            and self.args == other.args
        )

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Apply, (self.fn, self.args))


class Diamond(Formula):
    __slots__ = ("arg",)

    def __init__(self, arg: Formula):
        self.arg = arg
        self.size = arg.size + 1
        self.norm = arg.norm
        self.depth = arg.depth + 1
        self.diamonds = arg.diamonds + 1
        self._hash = hash(("dia", arg._hash))

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Diamond) and self._hash == other._hash and self.arg == other.arg

    def __hash__(self):
        return self._hash

    def __reduce__(self):
        return (Diamond, (self.arg,))


def is_leaf(phi: Formula) -> bool:
    return isinstance(phi, Var) or (isinstance(phi, Apply) and not phi.args)


def children(phi: Formula) -> tuple[Formula, ...]:
    if isinstance(phi, Apply):
        return phi.args
    if isinstance(phi, Diamond):
        return (phi.arg,)
    return ()


def rebuild(phi: Formula, new_children: Sequence[Formula]) -> Formula:
    if isinstance(phi, Apply):
        if all(a is b for a, b in zip(phi.args, new_children)):
            return phi
        return Apply(phi.fn, new_children)
    if isinstance(phi, Diamond):
        (arg,) = new_children
        return phi if arg is phi.arg else Diamond(arg)
    return phi


# constructors for the built-in connectives

def var(name: str) -> Var:
    return Var(name)


def top() -> Apply:
    return Apply(TOP)


def bot() -> Apply:
    return Apply(BOT)


def neg(a: Formula) -> Apply:
    return Apply(NOT, (a,))


def conj(a: Formula, b: Formula) -> Apply:
    return Apply(AND, (a, b))


def disj(a: Formula, b: Formula) -> Apply:
    return Apply(OR, (a, b))


def equiv(a: Formula, b: Formula) -> Apply:
    return Apply(IFF, (a, b))


def dia(a: Formula) -> Diamond:
    return Diamond(a)


@dataclass(frozen=True)
class Metrics:
    size: int
    norm: int
    depth: int
    diamond_count: int

    def as_dict(self) -> dict:
        return {"size": self.size, "norm": self.norm, "depth": self.depth,
                "diamond_count": self.diamond_count}


def metrics(phi: Formula) -> Metrics:
    return Metrics(phi.size, phi.norm, phi.depth, phi.diamonds)


def walk_unique(phi: Formula):
    """Yield every distinct node object once, children before parents."""
    seen = set()
    stack = [(phi, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if expanded or is_leaf(node):
            seen.add(id(node))
            yield node
            continue
        stack.append((node, True))
        for c in reversed(children(node)):
            if id(c) not in seen:
                stack.append((c, False))


def variables(phi: Formula) -> set[str]:
    return {n.name for n in walk_unique(phi) if isinstance(n, Var)}


def functions(phi: Formula) -> set[TruthTable]:
    return {n.fn for n in walk_unique(phi) if isinstance(n, Apply)}


def occurrences(phi: Formula, name: str) -> int:
    """How often variable ``name`` occurs in the (unshared) syntax tree."""
    count: dict[int, int] = {}
    for n in walk_unique(phi):
        if isinstance(n, Var):
            count[id(n)] = 1 if n.name == name else 0
        else:
            count[id(n)] = sum(count[id(c)] for c in children(n))
    return count[id(phi)]


def subformulas(phi: Formula) -> set[Formula]:
    return set(walk_unique(phi))


def uses_only(phi: Formula, allowed: Iterable[TruthTable]) -> bool:
    allowed = set(allowed)
    return all(f in allowed for f in functions(phi))


def fresh_name(prefix: str, used: Iterable[str], bare: bool = True) -> str:
    """``prefix`` itself if allowed and unused, else ``prefix`` + smallest unused index."""
    used = set(used)
    if bare and prefix not in used:
        return prefix
    i = 1
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def fresh_names(prefix: str, used: Iterable[str], count: int) -> list[str]:
    used = set(used)
    out = []
    i = 1
    while len(out) < count:
        name = f"{prefix}{i}"
        if name not in used:
            out.append(name)
        i += 1
    return out


def substitute_map(gamma: Formula, mapping: Mapping[str, Formula]) -> Formula:
    """Simultaneously replace variables by formulae; replacement subtrees are shared."""
    memo: dict[int, Formula] = {}
    for n in walk_unique(gamma):
        if isinstance(n, Var):
            memo[id(n)] = mapping.get(n.name, n)
        else:
            memo[id(n)] = rebuild(n, [memo[id(c)] for c in children(n)])
    return memo[id(gamma)]


def substitute(gamma: Formula, names: Sequence[str], args: Sequence[Formula]) -> Formula:
    """``gamma<args>``: simultaneous substitution of ``args[j]`` for ``names[j]``."""
    if len(names) != len(args):
        raise ValueError(f"{len(names)} variables but {len(args)} arguments")
    if len(set(names)) != len(names):
        raise ValueError("substituted variables must be distinct")
    return substitute_map(gamma, dict(zip(names, args)))


def linearize(phi: Formula, name: str, prefix: str = "q",
              used: Iterable[str] = ()) -> tuple[Formula, list[str]]:
    """Give every occurrence of variable ``name`` its own fresh variable,
    numbered left to right. Returns the new formula and the fresh names."""
    taken = set(used) | variables(phi)
    fresh: list[str] = []

    def go(node):
        if isinstance(node, Var):
            if node.name != name:
                return node
            new = fresh_name(prefix, taken, bare=False)
            taken.add(new)
            fresh.append(new)
            return Var(new)
        kids = children(node)
        if not kids:
            return node
        return rebuild(node, [go(c) for c in kids])

    return go(phi), fresh


# text form

_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_]*)|(\()|(\))|(,))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        tokens.append((m.group(m.lastindex), start))
        pos = m.end()
    tokens.append(("", len(text)))
    return tokens


def parse(text: str, ambient: Basis = DM) -> Formula:
    """Parse the prefix syntax; function names resolve against ``ambient``."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos]

    def take(expected=None):
        nonlocal pos
        tok, at = tokens[pos]
        if expected is not None and tok != expected:
            shown = repr(tok) if tok else "end of input"
            raise FormulaSyntaxError(f"expected {expected!r}, found {shown}", at)
        pos += 1
        return tok, at

    def formula():
        tok, at = take()
        if not tok or tok in "(),":
            shown = repr(tok) if tok else "end of input"
            raise FormulaSyntaxError(f"expected a formula, found {shown}", at)
        if peek()[0] == "(":
            take("(")
            args = []
            if peek()[0] != ")":
                args.append(formula())
                while peek()[0] == ",":
                    take(",")
                    args.append(formula())
            take(")")
            if tok == "dia":
                if len(args) != 1:
                    raise ArityError(f"dia expects 1 argument, got {len(args)} (at position {at})")
                return Diamond(args[0])
            fn = ambient.get(tok)
            if fn is None:
                raise UnknownFunction(f"unknown function {tok!r} at position {at}")
            if fn.arity != len(args):
                raise ArityError(
                    f"{tok} expects {fn.arity} arguments, got {len(args)} (at position {at})")
            return Apply(fn, args)
        fn = ambient.get(tok)
        if fn is not None:
            if fn.arity != 0:
                raise ArityError(f"{tok} expects {fn.arity} arguments, got 0 (at position {at})")
            return Apply(fn)
        if VAR_RE.match(tok):
            return Var(tok)
        raise UnknownFunction(f"unknown function or invalid variable {tok!r} at position {at}")

    result = formula()
    tok, at = peek()
    if tok:
        raise FormulaSyntaxError(f"trailing input {tok!r}", at)
    return result


def render(phi: Formula) -> str:
    parts: list[str] = []

    def go(node):
        if isinstance(node, Var):
            parts.append(node.name)
        elif isinstance(node, Diamond):
            parts.append("dia(")
            go(node.arg)
            parts.append(")")
        elif not node.args:
            parts.append(node.fn.name)
        else:
            parts.append(node.fn.name)
            parts.append("(")
            for j, a in enumerate(node.args):
                if j:
                    parts.append(", ")
                go(a)
            parts.append(")")

    go(phi)
    return "".join(parts)


def eo_sets(psi: Formula) -> tuple[frozenset, frozenset]:
    """Formulae ``lam`` with ``dia(lam)`` at even (E) / odd (O) negation depth in
    the Boolean combination ``psi``; ``psi`` must be over the De Morgan basis."""
    dm = set(DM)
    for f in functions(psi):
        if f not in dm:
            raise BasisError(f"eo_sets needs a De Morgan formula, found {f.name!r}")

    def go(node):
        if isinstance(node, Var) or (isinstance(node, Apply) and not node.args):
            return frozenset(), frozenset()
        if isinstance(node, Diamond):
            return frozenset([node.arg]), frozenset()
        if node.fn == NOT:
            e, o = go(node.args[0])
            return o, e
        (e1, o1), (e2, o2) = go(node.args[0]), go(node.args[1])
        return e1 | e2, o1 | o2

    return go(psi)


def apply_mask(fn: TruthTable, arg_masks: Sequence[int], full: int) -> int:
    """Bit-parallel application of ``fn`` to argument masks over the same rows."""
    out = 0
    for r, bit in enumerate(fn.bits):
        if not bit:
            continue
        m = full
        for j, am in enumerate(arg_masks):
            m &= am if (r >> (fn.arity - 1 - j)) & 1 else ~am
        out |= m
    return out & full


def var_mask(position: int, count: int) -> int:
    """Mask of the assignments (rows over ``count`` variables, first most
    significant) in which variable ``position`` (0-based) is true."""
    shift = count - 1 - position
    m = 0
    for r in range(1 << count):
        if (r >> shift) & 1:
            m |= 1 << r
    return m


def table_mask(phi: Formula, names: Sequence[str]) -> int:
    """Truth table of a modal-free formula over the variables ``names`` as a row mask."""
    n = len(names)
    full = (1 << (1 << n)) - 1
    index = {v: j for j, v in enumerate(names)}
    memo: dict[int, int] = {}
    for node in walk_unique(phi):
        if isinstance(node, Var):
            if node.name not in index:
                raise ValueError(f"variable {node.name!r} not among {list(names)}")
            memo[id(node)] = var_mask(index[node.name], n)
        elif isinstance(node, Diamond):
            raise ValueError("table_mask needs a formula without dia")
        else:
            memo[id(node)] = apply_mask(node.fn, [memo[id(a)] for a in node.args], full)
    return memo[id(phi)]


def truth_table(phi: Formula, names: Sequence[str], name: str = "f") -> TruthTable:
    m = table_mask(phi, names)
    return TruthTable(name, len(names), tuple((m >> r) & 1 for r in range(1 << len(names))))


def evaluate_prop(phi: Formula, env: Mapping[str, int]) -> int:
    """Value of a modal-free formula under an interpretation (missing variables are 0)."""
    memo: dict[int, int] = {}
    for node in walk_unique(phi):
        if isinstance(node, Var):
            memo[id(node)] = 1 if env.get(node.name, 0) else 0
        elif isinstance(node, Diamond):
            raise ValueError("evaluate_prop needs a formula without dia")
        else:
            memo[id(node)] = node.fn.bits[_row(memo[id(a)] for a in node.args)]
    return memo[id(phi)]


def _row(values) -> int:
    r = 0
    for v in values:
        r = (r << 1) | v
    return r
