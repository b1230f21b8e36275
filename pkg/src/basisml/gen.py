"""Seeded random formulae and Kripke models for tests, demos and sweeps."""

from __future__ import annotations

import random
from typing import Sequence

from .boolfn import Basis
from .formula import Apply, Diamond, Formula, Var
from .semantics import FrameClass, KripkeModel, close_relation


def _split(total: int, parts: int, rng: random.Random) -> list[int]:
    """A random composition of ``total`` into ``parts`` positive summands."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]


def random_formula(rng: random.Random, basis: Basis, names: Sequence[str],
                   max_size: int, max_modal_depth: int = 2,
                   dia_weight: float = 1.0) -> Formula:
    """A formula over ``basis`` and ``dia`` of size between 1 and ``max_size``.

    The size is drawn uniformly, then spent top-down: each node picks a
    function (or ``dia``) whose arity fits the remaining budget.
    """
    leaves = [f for f in basis if f.arity == 0]
    inner = [f for f in basis if f.arity > 0]

    def leaf():
        k = rng.randrange(len(names) + len(leaves))
        return Var(names[k]) if k < len(names) else Apply(leaves[k - len(names)])

    def go(size: int, md: int) -> Formula:
        if size <= 1:
            return leaf()
        options = [f for f in inner if f.arity <= size - 1]
        weights = [1.0] * len(options)
        if md > 0:
            options.append(None)
            weights.append(dia_weight)
        if not options:
            return leaf()
        pick = rng.choices(options, weights)[0]
        if pick is None:
            return Diamond(go(size - 1, md - 1))
        parts = _split(size - 1, pick.arity, rng) if pick.arity > 1 else [size - 1]
        return Apply(pick, [go(s, md) for s in parts])

    return go(rng.randint(1, max_size), max_modal_depth)


def random_norm_formula(rng: random.Random, basis: Basis, names: Sequence[str],
                        norm: int, max_modal_depth: int = 3,
                        unary_rate: float = 0.3) -> Formula:
    """A formula over an at-most-binary basis with exactly ``norm`` leaves."""
    leaves = [f for f in basis if f.arity == 0]
    unary = [f for f in basis if f.arity == 1]
    binary = [f for f in basis if f.arity == 2]

    def leaf():
        k = rng.randrange(len(names) + len(leaves))
        return Var(names[k]) if k < len(names) else Apply(leaves[k - len(names)])

    def go(m: int, md: int) -> Formula:
        if rng.random() < unary_rate:
            if md > 0 and (not unary or rng.random() < 0.5):
                return Diamond(go(m, md - 1))
            if unary:
                return Apply(rng.choice(unary), [go(m, md)])
        if m == 1:
            return leaf()
        left = rng.randint(1, m - 1)
        return Apply(rng.choice(binary), [go(left, md), go(m - left, md)])

    return go(norm, max_modal_depth)


def random_model(rng: random.Random, names: Sequence[str], frame="K",
                 max_worlds: int = 5, edge_rate: float = 0.35) -> KripkeModel:
    frame = FrameClass.parse(frame)
    n = rng.randint(1, max_worlds)
    edges = {(u, v) for u in range(n) for v in range(n) if rng.random() < edge_rate}
    val = {p: {w for w in range(n) if rng.random() < 0.5} for p in names}
    return KripkeModel(n, close_relation(n, edges, frame), val, rng.randrange(n), frame)
