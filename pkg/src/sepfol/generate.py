"""Seeded random sentence generators for property tests and experiments."""
from __future__ import annotations

import random

from .syntax import (
    And, Atom, Const, Eq, Formula, Iff, Implies, Not, Or, Var, exists, forall,
)


def _signature(rng: random.Random, n_preds: int, max_arity: int):
    return [(f"p{i}", rng.randint(1, max_arity)) for i in range(1, n_preds + 1)]


def _atom(rng, preds, pool, equality: bool):
    if equality and len(pool) > 1 and rng.random() < 0.15:
        s, t = rng.sample(pool, 2)
        return Eq(s, t)
    p, a = rng.choice(preds)
    return Atom(p, tuple(rng.choice(pool) for _ in range(a)))


def random_matrix(rng: random.Random, leaf, depth: int, connectives=(And, Or)) -> Formula:
    """Random Boolean combination; ``leaf()`` supplies atoms."""
    if depth <= 0 or rng.random() < 0.3:
        a = leaf()
        return Not(a) if rng.random() < 0.4 else a
    op = rng.choice(connectives)
    out = op(random_matrix(rng, leaf, depth - 1, connectives),
             random_matrix(rng, leaf, depth - 1, connectives))
    return Not(out) if rng.random() < 0.1 else out


def random_ea(rng: random.Random, n_preds: int = 3, max_arity: int = 2, n_vars: int = 3,
              n_consts: int = 1, equality: bool = True, depth: int = 3) -> Formula:
    """Function-free ∃*∀* sentence."""
    preds = _signature(rng, n_preds, max_arity)
    k = rng.randint(1, n_vars)
    vs = [f"v{i}" for i in range(1, k + 1)]
    split = rng.randint(0, k)
    pool = [Var(v) for v in vs] + [Const(f"c{i}") for i in range(1, n_consts + 1)]
    matrix = random_matrix(rng, lambda: _atom(rng, preds, pool, equality), depth)
    return exists(vs[:split], forall(vs[split:], matrix))


def random_monadic(rng: random.Random, n_preds: int = 3, n_vars: int = 3, n_consts: int = 1,
                   depth: int = 4) -> Formula:
    """Equality-free relational monadic sentence with arbitrary quantifier nesting."""
    preds = [f"p{i}" for i in range(1, n_preds + 1)]
    consts = [Const(f"c{i}") for i in range(1, n_consts + 1)]

    def build(scope, d, budget):
        if d <= 0 or rng.random() < 0.25:
            pool = [Var(v) for v in scope] + consts
            if not pool:
                pool = [Const("c1")]
            a = Atom(rng.choice(preds), (rng.choice(pool),))
            return Not(a) if rng.random() < 0.4 else a
        r = rng.random()
        if r < 0.35 and budget:
            v = budget[0]
            q = forall if rng.random() < 0.5 else exists
            return q([v], build(scope + [v], d - 1, budget[1:]))
        if r < 0.45:
            return Not(build(scope, d - 1, budget))
        op = rng.choice((And, Or, Implies, Iff))
        return op(build(scope, d - 1, budget), build(scope, d - 1, budget))

    names = [f"v{i}" for i in range(1, n_vars + 1)]
    out = build([], depth, names)
    return _close(out)


def _close(phi):
    from .syntax import free_vars
    return forall(sorted(free_vars(phi)), phi)


def random_sf(rng: random.Random, max_alternations: int = 2, n_preds: int = 3,
              max_arity: int = 2, max_vars: int = 4, equality: bool = False,
              connectives=(And, Or), depth: int = 3) -> Formula:
    """Prenex separated sentence ∃z⃗∀x⃗_1∃y⃗_1…; every atom avoids x⃗ or avoids y⃗."""
    preds = _signature(rng, n_preds, max_arity)
    n = rng.randint(1, max_alternations)
    budget = rng.randint(2 * n, max(2 * n, max_vars))
    names = iter(f"v{i}" for i in range(1, budget + 1))
    zs = [next(names)] if budget > 2 * n and rng.random() < 0.5 else []
    spare = budget - 2 * n - len(zs)
    pairs = []
    for _ in range(n):
        xs, ys = [next(names)], [next(names)]
        pairs.append((xs, ys))
    for _ in range(spare):
        xs, ys = rng.choice(pairs)
        (xs if rng.random() < 0.5 else ys).append(next(names))
    all_x = [v for xs, _ in pairs for v in xs]
    all_y = [v for _, ys in pairs for v in ys]
    consts = [Const("c1")] if rng.random() < 0.3 else []
    side_x = [Var(v) for v in zs + all_x] + consts
    side_y = [Var(v) for v in zs + all_y] + consts

    def leaf():
        return _atom(rng, preds, side_x if rng.random() < 0.5 else side_y, equality)

    body = random_matrix(rng, leaf, depth, connectives)
    for xs, ys in reversed(pairs):
        body = forall(xs, exists(ys, body))
    return exists(zs, body)
