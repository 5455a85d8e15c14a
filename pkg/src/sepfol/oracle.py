"""Brute-force model search and equivalence checking.

Structures of one size are indexed in the enumeration order of
:func:`semantics.layout`; a batch of consecutive indices is decoded into numpy
tables and a formula is evaluated on the whole batch at once.  This evaluator
shares no code with :func:`semantics.evaluate`, which serves as its reference.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import BudgetExceeded, MissingInterpretation
from .semantics import evaluate, layout, structure_at, structure_count
from .syntax import (
    And, Atom, Bot, Const, Eq, Exists, Forall, Iff, Implies, Not, Or, Signature, Top,
    Var, atom_vars, exists, extract_signature, free_vars,
)

BATCH = 1 << 15


class _Batch:
    def __init__(self, sig: Signature, size: int, start: int, stop: int, lay=None):
        self.n = size
        self.B = stop - start
        self.rows = np.arange(self.B)
        self.ones = np.ones(self.B, dtype=bool)
        self.zeros = np.zeros(self.B, dtype=bool)
        lay = lay or layout(sig, size)
        rem = np.arange(start, stop, dtype=np.int64)
        digits = [None] * len(lay)
        for pos in range(len(lay) - 1, -1, -1):
            r = lay[pos][3]
            digits[pos] = rem % r
            rem = rem // r
        self.consts, self.funcs, self.preds = {}, {}, {}
        groups: dict = {}
        for (kind, name, _tup, _), d in zip(lay, digits):
            if kind == "const":
                self.consts[name] = d
            else:
                groups.setdefault((kind, name), []).append(d)
        for (kind, name), ds in groups.items():
            table = np.stack(ds)
            if kind == "func":
                self.funcs[name] = table
            else:
                self.preds[name] = table.astype(bool)
        for p, a in sig.predicates.items():
            if p not in self.preds:  # arity > 0 never empty; nullary handled above
                self.preds[p] = np.zeros((size ** a, self.B), dtype=bool)

    def _row(self, vals):
        row = 0
        for v in vals:
            row = row * self.n + v
        return row

    def _lookup(self, table, vals):
        row = self._row(vals)
        if isinstance(row, np.ndarray):
            return table[row, self.rows]
        return table[row]

    def term(self, t, env):
        if isinstance(t, Var):
            try:
                return env[t.name]
            except KeyError:
                raise MissingInterpretation(f"unassigned variable {t.name}") from None
        if isinstance(t, Const) or not t.args:
            name = t.name if isinstance(t, Const) else t.function
            if name not in self.consts:
                raise MissingInterpretation(f"uninterpreted constant {name}")
            return self.consts[name]
        if t.function not in self.funcs:
            raise MissingInterpretation(f"uninterpreted function {t.function}")
        return self._lookup(self.funcs[t.function], [self.term(a, env) for a in t.args])

    def full(self, v):
        if isinstance(v, np.ndarray):
            return v
        return self.ones if v else self.zeros

    def ev(self, phi, env):
        if isinstance(phi, Atom):
            if phi.predicate not in self.preds:
                raise MissingInterpretation(f"uninterpreted predicate {phi.predicate}")
            return self._lookup(self.preds[phi.predicate], [self.term(a, env) for a in phi.args])
        if isinstance(phi, Eq):
            return self.full(self.term(phi.left, env) == self.term(phi.right, env))
        if isinstance(phi, Top):
            return self.ones
        if isinstance(phi, Bot):
            return self.zeros
        if isinstance(phi, Not):
            return ~self.ev(phi.body, env)
        if isinstance(phi, And):
            left = self.ev(phi.left, env)
            if not left.any():
                return left
            return left & self.ev(phi.right, env)
        if isinstance(phi, Or):
            left = self.ev(phi.left, env)
            if left.all():
                return left
            return left | self.ev(phi.right, env)
        if isinstance(phi, Implies):
            left = ~self.ev(phi.left, env)
            if left.all():
                return left
            return left | self.ev(phi.right, env)
        if isinstance(phi, Iff):
            return self.ev(phi.left, env) == self.ev(phi.right, env)
        inner = dict(env)
        acc = None
        if isinstance(phi, Exists):
            for e in range(self.n):
                inner[phi.var] = e
                v = self.ev(phi.body, inner)
                acc = v if acc is None else acc | v
                if acc.all():
                    break
        else:
            for e in range(self.n):
                inner[phi.var] = e
                v = self.ev(phi.body, inner)
                acc = v if acc is None else acc & v
                if not acc.any():
                    break
        return acc


def _fv(f, memo):
    key = id(f)
    hit = memo.get(key)
    if hit is not None:
        return hit[1]
    if isinstance(f, (Atom, Eq)):
        out = frozenset(atom_vars(f))
    elif isinstance(f, (Top, Bot)):
        out = frozenset()
    elif isinstance(f, Not):
        out = _fv(f.body, memo)
    elif isinstance(f, (And, Or, Implies, Iff)):
        out = _fv(f.left, memo) | _fv(f.right, memo)
    else:
        out = _fv(f.body, memo) - {f.var}
    memo[key] = (f, out)
    return out


def narrow_scopes(phi):
    """Equivalent formula in which each quantifier only spans the operands that
    mention its variable.  Used purely to speed up evaluation."""
    memo: dict = {}

    def push(q, v, g):
        if v not in _fv(g, memo):
            return g
        dual = Forall if q is Exists else Exists
        if isinstance(g, Not):
            return Not(push(dual, v, g.body))
        if isinstance(g, (And, Or, Implies)):
            in_l, in_r = v in _fv(g.left, memo), v in _fv(g.right, memo)
            lq = dual if isinstance(g, Implies) else q
            if in_l and not in_r:
                return type(g)(push(lq, v, g.left), g.right)
            if in_r and not in_l:
                return type(g)(g.left, push(q, v, g.right))
            splits = Or if q is Exists else And
            if isinstance(g, splits):
                return type(g)(push(q, v, g.left), push(q, v, g.right))
            if isinstance(g, Implies) and q is Exists:
                return Implies(push(Forall, v, g.left), push(Exists, v, g.right))
            return q(v, g)
        if isinstance(g, q) and g.var != v:
            inner = push(q, v, g.body)
            if not (isinstance(inner, q) and inner.var == v and inner.body is g.body):
                return q(g.var, inner)
        return q(v, g)

    def go(f):
        if isinstance(f, Not):
            return Not(go(f.body))
        if isinstance(f, (And, Or, Implies, Iff)):
            return type(f)(go(f.left), go(f.right))
        if isinstance(f, (Forall, Exists)):
            return push(type(f), f.var, go(f.body))
        return f

    return go(phi)


def _canonical_prefixes(k: int, size: int):
    """Constant tuples whose values appear in first-occurrence order 0, 1, 2, …"""
    def go(prefix, top):
        if len(prefix) == k:
            yield prefix
            return
        for v in range(min(top + 1, size)):
            yield from go(prefix + (v,), max(top, v + 1))
    yield from go((), 0)


def index_ranges(sig: Signature, size: int, symmetric: bool = False):
    """Index ranges to enumerate; constants are the most significant digits, so
    each canonical constant tuple owns one contiguous range."""
    count = structure_count(sig, size)
    k = len(sig.constants)
    if not symmetric or k == 0:
        return [(0, count)]
    block = count // size ** k
    out = []
    for tup in _canonical_prefixes(k, size):
        idx = 0
        for v in tup:
            idx = idx * size + v
        out.append((idx * block, (idx + 1) * block))
    return out


def batches(sig: Signature, size: int, cap: int, symmetric: bool = False):
    ranges = index_ranges(sig, size, symmetric)
    total = sum(b - a for a, b in ranges)
    if total > cap:
        raise BudgetExceeded(f"{total} structures of size {size} exceed cap {cap}")
    lay = layout(sig, size)
    for lo, hi in ranges:
        for start in range(lo, hi, BATCH):
            yield start, _Batch(sig, size, start, min(hi, start + BATCH), lay)


def batch_truth(phi, sig: Signature, size: int, start: int, stop: int, env=None):
    """Truth values of ``phi`` on structures ``start..stop-1`` (testing hook)."""
    return _Batch(sig, size, start, stop).ev(phi, env or {})


def first_model(phi, size: int, sig: Signature | None = None, cap: int = 10**7,
                symmetric: bool = False):
    """Least-indexed model of the existential closure of ``phi`` at one size."""
    closed = exists(sorted(free_vars(phi)), phi)
    sig = extract_signature(phi) if sig is None else sig
    fast = narrow_scopes(closed)
    for start, batch in batches(sig, size, cap, symmetric):
        truth = batch.ev(fast, {})
        hits = np.flatnonzero(truth)
        if hits.size:
            model = structure_at(sig, size, start + int(hits[0]))
            assert evaluate(model, {}, closed)
            return model
    return None


def oracle_decide(phi, max_size: int, cap: int = 10**7):
    """Sat with the first model of size ≤ max_size, else Unsat(max_size)."""
    from .decide import Sat, Unsat
    sig = extract_signature(phi)
    for size in range(1, max_size + 1):
        model = first_model(phi, size, sig, cap)
        if model is not None:
            return Sat(model, size)
    return Unsat(max_size)


def counterexample(phi, psi, max_size: int, cap: int = 10**7):
    """First (structure, assignment) on which phi and psi differ, or None."""
    sig = extract_signature(phi).merge(extract_signature(psi))
    fv = sorted(free_vars(phi) | free_vars(psi))
    phi, psi = narrow_scopes(phi), narrow_scopes(psi)
    for size in range(1, max_size + 1):
        for start, batch in batches(sig, size, cap):
            for vals in itertools.product(range(size), repeat=len(fv)):
                env = dict(zip(fv, vals))
                diff = np.flatnonzero(batch.ev(phi, env) != batch.ev(psi, env))
                if diff.size:
                    return structure_at(sig, size, start + int(diff[0])), env
    return None


def oracle_equivalent(phi, psi, max_size: int, cap: int = 10**7) -> bool:
    return counterexample(phi, psi, max_size, cap) is None
