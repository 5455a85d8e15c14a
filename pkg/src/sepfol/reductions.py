"""Satisfiability-preserving translations and clause export."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .bounds import _Names, _grid, _m_star, _single, _skolem_constants, compute_bounds, is_overflow
from .errors import BudgetExceeded, IneligibleOccurrence, NotRelationalMonadic
from .semantics import Structure
from .syntax import (
    App, And, Atom, Bot, Eq, Forall, Formula, Iff, Implies, Not, Or, Signature, Top, Var,
    conj, disj, exists, extract_signature, forall, free_vars, has_equality, quantifier_count, subterms, substitute,
)
from .tptp import print_tptp
from .transform import normal_form, sort_items, to_nnf

# ------------------------------------------------------- formula mapping


def _map_atoms(phi: Formula, fn) -> Formula:
    if isinstance(phi, (Atom, Eq)):
        return fn(phi)
    if isinstance(phi, (Top, Bot)):
        return phi
    if isinstance(phi, Not):
        return Not(_map_atoms(phi.body, fn))
    if isinstance(phi, (And, Or, Implies, Iff)):
        return type(phi)(_map_atoms(phi.left, fn), _map_atoms(phi.right, fn))
    return type(phi)(phi.var, _map_atoms(phi.body, fn))


def _symbols(phi) -> _Names:
    """Name supply avoiding the symbols of phi; variables live in their own scope."""
    names = _Names()
    names.used |= extract_signature(phi).names()
    return names


def _has_fn(t) -> bool:
    return any(isinstance(s, App) and s.args for s in subterms(t))


# ------------------------------------------------- unary-function elimination

@dataclass(frozen=True)
class UnaryElimination:
    """Bookkeeping of one unary-function elimination, used for model transport."""
    formula: Formula
    functions: tuple          # original function names f_1..f_k, axiom order
    witnesses: tuple          # matching y variables of the axiom
    pairs: tuple              # (fresh R, P, f): R(x) stands for P(f(x))
    source: Signature


def _check_unary(phi):
    sig = extract_signature(phi)
    bad = sorted(f for f, a in sig.functions.items() if a != 1)
    if bad:
        raise IneligibleOccurrence(f"function symbols of arity other than 1: {bad}")
    for f in _atoms_with_fns(phi):
        if isinstance(f, Eq) or len(f.args) != 1:
            raise IneligibleOccurrence(f"function application outside a monadic atom: {f}")


def _atoms_with_fns(phi):
    from .syntax import atoms
    for a in atoms(phi):
        terms = a.args if isinstance(a, Atom) else (a.left, a.right)
        if any(_has_fn(t) for t in terms):
            yield a


def eliminate_unary_functions_record(phi: Formula) -> UnaryElimination:
    if free_vars(phi):
        from .errors import NonSentence
        raise NonSentence(f"free variables {sorted(free_vars(phi))}")
    _check_unary(phi)
    source = extract_signature(phi)
    if not source.functions:
        return UnaryElimination(phi, (), (), (), source)
    names = _symbols(phi)
    fresh: dict = {}
    order: list = []

    def peel(a):
        # P(f(s)) becomes R_{P,f}(s); repeat until the argument is function-free
        while isinstance(a, Atom) and a.args and isinstance(a.args[0], App) and a.args[0].args:
            f, s = a.args[0].function, a.args[0].args[0]
            key = (a.predicate, f)
            if key not in fresh:
                fresh[key] = names.take("r")
                order.append(key)
            a = Atom(fresh[key], (s,))
        return a

    body = _map_atoms(phi, peel)
    functions = sorted({f for _, f in order})
    bound = _Names()
    x = bound.take("x")
    ys = [bound.take("y") if len(functions) == 1 else bound.take(f"y_{i}")
          for i in range(1, len(functions) + 1)]
    parts = []
    for f, y in zip(functions, ys):
        for p, g in order:
            if g == f:
                parts.append(Iff(Atom(p, (Var(y),)), Atom(fresh[(p, g)], (Var(x),))))
    axiom = Forall(x, exists(ys, conj(parts)))
    pairs = tuple((fresh[k], k[0], k[1]) for k in order)
    return UnaryElimination(And(body, axiom), tuple(functions), tuple(ys), pairs, source)


def eliminate_unary_functions(phi: Formula) -> Formula:
    """Replace P(f(t)) by R(t) for fresh R and add ∀x∃y⃗.⋀(P(y_i) ↔ R(x))."""
    return eliminate_unary_functions_record(phi).formula


def recover_unary_functions(rec: UnaryElimination, model: Structure) -> Structure:
    """Model of the original sentence from a model of the eliminated one.

    f_i(a) is the least element b with P(b) ↔ R(a) for every pair (R, P, f_i);
    the axiom guarantees one exists.
    """
    n = model.universe_size
    funcs = {}
    for f in rec.functions:
        rel = [(r, p) for r, p, g in rec.pairs if g == f]
        table = {}
        for a in range(n):
            for b in range(n):
                if all(((b,) in model.predicates.get(p, ())) == ((a,) in model.predicates[r])
                       for r, p in rel):
                    table[(a,)] = b
                    break
            else:
                raise ValueError(f"structure violates the axiom for {f} at {a}")
        funcs[f] = table
    preds = {p: model.predicates.get(p, frozenset()) for p in rec.source.predicates}
    consts = {c: model.constants[c] for c in rec.source.constants}
    return Structure(n, consts, funcs, preds)


# ---------------------------------------------------------- equality

def _kappa(k: int) -> int:
    return math.ceil(math.log2(k)) if k > 1 else 0


def _eq_formula(s, t, preds, qs) -> Formula:
    return conj([Iff(Atom(p, (s,)), Atom(p, (t,))) for p in preds] +
                [Iff(Atom(q, (s,)), Atom(q, (t,))) for q in qs])


def _replace_eqs(phi, preds, qs):
    return _map_atoms(phi, lambda a: _eq_formula(a.left, a.right, preds, qs) if isinstance(a, Eq) else a)


def eliminate_equality_monadic(phi: Formula) -> Formula:
    """Encode ≈ by agreement on every unary predicate plus ⌈log₂ k⌉ fresh ones."""
    sig = extract_signature(phi)
    if sig.functions or any(a > 1 for a in sig.predicates.values()):
        raise NotRelationalMonadic("expected unary predicates and no non-constant functions")
    if not has_equality(phi):
        return phi
    k = quantifier_count(phi) + len(sig.constants)
    names = _symbols(phi)
    qs = [names.take(f"q_{i}") for i in range(1, _kappa(k) + 1)]
    preds = sorted(p for p, a in sig.predicates.items() if a == 1)
    return _replace_eqs(phi, preds, qs)


def _bounded_parts(phi: Formula, k: int):
    """Equation-free formula and the congruence axioms for a model bound k."""
    if k < 1:
        raise ValueError("k must be at least 1")
    sig = extract_signature(phi)
    names = _symbols(phi)
    qs = [names.take(f"q_{i}") for i in range(1, _kappa(k) + 1)]
    body = _replace_eqs(phi, [], qs)
    if not qs:
        return body, []
    x, y = "x", "y"
    axioms = []
    for p in sorted(sig.predicates):
        a = sig.predicates[p]
        us = ["u"] if a == 2 else [f"u_{j}" for j in range(1, a)]
        for i in range(a):
            left = [Var(u) for u in us[:i]] + [Var(x)] + [Var(u) for u in us[i:]]
            right = [Var(u) for u in us[:i]] + [Var(y)] + [Var(u) for u in us[i:]]
            ax = Implies(_eq_formula(Var(x), Var(y), [], qs),
                         Implies(Atom(p, tuple(left)), Atom(p, tuple(right))))
            axioms.append(forall([x, y] + us, ax))
    for f in sorted(sig.functions):
        a = sig.functions[f]
        us = ["u"] if a == 2 else [f"u_{j}" for j in range(1, a)]
        for i in range(a):
            left = App(f, tuple([Var(u) for u in us[:i]] + [Var(x)] + [Var(u) for u in us[i:]]))
            right = App(f, tuple([Var(u) for u in us[:i]] + [Var(y)] + [Var(u) for u in us[i:]]))
            ax = Implies(_eq_formula(Var(x), Var(y), [], qs), _eq_formula(left, right, [], qs))
            axioms.append(forall([x, y] + us, ax))
    return body, axioms


def eliminate_equality_bounded(phi: Formula, k: int) -> Formula:
    """Encode ≈ by ⌈log₂ k⌉ fresh unary predicates and conjoin congruence axioms."""
    body, axioms = _bounded_parts(phi, k)
    return conj([body] + axioms)


# ------------------------------------------------------------- clause sets

@dataclass(frozen=True)
class ClauseSet:
    clauses: tuple        # tuple of tuples of literals, canonical order
    signature: Signature
    provenance: tuple     # origin tag per clause

    def origin(self, clause) -> str:
        return self.provenance[self.clauses.index(tuple(clause))]

    def count(self, tag: str) -> int:
        return sum(1 for t in self.provenance if t == tag)

    def to_formula(self) -> Formula:
        body = conj(disj(c) for c in self.clauses)
        return forall(sorted(free_vars(body)), body)

    def to_tptp(self) -> str:
        lines = []
        for i, c in enumerate(self.clauses, 1):
            lits = " | ".join(print_tptp(l) for l in c) if c else "$false"
            lines.append(f"cnf(c{i}, axiom, ({lits})).\n")
        return "".join(lines)


def _cnf(phi):
    return normal_form(to_nnf(phi), "CNF")


class _ClauseBuilder:
    def __init__(self, limit):
        self.limit = limit
        self.seen = set()
        self.clauses, self.tags = [], []

    def add(self, lits, tag):
        key = frozenset(lits)
        if key in self.seen:
            return
        if len(self.clauses) >= self.limit:
            raise BudgetExceeded(f"clause set exceeds {self.limit} clauses")
        self.seen.add(key)
        self.clauses.append(tuple(sort_items(key)))
        self.tags.append(tag)

    def build(self):
        body = conj(disj(c) for c in self.clauses)
        return ClauseSet(tuple(self.clauses), extract_signature(body), tuple(self.tags))


def to_bsr_clauses(phi: Formula, encoding: str = "Relational", clause_cap: int = 10**6) -> ClauseSet:
    """Clause set of a single-block separated sentence.

    ``Relational``: every clause of ψ's CNF is guarded by ¬R_i(x⃗,y_i) and the
    finite-domain axiom ⋁_ℓ⋀_i R_i(x⃗,c_ℓ,i) is distributed into clauses.  Any
    equations are first encoded with fresh unary predicates, the bound of the
    sentence supplying k, so the result is pure BS.
    ``SkolemFn``: clauses of ∀x⃗.ψ[y⃗/f⃗(x⃗)] ∧ ⋁_ℓ⋀_i f_i(x⃗)≈c_ℓ,i.
    """
    out = _ClauseBuilder(clause_cap)
    enc = encoding.lower()
    if enc in ("skolemfn", "skolem"):
        from .bounds import skolemize_range_restricted
        shape, xs, ys = _single(phi)
        sk = skolemize_range_restricted(phi)
        body = sk
        for _ in xs:
            body = body.body
        if ys:
            matrix, domain = body.left, body.right
        else:
            matrix, domain = body, None
        for c in _cnf(matrix):
            out.add(c, "matrix")
        if domain is not None:
            for c in _cnf(domain):
                out.add(c, "domain-axiom")
        return out.build()
    if enc != "relational":
        raise ValueError(f"unknown encoding {encoding!r}")
    congruence = []
    if has_equality(phi):
        bound = compute_bounds(phi).domain_bound
        if is_overflow(bound):
            raise BudgetExceeded("bound overflows; equality cannot be encoded")
        phi, congruence = _bounded_parts(phi, bound)
    shape, xs, ys = _single(phi)
    names = _Names(phi, *congruence)
    sigma = _skolem_constants(shape, names)
    matrix = substitute(shape.matrix, sigma)
    if not ys:
        for c in _cnf(matrix):
            out.add(c, "matrix")
    else:
        rs = [names.take(f"r_{i}") for i in range(1, len(ys) + 1)]
        xt = [Var(x) for x in xs]
        guards = [Not(Atom(r, tuple(xt) + (Var(y),))) for r, y in zip(rs, ys)]
        for c in _cnf(matrix):
            out.add(set(c) | set(guards), "guard")
        grid = _grid(names, _m_star(shape, xs, ys), len(ys))
        rows = [[Atom(r, tuple(xt) + (c,)) for r, c in zip(rs, row)] for row in grid]
        total = len(ys) ** len(rows)
        if total > clause_cap:
            raise BudgetExceeded(f"finite-domain axiom needs {total} clauses")
        for choice in itertools.product(*rows):
            out.add(choice, "domain-axiom")
    for ax in congruence:
        body = ax
        while isinstance(body, Forall):
            body = body.body
        for c in _cnf(body):
            out.add(c, "congruence")
    return out.build()
