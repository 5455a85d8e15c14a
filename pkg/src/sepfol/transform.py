"""Normal forms, miniscoping, prenexing and quantifier-block transposition."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

from .errors import BudgetExceeded, SeparationError
from .syntax import (
    And, Atom, BINARY, Bot, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or, QUANTIFIERS,
    TOP, BOT, Top, Var, all_names, atom_vars, conj, disj, exists, forall, free_vars, fresh_name,
    is_quantifier_free, node_count, rename_apart, rename_vars,
)

DEFAULT_NODE_CAP = 10**6


# ----------------------------------------------------------------- NNF

def to_nnf(phi: Formula, positive: bool = True) -> Formula:
    """Negation normal form; → and ↔ are expanded as (¬a∨b) and (¬a∨b)∧(a∨¬b)."""
    if isinstance(phi, (Atom, Eq)):
        return phi if positive else Not(phi)
    if isinstance(phi, Top):
        return phi if positive else BOT
    if isinstance(phi, Bot):
        return phi if positive else TOP
    if isinstance(phi, Not):
        return to_nnf(phi.body, not positive)
    if isinstance(phi, And):
        cls = And if positive else Or
        return cls(to_nnf(phi.left, positive), to_nnf(phi.right, positive))
    if isinstance(phi, Or):
        cls = Or if positive else And
        return cls(to_nnf(phi.left, positive), to_nnf(phi.right, positive))
    if isinstance(phi, Implies):
        if positive:
            return Or(to_nnf(phi.left, False), to_nnf(phi.right, True))
        return And(to_nnf(phi.left, True), to_nnf(phi.right, False))
    if isinstance(phi, Iff):
        a, b = phi.left, phi.right
        if positive:
            return And(Or(to_nnf(a, False), to_nnf(b, True)), Or(to_nnf(a, True), to_nnf(b, False)))
        return Or(And(to_nnf(a, True), to_nnf(b, False)), And(to_nnf(a, False), to_nnf(b, True)))
    if positive:
        return type(phi)(phi.var, to_nnf(phi.body, True))
    cls = Exists if isinstance(phi, Forall) else Forall
    return cls(phi.var, to_nnf(phi.body, False))


# ----------------------------------------------------------- miniscoping

def miniscope(phi: Formula) -> Formula:
    """Push quantifiers inward as far as the distribution rules allow.

    ∃ splits over ∨ and ∀ splits over ∧ (each copy gets a fresh variable); both
    move past operands that do not mention the bound variable.  ¬, → and ↔
    are left in place.
    """
    phi = rename_apart(phi)
    used = all_names(phi)

    def push(cls, v, g):
        if v not in free_vars(g):
            return g
        split = Or if cls is Exists else And
        if isinstance(g, (And, Or)):
            in_l, in_r = v in free_vars(g.left), v in free_vars(g.right)
            if in_l and not in_r:
                return type(g)(push(cls, v, g.left), g.right)
            if in_r and not in_l:
                return type(g)(g.left, push(cls, v, g.right))
            if isinstance(g, split):
                v1, v2 = fresh_name(v, used), fresh_name(v, used)
                return type(g)(push(cls, v1, rename_vars(g.left, {v: v1})),
                               push(cls, v2, rename_vars(g.right, {v: v2})))
            return cls(v, g)
        if isinstance(g, cls):
            inner = push(cls, v, g.body)
            if inner != cls(v, g.body):
                return cls(g.var, inner)
        return cls(v, g)

    def go(f):
        if isinstance(f, Not):
            return Not(go(f.body))
        if isinstance(f, BINARY):
            return type(f)(go(f.left), go(f.right))
        if isinstance(f, QUANTIFIERS):
            return push(type(f), f.var, go(f.body))
        return f

    return go(phi)


# ------------------------------------------------------------ prenexing

def _merge(pa, pb, prefer):
    """Interleave two prefixes, taking quantifiers of the preferred kind first."""
    out = []
    pa, pb = list(pa), list(pb)
    while pa or pb:
        for side in (pa, pb):
            if side and side[0][0] is prefer:
                out.append(side.pop(0))
                break
        else:
            out.append((pa or pb).pop(0))
    return out


def _flip(prefix):
    return [(Exists if q is Forall else Forall, v) for q, v in prefix]


def _freshen(phi, used):
    """Rename every bound variable of phi to a fresh name."""
    if isinstance(phi, Not):
        return Not(_freshen(phi.body, used))
    if isinstance(phi, BINARY):
        return type(phi)(_freshen(phi.left, used), _freshen(phi.right, used))
    if isinstance(phi, QUANTIFIERS):
        new = fresh_name(phi.var, used)
        return type(phi)(new, _freshen(rename_vars(phi.body, {phi.var: new}), used))
    return phi


def to_prenex(phi: Formula, prefer: str = "exists") -> Formula:
    """Prenex form.  At each binary junction the prefixes are merged left to
    right, pulling existential quantifiers before universal ones (or the
    reverse with ``prefer="forall"``)."""
    kind = Exists if prefer == "exists" else Forall
    phi = rename_apart(phi)
    used = all_names(phi)

    def go(f):
        if isinstance(f, Not):
            p, m = go(f.body)
            return _flip(p), Not(m)
        if isinstance(f, (And, Or)):
            pa, ma = go(f.left)
            pb, mb = go(f.right)
            return _merge(pa, pb, kind), type(f)(ma, mb)
        if isinstance(f, Implies):
            pa, ma = go(f.left)
            pb, mb = go(f.right)
            return _merge(_flip(pa), pb, kind), Implies(ma, mb)
        if isinstance(f, Iff):
            if is_quantifier_free(f):
                return [], f
            a, b = f.left, f.right
            return go(And(Implies(a, b), Implies(_freshen(b, used), _freshen(a, used))))
        if isinstance(f, QUANTIFIERS):
            p, m = go(f.body)
            return [(type(f), f.var)] + p, m
        return [], f

    prefix, matrix = go(phi)
    for q, v in reversed(prefix):
        matrix = q(v, matrix)
    return matrix


# ------------------------------------------------------- normal forms

def item_key(item: Formula) -> tuple:
    """Canonical order: predicate name, then argument names, positive first;
    quantified units after all literals."""
    neg = isinstance(item, Not)
    a = item.body if neg else item
    if isinstance(a, Atom):
        return (0, a.predicate, tuple(str(t) for t in a.args), neg)
    if isinstance(a, Eq):
        return (0, "=", (str(a.left), str(a.right)), neg)
    return (1, str(item), (), neg)


def sort_items(items) -> list:
    return sorted(items, key=item_key)


def set_key(s) -> tuple:
    return tuple(item_key(i) for i in sort_items(s))


def _complementary(s) -> bool:
    return any(isinstance(i, Not) and i.body in s for i in s)


def _absorb(sets):
    """Drop duplicates and every set that strictly contains another."""
    uniq = sorted(set(sets), key=lambda s: (len(s), set_key(s)))
    kept = []
    for s in uniq:
        if not any(k <= s for k in kept):
            kept.append(s)
    return kept


def normal_form(phi: Formula, kind: str = "DNF", drop_complementary: bool = True,
                node_cap: int = DEFAULT_NODE_CAP) -> list:
    """Distribution-based DNF (list of conjunct sets) or CNF (list of clause sets)
    of an NNF formula.  Non-Boolean subformulas are treated as opaque items."""
    product, summ = (And, Or) if kind == "DNF" else (Or, And)
    unit, zero = (Top, Bot) if kind == "DNF" else (Bot, Top)

    def go(f):
        if isinstance(f, unit):
            return [frozenset()]
        if isinstance(f, zero):
            return []
        if isinstance(f, summ):
            return _absorb(go(f.left) + go(f.right))
        if isinstance(f, product):
            left, right = go(f.left), go(f.right)
            if len(left) * len(right) > node_cap:
                raise BudgetExceeded(f"normal form exceeds {node_cap} constituents")
            out = []
            for a in left:
                for b in right:
                    s = a | b
                    if drop_complementary and _complementary(s):
                        continue
                    out.append(s)
            return _absorb(out)
        return [frozenset([f])]

    result = go(phi)
    return sorted(result, key=set_key)


@dataclass(frozen=True)
class Constituent:
    chi: tuple
    eta: tuple
    param: tuple

    def literals(self) -> list:
        return list(self.chi) + list(self.eta) + list(self.param)


@dataclass(frozen=True)
class NormalFormMatrix:
    kind: str
    constituents: tuple
    x_vars: tuple
    y_vars: tuple
    z_vars: tuple
    unpruned_count: int

    @property
    def count(self) -> int:
        return len(self.constituents)

    def to_formula(self) -> Formula:
        inner, outer = (conj, disj) if self.kind == "DNF" else (disj, conj)
        return outer([inner(c.literals()) for c in self.constituents])


def _split(items, xs, ys):
    chi, eta, param = [], [], []
    for it in items:
        fv = free_vars(it)
        hx, hy = bool(fv & xs), bool(fv & ys)
        if hx and hy:
            raise SeparationError(f"{it} mentions both universal and existential variables")
        (chi if hx else eta if hy else param).append(it)
    return chi, eta, param


def check_separated(psi: Formula, xs, ys):
    xs, ys = set(xs), set(ys)
    for a in _atoms_of(psi):
        fv = atom_vars(a)
        if fv & xs and fv & ys:
            raise SeparationError(f"atom {a} mentions both {sorted(fv & xs)} and {sorted(fv & ys)}")


def _atoms_of(psi):
    from .syntax import atoms
    return atoms(psi)


def matrix_to_nf(psi: Formula, x_vars, y_vars, z_vars=(), kind: str = "DNF",
                 node_cap: int = DEFAULT_NODE_CAP) -> NormalFormMatrix:
    """Split a separated quantifier-free matrix into normal-form constituents.

    Constituents with a complementary pair and constituents whose literal set
    includes another one are dropped; ``unpruned_count`` is the size under
    inclusion pruning alone.
    """
    if not is_quantifier_free(psi):
        raise ValueError("matrix must be quantifier-free")
    xs, ys = set(x_vars), set(y_vars)
    check_separated(psi, xs, ys)
    nnf = to_nnf(psi)
    sets = normal_form(nnf, kind, True, node_cap)
    unpruned = len(normal_form(nnf, kind, False, node_cap))
    cons = []
    for s in sets:
        chi, eta, param = _split(s, xs, ys)
        cons.append(Constituent(tuple(sort_items(chi)), tuple(sort_items(eta)), tuple(sort_items(param))))
    return NormalFormMatrix(kind, tuple(cons), tuple(x_vars), tuple(y_vars), tuple(z_vars), unpruned)


# ------------------------------------------ propositional redundancy check

def _satisfiable(clauses) -> bool:
    """Tiny DPLL over clauses given as frozensets of non-zero ints."""
    clauses = [set(c) for c in clauses]

    def simplify(cls, lit):
        out = []
        for c in cls:
            if lit in c:
                continue
            if -lit in c:
                c = c - {-lit}
                if not c:
                    return None
            out.append(c)
        return out

    def solve(cls):
        while True:
            unit = next((c for c in cls if len(c) == 1), None)
            if unit is None:
                break
            cls = simplify(cls, next(iter(unit)))
            if cls is None:
                return False
        if not cls:
            return True
        lit = next(iter(min(cls, key=len)))
        for choice in (lit, -lit):
            nxt = simplify(cls, choice)
            if nxt is not None and solve(nxt):
                return True
        return False

    if any(not c for c in clauses):
        return False
    return solve(clauses)


class _Props:
    def __init__(self):
        self.ids: dict = {}

    def lit(self, item) -> int:
        neg = isinstance(item, Not) and isinstance(item.body, (Atom, Eq))
        base = item.body if neg else item
        if base not in self.ids:
            self.ids[base] = len(self.ids) + 1
        return -self.ids[base] if neg else self.ids[base]


def irredundant(sets, kind: str, priority=None) -> list:
    """Remove constituents implied by the remaining ones (propositionally,
    items being opaque).  Candidates are tried in ``priority`` order."""
    props = _Props()
    enc = {s: frozenset(props.lit(i) for i in s) for s in sets}
    current = list(sets)
    order = sorted(sets, key=priority) if priority else list(sets)
    for s in order:
        others = [t for t in current if t != s]
        if kind == "CNF":
            # clause s is implied iff others ∧ ¬s is unsatisfiable
            test = [enc[t] for t in others] + [frozenset([-l]) for l in enc[s]]
        else:
            # conjunct s is implied iff s ∧ ¬(⋁ others) is unsatisfiable
            test = [frozenset(-l for l in enc[t]) for t in others] + [frozenset([l]) for l in enc[s]]
        if not _satisfiable(test):
            current = others
    return current


# ----------------------------------------------------------- transposition

def _check_budget(phi, node_cap):
    if node_cap is not None and node_count(phi) > node_cap:
        raise BudgetExceeded(f"formula exceeds {node_cap} nodes")


def _eliminate(xs, ys, body, node_cap):
    """One block step: ∀xs∃ys.body  ⟶  ⋀_k (∀xs.ψ_k) ∨ (∃ys.⋁_ℓ η_kℓ) ∨ params_k.

    ``body`` is an NNF combination of literals and quantified units; the result
    is again such a combination, with fresh units binding xs and ys.
    """
    xset, yset = set(xs), set(ys)
    dnf = normal_form(body, "DNF", True, node_cap)
    dnf = irredundant(dnf, "DNF", priority=lambda s: (-len(s), set_key(s)))
    e_units = set()
    terms = []
    for s in dnf:
        chi, eta, param = _split(s, xset, yset)
        items = list(chi) + list(param)
        if eta:
            unit = exists(ys, conj(sort_items(eta)))
            e_units.add(unit)
            items.append(unit)
        terms.append(frozenset(items))
    grouped = disj([conj(sort_items(t)) for t in sorted(terms, key=set_key)])
    cnf = normal_form(grouped, "CNF", True, node_cap)

    def prio(c):
        return (-len(c & e_units), -len(c), set_key(c))

    cnf = irredundant(cnf, "CNF", priority=prio)
    clauses = []
    for c in sorted(cnf, key=set_key):
        xpart = [i for i in c if i not in e_units and free_vars(i) & xset]
        ypart = [i for i in c if i in e_units]
        params = [i for i in c if i not in e_units and not free_vars(i) & xset]
        parts = []
        if xpart:
            parts.append(forall(xs, disj(sort_items(xpart))))
        if ypart:
            bodies = [_strip(u, len(ys)) for u in sort_items(ypart)]
            parts.append(exists(ys, disj(bodies)))
        parts.extend(sort_items(params))
        clauses.append(disj(parts))
    result = conj(clauses)
    _check_budget(result, node_cap)
    return result


def _strip(unit, k):
    for _ in range(k):
        unit = unit.body
    return unit


def pull_units(phi: Formula, used: set):
    """Prenex a combination of purely existential and purely universal units as
    ∃E∀A.M.  ∀-variables are shared across conjuncts and ∃-variables across
    disjuncts; everything else is renamed apart.  Returns (E, A, M)."""
    if isinstance(phi, (And, Or)):
        ea, aa, ma = pull_units(phi.left, used)
        eb, ab, mb = pull_units(phi.right, used)
        names_a = free_vars(ma) | set(ea) | set(aa)
        if isinstance(phi, And):
            shared_a, shared_b, rest_b = aa, ab, eb
        else:
            shared_a, shared_b, rest_b = ea, eb, ab
        mapping = {}
        for i, v in enumerate(shared_b):
            if i < len(shared_a):
                mapping[v] = shared_a[i]
        for v in list(rest_b) + list(shared_b[len(shared_a):]):
            if v in names_a:
                mapping[v] = fresh_name(v, used)
        mb = rename_vars(mb, mapping) if mapping else mb
        eb2 = [mapping.get(v, v) for v in eb]
        ab2 = [mapping.get(v, v) for v in ab]
        if isinstance(phi, And):
            return ea + eb2, aa + ab2[len(aa):], And(ma, mb)
        return ea + eb2[len(ea):], aa + ab2, Or(ma, mb)
    if isinstance(phi, Exists):
        e, a, m = pull_units(phi.body, used)
        return [phi.var] + e, a, m
    if isinstance(phi, Forall):
        e, a, m = pull_units(phi.body, used)
        if e:
            raise ValueError("existential unit nested under a universal one")
        return e, [phi.var] + a, m
    return [], [], phi


def _tidy(e, a, m, reserved):
    """Rename the pulled variables to base, base_1, base_2, ... in prefix order."""
    used = set(reserved)
    mapping = {}
    for v in list(e) + list(a):
        base = re.sub(r"(_\d+)+$", "", v) or v
        if base not in used:
            used.add(base)
            mapping[v] = base
        else:
            mapping[v] = fresh_name(base, used)
    return ([mapping[v] for v in e], [mapping[v] for v in a], rename_vars(m, mapping))


def _reserved(phi, bound):
    """Names that renamed bound variables must avoid."""
    return (all_names(phi) - set(bound)) | free_vars(phi)


def _split_prefix(phi):
    """Leading ∀-block, following ∃-block, and the rest."""
    xs, ys = [], []
    while isinstance(phi, Forall):
        xs.append(phi.var)
        phi = phi.body
    while isinstance(phi, Exists):
        ys.append(phi.var)
        phi = phi.body
    return xs, ys, phi


def transpose_block(phi: Formula, node_cap: int = DEFAULT_NODE_CAP) -> Formula:
    """∀x⃗∃y⃗.ψ  ⟶  an equivalent ∃y⃗_1…∃y⃗_m∀x⃗.ψ′ (free variables act as parameters)."""
    phi = rename_apart(phi)
    xs, ys, matrix = _split_prefix(phi)
    if not is_quantifier_free(matrix):
        raise ValueError("expected ∀x⃗∃y⃗ followed by a quantifier-free matrix")
    check_separated(matrix, xs, ys)
    body = _eliminate(xs, ys, to_nnf(matrix), node_cap)
    used = all_names(phi) | all_names(body)
    e, a, m = pull_units(body, used)
    if set(a) <= set(xs):
        a = xs
    e, a, m = _tidy(e, a, m, _reserved(phi, xs + ys) - set(a))
    out = exists(e, forall(a, m))
    _check_budget(out, node_cap)
    return out


def transpose_all(phi: Formula, node_cap: int = DEFAULT_NODE_CAP) -> Formula:
    """Equivalent ∃*∀* sentence by eliminating ∃-blocks innermost first."""
    from .analysis import prefix_blocks
    phi = to_prenex(rename_apart(phi))
    blocks, matrix = prefix_blocks(phi)
    zs = []
    if blocks and blocks[0][0] == "exists":
        zs = list(blocks[0][1])
        blocks = blocks[1:]
    pairs = []
    for pol, vs in blocks:
        if pol == "forall":
            pairs.append((list(vs), []))
        else:
            pairs[-1] = (pairs[-1][0], list(vs))
    check_separated(matrix, [v for p in pairs for v in p[0]], [v for p in pairs for v in p[1]])
    if not any(ys for _, ys in pairs):
        return phi
    body = to_nnf(matrix)
    for xs, ys in reversed(pairs):
        body = _eliminate(xs, ys, body, node_cap)
    used = all_names(phi) | all_names(body)
    e, a, m = pull_units(body, used)
    bound = [v for xs, ys in pairs for v in xs + ys]
    e, a, m = _tidy(e, a, m, _reserved(phi, bound) | set(zs))
    out = exists(zs + e, forall(a, m))
    _check_budget(out, node_cap)
    return out


# ------------------------------------------------------------ blow-up family

def gen_blowup(n: int, cap: int = 12):
    """(φ_n, φ′_n): ∀x∃y.⋀_i(P_i(x)↔Q_i(y)) and its explicit ∃^(2^n)∀ form."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > cap:
        raise BudgetExceeded(f"blow-up instance n={n} exceeds cap {cap}")
    x, y = Var("x"), Var("y")
    ps = [f"p{i}" for i in range(1, n + 1)]
    qs = [f"q{i}" for i in range(1, n + 1)]
    phi = Forall("x", Exists("y", conj(Iff(Atom(p, (x,)), Atom(q, (y,))) for p, q in zip(ps, qs))))
    names, parts = [], []
    for bits in itertools.product((0, 1), repeat=n):
        name = "y_" + "".join(map(str, bits))
        names.append(name)
        yb = Var(name)
        guard = conj(Atom(p, (x,)) if b else Not(Atom(p, (x,))) for p, b in zip(ps, bits))
        goal = conj(Atom(q, (yb,)) if b else Not(Atom(q, (yb,))) for q, b in zip(qs, bits))
        parts.append(Implies(guard, goal))
    return phi, exists(names, Forall("x", conj(parts)))
