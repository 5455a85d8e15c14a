"""Terms, formulas, signatures and the basic syntactic operations on them."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Union

from .errors import ArityConflict, CaptureError


# ---------------------------------------------------------------- terms

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    function: str
    args: tuple

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.function
        return f"{self.function}({','.join(map(str, self.args))})"


Term = Union[Var, Const, App]


# ------------------------------------------------------------- formulas

@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self):
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(map(str, self.args))})"


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term

    def __str__(self):
        return f"{self.left}≈{self.right}"


@dataclass(frozen=True)
class Top:
    def __str__(self):
        return "⊤"


@dataclass(frozen=True)
class Bot:
    def __str__(self):
        return "⊥"


@dataclass(frozen=True)
class Not:
    body: "Formula"

    def __str__(self):
        return f"¬{_wrap(self.body)}"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} ∧ {self.right})"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} ∨ {self.right})"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} → {self.right})"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"

    def __str__(self):
        return f"({self.left} ↔ {self.right})"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"

    def __str__(self):
        return f"∀{self.var}.{_wrap(self.body)}"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"

    def __str__(self):
        return f"∃{self.var}.{_wrap(self.body)}"


Formula = Union[Atom, Eq, Top, Bot, Not, And, Or, Implies, Iff, Forall, Exists]

TOP = Top()
BOT = Bot()
BINARY = (And, Or, Implies, Iff)
QUANTIFIERS = (Forall, Exists)


def _wrap(phi) -> str:
    s = str(phi)
    if isinstance(phi, QUANTIFIERS + (Not,)) or s.startswith("("):
        return s
    if isinstance(phi, Eq):
        return f"({s})"
    return s


# ------------------------------------------------------------- builders

def conj(parts: Iterable) -> Formula:
    """Right-nested conjunction; the empty conjunction is ⊤."""
    parts = list(parts)
    if not parts:
        return TOP
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = And(p, out)
    return out


def disj(parts: Iterable) -> Formula:
    """Right-nested disjunction; the empty disjunction is ⊥."""
    parts = list(parts)
    if not parts:
        return BOT
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Or(p, out)
    return out


def forall(vars_: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Forall(v, body)
    return body


def exists(vars_: Iterable[str], body: Formula) -> Formula:
    for v in reversed(list(vars_)):
        body = Exists(v, body)
    return body


def negate(lit: Formula) -> Formula:
    if isinstance(lit, Not):
        return lit.body
    if isinstance(lit, Top):
        return BOT
    if isinstance(lit, Bot):
        return TOP
    return Not(lit)


def is_literal(phi: Formula) -> bool:
    if isinstance(phi, Not):
        return isinstance(phi.body, (Atom, Eq))
    return isinstance(phi, (Atom, Eq))


# ------------------------------------------------------------ traversal

def term_vars(t: Term) -> set:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def atom_vars(a: Formula) -> set:
    """Variables of an Atom or Eq node."""
    terms = a.args if isinstance(a, Atom) else (a.left, a.right)
    out = set()
    for t in terms:
        out |= term_vars(t)
    return out


def free_vars(phi: Formula) -> set:
    if isinstance(phi, (Atom, Eq)):
        return atom_vars(phi)
    if isinstance(phi, (Top, Bot)):
        return set()
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, BINARY):
        return free_vars(phi.left) | free_vars(phi.right)
    return free_vars(phi.body) - {phi.var}


def subformulas(phi: Formula) -> Iterator[Formula]:
    """Pre-order walk."""
    stack = [phi]
    while stack:
        f = stack.pop()
        yield f
        if isinstance(f, Not) or isinstance(f, QUANTIFIERS):
            stack.append(f.body)
        elif isinstance(f, BINARY):
            stack.append(f.right)
            stack.append(f.left)


def atoms(phi: Formula) -> list:
    """Every Atom/Eq occurrence, left to right."""
    return [f for f in subformulas(phi) if isinstance(f, (Atom, Eq))]


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)


def _atom_terms(a):
    return a.args if isinstance(a, Atom) else (a.left, a.right)


def bound_vars(phi: Formula) -> list:
    return [f.var for f in subformulas(phi) if isinstance(f, QUANTIFIERS)]


def quantifier_count(phi: Formula) -> int:
    return sum(1 for f in subformulas(phi) if isinstance(f, QUANTIFIERS))


def is_quantifier_free(phi: Formula) -> bool:
    return quantifier_count(phi) == 0


def all_names(phi: Formula) -> set:
    """Every variable and symbol name occurring in phi."""
    out = set()
    for f in subformulas(phi):
        if isinstance(f, QUANTIFIERS):
            out.add(f.var)
        elif isinstance(f, (Atom, Eq)):
            if isinstance(f, Atom):
                out.add(f.predicate)
            for t in _atom_terms(f):
                for s in subterms(t):
                    out.add(s.function if isinstance(s, App) else s.name)
    return out


# ------------------------------------------------------------- signature

@dataclass(frozen=True)
class Signature:
    predicates: Mapping[str, int] = field(default_factory=dict)
    functions: Mapping[str, int] = field(default_factory=dict)
    constants: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "predicates", dict(self.predicates))
        object.__setattr__(self, "functions", dict(self.functions))
        object.__setattr__(self, "constants", frozenset(self.constants))

    def __hash__(self):
        return hash((tuple(sorted(self.predicates.items())),
                     tuple(sorted(self.functions.items())), self.constants))

    def names(self) -> set:
        return set(self.predicates) | set(self.functions) | set(self.constants)

    def merge(self, other: "Signature") -> "Signature":
        b = _SigBuilder()
        for s in (self, other):
            for p, a in s.predicates.items():
                b.add("predicate", p, a)
            for f, a in s.functions.items():
                b.add("function", f, a)
            for c in s.constants:
                b.add("function", c, 0)
        return b.build()


class _SigBuilder:
    def __init__(self):
        self.kind = {}
        self.arity = {}

    def add(self, kind: str, name: str, arity: int):
        if name in self.kind:
            if self.kind[name] != kind or self.arity[name] != arity:
                raise ArityConflict(
                    f"symbol {name!r} used as {self.kind[name]}/{self.arity[name]} and {kind}/{arity}")
            return
        self.kind[name] = kind
        self.arity[name] = arity

    def term(self, t: Term):
        if isinstance(t, Const):
            self.add("function", t.name, 0)
        elif isinstance(t, App):
            self.add("function", t.function, len(t.args))
            for a in t.args:
                self.term(a)

    def build(self) -> Signature:
        preds = {n: a for n, a in self.arity.items() if self.kind[n] == "predicate"}
        funcs = {n: a for n, a in self.arity.items() if self.kind[n] == "function" and a > 0}
        consts = {n for n, a in self.arity.items() if self.kind[n] == "function" and a == 0}
        return Signature(preds, funcs, frozenset(consts))


def extract_signature(*phis: Formula) -> Signature:
    b = _SigBuilder()
    for phi in phis:
        for a in atoms(phi):
            if isinstance(a, Atom):
                b.add("predicate", a.predicate, len(a.args))
            for t in _atom_terms(a):
                b.term(t)
    return b.build()


def consts(phi: Formula) -> set:
    return set(extract_signature(phi).constants)


def has_equality(phi: Formula) -> bool:
    return any(isinstance(a, Eq) for a in atoms(phi))


# ---------------------------------------------------------- fresh names

def fresh_name(base: str, used: set) -> str:
    """Least ``base_n`` (n ≥ 1) not in ``used``; the result is added to ``used``."""
    n = 1
    while f"{base}_{n}" in used:
        n += 1
    name = f"{base}_{n}"
    used.add(name)
    return name


# ----------------------------------------------------------- substitution

def subst_term(t: Term, sigma: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return sigma.get(t.name, t)
    if isinstance(t, App):
        return App(t.function, tuple(subst_term(a, sigma) for a in t.args))
    return t


def _subst_atom(a, sigma):
    if isinstance(a, Atom):
        return Atom(a.predicate, tuple(subst_term(t, sigma) for t in a.args))
    return Eq(subst_term(a.left, sigma), subst_term(a.right, sigma))


def substitute(phi: Formula, sigma: Mapping[str, Term]) -> Formula:
    """Simultaneous replacement of free variables.

    Raises CaptureError when a binder would capture a variable of an image term.
    """
    sigma = {k: v for k, v in sigma.items() if not (isinstance(v, Var) and v.name == k)}
    if not sigma:
        return phi
    return _subst(phi, sigma)


def _subst(phi, sigma):
    if not sigma:
        return phi
    if isinstance(phi, (Atom, Eq)):
        return _subst_atom(phi, sigma)
    if isinstance(phi, (Top, Bot)):
        return phi
    if isinstance(phi, Not):
        return Not(_subst(phi.body, sigma))
    if isinstance(phi, BINARY):
        return type(phi)(_subst(phi.left, sigma), _subst(phi.right, sigma))
    inner = {k: v for k, v in sigma.items() if k != phi.var}
    live = free_vars(phi.body)
    for k, v in inner.items():
        if k in live and phi.var in term_vars(v):
            raise CaptureError(f"substituting {k} by {v} would be captured by {phi.var}")
    return type(phi)(phi.var, _subst(phi.body, inner))


def rename_vars(phi: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename free variables (variable-to-variable substitution)."""
    return substitute(phi, {k: Var(v) for k, v in mapping.items()})


# ------------------------------------------------------------ renaming

def rename_apart(phi: Formula, reserved: Iterable[str] = ()) -> Formula:
    """Alpha-rename so that bound variables are pairwise distinct and clash with
    neither free variables nor ``reserved``."""
    reserved = set(reserved)
    used = all_names(phi) | reserved
    blocked = free_vars(phi) | reserved
    seen: set = set()

    def go(f, env):
        if isinstance(f, (Atom, Eq)):
            return _subst_atom(f, env) if env else f
        if isinstance(f, (Top, Bot)):
            return f
        if isinstance(f, Not):
            return Not(go(f.body, env))
        if isinstance(f, BINARY):
            return type(f)(go(f.left, env), go(f.right, env))
        v = f.var
        if v in blocked or v in seen:
            new = fresh_name(v, used)
        else:
            new = v
        seen.add(new)
        env2 = dict(env)
        if new == v:
            env2.pop(v, None)
        else:
            env2[v] = Var(new)
        return type(f)(new, go(f.body, env2))

    return go(phi, {})


def is_renamed_apart(phi: Formula) -> bool:
    bv = bound_vars(phi)
    return len(bv) == len(set(bv)) and not (set(bv) & free_vars(phi))


# ------------------------------------------------------------- length

def term_len(t: Term) -> int:
    if isinstance(t, App):
        return 1 + sum(term_len(a) for a in t.args)
    return 1


def formula_len(phi: Formula) -> int:
    """Node count: symbols and ¬/∧/∨ count 1, quantifiers 2, → and ↔ expanded first."""
    if isinstance(phi, Atom):
        return 1 + sum(term_len(t) for t in phi.args)
    if isinstance(phi, Eq):
        return 1 + term_len(phi.left) + term_len(phi.right)
    if isinstance(phi, (Top, Bot)):
        return 1
    if isinstance(phi, Not):
        return 1 + formula_len(phi.body)
    if isinstance(phi, (And, Or)):
        return 1 + formula_len(phi.left) + formula_len(phi.right)
    if isinstance(phi, Implies):
        # len(¬a ∨ b)
        return 2 + formula_len(phi.left) + formula_len(phi.right)
    if isinstance(phi, Iff):
        # len((¬a ∨ b) ∧ (a ∨ ¬b))
        return 5 + 2 * (formula_len(phi.left) + formula_len(phi.right))
    return 2 + formula_len(phi.body)


def node_count(phi: Formula) -> int:
    """Plain AST size, used for budget checks."""
    return sum(1 for _ in subformulas(phi))


# --------------------------------------------------------- shorthands

def P(name: str, *args) -> Atom:
    """Atom builder; plain string arguments become variables."""
    return Atom(name, tuple(term(a) for a in args))


def term(a) -> Term:
    if isinstance(a, (Var, Const, App)):
        return a
    return Var(a)
