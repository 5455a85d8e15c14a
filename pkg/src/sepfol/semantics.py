"""Finite structures, Tarskian evaluation and exhaustive structure enumeration."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Mapping

from .errors import BudgetExceeded, MissingInterpretation
from .syntax import (
    App, And, Atom, Bot, Const, Eq, Exists, Formula, Iff, Implies, Not, Or, Signature,
    Top, Var,
)

Assignment = Mapping[str, int]


@dataclass(frozen=True)
class Structure:
    universe_size: int
    constants: Mapping[str, int] = field(default_factory=dict)
    functions: Mapping[str, Mapping[tuple, int]] = field(default_factory=dict)
    predicates: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "constants", dict(self.constants))
        object.__setattr__(self, "functions",
                           {f: {tuple(k): v for k, v in t.items()} for f, t in self.functions.items()})
        object.__setattr__(self, "predicates",
                           {p: frozenset(tuple(x) for x in t) for p, t in self.predicates.items()})

    __hash__ = None

    def reduct(self, sig: Signature) -> "Structure":
        """Forget every symbol outside ``sig``."""
        return Structure(
            self.universe_size,
            {c: v for c, v in self.constants.items() if c in sig.constants},
            {f: t for f, t in self.functions.items() if f in sig.functions},
            {p: t for p, t in self.predicates.items() if p in sig.predicates},
        )


def eval_term(s: Structure, beta: Assignment, t) -> int:
    if isinstance(t, Var):
        try:
            return beta[t.name]
        except KeyError:
            raise MissingInterpretation(f"unassigned variable {t.name}") from None
    if isinstance(t, Const) or (isinstance(t, App) and not t.args):
        name = t.name if isinstance(t, Const) else t.function
        if name not in s.constants:
            raise MissingInterpretation(f"uninterpreted constant {name}")
        return s.constants[name]
    if t.function not in s.functions:
        raise MissingInterpretation(f"uninterpreted function {t.function}")
    key = tuple(eval_term(s, beta, a) for a in t.args)
    return s.functions[t.function][key]


def evaluate(s: Structure, beta: Assignment, phi: Formula) -> bool:
    """Truth value of ``phi`` in ``s`` under ``beta``; equality is identity."""
    if isinstance(phi, Atom):
        if phi.predicate not in s.predicates:
            raise MissingInterpretation(f"uninterpreted predicate {phi.predicate}")
        key = tuple(eval_term(s, beta, a) for a in phi.args)
        return key in s.predicates[phi.predicate]
    if isinstance(phi, Eq):
        return eval_term(s, beta, phi.left) == eval_term(s, beta, phi.right)
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Bot):
        return False
    if isinstance(phi, Not):
        return not evaluate(s, beta, phi.body)
    if isinstance(phi, And):
        return evaluate(s, beta, phi.left) and evaluate(s, beta, phi.right)
    if isinstance(phi, Or):
        return evaluate(s, beta, phi.left) or evaluate(s, beta, phi.right)
    if isinstance(phi, Implies):
        return (not evaluate(s, beta, phi.left)) or evaluate(s, beta, phi.right)
    if isinstance(phi, Iff):
        return evaluate(s, beta, phi.left) == evaluate(s, beta, phi.right)
    inner = dict(beta)
    want = isinstance(phi, Exists)
    for e in range(s.universe_size):
        inner[phi.var] = e
        if evaluate(s, inner, phi.body) == want:
            return want
    return not want


# -------------------------------------------------------------- enumeration

def layout(sig: Signature, size: int) -> list:
    """Digit positions of the enumeration, most significant first.

    Each entry is ``(kind, name, tuple, radix)``; constants come first, then
    function tables, then predicate tables, each in lexicographic order.
    """
    out = []
    for c in sorted(sig.constants):
        out.append(("const", c, (), size))
    for f in sorted(sig.functions):
        for tup in itertools.product(range(size), repeat=sig.functions[f]):
            out.append(("func", f, tup, size))
    for p in sorted(sig.predicates):
        for tup in itertools.product(range(size), repeat=sig.predicates[p]):
            out.append(("pred", p, tup, 2))
    return out


def structure_count(sig: Signature, size: int) -> int:
    n = size
    total = n ** len(sig.constants)
    for a in sig.functions.values():
        total *= n ** (n ** a)
    for a in sig.predicates.values():
        total *= 2 ** (n ** a)
    return total


def structure_from_digits(sig: Signature, size: int, digits, lay=None) -> Structure:
    lay = lay or layout(sig, size)
    consts, funcs = {}, {f: {} for f in sig.functions}
    preds = {p: set() for p in sig.predicates}
    for (kind, name, tup, _), d in zip(lay, digits):
        if kind == "const":
            consts[name] = int(d)
        elif kind == "func":
            funcs[name][tup] = int(d)
        elif d:
            preds[name].add(tup)
    return Structure(size, consts, funcs, preds)


def structure_at(sig: Signature, size: int, index: int, lay=None) -> Structure:
    lay = lay or layout(sig, size)
    digits = []
    for *_, radix in reversed(lay):
        digits.append(index % radix)
        index //= radix
    return structure_from_digits(sig, size, list(reversed(digits)), lay)


def enumerate_structures(sig: Signature, size: int, cap: int = 10**7) -> Iterator[Structure]:
    """Every interpretation of ``sig`` over ``{0..size-1}``, in lexicographic order."""
    if size < 1:
        raise ValueError("universe size must be at least 1")
    count = structure_count(sig, size)
    if count > cap:
        raise BudgetExceeded(f"{count} structures of size {size} exceed cap {cap}")
    lay = layout(sig, size)
    for digits in itertools.product(*[range(r) for *_, r in lay]):
        yield structure_from_digits(sig, size, digits, lay)


def assignments(variables, size: int) -> Iterator[dict]:
    variables = list(variables)
    for vals in itertools.product(range(size), repeat=len(variables)):
        yield dict(zip(variables, vals))


def substructure(s: Structure, elements) -> Structure | None:
    """Induced substructure on ``elements`` (relabelled 0..k-1), or None when the
    set is empty or not closed under constants and functions."""
    elems = sorted(set(elements))
    if not elems:
        return None
    index = {e: i for i, e in enumerate(elems)}
    if any(v not in index for v in s.constants.values()):
        return None
    funcs = {}
    for f, table in s.functions.items():
        sub = {}
        for args, v in table.items():
            if all(a in index for a in args):
                if v not in index:
                    return None
                sub[tuple(index[a] for a in args)] = index[v]
        funcs[f] = sub
    preds = {p: {tuple(index[a] for a in t) for t in table if all(a in index for a in t)}
             for p, table in s.predicates.items()}
    consts = {c: index[v] for c, v in s.constants.items()}
    return Structure(len(elems), consts, funcs, preds)
