"""Reader and printer for a small TPTP-FOF subset."""
from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import ParseError
from .syntax import (
    App, And, Atom, BOT, Const, Eq, Exists, Forall, Formula, Iff, Implies, Not, Or,
    Signature, TOP, Top, Bot, Var, extract_signature,
)


@dataclass(frozen=True)
class Problem:
    name: str
    formulas: tuple  # of (label, role, formula)
    signature: Signature = field(default_factory=Signature)

    def first_axiom(self):
        for label, role, phi in self.formulas:
            if role == "axiom":
                return label, phi
        return None


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*|/\*.*?\*/)
  | (?P<op><=>|=>|!=|[()\[\],:.!?~&|=])
  | (?P<defined>\$[a-z_]+)
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z][A-Za-z0-9_]*|[0-9]+)
""", re.VERBOSE | re.DOTALL)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, chunk, line, col))
        nl = chunk.count("\n")
        if nl:
            line += nl
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


def var_from_tptp(name: str) -> str:
    return name[0].lower() + name[1:]


def var_to_tptp(name: str) -> str:
    return name[0].upper() + name[1:]


def _sym_to_tptp(name: str) -> str:
    return name[0].lower() + name[1:] if name[:1].isupper() else name


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str):
        t = self.tok
        found = t.text if t.kind != "eof" else "end of input"
        raise ParseError(f"{msg}, found {found!r}", t.line, t.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def problem(self, name: str) -> Problem:
        out = []
        labels = set()
        while self.tok.kind != "eof":
            if not (self.tok.kind == "lower" and self.tok.text == "fof"):
                self.error("expected 'fof'")
            self.i += 1
            self.expect("(")
            if self.tok.kind != "lower":
                self.error("expected formula name")
            label = self.tok.text
            if label in labels:
                self.error(f"duplicate label {label!r}")
            labels.add(label)
            self.i += 1
            self.expect(",")
            if self.tok.kind != "lower" or self.tok.text not in ("axiom", "conjecture"):
                self.error("expected role 'axiom' or 'conjecture'")
            role = self.tok.text
            self.i += 1
            self.expect(",")
            phi = self.formula()
            self.expect(")")
            self.expect(".")
            out.append((label, role, phi))
        sig = extract_signature(*[f for _, _, f in out]) if out else Signature()
        return Problem(name, tuple(out), sig)

    def formula(self) -> Formula:
        left = self.implication()
        while self.accept("<=>"):
            left = Iff(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.accept("=>"):
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return _fold(Or, parts)

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return _fold(And, parts)

    def unary(self) -> Formula:
        t = self.tok
        if self.accept("~"):
            return Not(self.unary())
        if t.kind == "op" and t.text in ("!", "?"):
            self.i += 1
            self.expect("[")
            names = [self.variable()]
            while self.accept(","):
                names.append(self.variable())
            self.expect("]")
            self.expect(":")
            body = self.formula()
            cls = Forall if t.text == "!" else Exists
            for v in reversed(names):
                body = cls(v, body)
            return body
        if self.accept("("):
            phi = self.formula()
            self.expect(")")
            return phi
        if t.kind == "defined":
            if t.text == "$true":
                self.i += 1
                return TOP
            if t.text == "$false":
                self.i += 1
                return BOT
            self.error("unsupported defined symbol")
        return self.atom()

    def variable(self) -> str:
        if self.tok.kind != "upper":
            self.error("expected variable")
        name = var_from_tptp(self.tok.text)
        self.i += 1
        return name

    def atom(self) -> Formula:
        start = self.tok
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        if isinstance(left, Var):
            raise ParseError("variable used as formula", start.line, start.col)
        if isinstance(left, Const):
            return Atom(left.name, ())
        return Atom(left.function, left.args)

    def term(self):
        t = self.tok
        if t.kind == "upper":
            self.i += 1
            return Var(var_from_tptp(t.text))
        if t.kind == "lower":
            self.i += 1
            if self.accept("("):
                args = [self.term()]
                while self.accept(","):
                    args.append(self.term())
                self.expect(")")
                return App(t.text, tuple(args))
            return Const(t.text)
        self.error("expected term")


def _fold(cls, parts):
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = cls(p, out)
    return out


def parse_tptp(text: str, name: str = "problem") -> Problem:
    return _Parser(text).problem(name)


def parse_formula(text: str) -> Formula:
    """Parse a bare FOF formula (no ``fof(...)`` wrapper)."""
    p = _Parser(text)
    phi = p.formula()
    if p.tok.kind != "eof":
        p.error("trailing input")
    return phi


# ------------------------------------------------------------------ printing

_OPS = {And: "&", Or: "|", Implies: "=>", Iff: "<=>"}


def _term(t) -> str:
    if isinstance(t, Var):
        return var_to_tptp(t.name)
    if isinstance(t, Const):
        return _sym_to_tptp(t.name)
    if not t.args:
        return _sym_to_tptp(t.function)
    return f"{_sym_to_tptp(t.function)}({','.join(_term(a) for a in t.args)})"


def _operand(phi) -> str:
    s = print_tptp(phi)
    if isinstance(phi, (Forall, Exists)):
        return f"({s})"
    return s


def print_tptp(phi: Formula) -> str:
    if isinstance(phi, Atom):
        if not phi.args:
            return _sym_to_tptp(phi.predicate)
        return f"{_sym_to_tptp(phi.predicate)}({','.join(_term(a) for a in phi.args)})"
    if isinstance(phi, Eq):
        return f"{_term(phi.left)} = {_term(phi.right)}"
    if isinstance(phi, Top):
        return "$true"
    if isinstance(phi, Bot):
        return "$false"
    if isinstance(phi, Not):
        if isinstance(phi.body, Eq):
            return f"{_term(phi.body.left)} != {_term(phi.body.right)}"
        return f"~ {_operand(phi.body)}"
    op = _OPS.get(type(phi))
    if op:
        return f"({_operand(phi.left)} {op} {_operand(phi.right)})"
    cls = type(phi)
    names = []
    body = phi
    while isinstance(body, cls):
        names.append(var_to_tptp(body.var))
        body = body.body
    q = "!" if cls is Forall else "?"
    return f"{q}[{','.join(names)}]: {print_tptp(body)}"


def print_problem(formulas, role: str = "axiom") -> str:
    """Render ``(label, formula)`` pairs as ``fof`` lines."""
    return "".join(f"fof({label}, {role}, {print_tptp(phi)}).\n" for label, phi in formulas)
