"""Command-line front end: ``sepfol <command> FILE [options]``."""
from __future__ import annotations

import argparse
import sys

from . import __version__
from .analysis import classify
from .bounds import (
    compute_bounds, inner_skolemize, is_overflow, range_restrict_open, skolemize_range_restricted,
)
from .config import Caps
from .decide import Sat, Unsat, decide_sf
from .errors import ArityConflict, NotSF, ParseError, SchemaError, SepfolError
from .oracle import oracle_decide
from .reductions import (
    eliminate_equality_bounded, eliminate_equality_monadic, eliminate_unary_functions_record,
    recover_unary_functions, to_bsr_clauses,
)
from .semantics import evaluate
from .serialize import print_report, print_structure, parse_structure, to_jsonable
from .syntax import Formula
from .tptp import parse_tptp, print_problem, print_tptp
from .transform import gen_blowup, transpose_all

EXIT_OK, EXIT_UNSAT, EXIT_UNKNOWN, EXIT_USAGE, EXIT_PARSE, EXIT_ERROR = 0, 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


class _Out:
    def __init__(self, fmt: str, command: str, verbose: bool):
        self.fmt = fmt
        self.report = {"command": command}
        self.lines: list = []
        if verbose:
            self.report["version"] = __version__
            self.lines.append(f"% sepfol {__version__}\n")

    def text(self, s: str):
        self.lines.append(s)

    def field(self, key, value):
        self.report[key] = to_jsonable(value)

    def flush(self, stream):
        if self.fmt == "json":
            stream.write(print_report(self.report))
        else:
            stream.write("".join(self.lines))


def _labels(phi: Formula):
    try:
        return list(classify(phi).labels)
    except SepfolError:
        return []


def _emit_formula(out: _Out, label: str, phi: Formula):
    labels = _labels(phi)
    out.text(f"% labels: {', '.join(labels)}\n")
    out.text(print_problem([(label, phi)]))
    out.field("formula", print_tptp(phi))
    out.field("labels", labels)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _subject(path: str):
    problem = parse_tptp(_read(path), name=path)
    if any(role == "conjecture" for _, role, _ in problem.formulas):
        raise UsageError("conjectures are not supported; state the sentence as an axiom")
    first = problem.first_axiom()
    if first is None:
        raise UsageError("input contains no axiom")
    return first


def _verdict(out: _Out, v) -> int:
    out.field("verdict", v.name)
    if isinstance(v, Sat):
        out.field("size", v.size)
        out.field("model", v.model)
        out.text(f"% verdict: Sat (size {v.size})\n")
        out.text(print_structure(v.model))
        return EXIT_OK
    if isinstance(v, Unsat):
        out.field("bound_checked", v.bound_checked)
        out.text(f"% verdict: Unsat (checked sizes up to {v.bound_checked})\n")
        return EXIT_UNSAT
    out.field("reason", v.reason)
    out.field("detail", v.detail)
    out.text(f"% verdict: Unknown ({v.reason}) {v.detail}\n")
    return EXIT_UNKNOWN


# ----------------------------------------------------------- commands

def cmd_classify(args, caps, out):
    _, phi = _subject(args.file)
    lab = classify(phi)
    out.field("labels", list(lab.labels))
    out.field("has_equality", lab.has_equality)
    out.field("has_nonconstant_functions", lab.has_nonconstant_functions)
    out.field("diagnostics", list(lab.diagnostics))
    out.text(f"% labels: {', '.join(lab.labels)}\n")
    for d in lab.diagnostics:
        out.text(f"% note: {d}\n")
    return EXIT_OK


def cmd_transpose(args, caps, out):
    label, phi = _subject(args.file)
    _emit_formula(out, label, transpose_all(phi, caps.node_cap))
    return EXIT_OK


def cmd_bounds(args, caps, out):
    _, phi = _subject(args.file)
    b = compute_bounds(phi, caps.magnitude_cap)
    for key in ("regime", "m_dnf", "m_cnf", "kappa_cnf", "m_star", "domain_bound",
                "m_dnf_unpruned", "m_cnf_unpruned"):
        value = getattr(b, key)
        out.field(key, value)
        out.text(f"{key}: {'Overflow' if is_overflow(value) else value}\n")
    out.field("per_block", [list(p) for p in b.per_block])
    out.text("per_block: " + " ".join(f"{k}:{'Overflow' if is_overflow(w) else w}"
                                      for k, w in b.per_block) + "\n")
    return EXIT_UNKNOWN if is_overflow(b.domain_bound) else EXIT_OK


def cmd_skolemize(args, caps, out):
    label, phi = _subject(args.file)
    fn = {"range": skolemize_range_restricted, "inner": inner_skolemize,
          "open": range_restrict_open}[args.mode]
    _emit_formula(out, label, fn(phi))
    return EXIT_OK


def cmd_to_bsr(args, caps, out):
    _, phi = _subject(args.file)
    encoding = {"relational": "Relational", "skolem": "SkolemFn"}[args.encoding]
    cs = to_bsr_clauses(phi, encoding, clause_cap=caps.constant_cap * 100)
    labels = _labels(cs.to_formula())
    out.text(f"% labels: {', '.join(labels)}\n")
    out.text(cs.to_tptp())
    out.field("labels", labels)
    out.field("clauses", [[print_tptp(l) for l in c] for c in cs.clauses])
    out.field("provenance", list(cs.provenance))
    return EXIT_OK


def cmd_elim_eq(args, caps, out):
    label, phi = _subject(args.file)
    if args.k is not None:
        result = eliminate_equality_bounded(phi, args.k)
        out.field("k", args.k)
    elif "RelationalMonadicEq" in classify(phi):
        result = eliminate_equality_monadic(phi)
    else:
        bound = compute_bounds(phi, caps.magnitude_cap).domain_bound
        if is_overflow(bound):
            raise SepfolError("small-model bound overflows; pass --k explicitly")
        result = eliminate_equality_bounded(phi, bound)
        out.field("k", bound)
    _emit_formula(out, label, result)
    return EXIT_OK


def cmd_elim_fn(args, caps, out):
    label, phi = _subject(args.file)
    _emit_formula(out, label, eliminate_unary_functions_record(phi).formula)
    return EXIT_OK


def cmd_decide(args, caps, out):
    _, phi = _subject(args.file)
    cap = args.cap if args.cap is not None else caps.size_cap
    labels = classify(phi)
    rec = None
    if "SF" not in labels and "SFExtendedUnaryFns" in labels:
        rec = eliminate_unary_functions_record(phi)
        target = rec.formula
    elif "SF" in labels:
        target = phi
    else:
        raise NotSF("sentence is outside the separated fragment")
    v = decide_sf(target, cap, caps.structure_cap, caps.magnitude_cap)
    if rec is not None and isinstance(v, Sat):
        model = recover_unary_functions(rec, v.model)
        assert evaluate(model, {}, phi)
        v = Sat(model, v.size)
    return _verdict(out, v)


def cmd_eval(args, caps, out):
    _, phi = _subject(args.file)
    with open(args.model, encoding="utf-8") as fh:
        model = parse_structure(fh.read())
    value = evaluate(model, {}, phi)
    out.field("value", value)
    out.text(f"{'true' if value else 'false'}\n")
    return EXIT_OK if value else EXIT_UNSAT


def cmd_gen_blowup(args, caps, out):
    if args.n < 1:
        raise UsageError("N must be at least 1")
    phi, phi_prime = gen_blowup(args.n)
    out.text(f"% labels: {', '.join(_labels(phi))}\n")
    out.text(print_problem([(f"phi_{args.n}", phi), (f"phi_prime_{args.n}", phi_prime)]))
    out.field("formula", print_tptp(phi))
    out.field("transposed", print_tptp(phi_prime))
    out.field("labels", _labels(phi))
    return EXIT_OK


def cmd_oracle(args, caps, out):
    _, phi = _subject(args.file)
    return _verdict(out, oracle_decide(phi, args.max_size, caps.structure_cap))


COMMANDS = {
    "classify": cmd_classify, "transpose": cmd_transpose, "bounds": cmd_bounds,
    "skolemize": cmd_skolemize, "to-bsr": cmd_to_bsr, "elim-eq": cmd_elim_eq,
    "elim-fn": cmd_elim_fn, "decide": cmd_decide, "eval": cmd_eval,
    "gen-blowup": cmd_gen_blowup, "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("tptp", "json"), default="tptp")
    common.add_argument("--verbose", action="store_true")
    parser = _Parser(prog="sepfol", description="Tools for the separated first-order fragment.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_, file=True):
        p = sub.add_parser(name, help=help_, parents=[common])
        if file:
            p.add_argument("file", help="TPTP file, or - for stdin")
        return p

    add("classify", "fragment labels")
    add("transpose", "move existential blocks outward")
    add("bounds", "small-model bound")
    add("skolemize", "range-restricted Skolemization").add_argument(
        "--mode", choices=("range", "inner", "open"), default="range")
    add("to-bsr", "BS(R) clause set").add_argument(
        "--encoding", choices=("relational", "skolem"), default="relational")
    add("elim-eq", "eliminate equality").add_argument("--k", type=int)
    add("elim-fn", "eliminate unary functions")
    add("decide", "decide satisfiability").add_argument("--cap", type=int)
    add("eval", "evaluate in a JSON structure").add_argument("--model", required=True)
    add("gen-blowup", "sentence pair with exponential transposition", file=False).add_argument(
        "n", type=int)
    add("oracle", "brute-force model search").add_argument("--max-size", type=int, required=True)
    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        caps = Caps.from_env()
        if getattr(args, "k", None) is not None and args.k < 1:
            raise UsageError("--k must be positive")
        if getattr(args, "cap", None) is not None and args.cap < 1:
            raise UsageError("--cap must be positive")
        if getattr(args, "max_size", None) is not None and args.max_size < 1:
            raise UsageError("--max-size must be positive")
    except UsageError as exc:
        sys.stderr.write(f"sepfol: usage error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"sepfol: bad SEPFOL_CAPS: {exc}\n")
        return EXIT_USAGE
    out = _Out(args.format, args.command, args.verbose)
    try:
        code = COMMANDS[args.command](args, caps, out)
    except UsageError as exc:
        sys.stderr.write(f"sepfol: {exc}\n")
        return EXIT_USAGE
    except (ParseError, ArityConflict) as exc:
        sys.stderr.write(f"sepfol: parse error: {exc}\n")
        return EXIT_PARSE
    except (SepfolError, SchemaError, OSError, ValueError) as exc:
        sys.stderr.write(f"sepfol: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    out.flush(sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
