"""Acceptance criteria 1-9; each prints one PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import itertools
import os
import random
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sepfol.analysis import classify, prefix_blocks
from sepfol.bounds import (
    compute_bounds, inner_skolemize, range_restrict, skolemize_range_restricted,
)
from sepfol.decide import Sat, decide_sf, fingerprint_table
from sepfol.errors import BudgetExceeded
from sepfol.generate import random_ea, random_matrix, random_monadic, random_sf
from sepfol.oracle import first_model, oracle_decide, oracle_equivalent
from sepfol.reductions import (
    eliminate_equality_bounded, eliminate_equality_monadic, eliminate_unary_functions,
    to_bsr_clauses,
)
from sepfol.semantics import enumerate_structures, evaluate, structure_count, substructure
from sepfol.syntax import (
    And, App, Atom, Const, Exists, Forall, Iff, Implies, Or, Signature, Var, extract_signature, forall,
    has_equality, rename_apart, substitute,
)
from sepfol.tptp import parse_formula
from sepfol.transform import gen_blowup, miniscope, to_nnf, to_prenex, transpose_all, transpose_block

from fixtures import (
    EQ_SF_SAT, EQ_SF_UNSAT, MONADIC_EQ_SAT, MONADIC_EQ_UNSAT, SAT_SINGLE, UNARY_FN_SAT,
    UNARY_FN_UNSAT, UNSAT_SINGLE,
)


def _verdict(phi, size):
    return oracle_decide(phi, size).name


def _parts(phi, cls):
    if isinstance(phi, cls):
        return _parts(phi.left, cls) + _parts(phi.right, cls)
    return [phi]


# ------------------------------------------------------------- criteria

def criterion_1():
    phi = parse_formula("![X]: ?[Y]: (p(X) <=> q(Y))")
    out = transpose_all(phi)
    blocks, matrix = prefix_blocks(out)
    kinds = [(k, len(vs)) for k, vs in blocks]
    if kinds != [("exists", 2), ("forall", 1)]:
        return False, f"prefix {kinds}"
    (ys, (x,)) = blocks[0][1], blocks[1][1]
    clauses = {frozenset(_parts(c, Or)) for c in _parts(matrix, And)}
    expected = {frozenset(parse_formula(t) for t in pair)
                for pair in (("~ p(X)", "q(Y1)"), ("~ q(Y2)", "p(X)"))}
    renamed = [{frozenset(substitute(l, {x: Var("x"), ys[0]: Var(a), ys[1]: Var(b)}) for l in c)
                for c in clauses} for a, b in (("y1", "y2"), ("y2", "y1"))]
    if expected not in renamed:
        return False, f"matrix {matrix}"
    return oracle_equivalent(phi, out, 3), "oracle_equivalent at size 3"


def criterion_2():
    from test_decide import ETAS, FP, LAMBDA1, LAMBDA2
    lam1, lam2 = fingerprint_table(FP, ETAS, [["y1"], ["y2"]])
    ok2 = {k: set(v) for k, v in lam2.entries.items()} == LAMBDA2 and len(LAMBDA2) == 9
    ok1 = {k: set(v) for k, v in lam1.entries.items()} == LAMBDA1 and len(LAMBDA1) == 3
    return ok1 and ok2, "9 level-2 and 3 level-1 entries"


def criterion_3():
    notes = []
    for n, size in ((1, 3), (2, 2)):
        phi, phi_prime = gen_blowup(n)
        blocks, _ = prefix_blocks(phi_prime)
        n_exists = sum(len(vs) for k, vs in blocks if k == "exists")
        if n_exists != 2 ** n:
            return False, f"n={n}: {n_exists} existentials"
        if not oracle_equivalent(phi, phi_prime, size):
            return False, f"n={n}: not equivalent at size {size}"
        notes.append(f"n={n}: {n_exists} existentials, equivalent at size {size}")
    return True, "; ".join(notes)


def criterion_4():
    fixtures = SAT_SINGLE + UNSAT_SINGLE
    for text in fixtures:
        phi = parse_formula(text)
        bound = compute_bounds(phi).domain_bound
        if bound > 4:
            return False, f"fixture bound {bound} > 4: {text}"
        forms = (phi, range_restrict(phi), skolemize_range_restricted(phi), inner_skolemize(phi))
        verdicts = [_verdict(f, bound) for f in forms]
        expected = "Sat" if text in SAT_SINGLE else "Unsat"
        if set(verdicts) != {expected}:
            return False, f"{text}: {verdicts}"
    return True, f"{len(fixtures)} fixtures x 4 forms agree"


def _sweep_sat(phi, max_size=4, cap=10**7):
    """True when some structure of size ≤ max_size satisfies phi (within cap)."""
    sig = extract_signature(phi)
    for size in range(1, max_size + 1):
        try:
            if first_model(phi, size, sig, cap) is not None:
                return True
        except BudgetExceeded:
            return False
    return False


def criterion_5():
    checked = 0
    for text in SAT_SINGLE + UNSAT_SINGLE + EQ_SF_SAT + EQ_SF_UNSAT:
        phi = parse_formula(text)
        if "SF" not in classify(phi) or not _sweep_sat(phi):
            continue
        v = decide_sf(phi)
        bound = compute_bounds(phi).domain_bound
        if not isinstance(v, Sat) or v.size > bound or not evaluate(v.model, {}, phi):
            return False, f"{text}: {v}"
        checked += 1
    return checked >= 10, f"{checked} satisfiable fixtures decided Sat within bound"


def _unsat_within(phi, limit, cap=10**7):
    """(no model of size ≤ n, n), where n ≤ limit is the largest size within cap."""
    sig = extract_signature(phi)
    reached = 0
    for size in range(1, limit + 1):
        if structure_count(sig, size) > cap:
            break
        if first_model(phi, size, sig, cap) is not None:
            return False, size
        reached = size
    return reached > 0, reached


def criterion_6():
    for text in UNARY_FN_SAT + UNARY_FN_UNSAT:
        phi = parse_formula(text)
        out = eliminate_unary_functions(phi)
        expected = "Sat" if text in UNARY_FN_SAT else "Unsat"
        if extract_signature(out).functions or _verdict(phi, 3) != _verdict(out, 3) or \
                _verdict(out, 3) != expected:
            return False, f"unary functions: {text}"
    for text in MONADIC_EQ_SAT + MONADIC_EQ_UNSAT:
        phi = parse_formula(text)
        out = eliminate_equality_monadic(phi)
        expected = "Sat" if text in MONADIC_EQ_SAT else "Unsat"
        if has_equality(out) or {_verdict(phi, 3), _verdict(out, 3)} != {expected}:
            return False, f"monadic equality: {text}"
    for text in EQ_SF_SAT + EQ_SF_UNSAT:
        phi = parse_formula(text)
        bound = compute_bounds(phi).domain_bound
        out = eliminate_equality_bounded(phi, bound)
        expected = "Sat" if text in EQ_SF_SAT else "Unsat"
        size = min(bound, 3)
        if has_equality(out) or {_verdict(phi, size), _verdict(out, size)} != {expected}:
            return False, f"bounded equality: {text}"
    n_clause_sets, partial = 0, []
    for text in SAT_SINGLE + UNSAT_SINGLE + EQ_SF_SAT + EQ_SF_UNSAT:
        phi = parse_formula(text)
        sat = text in SAT_SINGLE or text in EQ_SF_SAT
        bound = compute_bounds(phi).domain_bound
        for encoding in ("Relational", "SkolemFn"):
            psi = to_bsr_clauses(phi, encoding).to_formula()
            n_clause_sets += 1
            if encoding == "Relational" and (extract_signature(psi).functions or has_equality(psi)):
                return False, f"relational output not function/equality free: {text}"
            if sat:
                # the search stops at the first model, so a large cap is cheap here
                ok = oracle_decide(psi, 3, cap=10**9).name == "Sat"
            else:
                ok, reached = _unsat_within(psi, min(bound, 3))
                if reached < min(bound, 3):
                    partial.append(reached)
            if not ok:
                return False, f"to_bsr {encoding}: {text}"
    note = f"; {len(partial)} unsat clause sets checked only to sizes {partial}" if partial else ""
    return True, f"all reductions preserve verdicts ({n_clause_sets} clause sets){note}"


def criterion_7():
    rng = random.Random(7)
    for i in range(200):
        phi = random_ea(rng, equality=False)
        if "SF" not in classify(phi):
            return False, f"exists-forall sentence {i} not SF"
    for i in range(200):
        phi = random_monadic(rng)
        if "SF" not in classify(phi):
            return False, f"monadic sentence {i} not SF"
    if "SF" in classify(parse_formula("![X]: ?[Y]: r(X,Y)")):
        return False, "![X]: ?[Y]: r(X,Y) classified SF"
    return True, "400 sentences classify SF; ![X]: ?[Y]: r(X,Y) does not"


def _innermost(phi, fn):
    """Apply ``fn`` to the innermost ∀x⃗∃y⃗ suffix of a prenex sentence."""
    path, f = [], phi
    while isinstance(f, (Forall, Exists)):
        path.append(f)
        f = f.body
    i = len(path)
    while i > 0 and isinstance(path[i - 1], Exists):
        i -= 1
    while i > 0 and isinstance(path[i - 1], Forall):
        i -= 1
    out = fn(path[i] if i < len(path) else f)
    for q in reversed(path[:i]):
        out = type(q)(q.var, out)
    return out


TRANSFORMS = [
    ("to_nnf", to_nnf),
    ("miniscope", miniscope),
    ("to_prenex", lambda p: to_prenex(miniscope(p))),
    ("transpose_block", lambda p: _innermost(p, transpose_block)),
    ("transpose_all", transpose_all),
]


def criterion_8():
    rng = random.Random(8)
    for i in range(500):
        phi = rename_apart(random_sf(rng, max_alternations=2, n_preds=3, max_arity=2,
                                     max_vars=4, connectives=(And, Or, Implies, Iff)))
        if "SF" not in classify(phi):
            return False, f"generator produced non-SF sentence {i}"
        for name, fn in TRANSFORMS:
            if not oracle_equivalent(phi, fn(phi), 2):
                return False, f"{name} on sentence {i}"
    return True, "500 sentences x 5 transforms equivalent at size 2"


SUBSTRUCTURE_SIGNATURES = [
    Signature({"p": 1}),
    Signature({"p": 1, "q": 1}, {}, {"c"}),
    Signature({"r": 2}),
    Signature({"p": 1}, {"f": 1}),
    Signature({"r": 2, "p": 1}, {}, {"c"}),
]


def _random_universal(rng, sig):
    names = ["X", "Y"]
    pool = [Var(v) for v in names] + [Const(c) for c in sorted(sig.constants)]
    pool += [App(f, (Var(v),)) for f in sig.functions for v in names]
    preds = sorted(sig.predicates.items())

    def leaf():
        p, a = rng.choice(preds)
        return Atom(p, tuple(rng.choice(pool) for _ in range(a)))

    return forall(names, random_matrix(rng, leaf, 3, (And, Or, Implies)))


def criterion_9():
    rng = random.Random(9)
    pairs = 0
    for sig in SUBSTRUCTURE_SIGNATURES:
        sentences = [_random_universal(rng, sig) for _ in range(6)]
        for size in (1, 2, 3):
            for s in enumerate_structures(sig, size):
                subs = [sub for k in range(1, size + 1)
                        for elems in itertools.combinations(range(size), k)
                        if (sub := substructure(s, elems)) is not None]
                for phi in sentences:
                    if not evaluate(s, {}, phi):
                        continue
                    for sub in subs:
                        pairs += 1
                        if not evaluate(sub, {}, phi):
                            return False, f"violation for {phi} on {s}"
    return True, f"{pairs} structure/substructure pairs, zero violations"


CRITERIA = [
    (1, "worked transposition", criterion_1, 1),
    (2, "fingerprint tables", criterion_2, 1),
    (3, "blow-up construction", criterion_3, 60),
    (4, "range-restricted Skolemization", criterion_4, 300),
    (5, "small-model soundness", criterion_5, 300),
    (6, "reductions", criterion_6, 300),
    (7, "classifier inclusions", criterion_7, 60),
    (8, "equivalence preservation", criterion_8, 600),
    (9, "substructure invariant", criterion_9, 60),
]


def run_criterion(number, title, fn, limit):
    t0 = time.perf_counter()
    ok, detail = fn()
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < limit
    line = (f"criterion {number} ({title}): {'PASS' if ok else 'FAIL'} "
            f"[{elapsed:.2f}s / {limit}s] {detail}")
    return ok, line


@pytest.mark.parametrize("number,title,fn,limit", CRITERIA, ids=[f"c{c[0]}" for c in CRITERIA])
def test_criterion(number, title, fn, limit, capsys):
    ok, line = run_criterion(number, title, fn, limit)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
