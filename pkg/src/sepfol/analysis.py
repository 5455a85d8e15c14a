"""Separation checks, prefix blocks and fragment classification."""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NonSentence, NotPrenex, OverlapError
from .syntax import (
    App, Atom, Forall, Formula, QUANTIFIERS, atom_vars, atoms, extract_signature, free_vars, has_equality,
    is_quantifier_free, rename_apart, subterms,
)

LABEL_ORDER = ("BS", "BSR", "RelationalMonadic", "RelationalMonadicEq", "MonadicWithUnaryFns",
               "SF", "SFExtendedUnaryFns", "NotClassified")


@dataclass(frozen=True)
class FragmentLabel:
    labels: tuple
    has_equality: bool
    has_nonconstant_functions: bool
    diagnostics: tuple = field(default=())

    def __contains__(self, label):
        return label in self.labels


def are_separated(phi: Formula, X, Y) -> bool:
    X, Y = set(X), set(Y)
    if X & Y:
        raise OverlapError(f"variable sets overlap on {sorted(X & Y)}")
    return all(not (atom_vars(a) & X and atom_vars(a) & Y) for a in atoms(phi))


def prefix_blocks(phi: Formula):
    """Maximal same-polarity blocks ``[(polarity, vars), ...]`` and the matrix."""
    blocks = []
    while isinstance(phi, QUANTIFIERS):
        pol = "forall" if isinstance(phi, Forall) else "exists"
        if blocks and blocks[-1][0] == pol:
            blocks[-1] = (pol, blocks[-1][1] + (phi.var,))
        else:
            blocks.append((pol, (phi.var,)))
        phi = phi.body
    if not is_quantifier_free(phi):
        raise NotPrenex("quantifier below the prefix")
    return blocks, phi


def split_sf_prefix(blocks):
    """(z⃗, [(x⃗_k, y⃗_k), ...]) from a block list."""
    zs = ()
    if blocks and blocks[0][0] == "exists":
        zs = blocks[0][1]
        blocks = blocks[1:]
    pairs = []
    for pol, vs in blocks:
        if pol == "forall":
            pairs.append((vs, ()))
        else:
            pairs[-1] = (pairs[-1][0], vs)
    return zs, pairs


def _monadic_atoms_only_functions(phi) -> bool:
    """Every non-constant function application sits inside a unary-predicate atom."""
    for a in atoms(phi):
        terms = a.args if isinstance(a, Atom) else (a.left, a.right)
        has_fn = any(isinstance(s, App) and s.args for t in terms for s in subterms(t))
        if has_fn and not (isinstance(a, Atom) and len(a.args) == 1):
            return False
    return True


def _sf_shape(prenex) -> bool:
    blocks, matrix = prefix_blocks(prenex)
    _, pairs = split_sf_prefix(blocks)
    xs = {v for p in pairs for v in p[0]}
    ys = {v for p in pairs for v in p[1]}
    return are_separated(matrix, xs, ys)


def classify(phi: Formula) -> FragmentLabel:
    from .transform import to_prenex
    if free_vars(phi):
        raise NonSentence(f"free variables {sorted(free_vars(phi))}")
    sig = extract_signature(phi)
    eq = has_equality(phi)
    fn = bool(sig.functions)
    unary_preds = all(a <= 1 for a in sig.predicates.values())
    prenex = to_prenex(rename_apart(phi))
    blocks, _ = prefix_blocks(prenex)
    pols = [b[0] for b in blocks]
    ea = pols in ([], ["exists"], ["forall"], ["exists", "forall"])
    labels = set()
    if ea and not fn:
        labels.add("BSR")
        if not eq:
            labels.add("BS")
    if unary_preds and not fn:
        labels.add("RelationalMonadicEq")
        if not eq:
            labels.add("RelationalMonadic")
    if unary_preds and not eq and all(a == 1 for a in sig.functions.values()):
        labels.add("MonadicWithUnaryFns")
    separated = _sf_shape(prenex)
    if separated and not fn:
        labels.add("SF")
    if separated and all(a == 1 for a in sig.functions.values()) and _monadic_atoms_only_functions(phi):
        labels.add("SFExtendedUnaryFns")
    diagnostics = []
    alternate = _sf_shape(to_prenex(rename_apart(phi), prefer="forall"))
    if alternate != separated:
        diagnostics.append("separation differs under the universal-first prenexing")
    if not labels:
        labels.add("NotClassified")
    ordered = tuple(l for l in LABEL_ORDER if l in labels)
    return FragmentLabel(ordered, eq, fn, tuple(diagnostics))
