"""Verdicts, fingerprint tables and the bounded decision procedure."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .bounds import compute_bounds, is_overflow
from .config import DEFAULT_CAPS
from .errors import BudgetExceeded
from .oracle import first_model
from .semantics import Structure, evaluate
from .syntax import Formula, extract_signature


@dataclass(frozen=True)
class Sat:
    model: Structure
    size: int

    name = "Sat"


@dataclass(frozen=True)
class Unsat:
    bound_checked: int

    name = "Unsat"


@dataclass(frozen=True)
class Unknown:
    reason: str   # "BoundOverflow" or "CapExceeded"
    detail: str = ""

    name = "Unknown"


# ------------------------------------------------------------ fingerprints

@dataclass(frozen=True)
class FingerprintTable:
    """One level of fingerprints: ``entries`` maps a tuple of elements to a
    frozenset of eta indices (last level) or of next-level fingerprints."""
    arity: int
    eta_formulas: tuple
    entries: dict


def fingerprint_table(s: Structure, eta_list, y_blocks) -> list:
    """Tables λ_1..λ_n for the variable blocks ``y_blocks``.

    λ_n(a⃗) is the set of 1-based indices i with s,[y⃗↦a⃗] ⊨ eta_i; for k < n,
    λ_k(a⃗) collects λ_{k+1}(a⃗b⃗) over all extensions b⃗ of the next block.
    """
    eta = tuple(eta_list)
    blocks = [list(b) for b in y_blocks]
    names = [v for b in blocks for v in b]
    widths = list(itertools.accumulate(len(b) for b in blocks))
    n = s.universe_size
    last = {}
    for tup in itertools.product(range(n), repeat=len(names)):
        beta = dict(zip(names, tup))
        last[tup] = frozenset(i for i, e in enumerate(eta, 1) if evaluate(s, beta, e))
    tables = [FingerprintTable(len(names), eta, last)]
    for k in range(len(blocks) - 1, 0, -1):
        below = tables[0].entries
        width = widths[k - 1]
        level: dict = {}
        for tup, fp in below.items():
            level.setdefault(tup[:width], set()).add(fp)
        entries = {t: frozenset(v) for t, v in sorted(level.items())}
        tables.insert(0, FingerprintTable(width, eta, entries))
    return tables


# ------------------------------------------------------------ decision

def decide_sf(phi: Formula, cap: int = DEFAULT_CAPS.size_cap,
              structure_cap: int = DEFAULT_CAPS.structure_cap,
              magnitude_cap: int = DEFAULT_CAPS.magnitude_cap, symmetric: bool = False):
    """Search sizes 1..B for a model, B being the small-model bound of ``phi``.

    ``symmetric`` skips constant assignments that are not in first-occurrence
    order; every structure is isomorphic to one that is, and the least-indexed
    model always is, so the verdict and witness are unchanged.
    """
    bound = compute_bounds(phi, magnitude_cap).domain_bound
    if is_overflow(bound):
        return Unknown("BoundOverflow", "small-model bound overflows")
    if bound > cap:
        return Unknown("BoundOverflow", f"small-model bound {bound} exceeds cap {cap}")
    sig = extract_signature(phi)
    for size in range(1, bound + 1):
        try:
            model = first_model(phi, size, sig, structure_cap, symmetric=symmetric)
        except BudgetExceeded as exc:
            return Unknown("CapExceeded", str(exc))
        if model is not None:
            if not evaluate(model, {}, phi):
                raise AssertionError("witness failed verification")
            return Sat(model, size)
    return Unsat(bound)
