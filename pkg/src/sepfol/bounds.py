"""Small-model bounds and range-restricted Skolemization."""
from __future__ import annotations

import math
from dataclasses import dataclass

from .analysis import are_separated, classify, prefix_blocks, split_sf_prefix
from .errors import BudgetExceeded, NotSF
from .syntax import (
    App, And, Const, Eq, Exists, Forall, Formula, Var, all_names, conj, consts, disj, exists, forall,
    fresh_name, rename_apart, substitute,
)
from .transform import check_separated, matrix_to_nf, to_prenex

MAGNITUDE_CAP = 10**9


class _Overflow:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Overflow"

    def __reduce__(self):
        return (_Overflow, ())


OVERFLOW = _Overflow()


def is_overflow(v) -> bool:
    return v is OVERFLOW


def binom_central(m: int) -> int:
    if m < 0:
        raise ValueError("m must be non-negative")
    return math.comb(m, m // 2)


def twoup(k: int, m: int, cap: int = MAGNITUDE_CAP):
    """twoup(0,m)=m, twoup(k+1,m)=2^twoup(k,m); OVERFLOW once the value passes cap."""
    v = m
    for _ in range(k):
        if v >= cap.bit_length():
            return OVERFLOW
        v = 2 ** v
    return OVERFLOW if v > cap else v


def _mul(a, b, cap):
    if is_overflow(a) or is_overflow(b):
        return OVERFLOW
    v = a * b
    return OVERFLOW if v > cap else v


def _add(a, b, cap):
    if is_overflow(a) or is_overflow(b) or a + b > cap:
        return OVERFLOW
    return a + b


@dataclass(frozen=True)
class Bounds:
    m_dnf: int
    m_cnf: int
    kappa_cnf: int
    m_star: int
    per_block: tuple
    domain_bound: object
    regime: str
    m_dnf_unpruned: int = 0
    m_cnf_unpruned: int = 0


@dataclass(frozen=True)
class SFShape:
    """Canonical prenex decomposition ∃z⃗ ∀x⃗1∃y⃗1 … ∀x⃗n∃y⃗n. ψ."""
    prenex: Formula
    zs: tuple
    pairs: tuple
    matrix: Formula

    @property
    def xs(self):
        return tuple(v for p in self.pairs for v in p[0])

    @property
    def ys(self):
        return tuple(v for p in self.pairs for v in p[1])


def sf_shape(phi: Formula) -> SFShape:
    labels = classify(phi)
    if "SF" not in labels.labels:
        raise NotSF("sentence is not in the separated fragment")
    prenex = to_prenex(rename_apart(phi))
    blocks, matrix = prefix_blocks(prenex)
    zs, pairs = split_sf_prefix(blocks)
    return SFShape(prenex, tuple(zs), tuple(pairs), matrix)


def _regime(shape: SFShape) -> str:
    if len(shape.pairs) <= 1:
        return "SingleBlock"
    ys = [p[1] for p in shape.pairs]
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            if not are_separated(shape.matrix, ys[i], ys[j]):
                return "GeneralNested"
    return "StrongSeparation"


def nested_widths(n: int, m: int, cap: int = MAGNITUDE_CAP) -> list:
    """Number of representative tuples for blocks 1..n in the general case."""
    out = []
    acc = 1
    for k in range(1, n + 1):
        acc = _mul(acc, twoup(n - k, m, cap), cap)
        out.append(acc)
    return out


def compute_bounds(phi: Formula, cap: int = MAGNITUDE_CAP) -> Bounds:
    shape = sf_shape(phi)
    dnf = matrix_to_nf(shape.matrix, shape.xs, shape.ys, shape.zs, "DNF")
    cnf = matrix_to_nf(shape.matrix, shape.xs, shape.ys, shape.zs, "CNF")
    m_dnf, m_cnf = dnf.count, cnf.count
    kappa = binom_central(m_cnf)
    m_star = min(m_dnf, kappa)
    base = len(consts(phi)) + len(shape.zs)
    ylens = [len(p[1]) for p in shape.pairs]
    regime = _regime(shape)
    n = len(ylens)
    if regime == "SingleBlock":
        per_block = ((1, m_star),) if n else ()
        bound = base + m_star * (ylens[0] if n else 0)
    elif regime == "StrongSeparation":
        kd = binom_central(m_dnf)
        per_block = tuple((k, kd) for k in range(1, n)) + ((n, m_dnf),)
        bound = base + kd * sum(ylens[:-1]) + m_dnf * ylens[-1]
    else:
        widths = nested_widths(n, m_dnf, cap)
        per_block = tuple((k + 1, w) for k, w in enumerate(widths))
        bound = base
        for w, yl in zip(widths, ylens):
            bound = _add(bound, _mul(w, yl, cap) if yl else 0, cap)
    if not is_overflow(bound):
        bound = max(1, bound)
        if bound > cap:
            bound = OVERFLOW
    return Bounds(m_dnf, m_cnf, kappa, m_star, per_block, bound, regime,
                  dnf.unpruned_count, cnf.unpruned_count)


# ------------------------------------------------------------ emissions

class _Names:
    def __init__(self, *phis):
        self.used = set()
        for p in phis:
            self.used |= all_names(p)

    def take(self, name: str) -> str:
        if name in self.used:
            return fresh_name(name, self.used)
        self.used.add(name)
        return name


def _single(phi: Formula):
    shape = sf_shape(phi)
    if len(shape.pairs) > 1:
        raise NotSF("expected a single ∀∃ block")
    xs, ys = (tuple(shape.pairs[0][0]), tuple(shape.pairs[0][1])) if shape.pairs else ((), ())
    return shape, xs, ys


def _m_star(shape, xs, ys) -> int:
    dnf = matrix_to_nf(shape.matrix, xs, ys, shape.zs, "DNF")
    cnf = matrix_to_nf(shape.matrix, xs, ys, shape.zs, "CNF")
    return min(dnf.count, binom_central(cnf.count))


def _domain(values, consts_grid):
    """⋁_ℓ ⋀_i values[i] ≈ consts_grid[ℓ][i]."""
    return disj(conj(Eq(v, c) for v, c in zip(values, row)) for row in consts_grid)


def _grid(names: _Names, rows: int, cols: int):
    return [[Const(names.take(f"c_{l}_{i}")) for i in range(1, cols + 1)] for l in range(1, rows + 1)]


def range_restrict(phi: Formula) -> Formula:
    """∃z⃗∀x⃗∃y⃗.(ψ ∧ ⋁_ℓ⋀_i y_i≈c_ℓ,i) with m_* rows of fresh constants."""
    shape, xs, ys = _single(phi)
    if not ys:
        return shape.prenex
    names = _Names(phi)
    grid = _grid(names, _m_star(shape, xs, ys), len(ys))
    body = And(shape.matrix, _domain([Var(y) for y in ys], grid))
    return exists(shape.zs, forall(xs, exists(ys, body)))


def _skolem_constants(shape, names):
    return {z: Const(names.take("d")) if len(shape.zs) == 1 else Const(names.take(f"d_{i}"))
            for i, z in enumerate(shape.zs, 1)}


def skolemize_range_restricted(phi: Formula) -> Formula:
    """∀x⃗. ψ[y_i/f_i(x⃗)] ∧ ⋁_ℓ⋀_i f_i(x⃗)≈c_ℓ,i."""
    shape, xs, ys = _single(phi)
    names = _Names(phi)
    sigma = _skolem_constants(shape, names)
    m_star = _m_star(shape, xs, ys)
    fterms = []
    for i, y in enumerate(ys, 1):
        f = names.take(f"f_{i}")
        fterms.append(App(f, tuple(Var(x) for x in xs)) if xs else Const(f))
    sigma.update(zip(ys, fterms))
    body = substitute(shape.matrix, sigma)
    if ys:
        body = And(body, _domain(fterms, _grid(names, m_star, len(ys))))
    return forall(xs, body)


def inner_skolemize(phi: Formula) -> Formula:
    """∀x⃗.⋁_k χ_k ∧ η_k[y⃗/c⃗_k], one constant tuple per DNF constituent."""
    shape, xs, ys = _single(phi)
    names = _Names(phi)
    sigma = _skolem_constants(shape, names)
    dnf = matrix_to_nf(shape.matrix, xs, ys, shape.zs, "DNF")
    disjuncts = []
    for k, c in enumerate(dnf.constituents, 1):
        if len(ys) == 1:
            tup = {ys[0]: Const(names.take(f"c_{k}"))}
        else:
            tup = {y: Const(names.take(f"c_{k}_{i}")) for i, y in enumerate(ys, 1)}
        lits = list(c.chi) + list(c.param) + list(c.eta)
        disjuncts.append(substitute(conj(lits), {**sigma, **tup}))
    return forall(xs, disj(disjuncts))


def _reprefix(shape, body):
    for xs, ys in reversed(shape.pairs):
        body = forall(xs, exists(ys, body))
    return exists(shape.zs, body)


def multi_block_constraints(phi: Formula, constant_cap: int = 10**4,
                            cap: int = MAGNITUDE_CAP) -> Formula:
    """Conjoin the finite-domain constraint for two or more ∀∃ alternations."""
    shape = sf_shape(phi)
    n = len(shape.pairs)
    if n <= 1:
        return range_restrict(phi)
    b = compute_bounds(phi, cap)
    names = _Names(phi)
    blocks = [list(p[1]) for p in shape.pairs]
    if b.regime == "StrongSeparation":
        kd = binom_central(b.m_dnf)
        widths = [kd] * (n - 1) + [b.m_dnf]
        total = sum(w * len(ys) for w, ys in zip(widths, blocks))
        if total > constant_cap:
            raise BudgetExceeded(f"{total} fresh constants exceed cap {constant_cap}")
        parts = []
        for k, (w, ys) in enumerate(zip(widths, blocks), 1):
            if not ys:
                continue
            rows = [[Const(names.take(f"c_{k}_{j}_{i}")) for i in range(1, len(ys) + 1)]
                    for j in range(1, w + 1)]
            parts.append(_domain([Var(y) for y in ys], rows))
        constraint = conj(parts)
    else:
        level_widths = [twoup(n - k, b.m_dnf, cap) for k in range(1, n + 1)]
        total, count = 0, 1
        for w, ys in zip(level_widths, blocks):
            count = _mul(count, w, cap)
            if is_overflow(count):
                raise BudgetExceeded("nested constraint width overflows")
            total += count * len(ys)
        if total > constant_cap:
            raise BudgetExceeded(f"{total} fresh constants exceed cap {constant_cap}")

        def build(k, idx):
            if k == n:
                return None
            ys = blocks[k]
            alts = []
            for j in range(1, level_widths[k] + 1):
                key = idx + (j,)
                tag = "_".join(map(str, key))
                eqs = [Eq(Var(y), Const(names.take(f"c_{tag}_{i}"))) for i, y in enumerate(ys, 1)]
                inner = build(k + 1, key)
                alts.append(conj(eqs + ([inner] if inner is not None else [])))
            return disj(alts)

        constraint = build(0, ())
    return _reprefix(shape, And(shape.matrix, constraint))


def range_restrict_open(phi: Formula) -> Formula:
    """Qz⃗∀x⃗∃y⃗.ψ ⟶ same prefix over ψ ∧ ⋁_j⋀_i y_i≈g_j,i(z⃗), m_* = min(2^m_CNF, m_DNF).

    The universal block before the last existential block is split into the
    variables separated from y⃗ (x⃗) and the rest, which join z⃗.
    """
    prenex = to_prenex(rename_apart(phi))
    prefix = []
    body = prenex
    while isinstance(body, (Forall, Exists)):
        prefix.append((type(body), body.var))
        body = body.body
    matrix = body
    ys = []
    while prefix and prefix[-1][0] is Exists:
        ys.insert(0, prefix.pop()[1])
    if not ys:
        return prenex
    block = []
    while prefix and prefix[-1][0] is Forall:
        block.insert(0, prefix.pop()[1])
    xs = [v for v in block if are_separated(matrix, {v}, set(ys))]
    zs = [v for _, v in prefix] + [v for v in block if v not in xs]
    check_separated(matrix, xs, ys)
    dnf = matrix_to_nf(matrix, xs, ys, zs, "DNF")
    cnf = matrix_to_nf(matrix, xs, ys, zs, "CNF")
    m_star = min(2 ** cnf.count, dnf.count)
    names = _Names(phi)
    rows = []
    for j in range(1, m_star + 1):
        row = []
        for i in range(1, len(ys) + 1):
            g = names.take(f"g_{j}" if len(ys) == 1 else f"g_{j}_{i}")
            row.append(App(g, tuple(Var(z) for z in zs)) if zs else Const(g))
        rows.append(row)
    out = And(matrix, _domain([Var(y) for y in ys], rows))
    for q, v in reversed([(q, v) for q, v in prefix] + [(Forall, v) for v in block] +
                         [(Exists, y) for y in ys]):
        out = q(v, out)
    return out
