"""Exact linear algebra over Q(q): rank/kernel by fraction-free elimination,
span dimension, commutants, and generated-algebra closures.

Matrices destined for elimination are lists of sparse rows (column -> scalar).
Two scalar engines share the code paths: RatFunc entries run the Bareiss
fraction-free pipeline over the Laurent ring; Fraction entries (specialized
operators) run ordinary exact Gaussian elimination.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd as int_gcd

from .ratfunc import LaurentPoly, ONE_POLY, RatFunc, ONE, rat
from .tensor import SuperOp, compose

Row = dict[int, object]


@dataclass(frozen=True)
class SpecPolicy:
    """How to certify linear algebra over Q(q).

    mode 'symbolic' eliminates over the Laurent ring; 'specialized' works at
    rational sample points q0 (never roots of unity) and reports results as
    probabilistic unless a caller rechecks them exactly.  'auto' switches to
    samples only past the entry-count threshold.
    """

    mode: str = "auto"
    q0s: tuple[Fraction, ...] = (Fraction(5, 3), Fraction(7, 2), Fraction(-4, 3))
    symbolic_entry_limit: int = 40_000

    def effective_mode(self, entry_count: int) -> str:
        if self.mode == "auto":
            return "symbolic" if entry_count <= self.symbolic_entry_limit else "specialized"
        return self.mode


SYMBOLIC = SpecPolicy(mode="symbolic")


def _lp_divexact(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact division in the Laurent ring (raises if it does not divide)."""
    from .ratfunc import _poly_divmod
    sa = a.min_exp() if a.coeffs else 0
    sb = b.min_exp()
    qa = {e - sa: c for e, c in a.coeffs.items()}
    qb = {e - sb: c for e, c in b.coeffs.items()}
    quot, rem = _poly_divmod(qa, qb)
    if rem:
        raise ArithmeticError("non-exact division in Bareiss step")
    res = LaurentPoly.__new__(LaurentPoly)
    res.coeffs = {e + sa - sb: c for e, c in quot.items() if c}
    return res


def _clear_row(row: dict[int, RatFunc]) -> dict[int, LaurentPoly]:
    """Scale a RatFunc row to Laurent entries (kernel is scale-invariant)."""
    dens = [v.den for v in row.values() if v.den != ONE_POLY]
    scale = ONE_POLY
    for d in dens:
        # lcm(scale, d) via gcd in the polynomial ring
        g = _lp_gcd(scale, d)
        scale = _lp_divexact(scale * d, g)
    return {c: (v.num * _lp_divexact(scale, v.den)) for c, v in row.items()}


def _lp_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    from .ratfunc import _poly_gcd
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    pa = {e - a.min_exp(): c for e, c in a.coeffs.items()}
    pb = {e - b.min_exp(): c for e, c in b.coeffs.items()}
    g = _poly_gcd(pa, pb)
    res = LaurentPoly.__new__(LaurentPoly)
    res.coeffs = g
    return res


def _lp_degree_span(p: LaurentPoly) -> int:
    return p.max_exp() - p.min_exp() if p.coeffs else 0


def _eliminate_bareiss(rows: list[dict[int, LaurentPoly]]):
    """Fraction-free elimination; returns echelon rows and pivot columns.

    Pivots prefer short rows, then entries of lowest degree span, which
    keeps intermediate polynomial growth down.
    """
    work = [dict(r) for r in rows if r]
    echelon: list[tuple[int, dict[int, LaurentPoly]]] = []
    prev_pivot = ONE_POLY
    while work:
        best = min(
            range(len(work)),
            key=lambda k: (len(work[k]),
                           min(_lp_degree_span(v) for v in work[k].values())))
        row = work.pop(best)
        pc = min(row, key=lambda c: (_lp_degree_span(row[c]), c))
        piv = row[pc]
        echelon.append((pc, row))
        nxt = []
        for r in work:
            if pc in r:
                f = r[pc]
                out: dict[int, LaurentPoly] = {}
                for c in set(r) | set(row):
                    if c == pc:
                        continue
                    val = piv * r.get(c, LaurentPoly()) - f * row.get(c, LaurentPoly())
                    if not val.is_zero():
                        out[c] = _lp_divexact(val, prev_pivot)
                if out:
                    nxt.append(out)
            else:
                r.pop(pc, None)
                if r:
                    nxt.append(r)
        work = nxt
        prev_pivot = piv
    return echelon


def _eliminate_fraction(rows: list[Row]):
    """Ordinary exact Gaussian elimination (Fraction or RatFunc scalars)."""
    work = [dict(r) for r in rows if r]
    echelon: list[tuple[int, Row]] = []
    while work:
        best = min(range(len(work)), key=lambda k: len(work[k]))
        row = work.pop(best)
        pc = min(row)
        piv = row[pc]
        row = {c: v / piv for c, v in row.items()}
        echelon.append((pc, row))
        nxt = []
        for r in work:
            if pc in r:
                f = r.pop(pc)
                for c, v in row.items():
                    if c == pc:
                        continue
                    s = r.get(c)
                    s = -f * v if s is None else s - f * v
                    if s:
                        r[c] = s
                    else:
                        r.pop(c, None)
            if r:
                nxt.append(r)
        work = nxt
    return echelon


def rank_kernel(rows: list[Row], ncols: int, policy: SpecPolicy = SYMBOLIC,
                symbolic: bool | None = None) -> tuple[int, list[Row]]:
    """Exact rank and kernel basis of a sparse matrix.

    RatFunc rows go through denominator clearing and Bareiss; Fraction rows
    through plain elimination.  A 'specialized' policy evaluates symbolic
    rows at the first sample point first (the result is then only certified
    at that point; callers recheck).  Kernel vectors are normalized to a
    leading coefficient of one.  `symbolic` forces the scalar field when the
    rows cannot tell (e.g. an empty system).
    """
    if symbolic is None:
        symbolic = any(isinstance(v, RatFunc) for r in rows for v in r.values())
    entry_count = sum(len(r) for r in rows)
    if symbolic and policy.effective_mode(entry_count) == "specialized":
        q0 = policy.q0s[0]
        rows = [{c: v.specialize(q0) for c, v in r.items()} for r in rows]
        symbolic = False
    if symbolic:
        cleared = [_clear_row(r) for r in rows]
        ech_lp = _eliminate_bareiss(cleared)
        echelon = [(pc, {c: RatFunc(v, ONE_POLY) for c, v in row.items()})
                   for pc, row in ech_lp]
        one = ONE
    else:
        echelon = _eliminate_fraction(rows)
        one = Fraction(1)
    rank = len(echelon)
    pivot_cols = {pc for pc, _ in echelon}
    free = [c for c in range(ncols) if c not in pivot_cols]
    kernel: list[Row] = []
    for fcol in free:
        vec: Row = {fcol: one}
        # rows created later have zeros at all earlier pivots, so solving in
        # reverse selection order sees only already-known columns
        for pc, row in reversed(echelon):
            acc = None
            for c, v in row.items():
                if c == pc:
                    continue
                x = vec.get(c)
                if x:
                    acc = v * x if acc is None else acc + v * x
            if acc:
                vec[pc] = -acc / row[pc]
        kernel.append(vec)
    return rank, kernel


def _flatten(op: SuperOp) -> Row:
    n = op.size
    return {r * n + c: v for (r, c), v in op.entries.items()}


class _Echelon:
    """Incremental row space: add vectors, track dimension."""

    def __init__(self):
        self.pivots: dict[int, Row] = {}

    def reduce(self, vec: Row) -> Row:
        vec = dict(vec)
        while vec:
            lead = min(vec)
            hit = self.pivots.get(lead)
            if hit is None:
                return vec
            f = vec[lead]
            for c, v in hit.items():
                s = vec.get(c)
                s = -f * v if s is None else s - f * v
                if s:
                    vec[c] = s
                else:
                    vec.pop(c, None)
        return vec

    def add(self, vec: Row) -> bool:
        red = self.reduce(vec)
        if not red:
            return False
        lead = min(red)
        piv = red[lead]
        self.pivots[lead] = {c: v / piv for c, v in red.items()}
        return True

    @property
    def dim(self) -> int:
        return len(self.pivots)


def span_dim(ops: list[SuperOp], policy: SpecPolicy = SYMBOLIC) -> int:
    """Dimension of the linear span of the flattened operators."""
    if ops and policy.effective_mode(sum(o.nnz() for o in ops)) == "specialized" \
            and any(isinstance(v, RatFunc) for v in ops[0].entries.values()):
        q0 = policy.q0s[0]
        ops = [o.specialize(q0) for o in ops]
    ech = _Echelon()
    for op in ops:
        ech.add(_flatten(op))
    return ech.dim


def _diag_eigenvalues(op: SuperOp, n: int):
    if any(r != c for (r, c) in op.entries):
        return None
    return tuple(op.entries.get((i, i)) for i in range(n))


def commutant_basis(gens: list[SuperOp],
                    policy: SpecPolicy = SYMBOLIC) -> tuple[int, list[SuperOp]]:
    """Basis of {A : A g = g A for all g}, with an exact recheck.

    Diagonal generators are applied first: an entry (r, c) can only be
    nonzero when every diagonal generator has equal eigenvalues at r and c,
    which cuts the unknowns to the squares of the joint eigenspace sizes.
    A specialized policy evaluates the generators at the first sample point
    before solving; the recheck is then exact at that point only.
    """
    if not gens:
        raise ValueError("commutant of an empty family is everything")
    n = gens[0].size
    if policy.effective_mode(n * n) == "specialized" and \
            any(isinstance(v, RatFunc) for g in gens for v in g.entries.values()):
        gens = [g.specialize(policy.q0s[0]) for g in gens]
    diag_labels = []
    off_diag = []
    for g in gens:
        ev = _diag_eigenvalues(g, n)
        if ev is None:
            off_diag.append(g)
        else:
            diag_labels.append(ev)
    labels = [tuple(ev[i] for ev in diag_labels) for i in range(n)]
    blocks: dict[tuple, list[int]] = {}
    for i, lab in enumerate(labels):
        blocks.setdefault(lab, []).append(i)
    unknowns: list[tuple[int, int]] = []
    for members in blocks.values():
        for r in members:
            for c in members:
                unknowns.append((r, c))
    uidx = {u: k for k, u in enumerate(unknowns)}
    rows: dict[tuple[int, int, int], Row] = {}

    def put(key, uk, coeff):
        row = rows.setdefault(key, {})
        s = row.get(uk)
        s = coeff if s is None else s + coeff
        if s:
            row[uk] = s
        else:
            row.pop(uk, None)

    for gi, g in enumerate(off_diag):
        by_row: dict[int, list] = {}
        by_col: dict[int, list] = {}
        for (r, c), v in g.entries.items():
            by_row.setdefault(r, []).append((c, v))
            by_col.setdefault(c, []).append((r, v))
        for (a, b), uk in uidx.items():
            for (j, v) in by_row.get(b, ()):   # A[a,b] g[b,j] term of [A,g](a,j)
                put((gi, a, j), uk, v)
            for (i, v) in by_col.get(a, ()):   # -g[i,a] A[a,b] term of [A,g](i,b)
                put((gi, i, b), uk, -v)
    sys_rows = [r for r in rows.values() if r]
    field_symbolic = any(isinstance(v, RatFunc)
                         for g in gens for v in g.entries.values())
    _, kernel = rank_kernel(sys_rows, len(unknowns), symbolic=field_symbolic)
    dim0 = gens[0].dim
    power = gens[0].power
    basis = []
    for vec in kernel:
        entries = {unknowns[k]: v for k, v in vec.items()}
        basis.append(SuperOp(dim0, power, None, entries))
    for a in basis:  # mandatory exact recheck of every claimed commutant element
        for g in gens:
            if not (compose(a, g) - compose(g, a)).is_zero():
                raise AssertionError("commutant recheck failed")
    return len(basis), basis


def generated_algebra_dim(gens: list[SuperOp], policy: SpecPolicy = SYMBOLIC,
                          max_dim: int | None = None) -> int:
    """Dimension of the unital algebra generated (identity must be included).

    Closes the span under left multiplication by every generator until the
    dimension stabilizes; monotone in the generator set.
    """
    n = gens[0].size
    if policy.effective_mode(n * n) == "specialized" and \
            any(isinstance(v, RatFunc) for g in gens for v in g.entries.values()):
        gens = [g.specialize(policy.q0s[0]) for g in gens]
    if not any(g == SuperOp.identity(g.dim, g.power) or
               _is_identity(g, n) for g in gens):
        raise ValueError("generator set must include the identity")
    cap = max_dim if max_dim is not None else n * n
    ech = _Echelon()
    basis: list[SuperOp] = []
    frontier: list[SuperOp] = []
    for g in gens:
        if ech.add(_flatten(g)):
            basis.append(g)
            frontier.append(g)
    while frontier and ech.dim < cap:
        nxt = []
        for m in frontier:
            for g in gens:
                prod = compose(g, m)
                if ech.add(_flatten(prod)):
                    basis.append(prod)
                    nxt.append(prod)
                    if ech.dim >= cap:
                        break
            if ech.dim >= cap:
                break
        frontier = nxt
    return ech.dim


def _is_identity(g: SuperOp, n: int) -> bool:
    if len(g.entries) != n:
        return False
    one_like = None
    for (r, c), v in g.entries.items():
        if r != c:
            return False
        if one_like is None:
            one_like = v
        if v != one_like:
            return False
    return bool(one_like == ONE or one_like == Fraction(1))
