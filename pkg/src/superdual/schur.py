"""Hook-partition combinatorics and the duality checks: double centralizer
dimensions, highest-weight counting, evaluation-module reducibility, the
universal-module functor comparison, and reconstruction of the y-action from
a given affine action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cache

from .cartan import CartanDatum
from .hecke import (
    HeckeElt, MatD, McModule, Perm, mat_identity, mat_mul, mat_sub,
    reduced_word, symmetric_group,
)
from .linalg import (
    SYMBOLIC, SpecPolicy, commutant_basis, generated_algebra_dim,
    rank_kernel, span_dim,
)
from .ratfunc import ONE, RatFunc, rat
from .rep import (
    GeneratorTag, Y_operator, finite_generator_tags, rhat_slot, rho_d,
    rho_d_affine,
)
from .tensor import (
    SuperDim, SuperOp, compose, rank_of_word, word_of_rank, word_weight,
)

Partition = tuple[int, ...]


# ---------------------------------------------------------------------------
# partitions and tableaux
# ---------------------------------------------------------------------------

@cache
def partitions(d: int) -> tuple[Partition, ...]:
    """All partitions of d, decreasing parts, lexicographically sorted."""
    if d == 0:
        return ((),)
    out = []

    def rec(rest, max_part, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, max_part), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(d, d, [])
    return tuple(sorted(out))


def hook_partitions(m: int, n: int, d: int) -> tuple[Partition, ...]:
    """Partitions of d fitting the (m, n)-hook: parts after row m at most n."""
    if min(m, n, d) < 1:
        raise ValueError("need m, n, d >= 1")
    return tuple(lam for lam in partitions(d)
                 if all(p <= n for p in lam[m:]))


@cache
def syt_count(lam: Partition) -> int:
    """Number of standard Young tableaux, by the hook length formula."""
    if not lam:
        return 1
    d = sum(lam)
    conj = [sum(1 for p in lam if p > c) for c in range(lam[0])]
    hooks = 1
    for r, row in enumerate(lam):
        for c in range(row):
            hooks *= (row - c) + (conj[c] - r) - 1
    fact = 1
    for k in range(2, d + 1):
        fact *= k
    assert fact % hooks == 0
    return fact // hooks


def syt_count_by_enumeration(lam: Partition) -> int:
    """Independent oracle: count standard fillings directly (small shapes)."""
    d = sum(lam)
    rows = len(lam)
    filling = [[0] * p for p in lam]

    def place(value):
        if value > d:
            return 1
        total = 0
        for r in range(rows):
            cnt = sum(1 for x in filling[r] if x)
            if cnt < lam[r] and (r == 0 or
                                 sum(1 for x in filling[r - 1] if x) > cnt):
                filling[r][cnt] = value
                total += place(value + 1)
                filling[r][cnt] = 0
        return total

    return place(1)


@dataclass(frozen=True)
class HookSet:
    m: int
    n: int
    d: int
    members: tuple[Partition, ...]

    @staticmethod
    def create(m: int, n: int, d: int) -> "HookSet":
        return HookSet(m, n, d, hook_partitions(m, n, d))

    def sum_f_squared(self) -> int:
        return sum(syt_count(lam) ** 2 for lam in self.members)

    def sum_f(self) -> int:
        return sum(syt_count(lam) for lam in self.members)


# ---------------------------------------------------------------------------
# the T_w action on tensor space
# ---------------------------------------------------------------------------

def pi_d(i: int, d: int, datum: CartanDatum) -> SuperOp:
    """The braid generator on slots (i, i+1)."""
    if not 1 <= i < d:
        raise ValueError(f"braid index {i} out of range 1..{d - 1}")
    return rhat_slot(i, d, datum)


def pi_of_perm(w: Perm, d: int, datum: CartanDatum) -> SuperOp:
    out = SuperOp.identity(datum.dim, d)
    for i in reduced_word(w):
        out = compose(out, pi_d(i, d, datum))
    return out


def pi_of_elt(h: HeckeElt, d: int, datum: CartanDatum) -> SuperOp:
    """Tensor-space matrix of a y-free element (T_w -> braid products)."""
    if not h.y_free():
        raise ValueError("only y-free elements act on tensor space directly")
    out = SuperOp.zero(datum.dim, d, None)
    for (_, w), coeff in h.terms:
        out = out + pi_of_perm(w, d, datum).scale(coeff)
    return out


# ---------------------------------------------------------------------------
# duality checks
# ---------------------------------------------------------------------------

def gl_generator_ops(d: int, datum: CartanDatum) -> list[SuperOp]:
    """sigma, the eps-basis torus, and all E(i)/F(i) on V^{otimes d}."""
    return [rho_d(t, d, datum)
            for t in finite_generator_tags(datum, torus="eps")]


def check_double_centralizer(m: int, n: int, d: int,
                             policy: SpecPolicy = SYMBOLIC) -> dict:
    """Commutant dim = Hecke span dim = sum of squared tableau counts."""
    datum = CartanDatum(SuperDim(m, n))
    gens = gl_generator_ops(d, datum)
    d1, _ = commutant_basis(gens, policy)
    hecke_ops = [pi_of_perm(w, d, datum) for w in symmetric_group(d)]
    d2 = span_dim(hecke_ops, policy)
    d3 = HookSet.create(m, n, d).sum_f_squared()
    return {
        "name": f"double-centralizer m={m} n={n} d={d}",
        "commutant_dim": d1,
        "hecke_span_dim": d2,
        "hook_f_squared": d3,
        "status": "pass" if d1 == d2 == d3 else "fail",
    }


def highest_weight_census(m: int, n: int, d: int) -> list[tuple[tuple[int, ...], int]]:
    """Joint kernel of the raising generators, bucketed by weight.

    The total count equals the number of irreducible constituents of the
    tensor power, one highest-weight line per constituent.
    """
    datum = CartanDatum(SuperDim(m, n))
    raising = [rho_d(GeneratorTag("E", i), d, datum)
               for i in range(1, datum.n_prime)]
    by_weight: dict[tuple[int, ...], list[int]] = {}
    for r in range(datum.dim.total ** d):
        w = word_weight(word_of_rank(r, datum.dim, d), datum.dim)
        by_weight.setdefault(w, []).append(r)
    census = []
    for weight, members in sorted(by_weight.items(), reverse=True):
        cols = {g: k for k, g in enumerate(members)}
        rows: dict[int, dict[int, RatFunc]] = {}
        for op in raising:
            for (rr, cc), v in op.entries.items():
                if cc in cols:
                    rows.setdefault(rr, {})[cols[cc]] = v
        sys_rows = [row for row in rows.values() if row]
        _, kernel = rank_kernel(sys_rows, len(members), symbolic=True)
        if kernel:
            census.append((weight, len(kernel)))
    return census


def check_evaluation_reducibility(m: int, n: int, c: tuple,
                                  policy: SpecPolicy | None = None,
                                  q0: Fraction = Fraction(2)) -> dict:
    """Full matrix algebra test for the evaluation tensor module at fixed q0.

    'full' means the affine generator set generates all of End(V^{otimes d})
    (irreducible over the algebraic closure); the module must be deficient
    exactly when c_j = q0^2 c_k for some j, k.
    """
    d = len(c)
    datum = CartanDatum(SuperDim(m, n))
    npr = datum.n_prime
    if d < 2:
        raise ValueError("need d >= 2")
    if d >= npr:
        raise ValueError(
            f"reducibility criterion requires d < n' = {npr}, got d = {d}")
    cs = tuple(Fraction(x) for x in c)
    if any(x == 0 for x in cs):
        raise ValueError("evaluation parameters must be nonzero")
    tags = [GeneratorTag("sigma")]
    tags += [GeneratorTag("K", gamma=datum.alpha(i)) for i in datum.node_range()]
    ops = [SuperOp.identity(datum.dim, d)]
    ops += [rho_d(t, d, datum).specialize(q0) for t in tags]
    for i in range(1, npr):
        ops.append(rho_d(GeneratorTag("E", i), d, datum).specialize(q0))
        ops.append(rho_d(GeneratorTag("F", i), d, datum).specialize(q0))
    ops.append(rho_d_affine(GeneratorTag("E0"), d, cs, datum).specialize(q0))
    ops.append(rho_d_affine(GeneratorTag("F0"), d, cs, datum).specialize(q0))
    full = (npr ** d) ** 2
    dim = generated_algebra_dim(ops, max_dim=full)
    coupled = any(cs[j] == q0 ** 2 * cs[k]
                  for j in range(d) for k in range(d) if j != k)
    return {
        "name": f"evaluation-reducibility m={m} n={n} c={tuple(map(str, cs))} q0={q0}",
        "dimension": dim,
        "full_dimension": full,
        "verdict": "full" if dim == full else f"deficient({dim})",
        "criterion_coupled": coupled,
        "status": "pass" if (dim == full) != coupled else "fail",
    }


# ---------------------------------------------------------------------------
# functor comparison and reconstruction on the universal modules
# ---------------------------------------------------------------------------

def _transport_y(mc: McModule, j: int, sign: int, d: int,
                 datum: CartanDatum) -> SuperOp:
    """Matrix of T_w-expansion of 1 . y_j^{sign} acting through the braids."""
    elt = HeckeElt.one(d).times_atom(("y", j, sign))
    data = {}
    for (mono, w), coeff in elt.terms:
        data[((0,) * d, w)] = coeff * mc.evaluate_monomial(mono)
    return pi_of_elt(HeckeElt.from_dict(d, data), d, datum)


def functor_module_sides(m: int, n: int, d: int, c: tuple) -> dict[str, tuple[SuperOp, SuperOp]]:
    """Both realizations of E0/F0/K0 on the d-fold evaluation module.

    The universal-module side transports the slot operators through the
    character y_j -> c_j^{-1}; the evaluation side applies the affine
    generators with parameters c directly.  The pairing inverts the
    character because E0 acts through y_j^{-1} while the evaluation module
    scales its slot by c_j.
    """
    datum = CartanDatum(SuperDim(m, n))
    cs = tuple(rat(Fraction(x)) for x in c)
    if any(not x for x in cs):
        raise ValueError("evaluation parameters must be nonzero")
    inv = tuple(x.inverse() for x in cs)
    mc = McModule.create(d, inv)
    e0_func = SuperOp.zero(datum.dim, d, None)
    f0_func = SuperOp.zero(datum.dim, d, None)
    for j in range(1, d + 1):
        e0_func = e0_func + compose(_transport_y(mc, j, -1, d, datum),
                                    Y_operator("E", j, d, datum))
        f0_func = f0_func + compose(_transport_y(mc, j, +1, d, datum),
                                    Y_operator("F", j, d, datum))
    k0_func = rho_d_affine(GeneratorTag("K0"), d, c, datum)
    return {
        "E0": (e0_func, rho_d_affine(GeneratorTag("E0"), d, cs, datum)),
        "F0": (f0_func, rho_d_affine(GeneratorTag("F0"), d, cs, datum)),
        "K0": (k0_func, rho_d_affine(GeneratorTag("K0"), d, cs, datum)),
    }


def check_functor_Mc(m: int, n: int, d: int, c: tuple,
                     policy: SpecPolicy = SYMBOLIC) -> dict:
    """Exact equality of the transported and direct affine actions."""
    sides = functor_module_sides(m, n, d, c)
    residuals = {name: (a - b).nnz() for name, (a, b) in sides.items()}
    ok = all(v == 0 for v in residuals.values())
    return {
        "name": f"functor-Mc m={m} n={n} d={d} c={tuple(map(str, c))}",
        "residual_nnz": residuals,
        "status": "pass" if ok else "fail",
    }


@dataclass
class ReconstructionResult:
    signs_F: list[int]
    signs_E: list[int]
    expected_signs: list[int]
    y_matrices: list[MatD]
    y_inverse_matrices: list[MatD]
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def _solve_columns(basis_vectors: list[dict[int, RatFunc]],
                   targets: list[dict[int, RatFunc]], size: int) -> MatD:
    """Solve U X = B exactly where U's columns are the basis vectors."""
    k = len(basis_vectors)
    t = len(targets)
    # augmented homogeneous system: [U | -B] y = 0 with y = (x; e_j) forced
    out: MatD = {}
    for col, b in enumerate(targets):
        rows: dict[int, dict[int, RatFunc]] = {}
        for ci, vec in enumerate(basis_vectors):
            for r, v in vec.items():
                rows.setdefault(r, {})[ci] = v
        for r, v in b.items():
            rows.setdefault(r, {})[k] = -v
        sys_rows = [row for row in rows.values()]
        rank, kernel = rank_kernel(sys_rows, k + 1, symbolic=True)
        solved = [vec for vec in kernel if vec.get(k)]
        if rank != k or len(solved) != 1:
            raise ArithmeticError("probe solve inconsistent: residual system "
                                  f"rank {rank} of {k}, {len(solved)} solutions")
        vec = solved[0]
        scale = vec[k].inverse()
        for ci in range(k):
            v = vec.get(ci)
            if v:
                out[(ci, col)] = v * scale
    return out


def reconstruct_y(m: int, n: int, d: int, c: tuple,
                  policy: SpecPolicy = SYMBOLIC,
                  affine_E0: SuperOp | None = None,
                  affine_F0: SuperOp | None = None) -> ReconstructionResult:
    """Recover the y-action on the universal module from the affine action.

    The affine action defaults to the evaluation-module operators paired
    with the character c (slot parameters c_j^{-1}, matching the functor
    pairing).  Probe vectors isolate one slot: v_j has the top basis vector
    in slot j and distinct low letters elsewhere, so exactly one transport
    operator survives and the unknown endomorphism can be solved column by
    column against the braid-translated basis.
    """
    datum = CartanDatum(SuperDim(m, n))
    npr = datum.n_prime
    if d >= npr:
        raise ValueError(f"reconstruction requires d < n' = {npr}, got d = {d}")
    cs = tuple(rat(Fraction(x)) for x in c)
    if any(not x for x in cs):
        raise ValueError("character values must be nonzero")
    mc = McModule.create(d, cs)
    inv = tuple(x.inverse() for x in cs)
    E0 = affine_E0 if affine_E0 is not None else \
        rho_d_affine(GeneratorTag("E0"), d, inv, datum)
    F0 = affine_F0 if affine_F0 is not None else \
        rho_d_affine(GeneratorTag("F0"), d, inv, datum)
    perms = symmetric_group(d)
    pi_mats = [pi_of_perm(w, d, datum) for w in perms]

    signs_F, signs_E = [], []
    y_mats, y_inv_mats = [], []
    for j in range(1, d + 1):
        low = list(range(2, j + 1))
        high = list(range(j + 1, d + 1))
        v_word = tuple(low + [npr] + high)
        w_word = tuple(low + [1] + high)
        v_rank = rank_of_word(v_word, datum.dim)
        w_rank = rank_of_word(w_word, datum.dim)
        yF = Y_operator("F", j, d, datum)
        col = yF.column(v_rank)
        assert set(col) == {w_rank}
        sF = 1 if col[w_rank] == ONE else -1
        signs_F.append(sF)
        yE = Y_operator("E", j, d, datum)
        colE = yE.column(w_rank)
        assert set(colE) == {v_rank}
        sE = 1 if colE[v_rank] == ONE else -1
        signs_E.append(sE)
        # alpha_{jF}: F0 (pi_w v_j) = sum_u alpha[u,w] (pi_u (s_F w_j))
        basis = [p.apply({w_rank: col[w_rank]}) for p in pi_mats]
        targets = [F0.apply(p.apply({v_rank: ONE})) for p in pi_mats]
        y_mats.append(_solve_columns(basis, targets, npr ** d))
        basisE = [p.apply({v_rank: colE[v_rank]}) for p in pi_mats]
        targetsE = [E0.apply(p.apply({w_rank: ONE})) for p in pi_mats]
        y_inv_mats.append(_solve_columns(basisE, targetsE, npr ** d))

    eye = mat_identity(len(perms))
    checks = {}
    checks["sign_formula"] = all(
        sF == (-1) ** max(0, j + 1 - m) for j, sF in enumerate(signs_F))
    for j in range(d):
        checks[f"y{j + 1}_inverse"] = (
            not mat_sub(mat_mul(y_mats[j], y_inv_mats[j]), eye)
            and not mat_sub(mat_mul(y_inv_mats[j], y_mats[j]), eye))
    for j in range(d):
        for k in range(j + 1, d):
            checks[f"y{j + 1}_y{k + 1}_commute"] = not mat_sub(
                mat_mul(y_mats[j], y_mats[k]), mat_mul(y_mats[k], y_mats[j]))
    t_mats = {i: mc.action_matrix(("T", i)) for i in range(1, d)}
    for i in range(1, d):
        lhs = mat_mul(t_mats[i], mat_mul(y_mats[i - 1], t_mats[i]))
        checks[f"bernstein_y{i + 1}"] = not mat_sub(lhs, y_mats[i])
    for j in range(d):
        checks[f"match_mc_y{j + 1}"] = not mat_sub(
            y_mats[j], mc.action_matrix(("y", j + 1, 1)))
        checks[f"match_mc_y{j + 1}_inv"] = not mat_sub(
            y_inv_mats[j], mc.action_matrix(("y", j + 1, -1)))
    expected = [(-1) ** max(0, j - m) for j in range(1, d + 1)]
    return ReconstructionResult(signs_F, signs_E, expected,
                                y_mats, y_inv_mats, checks)
