"""The fundamental representation, its tensor extensions, the affine
generators on evaluation modules, and the R / R-check intertwiners.

All d-fold operators are assembled through the Koszul-signed tensor product,
with sigma-free pads; the sign rule reproduces exactly the sigma^{p}-dressed
plain Kronecker slot formulas of the twisted coproduct (the two readings are
equal, see test_rep.test_sigma_absorption).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartan import CartanDatum, Vector, vec_add
from .ratfunc import ONE, RatFunc, q_int, rat
from .tensor import (
    SuperDim, SuperOp, compose, graded_tensor, slot_embed, tensor_plain,
)


@dataclass(frozen=True)
class GeneratorTag:
    """Canonical name of a representation generator.

    kind is one of 'E', 'F' (index 1..n''), 'K' (gamma vector), 'sigma',
    'E0', 'F0', 'K0'.
    """

    kind: str
    index: int | None = None
    gamma: Vector | None = None

    def label(self) -> str:
        if self.kind in ("E", "F"):
            return f"{self.kind}{self.index}"
        if self.kind == "K":
            return "K(" + ",".join(map(str, self.gamma)) + ")"
        return {"sigma": "sigma", "E0": "E0", "F0": "F0", "K0": "Kalpha0"}[self.kind]


# ---------------------------------------------------------------------------
# one-site matrices
# ---------------------------------------------------------------------------

def rho_K(datum: CartanDatum, gamma: Vector) -> SuperOp:
    """diag(q^{(gamma, eps_i)})."""
    return SuperOp.diagonal(
        datum.dim,
        [q_int(datum.pairing(gamma, datum.eps(i)))
         for i in range(1, datum.n_prime + 1)])


def rho_sigma(datum: CartanDatum) -> SuperOp:
    return SuperOp.diagonal(
        datum.dim,
        [rat(1)] * datum.dim.m + [rat(-1)] * datum.dim.n)


def rho_E(datum: CartanDatum, i: int) -> SuperOp:
    """q_{i+1}^{-1} E_{i,i+1}, parity 1 exactly at the gray node i = m."""
    if not 1 <= i <= datum.n_dprime:
        raise ValueError(f"finite generator index {i} out of range")
    return SuperOp.matrix_unit(datum.dim, i, i + 1, q_int(-datum.d_i(i + 1)))


def rho_F(datum: CartanDatum, i: int) -> SuperOp:
    """q_{i+1} E_{i+1,i}."""
    if not 1 <= i <= datum.n_dprime:
        raise ValueError(f"finite generator index {i} out of range")
    return SuperOp.matrix_unit(datum.dim, i + 1, i, q_int(datum.d_i(i + 1)))


def K_Pi(datum: CartanDatum) -> SuperOp:
    """Product of all finite K_{alpha_i}: diag(q, 1..1, q)."""
    npr = datum.n_prime
    return SuperOp.diagonal(
        datum.dim, [q_int(1)] + [ONE] * (npr - 2) + [q_int(1)])


def K_Pi_inv(datum: CartanDatum) -> SuperOp:
    npr = datum.n_prime
    return SuperOp.diagonal(
        datum.dim, [q_int(-1)] + [ONE] * (npr - 2) + [q_int(-1)])


def E_Pi(datum: CartanDatum) -> SuperOp:
    """E_{1,n'} (odd): the image of the long raising product, normalized."""
    return SuperOp.matrix_unit(datum.dim, 1, datum.n_prime)


def F_Pi(datum: CartanDatum) -> SuperOp:
    """E_{n',1} (odd)."""
    return SuperOp.matrix_unit(datum.dim, datum.n_prime, 1)


def rho_site(tag: GeneratorTag, datum: CartanDatum,
             c: RatFunc | None = None) -> SuperOp:
    """One-site matrix of a generator; evaluation parameter c for E0/F0."""
    if tag.kind == "E":
        return rho_E(datum, tag.index)
    if tag.kind == "F":
        return rho_F(datum, tag.index)
    if tag.kind == "K":
        return rho_K(datum, tag.gamma)
    if tag.kind == "sigma":
        return rho_sigma(datum)
    if tag.kind == "K0":
        return K_Pi_inv(datum)
    if tag.kind in ("E0", "F0"):
        if c is None or not c:
            raise ValueError("E0/F0 need a nonzero evaluation parameter")
        if tag.kind == "E0":
            return F_Pi(datum).scale(c)
        return E_Pi(datum).scale(c.inverse())
    raise ValueError(f"unknown generator tag {tag!r}")


# ---------------------------------------------------------------------------
# d-fold operators
# ---------------------------------------------------------------------------

def rho_d(tag: GeneratorTag, d: int, datum: CartanDatum) -> SuperOp:
    """Tensor extension of a finite generator to V^{otimes d}.

    E(i): sum_k K_{alpha_i}^(k-1) (x) rho(E_i) (x) 1^(d-k), Koszul-signed.
    F(i): sum_k 1^(k-1) (x) rho(F_i) (x) K_{alpha_i}^{-1 (d-k)}.
    K(gamma) and sigma extend diagonally.
    """
    one = SuperOp.identity(datum.dim, 1)
    if tag.kind == "E":
        pad = rho_K(datum, datum.alpha(tag.index))
        site = rho_E(datum, tag.index)
        terms = [slot_embed(pad, site, one, k, d) for k in range(1, d + 1)]
    elif tag.kind == "F":
        pad = rho_K(datum, datum.alpha(tag.index)).inverse_diagonal()
        site = rho_F(datum, tag.index)
        terms = [slot_embed(one, site, pad, k, d) for k in range(1, d + 1)]
    elif tag.kind == "K":
        return tensor_plain([rho_K(datum, tag.gamma)] * d)
    elif tag.kind == "sigma":
        return tensor_plain([rho_sigma(datum)] * d)
    else:
        raise ValueError(
            f"{tag.kind} is an affine generator: use rho_d_affine")
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def _check_params(c: tuple) -> tuple[RatFunc, ...]:
    vals = []
    for x in c:
        r = x if isinstance(x, RatFunc) else rat(Fraction(x))
        if not r:
            raise ValueError("evaluation parameters must be nonzero")
        vals.append(r)
    return tuple(vals)


def rho_d_affine(tag: GeneratorTag, d: int, c: tuple,
                 datum: CartanDatum) -> SuperOp:
    """Affine generators on the evaluation tensor module V(c_1)..(x)..V(c_d).

    E0: sum_j K_Pi^{-1 (j-1)} (x) c_j E_{n',1} (x) 1^(d-j), Koszul-signed.
    F0: sum_j 1^(j-1) (x) c_j^{-1} E_{1,n'} (x) K_Pi^(d-j).
    K0: (K_Pi^{-1})^(x d).
    """
    one = SuperOp.identity(datum.dim, 1)
    if tag.kind == "K0":
        return tensor_plain([K_Pi_inv(datum)] * d)
    cs = _check_params(c)
    if len(cs) != d:
        raise ValueError(f"need {d} evaluation parameters, got {len(cs)}")
    if tag.kind == "E0":
        terms = [slot_embed(K_Pi_inv(datum), F_Pi(datum).scale(cs[j - 1]),
                            one, j, d) for j in range(1, d + 1)]
    elif tag.kind == "F0":
        terms = [slot_embed(one, E_Pi(datum).scale(cs[j - 1].inverse()),
                            K_Pi(datum), j, d) for j in range(1, d + 1)]
    else:
        raise ValueError(f"{tag.kind} is a finite generator: use rho_d")
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def Y_operator(side: str, j: int, d: int, datum: CartanDatum) -> SuperOp:
    """The slot-j transport operators of the affine module structure:

    side 'E': K_Pi^{-1 (j-1)} (x) E_{n',1} (x) 1^(d-j)
    side 'F': 1^(j-1) (x) E_{1,n'} (x) K_Pi^(d-j)
    """
    one = SuperOp.identity(datum.dim, 1)
    if side == "E":
        return slot_embed(K_Pi_inv(datum), F_Pi(datum), one, j, d)
    if side == "F":
        return slot_embed(one, E_Pi(datum), K_Pi(datum), j, d)
    raise ValueError("side must be 'E' or 'F'")


def finite_generator_tags(datum: CartanDatum, *, torus: str = "alpha") -> list[GeneratorTag]:
    """sigma, a torus basis, and all E(i)/F(i).

    torus='alpha' uses the simple-root K's, torus='eps' the full weight
    lattice basis (needed when the commutant must separate gl-weights).
    """
    tags = [GeneratorTag("sigma")]
    if torus == "alpha":
        rng = [datum.alpha(i) for i in range(1, datum.n_prime)]
    else:
        rng = [datum.eps(i) for i in range(1, datum.n_prime + 1)]
    tags += [GeneratorTag("K", gamma=g) for g in rng]
    for i in range(1, datum.n_prime):
        tags.append(GeneratorTag("E", i))
        tags.append(GeneratorTag("F", i))
    return tags


# ---------------------------------------------------------------------------
# R-matrix and its flip composite
# ---------------------------------------------------------------------------

def build_R(datum: CartanDatum) -> SuperOp:
    """The V (x) V intertwiner between the coproduct and its opposite:

    R = sum_i q^{(-1)^{p_i}} E_ii (x) E_ii + sum_{i<>j} E_ii (x) E_jj
        + (q - q^{-1}) sum_{i<j} (-1)^{p_i} E_ji (x) E_ij
    with the Koszul action convention.
    """
    dim = datum.dim
    npr = datum.n_prime
    qq = q_int(1) - q_int(-1)
    out = SuperOp.zero(dim, 2, 0)
    for i in range(1, npr + 1):
        pi = dim.parity(i)
        diag = graded_tensor([SuperOp.matrix_unit(dim, i, i)] * 2)
        out = out + diag.scale(q_int(1 if pi == 0 else -1))
        for j in range(1, npr + 1):
            if i != j:
                out = out + graded_tensor([SuperOp.matrix_unit(dim, i, i),
                                           SuperOp.matrix_unit(dim, j, j)])
    for i in range(1, npr + 1):
        for j in range(i + 1, npr + 1):
            term = graded_tensor([SuperOp.matrix_unit(dim, j, i),
                                  SuperOp.matrix_unit(dim, i, j)])
            coef = qq if dim.parity(i) == 0 else -qq
            out = out + term.scale(coef)
    return out


def build_Rhat(datum: CartanDatum) -> SuperOp:
    """R-check = (super flip) . R, the braid-relation solution:

    sum_i (-1)^{p_i} q^{(-1)^{p_i}} E_ii (x) E_ii
    + sum_{i<>j} (-1)^{p_i} E_ji (x) E_ij
    + (q - q^{-1}) sum_{i<j} E_ii (x) E_jj
    """
    dim = datum.dim
    npr = datum.n_prime
    qq = q_int(1) - q_int(-1)
    out = SuperOp.zero(dim, 2, 0)
    for i in range(1, npr + 1):
        pi = dim.parity(i)
        diag = graded_tensor([SuperOp.matrix_unit(dim, i, i)] * 2)
        coef = q_int(1) if pi == 0 else -q_int(-1)
        out = out + diag.scale(coef)
        for j in range(1, npr + 1):
            if i != j:
                term = graded_tensor([SuperOp.matrix_unit(dim, j, i),
                                      SuperOp.matrix_unit(dim, i, j)])
                out = out + (term if pi == 0 else -term)
    for i in range(1, npr + 1):
        for j in range(i + 1, npr + 1):
            term = graded_tensor([SuperOp.matrix_unit(dim, i, i),
                                  SuperOp.matrix_unit(dim, j, j)])
            out = out + term.scale(qq)
    return out


def super_flip(datum: CartanDatum) -> SuperOp:
    """u (x) w -> (-1)^{p(u)p(w)} w (x) u on V (x) V."""
    dim = datum.dim
    npr = datum.n_prime
    entries = {}
    for a in range(1, npr + 1):
        for b in range(1, npr + 1):
            s = -1 if dim.parity(a) and dim.parity(b) else 1
            r = (b - 1) * npr + (a - 1)
            c = (a - 1) * npr + (b - 1)
            entries[(r, c)] = rat(s)
    return SuperOp(dim, 2, 0, entries)


def embed_two_site(op2: SuperOp, i: int, d: int) -> SuperOp:
    """Pad an even two-site operator onto slots (i, i+1) of d slots."""
    if op2.power != 2:
        raise ValueError("embed_two_site expects a two-site operator")
    if not 1 <= i <= d - 1:
        raise ValueError(f"slot pair ({i},{i + 1}) out of range for d={d}")
    npr = op2.dim.total
    left = npr ** (i - 1)
    right = npr ** (d - i - 1)
    out = {}
    for (r, c), v in op2.entries.items():
        for a in range(left):
            base_r = (a * npr * npr + r) * right
            base_c = (a * npr * npr + c) * right
            for b in range(right):
                out[(base_r + b, base_c + b)] = v
    return SuperOp(op2.dim, d, op2.parity, out)


def rhat_slot(i: int, d: int, datum: CartanDatum) -> SuperOp:
    """R-check acting on slots (i, i+1) of V^{otimes d}."""
    return embed_two_site(build_Rhat(datum), i, d)
