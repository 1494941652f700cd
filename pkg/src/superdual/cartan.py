"""Cartan datum for the affine gl(m,n)/sl(m,n) root system.

Roots live in Z^{n'} spanned by the epsilon basis, with the supersymmetric
bilinear form (eps_i, eps_j) = delta(i,j) (-1)^{p(i)}.  Node indices run over
0..n'-1 with alpha_0 = eps_{n'} - eps_1 closing the affine cycle; the gray
(odd, isotropic) nodes are 0 and m.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .tensor import SuperDim


Vector = tuple[int, ...]


@dataclass(frozen=True)
class CartanDatum:
    dim: SuperDim
    signs: Vector = field(init=False)  # (eps_i, eps_i) values

    def __post_init__(self):
        object.__setattr__(
            self, "signs",
            tuple(1 if i <= self.dim.m else -1
                  for i in range(1, self.dim.total + 1)))

    @property
    def n_prime(self) -> int:
        return self.dim.total

    @property
    def n_dprime(self) -> int:
        return self.dim.total - 1

    def node_range(self) -> range:
        """Affine node labels 0..n'-1."""
        return range(self.n_prime)

    def eps(self, i: int) -> Vector:
        v = [0] * self.n_prime
        v[i - 1] = 1
        return tuple(v)

    def alpha(self, i: int) -> Vector:
        """Simple root alpha_i; alpha_0 is the affine node."""
        if not 0 <= i <= self.n_dprime:
            raise ValueError(f"node {i} out of range 0..{self.n_dprime}")
        v = [0] * self.n_prime
        if i == 0:
            v[self.n_prime - 1] += 1
            v[0] -= 1
        else:
            v[i - 1] += 1
            v[i] -= 1
        return tuple(v)

    def pairing(self, gamma: Vector, lam: Vector) -> int:
        """Bilinear form sum_i gamma_i lam_i (-1)^{p(i)}."""
        return sum(g * l * s for g, l, s in zip(gamma, lam, self.signs))

    def d_i(self, i: int) -> int:
        """Symmetrizer signs; d_0 = d_{n'} = -1."""
        if i == 0 or i == self.n_prime:
            return -1
        return 1 if i <= self.dim.m else -1

    def node_parity(self, i: int) -> int:
        """1 exactly on the gray nodes 0 and m."""
        return 1 if i in (0, self.dim.m) else 0

    def root_lattice_basis(self) -> list[Vector]:
        """alpha_0 .. alpha_{n''} together with eps_1."""
        return [self.alpha(i) for i in self.node_range()] + [self.eps(1)]


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_neg(a: Vector) -> Vector:
    return tuple(-x for x in a)


def cartan_pairing(gamma, lam, datum: CartanDatum) -> int:
    return datum.pairing(tuple(gamma), tuple(lam))
