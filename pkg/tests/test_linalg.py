"""Exact rank/kernel, span dimension, commutants, algebra closures."""

import random
from fractions import Fraction

import pytest

from superdual.cartan import CartanDatum
from superdual.linalg import (
    SYMBOLIC, SpecPolicy, commutant_basis, generated_algebra_dim,
    rank_kernel, span_dim,
)
from superdual.ratfunc import ONE, Q, QINV, RatFunc, q_int, rat
from superdual.rep import (
    GeneratorTag, build_Rhat, finite_generator_tags, rho_d,
)
from superdual.tensor import SuperDim, SuperOp, compose


D11 = CartanDatum(SuperDim(1, 1))


def test_rank_kernel_identity():
    rows = [{i: ONE} for i in range(4)]
    rank, ker = rank_kernel(rows, 4)
    assert rank == 4 and ker == []


def test_rank_kernel_zero():
    rank, ker = rank_kernel([], 3)
    assert rank == 0 and len(ker) == 3


def test_rank_kernel_rhat_eigenspace():
    # kernel of (Rhat - q I) at m = n = 1 is two-dimensional
    rh = build_Rhat(D11)
    shifted = rh - SuperOp.identity(D11.dim, 2).scale(Q)
    rows = []
    for r in range(4):
        row = {c: v for (rr, c), v in shifted.entries.items() if rr == r}
        rows.append(row)
    rank, ker = rank_kernel([r for r in rows if r], 4)
    assert rank == 2 and len(ker) == 2
    # plug the symbolic kernel vectors back in: exact zero
    for vec in ker:
        for r in range(4):
            acc = rat(0)
            for c, x in vec.items():
                v = shifted.entries.get((r, c))
                if v:
                    acc = acc + v * x
            assert acc.is_zero()


def test_rank_kernel_random_vs_specialized():
    rng = random.Random(4242)
    for _ in range(25):
        nrows, ncols = rng.randint(1, 5), rng.randint(1, 5)
        rows = []
        for _ in range(nrows):
            row = {}
            for c in range(ncols):
                if rng.random() < 0.6:
                    row[c] = q_int(rng.randint(-2, 2)) * rat(rng.randint(-3, 3))
            rows.append({c: v for c, v in row.items() if v})
        rank, ker = rank_kernel([r for r in rows if r], ncols)
        assert rank + len(ker) == ncols
        # specialization at a generic point can only drop the rank
        srows = [{c: v.specialize(Fraction(5, 3)) for c, v in r.items()}
                 for r in rows]
        srank, _ = rank_kernel([r for r in srows if r], ncols)
        assert srank <= rank
        # symbolic kernel vanishes identically
        for vec in ker:
            for row in rows:
                acc = rat(0)
                for c, v in row.items():
                    x = vec.get(c)
                    if x:
                        acc = acc + v * x
                assert acc.is_zero()


def test_rank_kernel_specialized_policy():
    rows = [{0: Q, 1: ONE}, {0: Q * Q, 1: Q}]
    pol = SpecPolicy(mode="specialized")
    rank, ker = rank_kernel(rows, 2, pol)
    assert rank == 1 and len(ker) == 1
    assert all(isinstance(v, Fraction) for v in ker[0].values())


def test_span_dim_examples():
    rh = build_Rhat(D11)
    eye = SuperOp.identity(D11.dim, 2)
    assert span_dim([eye, rh]) == 2
    assert span_dim([rh]) == 1
    assert span_dim([rh, rh.scale(rat(2))]) == 1
    assert span_dim([SuperOp.zero(D11.dim, 2)]) == 0


def test_commutant_of_identity():
    eye = SuperOp.identity(D11.dim, 1)
    dim, basis = commutant_basis([eye])
    assert dim == 4
    for b in basis:
        assert compose(b, eye) == compose(eye, b)


def test_commutant_gl11_tensor_square():
    datum = D11
    gens = [rho_d(t, 2, datum)
            for t in finite_generator_tags(datum, torus="eps")]
    dim, basis = commutant_basis(gens)
    assert dim == 2


def test_commutant_gl11_fourth_power():
    datum = D11
    gens = [rho_d(t, 4, datum)
            for t in finite_generator_tags(datum, torus="eps")]
    dim, _ = commutant_basis(gens)
    assert dim == 20


def test_generated_algebra_examples():
    dim = D11.dim
    eye = SuperOp.identity(dim, 1)
    assert generated_algebra_dim([eye]) == 1
    e12 = SuperOp.matrix_unit(dim, 1, 2)
    e21 = SuperOp.matrix_unit(dim, 2, 1)
    assert generated_algebra_dim([eye, e12, e21]) == 4
    rh = build_Rhat(D11)
    assert generated_algebra_dim([SuperOp.identity(dim, 2), rh]) == 2
    with pytest.raises(ValueError, match="identity"):
        generated_algebra_dim([e12])


def test_generated_algebra_monotone():
    dim = D11.dim
    eye = SuperOp.identity(dim, 1)
    e12 = SuperOp.matrix_unit(dim, 1, 2)
    e21 = SuperOp.matrix_unit(dim, 2, 1)
    d1 = generated_algebra_dim([eye, e12])
    d2 = generated_algebra_dim([eye, e12, e21])
    assert d1 <= d2
