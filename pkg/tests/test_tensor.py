"""Word codec, Koszul-signed tensor products, brackets, supertrace."""

import random

import pytest

from superdual.ratfunc import ONE, Q, QINV, q_int, rat
from superdual.tensor import (
    SuperDim, SuperOp, all_words, bracket, compose, graded_tensor,
    rank_of_word, slot_embed, supertrace, tensor_plain, word_of_rank,
    word_parity, word_weight,
)


D11 = SuperDim(1, 1)
D21 = SuperDim(2, 1)


def unit(dim, i, j, c=ONE):
    return SuperOp.matrix_unit(dim, i, j, c)


def test_word_codec_examples():
    d3 = SuperDim(2, 1)  # n' = 3
    assert word_of_rank(2, d3, 2) == (1, 3)
    assert rank_of_word((2, 1), d3) == 3
    assert word_of_rank(1, D11, 1) == (2,)
    assert word_parity((2,), D11) == 1


def test_word_codec_roundtrip_and_order():
    d3 = SuperDim(2, 1)
    ranks = list(range(3 ** 3))
    ws = [word_of_rank(r, d3, 3) for r in ranks]
    assert ws == sorted(ws)  # lex order == rank order
    assert [rank_of_word(w, d3) for w in ws] == ranks
    with pytest.raises(ValueError):
        word_of_rank(27, d3, 3)


def test_word_weight():
    assert word_weight((1, 3, 1), SuperDim(2, 1)) == (2, 0, 1)


def test_graded_tensor_signs():
    # (E12 (x) E21)(eps2 (x) eps1) = -eps1 (x) eps2
    t = graded_tensor([unit(D11, 1, 2), unit(D11, 2, 1)])
    assert t.entries == {(rank_of_word((1, 2), D11),
                          rank_of_word((2, 1), D11)): rat(-1)}
    # identity tensor identity
    ids = graded_tensor([SuperOp.identity(D11, 1)] * 2)
    assert ids == SuperOp.identity(D11, 2)
    # even first column: no sign
    t2 = graded_tensor([unit(D11, 2, 1), unit(D11, 2, 1)])
    assert t2.entries == {(rank_of_word((2, 2), D11),
                           rank_of_word((1, 1), D11)): ONE}


def test_graded_tensor_rejects_inhomogeneous():
    mixed = unit(D11, 1, 2) + unit(D11, 1, 1)
    assert mixed.parity is None
    with pytest.raises(ValueError, match="even and odd"):
        graded_tensor([mixed, unit(D11, 1, 1)])


def test_compose_reproduces_product_sign():
    # the graded product rule (X1 (x) X2)(Y1 (x) Y2) =
    # (-1)^{p(X2)p(Y1)} X1 Y1 (x) X2 Y2 falls out of composing matrices:
    e21 = unit(D11, 2, 1)
    one = SuperOp.identity(D11, 1)
    left = compose(graded_tensor([one, e21]), graded_tensor([e21, one]))
    assert left == -graded_tensor([e21, e21])
    right = compose(graded_tensor([e21, one]), graded_tensor([one, e21]))
    assert right == graded_tensor([e21, e21])


def test_compose_matrix_units():
    e12, e21 = unit(D21, 1, 2), unit(D21, 2, 1)
    assert compose(e12, e21) == unit(D21, 1, 1)
    a = graded_tensor([e12, e21])
    assert compose(a, SuperOp.identity(D21, 2)) == a


def test_compose_parity_bookkeeping():
    rng = random.Random(5)
    sites = [unit(D21, rng.randint(1, 3), rng.randint(1, 3)) for _ in range(8)]
    for a in sites:
        for b in sites:
            c = compose(a, b)
            assert c.parity == (a.parity + b.parity) % 2
            assert c.check_parity()


def test_graded_tensor_associativity_via_embeddings():
    one = SuperOp.identity(D21, 1)
    ops = [unit(D21, 1, 3), unit(D21, 2, 1), unit(D21, 3, 3)]
    direct = graded_tensor(ops)
    nested = compose(compose(graded_tensor([ops[0], one, one]),
                             graded_tensor([one, ops[1], one])),
                     graded_tensor([one, one, ops[2]]))
    assert direct == nested


def test_bracket_examples():
    e12, e21 = unit(D21, 1, 2), unit(D21, 2, 1)  # both even here
    com = bracket(e12, e21)
    assert com == unit(D21, 1, 1) - unit(D21, 2, 2)
    assert bracket(e12, e12).is_zero()
    # odd-odd pair anticommutes: m = n = 1
    o12, o21 = unit(D11, 1, 2), unit(D11, 2, 1)
    assert bracket(o12, o21) == unit(D11, 1, 1) + unit(D11, 2, 2)


def test_bracket_antisymmetry():
    rng = random.Random(9)
    for _ in range(20):
        a = unit(D21, rng.randint(1, 3), rng.randint(1, 3), Q)
        b = unit(D21, rng.randint(1, 3), rng.randint(1, 3), QINV)
        lhs = bracket(a, b)
        rhs = bracket(b, a)
        sign = -1 if (a.parity and b.parity) else 1
        assert lhs == (rhs if sign == -1 else -rhs)


def test_qdeformed_bracket_power():
    a, b = unit(D21, 1, 2), unit(D21, 2, 3)
    # [[a,b]] with q-power w: ab - q^w ba on even operators
    got = bracket(a, b, q_power=q_int(2))
    want = compose(a, b) - compose(b, a).scale(q_int(2))
    assert got == want


def test_slot_embed():
    one = SuperOp.identity(D21, 1)
    a = unit(D21, 1, 3)
    assert slot_embed(one, a, one, 1, 1) == a
    emb = slot_embed(one, a, one, 2, 3)
    assert emb == graded_tensor([one, a, one])
    with pytest.raises(ValueError):
        slot_embed(one, a, one, 4, 3)


def test_supertrace():
    assert supertrace(SuperOp.identity(D21, 1)) == rat(1)  # m - n = 1
    assert supertrace(SuperOp.identity(D11, 1)) == rat(0)
    assert supertrace(unit(D21, 1, 2)).is_zero()
    # (m - n)^2 on the square
    assert supertrace(SuperOp.identity(SuperDim(2, 1), 2)) == rat(1)
    assert supertrace(SuperOp.identity(SuperDim(1, 2), 2)) == rat(1)
    assert supertrace(SuperOp.identity(SuperDim(3, 1), 2)) == rat(4)


def test_tensor_plain_mixed_powers():
    a = graded_tensor([unit(D21, 1, 1), unit(D21, 2, 2)])
    b = unit(D21, 3, 3)
    t = tensor_plain([a, b])
    assert t.power == 3
    assert t.entries == {(rank_of_word((1, 2, 3), D21),
                          rank_of_word((1, 2, 3), D21)): ONE}


def test_specialize_operator():
    a = unit(D21, 1, 2, Q - QINV)
    s = a.specialize(2)
    from fractions import Fraction
    assert s.entries == {(0, 1): Fraction(3, 2)}


def test_triplet_export():
    a = unit(D11, 1, 2, Q)
    assert a.triplets() == [(0, 1, "q")]
