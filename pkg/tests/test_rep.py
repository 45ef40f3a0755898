import itertools
import random

import pytest

from braidrep.cyclo import CycloNum, order_of_power, zeta
from braidrep.errors import (
    DegenerateBlock,
    DisconnectedCover,
    ExponentDivisible,
    IndexOutOfRange,
    NotCoprime,
    NotDegenerate,
    NotPrimitive,
    RadicalNotFixed,
)
from braidrep.linalg import CycloMatrix
from braidrep.rep import (
    BraidWord,
    block_twist_word,
    commutator,
    evaluate_word,
    galois_transport,
    lantern_block,
    make_context,
    pair_twist,
    parse_word,
    prefix_twist,
    quotient_gram,
    quotient_matrix,
    radical_vector,
    scalar_relation_holds,
    transported_context,
)

from conftest import sample_context


# -- context construction ------------------------------------------------------

def test_make_context_validation():
    assert make_context(3, (4, 1, 1), 1).weights == (1, 1, 1)
    with pytest.raises(ExponentDivisible):
        make_context(3, (3, 1, 1), 1)
    with pytest.raises(NotPrimitive):
        make_context(4, (1, 1, 1), 2)
    with pytest.raises(DisconnectedCover):
        make_context(6, (2, 2, 2), 1)
    ctx = make_context(12, (7, 5, 4, 4, 4), 1)
    assert ctx.eps0 == 1
    assert make_context(5, (1, 1, 1), 1).eps0 == 0


def test_gram_structure():
    rng = random.Random(31)
    for _ in range(20):
        ctx = sample_context(rng)
        g = ctx.gram
        assert g.conj_transpose() == -g
        for a in range(ctx.n - 1):
            for b in range(ctx.n - 1):
                if abs(a - b) > 1:
                    assert not g.entry(a, b)
        assert ctx.mu.is_real()
        assert ctx.mu.embed().real > 0


def test_gram_uniform_weight_values():
    # kappa = (1, ..., 1): diagonal q - qbar, neighbor pairing qbar - 1
    for d, n, k in ((3, 3, 1), (5, 4, 2), (7, 5, 3), (12, 6, 5)):
        ctx = make_context(d, (1,) * n, k)
        q = ctx.q
        one = CycloNum.one(d)
        for a in range(n - 1):
            assert ctx.gram.entry(a, a) == q - q.conj()
        for i in range(1, n - 1):
            x, y = ctx.basis_vector(i), ctx.basis_vector(i + 1)
            assert ctx.jform(x, y) == q.conj() - one


# -- pair twists -----------------------------------------------------------------

def test_pair_twist_is_reflection_on_adjacent_vector():
    ctx = make_context(5, (1, 1, 2, 1), 1)
    m = pair_twist(ctx, 1, 2)
    img = m.col(0)
    assert img[0] == ctx.qpow(2)
    assert not any(img[1:])


def test_pair_twist_det_order_unipotency():
    rng = random.Random(32)
    for _ in range(15):
        ctx = sample_context(rng)
        for i, j in itertools.combinations(range(1, ctx.n + 1), 2):
            m = pair_twist(ctx, i, j)
            ki, kj = ctx.weights[i - 1], ctx.weights[j - 1]
            assert m.det() == ctx.qpow(ki + kj)
            if (ki + kj) % ctx.d == 0:
                assert m.is_unipotent()
            else:
                assert m.multiplicative_order(ctx.d) == order_of_power(ctx.d, ctx.k * (ki + kj))


def test_pair_twist_bounds():
    ctx = make_context(5, (1, 1, 1), 1)
    with pytest.raises(IndexOutOfRange):
        pair_twist(ctx, 0, 2)
    with pytest.raises(IndexOutOfRange):
        pair_twist(ctx, 2, 4)


# -- prefix twists ---------------------------------------------------------------

def test_prefix_twist_scales_initial_block():
    rng = random.Random(33)
    for _ in range(10):
        ctx = sample_context(rng)
        for r in range(2, ctx.n):
            m = prefix_twist(ctx, r)
            scale = ctx.qpow(ctx.prefix_sums[r])
            for i in range(1, r):
                assert m.apply(ctx.basis_vector(i)) == tuple(scale * x for x in ctx.basis_vector(i))
            assert m.trace() == scale * (r - 1) + (ctx.n - r)


def test_prefix_twist_last_row_consistency():
    # image of the derived vector g_n = -(g_1 + ... + g_{n-1}) matches the
    # stated shear by (1 - q^{k_{l+1}+...+k_r}) on each g_l, l < r
    rng = random.Random(34)
    for _ in range(10):
        ctx = sample_context(rng)
        n, d = ctx.n, ctx.d
        one = CycloNum.one(d)
        g_n = tuple(-one for _ in range(n - 1))
        for r in range(2, n):
            m = prefix_twist(ctx, r)
            image = m.apply(g_n)
            shear = [one - ctx.qpow(ctx.prefix_sums[r] - ctx.prefix_sums[l]) for l in range(1, r)]
            expected = list(g_n)
            for l, c in enumerate(shear):
                expected[l] = expected[l] + c
            assert image == tuple(expected), (ctx.d, ctx.weights, ctx.k, r)


def test_prefix_twist_bounds():
    ctx = make_context(5, (1, 1, 1, 1, 1), 1)
    with pytest.raises(IndexOutOfRange):
        prefix_twist(ctx, 5)
    with pytest.raises(IndexOutOfRange):
        prefix_twist(ctx, 1)


def test_prefix_twist_order():
    rng = random.Random(35)
    for _ in range(10):
        ctx = sample_context(rng)
        for r in range(2, ctx.n):
            m = prefix_twist(ctx, r)
            if ctx.prefix_sums[r] % ctx.d == 0:
                assert m.is_unipotent()
            else:
                assert m.multiplicative_order(ctx.d) == order_of_power(ctx.d, ctx.k * ctx.prefix_sums[r])


# -- words -----------------------------------------------------------------------

def test_word_basics():
    ctx = make_context(5, (1, 1, 2, 1), 1)
    ident = CycloMatrix.identity(5, 3)
    assert evaluate_word(ctx, BraidWord()) == ident
    assert evaluate_word(ctx, BraidWord.A(1, 2) * BraidWord.A(1, 2, -1)) == ident


def test_word_parse_and_format():
    word = parse_word("A(1,2) T(3)^-1 FT(2,5)")
    assert str(word) == "A(1,2) T(3)^-1 FT(2,5)"
    assert parse_word("").letters == ()
    with pytest.raises(IndexOutOfRange):
        parse_word("B(1,2)")


def test_commuting_supports():
    rng = random.Random(36)
    for _ in range(10):
        ctx = sample_context(rng, n_range=(4, 6))
        ident = CycloMatrix.identity(ctx.d, ctx.n - 1)
        quads = list(itertools.combinations(range(1, ctx.n + 1), 4))
        for i, j, k, l in quads:
            assert evaluate_word(ctx, commutator(BraidWord.A(i, j), BraidWord.A(k, l))) == ident
            assert evaluate_word(ctx, commutator(BraidWord.A(i, l), BraidWord.A(j, k))) == ident


def test_block_twist_word_shape():
    assert block_twist_word(1, 2).letters == ((("A", 1, 2), 1),)
    letters = [g for g, _ in block_twist_word(1, 3).letters]
    assert sorted(letters) == [("A", 1, 2), ("A", 1, 3), ("A", 2, 3)]
    with pytest.raises(IndexOutOfRange):
        block_twist_word(3, 3)


def test_full_twist_identity():
    ctx = make_context(5, (1, 1, 2, 1), 1)
    for r in range(2, ctx.n):
        assert evaluate_word(ctx, BraidWord.FT(1, r)) == prefix_twist(ctx, r)


def test_form_preservation_words():
    rng = random.Random(37)
    for _ in range(10):
        ctx = sample_context(rng)
        word = BraidWord()
        for _ in range(5):
            i = rng.randint(1, ctx.n - 1)
            j = rng.randint(i + 1, ctx.n)
            word = word * BraidWord.A(i, j, rng.choice((1, -1)))
        m = evaluate_word(ctx, word)
        assert m.conj_transpose() @ ctx.gram @ m == ctx.gram


# -- radical and quotient ---------------------------------------------------------

def test_radical_explicit():
    ctx = make_context(3, (1, 1, 1), 1)
    q = ctx.q
    one = CycloNum.one(3)
    assert radical_vector(ctx) == (q.conj() - one, q.conj() ** 2 - one)


def test_radical_properties():
    rng = random.Random(38)
    for _ in range(10):
        ctx = sample_context(rng, force_eps0=True)
        w = radical_vector(ctx)
        assert all(not x for x in ctx.gram.apply(w))
        for i in range(1, ctx.n):
            assert not ctx.jform(ctx.basis_vector(i), w)
        for i, j in itertools.combinations(range(1, ctx.n + 1), 2):
            assert pair_twist(ctx, i, j).apply(w) == w
        for r in range(2, ctx.n):
            assert prefix_twist(ctx, r).apply(w) == w


def test_radical_requires_degenerate():
    ctx = make_context(5, (1, 1, 1), 1)
    with pytest.raises(NotDegenerate):
        radical_vector(ctx)
    with pytest.raises(NotDegenerate):
        quotient_gram(ctx)


def test_quotient():
    ctx = make_context(4, (1, 1, 1, 1), 1)
    ident = CycloMatrix.identity(4, 3)
    assert quotient_matrix(ctx, ident) == CycloMatrix.identity(4, 2)
    a, b = pair_twist(ctx, 1, 2), pair_twist(ctx, 3, 4)
    assert quotient_matrix(ctx, a @ b) == quotient_matrix(ctx, a) @ quotient_matrix(ctx, b)
    assert quotient_gram(ctx).rank() == 2
    with pytest.raises(RadicalNotFixed):
        quotient_matrix(ctx, ident.scale(zeta(4)))


def test_quotient_dimension_and_descended_form():
    rng = random.Random(39)
    for _ in range(8):
        ctx = sample_context(rng, force_eps0=True)
        gq = quotient_gram(ctx)
        assert gq.rows == ctx.n - 2
        assert gq.rank() == ctx.n - 2
        for i, j in itertools.combinations(range(1, ctx.n + 1), 2):
            mq = quotient_matrix(ctx, pair_twist(ctx, i, j))
            assert mq.conj_transpose() @ gq @ mq == gq


# -- lantern block ------------------------------------------------------------------

def test_lantern_block_canonical():
    ctx = make_context(5, (1, 1, 1, 2), 1)
    blk = lantern_block(ctx, 3)
    d = ctx.d
    zero, one = CycloNum.zero(d), CycloNum.one(d)
    assert blk.A == CycloMatrix.from_rows(d, [
        [ctx.qpow(2), ctx.qpow(1) - ctx.qpow(2)],
        [zero, one],
    ])
    assert blk.B == CycloMatrix.from_rows(d, [
        [one, zero],
        [one - ctx.qpow(1), ctx.qpow(2)],
    ])
    scalar = ctx.qpow(ctx.prefix_sums[3])
    assert blk.A @ blk.B @ blk.C == CycloMatrix.identity(d, 2).scale(scalar)
    assert blk.C.apply(blk.eigenvector) == tuple(blk.eigenvalue * x for x in blk.eigenvector)


def test_lantern_block_degenerate():
    ctx = make_context(5, (1, 1, 1, 2), 1)   # prefix sums 1, 2, 3, 5
    with pytest.raises(DegenerateBlock):
        lantern_block(ctx, 4)                # d | k_1 + ... + k_4


def test_lantern_block_sampled():
    rng = random.Random(40)
    done = 0
    while done < 12:
        ctx = sample_context(rng)
        r = rng.randint(3, ctx.n)
        if ctx.prefix_sums[r - 2] % ctx.d == 0 or ctx.prefix_sums[r] % ctx.d == 0:
            continue
        blk = lantern_block(ctx, r)
        scalar = ctx.qpow(ctx.prefix_sums[r])
        assert blk.A @ blk.B @ blk.C == CycloMatrix.identity(ctx.d, 2).scale(scalar)
        assert blk.C.apply(blk.eigenvector) == tuple(blk.eigenvalue * x for x in blk.eigenvector)
        done += 1


# -- Galois transport and the scalar relation -----------------------------------------

def test_galois_transport():
    ctx = make_context(5, (1, 1, 2, 1), 1)
    m = pair_twist(ctx, 1, 3)
    assert galois_transport(ctx, m, 1) == m
    for t in (2, 3, 4):
        sibling = transported_context(ctx, t)
        assert galois_transport(ctx, ctx.gram, t) == sibling.gram
        for i, j in itertools.combinations(range(1, 5), 2):
            assert galois_transport(ctx, pair_twist(ctx, i, j), t) == pair_twist(sibling, i, j)
    with pytest.raises(NotCoprime):
        galois_transport(ctx, m, 5)


def test_scalar_relation():
    assert scalar_relation_holds(make_context(5, (1, 1, 1, 1, 1), 1))
    assert scalar_relation_holds(make_context(4, (1, 1, 1, 1), 1))
    assert scalar_relation_holds(make_context(3, (1, 1, 1), 1))
    with pytest.raises(NotDegenerate):
        scalar_relation_holds(make_context(5, (1, 1, 1), 1))
