import random

import pytest
import sympy

from freeorder.core import X, Y, LaurentPolynomial, Ordering, u, v, x, y
from freeorder.matrices import (
    DiagAlt,
    DiagU,
    LazyMatrix,
    Lemma4Violation,
    Position,
    TransX,
    TransY,
    TriangularBlock,
    block_compare,
    conjugated_entry,
    generator_block,
    generator_entry,
    inverse_entry,
    inverse_entry_formula,
    lemma4_scan,
    matrix_entry,
    path_sum_entry,
    position_key,
    position_precedes,
    positions,
    unitriangular_block,
    unitriangular_inverse_block,
)
from freeorder.ordered import DirectProduct, FreeAbelian, GroupAlgebra
from freeorder.freeproduct import FreeProductGroup

M = DirectProduct([FreeAbelian(2), FreeAbelian(1)])
L = GroupAlgebra(M)
m = ((1, 0), (0,))
e = M.identity


def to_sympy(p: LaurentPolynomial):
    out = sympy.Integer(0)
    for mono, c in p.terms.items():
        t = sympy.Rational(c.numerator, c.denominator)
        for s, k in mono.items:
            t *= sympy.Symbol(str(s)) ** k
        out += t
    return out


# -- generators -------------------------------------------------------------

def test_generator_entry_examples():
    assert generator_entry(DiagAlt(m), Position(2, 2), L) == L.element(m)
    assert generator_entry(DiagAlt(m), Position(1, 1), L) == L.one
    assert generator_entry(TransX, Position(1, 3), L) == L.scalar(x(1, 3))
    assert generator_entry(TransX, Position(2, 2), L) == L.one
    assert generator_entry(DiagU.inv(), Position(3, 3), L) == L.scalar(u(3, -1))
    assert generator_entry(DiagAlt(m).inv(), Position(4, 4), L) == L.element(M.inv(m))
    with pytest.raises(ValueError):
        Position(2, 1)  # below the diagonal is never addressed
    assert generator_block(TransX, 3, L)[2, 1] == L.zero


def test_position_helpers():
    assert Position(2, 5).band == 3
    assert Position(1, 3).shifted(2) == Position(3, 5)


# -- inversion --------------------------------------------------------------

def test_inverse_block_examples():
    assert unitriangular_inverse_block(X, 1)[1, 1] == 1
    assert unitriangular_inverse_block(X, 2)[1, 2] == -x(1, 2)
    assert unitriangular_inverse_block(X, 3)[1, 3] == -x(1, 3) + x(1, 2) * x(2, 3)


def test_inverse_formula_examples():
    assert inverse_entry_formula(1, 2) == -x(1, 2)
    assert inverse_entry_formula(1, 3) == -x(1, 3) + x(1, 2) * x(2, 3)
    assert inverse_entry_formula(1, 4) == (
        -x(1, 4) + x(1, 2) * x(2, 4) + x(1, 3) * x(3, 4) - x(1, 2) * x(2, 3) * x(3, 4)
    )
    assert inverse_entry_formula(2, 4, Y) == -y(2, 4) + y(2, 3) * y(3, 4)
    with pytest.raises(ValueError):
        inverse_entry_formula(3, 3)


@pytest.mark.parametrize("size", range(1, 9))
@pytest.mark.parametrize("family", [X, Y])
def test_inverse_times_block_is_identity(size, family):
    prod = unitriangular_block(family, size) @ unitriangular_inverse_block(family, size)
    assert prod == TriangularBlock.identity(size)
    prod = unitriangular_inverse_block(family, size) @ unitriangular_block(family, size)
    assert prod == TriangularBlock.identity(size)


def test_back_substitution_matches_sympy_inverse():
    n = 5
    mat = sympy.eye(n)
    for i in range(n):
        for k in range(i + 1, n):
            mat[i, k] = sympy.Symbol(f"x[{i + 1},{k + 1}]")
    inv = mat.inv()
    for i in range(n):
        for k in range(i, n):
            assert sympy.expand(inv[i, k] - to_sympy(inverse_entry(X, i + 1, k + 1))) == 0


def test_formula_matches_back_substitution():
    for i in range(1, 8):
        for n in range(i + 1, 8):
            assert inverse_entry_formula(i, n) == inverse_entry(X, i, n)


# -- conjugation and the non-vanishing scan ---------------------------------

def test_conjugated_entry_examples():
    assert conjugated_entry(m, X, Position(1, 1), L) == L.one
    assert conjugated_entry(m, X, Position(2, 2), L) == L.element(m)
    assert conjugated_entry(m, X, Position(1, 2), L) == L.scalar(x(1, 2)) - L.element(m, x(1, 2))


def test_conjugated_entry_matches_block_product():
    size = 5
    conj = generator_block(TransX.inv(), size, L) @ generator_block(DiagAlt(m), size, L) @ generator_block(TransX, size, L)
    for p in positions(size):
        assert conj[p.row, p.col] == conjugated_entry(m, X, p, L)


def test_lemma4_scan_examples():
    rep = lemma4_scan(m, 2, L)
    assert rep.checked == 3
    assert rep.entries[Position(1, 2)] == L.scalar(x(1, 2)) * (L.one - L.element(m))
    with pytest.raises(ValueError):
        lemma4_scan(e, 2, L)
    assert lemma4_scan(m, 6, L).checked == 21


def test_lemma4_scan_random_elements():
    rng = random.Random(4)
    for _ in range(20):
        g = M.random_nonidentity(rng)
        for fam in (X, Y):
            for size in range(2, 7):
                lemma4_scan(g, size, L, fam)


def test_identity_coefficient_can_cancel_at_first_order():
    # at odd-odd positions the linear term cancels; a quadratic term survives
    odd = conjugated_entry(m, X, Position(1, 3), L).coefficient(e)
    assert odd == x(1, 2) * x(2, 3)


def test_lemma4_violation_names_position():
    exc = Lemma4Violation(Position(1, 2), "entry vanishes")
    assert exc.position == Position(1, 2)
    assert "(1,2)" in str(exc)


# -- position order ---------------------------------------------------------

def test_position_precedes_examples():
    assert position_precedes(Position(2, 2), Position(1, 3))
    assert position_precedes(Position(1, 2), Position(1, 3))
    assert not position_precedes(Position(2, 4), Position(1, 3))
    assert not position_precedes(Position(1, 3), Position(1, 3))


def test_position_order_is_band_then_row():
    ps = [Position(i, k) for i in range(1, 8) for k in range(i, 8)]
    for p in ps:
        for q in ps:
            assert position_precedes(p, q) == (position_key(p) < position_key(q))
    assert positions(3) == [Position(1, 1), Position(2, 2), Position(3, 3),
                            Position(1, 2), Position(2, 3), Position(1, 3)]


# -- block order ------------------------------------------------------------

def alg_block(entries, size):
    return TriangularBlock(size, {Position(*k): v for k, v in entries.items()}, L.zero)


def test_block_compare_examples():
    ident = TriangularBlock.identity(3, L.one, L.zero)
    assert block_compare(ident, ident) is Ordering.EQ
    g = ((0, 1), (0,))
    d = alg_block({(1, 1): L.one, (2, 2): L.element(g), (3, 3): L.one}, 3)
    assert block_compare(d, ident) is Ordering.GT
    base = {(i, i): L.one for i in range(1, 5)}
    a = alg_block({**base, (2, 3): L.scalar(x(1, 2)), (1, 4): L.scalar(-5)}, 4)
    b = alg_block({**base, (2, 3): L.scalar(x(1, 3)), (1, 4): L.scalar(5)}, 4)
    # decided at (2,3): band 1 before band 3
    assert block_compare(a, b) is Ordering.GT


def test_block_compare_rejects_bad_input():
    ident = TriangularBlock.identity(2, L.one, L.zero)
    with pytest.raises(ValueError):
        block_compare(ident, TriangularBlock.identity(3, L.one, L.zero))
    neg = alg_block({(1, 1): -L.one, (2, 2): L.one}, 2)
    with pytest.raises(ValueError):
        block_compare(ident, neg)


# -- lazy products ----------------------------------------------------------

def test_matrix_entry_examples():
    empty = LazyMatrix()
    assert matrix_entry(empty, Position(3, 3), L) == L.one
    assert matrix_entry(empty, Position(1, 4), L).is_zero()
    assert matrix_entry(LazyMatrix((DiagAlt(m),)), Position(2, 2), L) == L.element(m)
    conj = LazyMatrix((TransX.inv(), DiagAlt(m), TransX))
    assert matrix_entry(conj, Position(1, 2), L) == L.scalar(x(1, 2)) * (L.one - L.element(m))


def random_word_matrix(rng, group, max_len=4):
    return group.represent(group.random_word(rng, max_len))


def test_matrix_entry_matches_truncated_block_products():
    group = FreeProductGroup(FreeAbelian(2), FreeAbelian(1))
    rng = random.Random(8)
    for _ in range(15):
        lm = random_word_matrix(rng, group, 3)
        size = rng.randint(1, 4)
        dense = TriangularBlock.identity(size, group.algebra.one, group.algebra.zero)
        for f in lm.factors:
            dense = dense @ generator_block(f, size, group.algebra)
        for p in positions(size):
            assert matrix_entry(lm, p, group.algebra) == dense[p.row, p.col]


def test_path_sum_examples():
    group = FreeProductGroup(FreeAbelian(2), FreeAbelian(1))
    A = group.algebra
    assert path_sum_entry(LazyMatrix(), Position(2, 2), A) == A.one
    assert path_sum_entry(LazyMatrix(), Position(1, 2), A).is_zero()
    w = group.parse("A[1,0]")
    pa = group.pair_of(w[0])
    got = path_sum_entry(group.represent(w), Position(1, 3), A)
    assert got == conjugated_entry(pa, X, Position(1, 3), A) * (u(1, -1) * u(3))
    w = group.parse("A[1,0] * B[2]")
    pa, pb = group.pair_of(w[0]), group.pair_of(w[1])
    a_ = lambda i, k: conjugated_entry(pa, X, Position(i, k), A) * (u(i, -1) * u(k))
    b_ = lambda i, k: conjugated_entry(pb, Y, Position(i, k), A) * (v(i, -1) * v(k))
    expected = a_(1, 1) * b_(1, 2) + a_(1, 2) * b_(2, 2)
    assert path_sum_entry(group.represent(w), Position(1, 2), A) == expected
    assert matrix_entry(group.represent(w), Position(1, 2), A) == expected


def test_path_sum_requires_letter_structure():
    with pytest.raises(ValueError):
        path_sum_entry(LazyMatrix((TransX,)), Position(1, 2), L)


def test_path_sum_fused_and_unfused_agree():
    group = FreeProductGroup(FreeAbelian(2), FreeAbelian(1))
    rng = random.Random(21)
    for _ in range(25):
        lm = random_word_matrix(rng, group)
        i = rng.randint(1, 3)
        p = Position(i, i + rng.randint(0, 4))
        ref = path_sum_entry(lm, p, group.algebra)
        assert matrix_entry(lm, p, group.algebra) == ref
        assert matrix_entry(lm, p, group.algebra, fuse=False) == ref


def test_shift_periodicity():
    group = FreeProductGroup(FreeAbelian(2), FreeAbelian(1))
    rng = random.Random(9)
    for _ in range(25):
        lm = random_word_matrix(rng, group)
        i = rng.randint(1, 3)
        p = Position(i, i + rng.randint(0, 4))
        assert matrix_entry(lm, p.shifted(2), group.algebra) == matrix_entry(lm, p, group.algebra).shifted(2)


def test_lazy_matrix_inverse():
    group = FreeProductGroup(FreeAbelian(2), FreeAbelian(1))
    w = group.parse("A[1,1] * B[-1] * A[0,2]")
    prod = group.represent(w) @ group.represent(w).inverse()
    for p in positions(4):
        assert matrix_entry(prod, p, group.algebra) == (group.algebra.one if p.band == 0 else group.algebra.zero)
