import itertools
import random

import pytest

from freeorder.core import LaurentPolynomial, Ordering, u, x
from freeorder.ordered import (
    DirectProduct,
    FreeAbelian,
    GroupAlgebra,
    algebra_compare,
    algebra_sign,
    make_product_group,
    pair_compare,
)
from freeorder import sampling
from freeorder.verify import biinvariance_ok, ordered_ring_ok, totality_ok, transitivity_ok

EQ, LT, GT = Ordering.EQ, Ordering.LT, Ordering.GT

Z1, Z2 = FreeAbelian(1), FreeAbelian(2)
M = DirectProduct([Z2, Z1])
L = GroupAlgebra(M)


def test_pair_compare_examples():
    e = M.identity
    assert pair_compare(M, e, e) is EQ
    assert pair_compare(M, ((1, 0), (0,)), ((0, 5), (7,))) is GT
    assert pair_compare(M, ((0, 0), (1,)), ((0, 0), (-1,))) is GT


def test_free_abelian_lex():
    assert Z2.compare((1, -9), (0, 100)) is GT
    assert Z2.compare((0, 1), (0, 1)) is EQ
    assert Z2.parse(" [ 1, -2 ] ") == (1, -2)
    assert Z2.render((1, -2)) == "[1,-2]"


def test_make_product_group():
    single = make_product_group([Z2])
    rng = random.Random(5)
    for _ in range(200):
        a, b = Z2.random_element(rng), Z2.random_element(rng)
        assert single.compare((a,), (b,)) == Z2.compare(a, b)
    assert make_product_group([Z1, Z1]).compare(((1,), (-9,)), ((0,), (100,))) is GT
    with pytest.raises(ValueError):
        make_product_group([])


def test_nested_product_agrees_with_flat_lex():
    nested = DirectProduct([DirectProduct([Z1, Z1]), Z1])
    flat = FreeAbelian(3)
    for s, t in itertools.product(itertools.product(range(-1, 2), repeat=3), repeat=2):
        ns, nt = (((s[0],), (s[1],)), (s[2],)), (((t[0],), (t[1],)), (t[2],))
        assert nested.compare(ns, nt) == flat.compare(s, t)


def test_pair_order_axioms_randomised():
    rng = random.Random(11)
    sample = lambda: M.random_element(rng)
    for _ in range(1000):
        assert totality_ok(M.compare, sample(), sample())
    for _ in range(1000):
        assert transitivity_ok(M.compare, sample(), sample(), sample())
        assert biinvariance_ok(M.compare, M.op, sample(), sample(), sample(), sample())


def test_embedding_monotone():
    vals = list(itertools.product(range(-2, 3), repeat=2))
    for a, b in itertools.product(vals, repeat=2):
        assert pair_compare(M, M.embed(0, a), M.embed(0, b)) == Z2.compare(a, b)


# -- group algebra ----------------------------------------------------------

g = ((1, 0), (0,))
h = ((0, 0), (2,))


def test_algebra_mul_examples():
    a = L.element(g, x(1, 2) + 3) + L.element(h, u(1))
    assert a * L.one == a
    assert L.one * a == a
    assert L.element(g) * L.element(h) == L.element(M.op(g, h))
    assert (L.element(g, x(1, 2)) + L.one) * L.element(g) == L.element(M.op(g, g), x(1, 2)) + L.element(g)


def test_algebra_add_cancels():
    a = L.element(g, x(1, 2))
    assert (a - a).is_zero()
    assert a + L.zero == a


def test_algebra_compare_examples():
    assert algebra_compare(L.zero, L.zero) is EQ
    assert algebra_compare(L.element(h), L.zero) is GT
    p, q = x(1, 2), x(1, 3)
    assert M.compare(g, h) is GT
    lhs = L.element(g, 2) + L.element(h, p)
    rhs = L.element(g, 2) + L.element(h, q)
    assert algebra_compare(lhs, rhs) == p.compare(q)


def test_algebra_sign_examples():
    assert algebra_sign(L.zero) == 0
    assert algebra_sign(L.element(h)) == 1
    assert algebra_sign(L.element(g, x(1, 2)) - L.element(h)) == 1
    assert algebra_sign(L.element(h) - L.element(g, x(1, 2))) == -1


def test_algebra_ordered_ring_randomised():
    rng = random.Random(2)
    for _ in range(1000):
        a, b, c = (sampling.random_algebra_element(rng, L) for _ in range(3))
        assert totality_ok(L.compare, a, b)
        assert transitivity_ok(L.compare, a, b, c)
        assert L.compare(a + c, b + c) == L.compare(a, b)
        assert ordered_ring_ok(L.compare, L.zero, a, b, c)
        if a and b:
            assert (a * b).sign() == a.sign() * b.sign()


def test_algebra_mixes_with_scalars():
    a = L.element(g)
    assert a + 1 == L.one + a
    assert x(1, 2) * a == L.element(g, x(1, 2))
    assert a * LaurentPolynomial.constant(2) == L.element(g, 2)
