"""Seeded random generators for polynomials, algebra elements, blocks and words."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import U, V, X, Y, LaurentPolynomial, Monomial, Symbol
from .matrices import Position, TriangularBlock
from .ordered import AlgebraElement, GroupAlgebra


def random_symbol(rng: random.Random, max_index: int = 3) -> Symbol:
    fam = rng.choice((X, Y, U, V))
    if fam in (X, Y):
        i = rng.randint(1, max_index)
        return Symbol(fam, i, rng.randint(i + 1, max_index + 1))
    return Symbol(fam, rng.randint(1, max_index))


def random_monomial(rng: random.Random, max_symbols: int = 3, max_exp: int = 2) -> Monomial:
    n = rng.randint(0, max_symbols)
    return Monomial((random_symbol(rng), rng.randint(-max_exp, max_exp)) for _ in range(n))


def random_rational(rng: random.Random, nonzero: bool = False) -> Fraction:
    while True:
        q = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        if q or not nonzero:
            return q


def random_poly(rng: random.Random, max_terms: int = 3, nonzero: bool = False) -> LaurentPolynomial:
    while True:
        n = rng.randint(0, max_terms)
        p = LaurentPolynomial((random_monomial(rng), random_rational(rng, True)) for _ in range(n))
        if p or not nonzero:
            return p


def random_algebra_element(rng: random.Random, algebra: GroupAlgebra, max_terms: int = 3,
                           nonzero: bool = False) -> AlgebraElement:
    while True:
        n = rng.randint(0, max_terms)
        a = algebra.from_terms(
            (algebra.group.random_element(rng), random_poly(rng, 2, nonzero=True)) for _ in range(n)
        )
        if a or not nonzero:
            return a


def random_positive_unit(rng: random.Random, algebra: GroupAlgebra) -> AlgebraElement:
    """``q * monomial * g`` with ``q > 0``: positive and invertible."""
    q = abs(random_rational(rng, nonzero=True))
    return algebra.element(algebra.group.random_element(rng), LaurentPolynomial.monomial(random_monomial(rng, 2), q))


def random_block(rng: random.Random, algebra: GroupAlgebra, size: int, density: float = 0.7) -> TriangularBlock:
    """Triangular block with positive invertible diagonal."""
    entries = {}
    for i in range(1, size + 1):
        entries[Position(i, i)] = random_positive_unit(rng, algebra)
        for k in range(i + 1, size + 1):
            if rng.random() < density:
                e = random_algebra_element(rng, algebra, 2)
                if e:
                    entries[Position(i, k)] = e
    return TriangularBlock(size, entries, algebra.zero)


def perturb_block(rng: random.Random, block: TriangularBlock, algebra: GroupAlgebra) -> TriangularBlock:
    """Copy of ``block`` with one off-diagonal entry changed (if it has any)."""
    if block.size < 2:
        return block
    i = rng.randint(1, block.size - 1)
    k = rng.randint(i + 1, block.size)
    entries = dict(block.entries)
    entries[Position(i, k)] = block[i, k] + random_algebra_element(rng, algebra, 2, nonzero=True)
    return TriangularBlock(block.size, entries, block.zero)


def shuffled_word(rng: random.Random, group, word):
    """Normal form of a random rearrangement of ``word``'s letters.

    For abelian factors the diagonal projection is unchanged, so comparisons
    between ``word`` and the result must be settled off the diagonal.
    """
    letters = list(word)
    rng.shuffle(letters)
    return group.normalize(letters)


def commutator(group, g, h):
    return group.op(group.op(g, h), group.op(group.inv(g), group.inv(h)))


def commutator_partner(rng: random.Random, group, word, depth: int = 1):
    """``word`` times a random iterated commutator.

    Depth 1 appends ``[g, h]``; depth 2 appends ``[[g, h], [g', h']]``.  Over
    abelian factors the partner has the same diagonal projection as
    ``word``, and deeper commutators push the decision to higher bands.
    """
    def nested(d):
        if d <= 1:
            leaf_len = 2 if depth == 1 else 1
            return commutator(group, group.random_word(rng, leaf_len, 1), group.random_word(rng, leaf_len, 1))
        return commutator(group, nested(d - 1), nested(d - 1))

    return group.op(word, nested(depth))
