"""Ordered groups, their lexicographic direct products, and ordered group algebras."""

from __future__ import annotations

import random
import re
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping, Sequence

from .core import LaurentPolynomial, Ordering

__all__ = [
    "OrderedGroup",
    "FreeAbelian",
    "DirectProduct",
    "make_product_group",
    "pair_compare",
    "GroupAlgebra",
    "AlgebraElement",
    "algebra_compare",
    "algebra_sign",
    "ParseError",
]

Element = Hashable


class ParseError(ValueError):
    pass


class OrderedGroup(ABC):
    """A group with a bi-invariant total order.

    Elements must be hashable and canonical: two elements are equal as group
    elements iff they compare equal with ``==``.
    """

    identity: Element

    @abstractmethod
    def op(self, x: Element, y: Element) -> Element: ...

    @abstractmethod
    def inv(self, x: Element) -> Element: ...

    @abstractmethod
    def compare(self, x: Element, y: Element) -> Ordering: ...

    @abstractmethod
    def render(self, x: Element) -> str: ...

    @abstractmethod
    def parse_at(self, text: str, pos: int) -> tuple[Element, int]:
        """Parse one element literal starting at ``pos``; return it and the end position."""

    @abstractmethod
    def random_element(self, rng: random.Random) -> Element: ...

    def parse(self, text: str) -> Element:
        value, pos = self.parse_at(text, 0)
        if text[pos:].strip():
            raise ParseError(f"trailing input {text[pos:]!r}")
        return value

    def pow(self, x: Element, n: int) -> Element:
        if n < 0:
            x, n = self.inv(x), -n
        out = self.identity
        for _ in range(n):
            out = self.op(out, x)
        return out

    def is_identity(self, x: Element) -> bool:
        return x == self.identity

    def random_nonidentity(self, rng: random.Random) -> Element:
        for _ in range(1000):
            g = self.random_element(rng)
            if g != self.identity:
                return g
        raise ValueError(f"{self!r} appears to be trivial")

    def is_trivial(self) -> bool:
        return False


_INT_VECTOR = re.compile(r"\s*\[\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]")


class FreeAbelian(OrderedGroup):
    """``Z^rank`` with the lexicographic order; elements are int tuples."""

    def __init__(self, rank: int, spread: int = 2):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        self.rank = rank
        self.spread = spread
        self.identity = (0,) * rank

    def op(self, x, y):
        return tuple(a + b for a, b in zip(x, y))

    def inv(self, x):
        return tuple(-a for a in x)

    def pow(self, x, n):
        return tuple(a * n for a in x)

    def compare(self, x, y) -> Ordering:
        for a, b in zip(x, y):
            if a != b:
                return Ordering.GT if a > b else Ordering.LT
        return Ordering.EQ

    def render(self, x) -> str:
        return "[" + ",".join(str(a) for a in x) + "]"

    def parse_at(self, text, pos):
        m = _INT_VECTOR.match(text, pos)
        if not m:
            raise ParseError(f"expected integer vector at {text[pos:]!r}")
        body = m.group(1)
        vec = tuple(int(s) for s in body.split(",")) if body else ()
        if len(vec) != self.rank:
            raise ParseError(f"expected {self.rank} components, got {len(vec)}")
        return vec, m.end()

    def random_element(self, rng):
        return tuple(rng.randint(-self.spread, self.spread) for _ in range(self.rank))

    def is_trivial(self):
        return self.rank == 0

    def __repr__(self):
        return f"FreeAbelian({self.rank})"


class DirectProduct(OrderedGroup):
    """Direct product with the left-to-right lexicographic order."""

    def __init__(self, factors: Sequence[OrderedGroup]):
        if not factors:
            raise ValueError("direct product needs at least one factor")
        self.factors = tuple(factors)
        self.identity = tuple(f.identity for f in self.factors)

    def op(self, x, y):
        return tuple(f.op(a, b) for f, a, b in zip(self.factors, x, y))

    def inv(self, x):
        return tuple(f.inv(a) for f, a in zip(self.factors, x))

    def compare(self, x, y) -> Ordering:
        for f, a, b in zip(self.factors, x, y):
            if a != b:
                c = f.compare(a, b)
                if c:
                    return c
        return Ordering.EQ

    def render(self, x) -> str:
        return "<" + "|".join(f.render(a) for f, a in zip(self.factors, x)) + ">"

    def parse_at(self, text, pos):
        pos = _expect(text, pos, "<")
        out = []
        for n, f in enumerate(self.factors):
            if n:
                pos = _expect(text, pos, "|")
            a, pos = f.parse_at(text, pos)
            out.append(a)
        pos = _expect(text, pos, ">")
        return tuple(out), pos

    def random_element(self, rng):
        return tuple(f.random_element(rng) for f in self.factors)

    def is_trivial(self):
        return all(f.is_trivial() for f in self.factors)

    def embed(self, index: int, value) -> tuple:
        """The element with ``value`` in slot ``index`` and identities elsewhere."""
        out = list(self.identity)
        out[index] = value
        return tuple(out)

    def __repr__(self):
        return f"DirectProduct({list(self.factors)!r})"


def _expect(text: str, pos: int, token: str) -> int:
    while pos < len(text) and text[pos].isspace():
        pos += 1
    if not text.startswith(token, pos):
        raise ParseError(f"expected {token!r} at {text[pos:]!r}")
    return pos + len(token)


def make_product_group(specs: Sequence[OrderedGroup]) -> DirectProduct:
    return DirectProduct(specs)


def pair_compare(group: DirectProduct, p, q) -> Ordering:
    return group.compare(p, q)


class AlgebraElement:
    """Finite combination ``sum c_g * g`` with Laurent polynomial coefficients."""

    __slots__ = ("algebra", "_terms", "_hash")

    def __init__(self, algebra: "GroupAlgebra", terms: Mapping[Element, LaurentPolynomial]):
        self.algebra = algebra
        self._terms = {g: c for g, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, algebra, terms):
        a = cls.__new__(cls)
        a.algebra = algebra
        a._terms = terms
        a._hash = None
        return a

    @property
    def terms(self) -> Mapping[Element, LaurentPolynomial]:
        return self._terms

    def coefficient(self, g) -> LaurentPolynomial:
        return self._terms.get(g, LaurentPolynomial.zero())

    def support(self) -> list:
        return list(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def _coerce(self, other) -> "AlgebraElement":
        if isinstance(other, AlgebraElement):
            return other
        return self.algebra.scalar(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for g, c in other._terms.items():
            n = acc[g] + c if g in acc else c
            if n:
                acc[g] = n
            else:
                del acc[g]
        return AlgebraElement._raw(self.algebra, acc)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement._raw(self.algebra, {g: -c for g, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.algebra.mul(self, other)

    def __rmul__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.algebra.mul(other, self)

    def shifted(self, s: int) -> "AlgebraElement":
        return AlgebraElement._raw(self.algebra, {g: c.shifted(s) for g, c in self._terms.items()})

    def map_coefficients(self, fn) -> "AlgebraElement":
        return AlgebraElement(self.algebra, {g: fn(c) for g, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, LaurentPolynomial)):
            other = self.algebra.scalar(other)
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sign(self) -> int:
        return self.algebra.sign(self)

    def compare(self, other) -> Ordering:
        return self.algebra.compare(self, self._coerce(other))

    def __str__(self):
        return self.algebra.render(self)

    def __repr__(self):
        return f"AlgebraElement({self})"


class GroupAlgebra:
    """The group ring of an ordered group over the Laurent polynomials.

    Ordered by the coefficient at the largest group element where two
    elements differ.
    """

    def __init__(self, group: OrderedGroup):
        self.group = group
        self.zero = AlgebraElement._raw(self, {})
        self.one = AlgebraElement._raw(self, {group.identity: LaurentPolynomial.one()})

    def element(self, g, coeff=1) -> AlgebraElement:
        return AlgebraElement(self, {g: LaurentPolynomial.coerce(coeff)})

    def scalar(self, coeff) -> AlgebraElement:
        c = LaurentPolynomial.coerce(coeff)
        return AlgebraElement._raw(self, {self.group.identity: c} if c else {})

    def from_terms(self, terms: Iterable[tuple[Any, Any]]) -> AlgebraElement:
        out = self.zero
        for g, c in terms:
            out = out + self.element(g, c)
        return out

    def mul(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        if not a._terms or not b._terms:
            return self.zero
        op = self.group.op
        identity = self.group.identity
        acc: dict = {}
        for g, c in a._terms.items():
            for h, d in b._terms.items():
                gh = h if g == identity else g if h == identity else op(g, h)
                t = c * d
                if gh in acc:
                    acc[gh] = acc[gh] + t
                else:
                    acc[gh] = t
        return AlgebraElement._raw(self, {g: c for g, c in acc.items() if c})

    def leading_term(self, a: AlgebraElement) -> tuple[Any, LaurentPolynomial]:
        if not a._terms:
            raise ValueError("zero has no leading term")
        cmp = self.group.compare
        it = iter(a._terms.items())
        best = next(it)
        for t in it:
            if cmp(t[0], best[0]) > 0:
                best = t
        return best

    def sign(self, a: AlgebraElement) -> int:
        if not a._terms:
            return 0
        return self.leading_term(a)[1].sign()

    def compare(self, a: AlgebraElement, b: AlgebraElement) -> Ordering:
        return Ordering(self.sign(a - b))

    def sorted_terms(self, a: AlgebraElement) -> list:
        from functools import cmp_to_key

        cmp = self.group.compare
        return sorted(a._terms.items(), key=cmp_to_key(lambda s, t: cmp(s[0], t[0])), reverse=True)

    def render(self, a: AlgebraElement) -> str:
        if not a._terms:
            return "0"
        if len(a._terms) == 1 and self.group.identity in a._terms:
            return str(a._terms[self.group.identity])
        parts = []
        for g, c in self.sorted_terms(a):
            if g == self.group.identity:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(self.group.render(g))
            else:
                parts.append(f"({c})*{self.group.render(g)}")
        return " + ".join(parts)

    def __repr__(self):
        return f"GroupAlgebra({self.group!r})"


def algebra_compare(a: AlgebraElement, b: AlgebraElement) -> Ordering:
    return a.algebra.compare(a, b)


def algebra_sign(a: AlgebraElement) -> int:
    return a.algebra.sign(a)
