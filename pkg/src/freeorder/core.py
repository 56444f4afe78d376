"""Exact Laurent polynomials over the rationals.

The coefficient world of the construction: a free abelian group on the
formal matrix entries ``x[i,j]``, ``y[i,j]``, ``u[i]``, ``v[i]`` and its
rational group ring, ordered by leading coefficient.
"""

from __future__ import annotations

import re
from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

__all__ = [
    "Ordering",
    "X", "Y", "U", "V",
    "Symbol",
    "Monomial",
    "LaurentPolynomial",
    "monomial_compare",
    "poly_compare",
    "poly_sign",
    "x", "y", "u", "v",
]


class Ordering(IntEnum):
    LT = -1
    EQ = 0
    GT = 1

    @classmethod
    def of(cls, value: int) -> "Ordering":
        return cls((value > 0) - (value < 0))

    def symbol(self) -> str:
        return {-1: "<", 0: "=", 1: ">"}[self.value]


# symbol families, in their fixed order
X, Y, U, V = 0, 1, 2, 3
_FAMILY_NAMES = "xyuv"


class Symbol(NamedTuple):
    """A transcendental matrix entry.

    ``X``/``Y`` symbols carry ``(i, j)`` with ``j > i``; ``U``/``V`` symbols a
    single index ``i`` (``j`` is then 0).  Tuple order is the symbol order.
    """

    family: int
    i: int
    j: int = 0

    @classmethod
    def make(cls, family: int, i: int, j: int = 0) -> "Symbol":
        if family in (X, Y):
            if not 1 <= i < j:
                raise ValueError(f"need 1 <= row < col, got ({i}, {j})")
        elif family in (U, V):
            if i < 1 or j != 0:
                raise ValueError(f"bad diagonal symbol index {i}")
        else:
            raise ValueError(f"unknown symbol family {family!r}")
        return cls(family, i, j)

    def shifted(self, s: int) -> "Symbol":
        if self.family in (X, Y):
            return Symbol(self.family, self.i + s, self.j + s)
        return Symbol(self.family, self.i + s)

    def __str__(self) -> str:
        name = _FAMILY_NAMES[self.family]
        if self.family in (X, Y):
            return f"{name}[{self.i},{self.j}]"
        return f"{name}[{self.i}]"


def _sort_key_item(sym: Symbol, exp: int) -> tuple:
    # Encodes one sparse exponent so that plain tuple comparison of the
    # item sequence reproduces the lexicographic group order.
    if exp > 0:
        return (1, (-sym[0], -sym[1], -sym[2]), exp)
    return (-1, sym, exp)


_END = (0,)


class Monomial:
    """Element of the free abelian group on symbols (exponents may be negative)."""

    __slots__ = ("_items", "_hash", "_key")

    def __init__(self, exponents: Union[Mapping[Symbol, int], Iterable[tuple[Symbol, int]]] = ()):
        if isinstance(exponents, Mapping):
            exponents = exponents.items()
        acc: dict[Symbol, int] = {}
        for sym, e in exponents:
            acc[sym] = acc.get(sym, 0) + int(e)
        self._set(tuple(sorted((s, e) for s, e in acc.items() if e)))

    def _set(self, items: tuple) -> None:
        self._items = items
        self._hash = hash(items)
        self._key = None

    @classmethod
    def _raw(cls, items: tuple) -> "Monomial":
        m = cls.__new__(cls)
        m._set(items)
        return m

    @classmethod
    def of(cls, sym: Symbol, exp: int = 1) -> "Monomial":
        return cls._raw(((sym, exp),) if exp else ())

    @property
    def items(self) -> tuple[tuple[Symbol, int], ...]:
        return self._items

    def exponent(self, sym: Symbol) -> int:
        for s, e in self._items:
            if s == sym:
                return e
        return 0

    def symbols(self) -> tuple[Symbol, ...]:
        return tuple(s for s, _ in self._items)

    def is_identity(self) -> bool:
        return not self._items

    def sort_key(self) -> tuple:
        """Key whose natural tuple order is the monomial order."""
        if self._key is None:
            self._key = tuple(_sort_key_item(s, e) for s, e in self._items) + (_END,)
        return self._key

    def __mul__(self, other: "Monomial") -> "Monomial":
        if not isinstance(other, Monomial):
            return NotImplemented
        if not other._items:
            return self
        if not self._items:
            return other
        acc = dict(self._items)
        for s, e in other._items:
            n = acc.get(s, 0) + e
            if n:
                acc[s] = n
            else:
                del acc[s]
        return Monomial._raw(tuple(sorted(acc.items())))

    def inverse(self) -> "Monomial":
        return Monomial._raw(tuple((s, -e) for s, e in self._items))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        return self * other.inverse()

    def __pow__(self, n: int) -> "Monomial":
        if n == 0:
            return Monomial._raw(())
        return Monomial._raw(tuple((s, e * n) for s, e in self._items))

    def shifted(self, s: int) -> "Monomial":
        return Monomial._raw(tuple(sorted((sym.shifted(s), e) for sym, e in self._items)))

    def restrict(self, families: Iterable[int]) -> "Monomial":
        fams = set(families)
        return Monomial._raw(tuple((s, e) for s, e in self._items if s.family in fams))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Monomial):
            return NotImplemented
        return self._hash == other._hash and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "Monomial") -> bool:
        return self.sort_key() < other.sort_key()

    def __gt__(self, other: "Monomial") -> bool:
        return self.sort_key() > other.sort_key()

    def __str__(self) -> str:
        if not self._items:
            return "1"
        parts = []
        for s, e in self._items:
            parts.append(str(s) if e == 1 else f"{s}^{e}")
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Monomial({self})"


ONE_MONOMIAL = Monomial()


def monomial_compare(m1: Monomial, m2: Monomial) -> Ordering:
    """Lexicographic group order: first symbol (ascending) where exponents differ decides."""
    a, b = dict(m1.items), dict(m2.items)
    for sym in sorted(a.keys() | b.keys()):
        ea, eb = a.get(sym, 0), b.get(sym, 0)
        if ea != eb:
            return Ordering.GT if ea > eb else Ordering.LT
    return Ordering.EQ


Scalar = Union[int, Fraction]


class LaurentPolynomial:
    """Finite rational combination of monomials; immutable.

    >>> p = x(1, 2) - 1
    >>> str(p * (x(1, 2) + 1))
    'x[1,2]^2 - 1'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Mapping[Monomial, Scalar], Iterable[tuple[Monomial, Scalar]]] = ()):
        if isinstance(terms, Mapping):
            terms = terms.items()
        acc: dict[Monomial, Fraction] = {}
        for m, c in terms:
            acc[m] = acc.get(m, 0) + Fraction(c)
        self._terms = {m: c for m, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPolynomial":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls) -> "LaurentPolynomial":
        return _ZERO

    @classmethod
    def one(cls) -> "LaurentPolynomial":
        return _ONE

    @classmethod
    def constant(cls, c: Scalar) -> "LaurentPolynomial":
        c = Fraction(c)
        return cls._raw({ONE_MONOMIAL: c} if c else {})

    @classmethod
    def monomial(cls, m: Monomial, c: Scalar = 1) -> "LaurentPolynomial":
        c = Fraction(c)
        return cls._raw({m: c} if c else {})

    @classmethod
    def coerce(cls, value) -> "LaurentPolynomial":
        if isinstance(value, LaurentPolynomial):
            return value
        if isinstance(value, Monomial):
            return cls.monomial(value)
        if isinstance(value, (int, Fraction)):
            return cls.constant(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to LaurentPolynomial")

    # -- access -----------------------------------------------------------
    @property
    def terms(self) -> Mapping[Monomial, Fraction]:
        return self._terms

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(self.sorted_terms())

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending monomial order."""
        return sorted(self._terms.items(), key=lambda t: t[0].sort_key(), reverse=True)

    def leading_term(self) -> tuple[Monomial, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: t[0].sort_key())

    def sign(self) -> int:
        if not self._terms:
            return 0
        return 1 if self.leading_term()[1] > 0 else -1

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> "LaurentPolynomial":
        try:
            other = LaurentPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for m, c in other._terms.items():
            n = acc.get(m, 0) + c
            if n:
                acc[m] = n
            else:
                del acc[m]
        return LaurentPolynomial._raw(acc)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "LaurentPolynomial":
        try:
            other = LaurentPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "LaurentPolynomial":
        return LaurentPolynomial.coerce(other) - self

    def __mul__(self, other) -> "LaurentPolynomial":
        try:
            other = LaurentPolynomial.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return _ZERO
        acc: dict[Monomial, Fraction] = {}
        get = acc.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                acc[m] = get(m, 0) + c1 * c2
        return LaurentPolynomial._raw({m: c for m, c in acc.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPolynomial":
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomial terms are invertible")
            (m, c), = self._terms.items()
            return LaurentPolynomial._raw({m ** n: c ** n})
        out = _ONE
        for _ in range(n):
            out = out * self
        return out

    def scale_monomial(self, m: Monomial) -> "LaurentPolynomial":
        if m.is_identity():
            return self
        return LaurentPolynomial._raw({t * m: c for t, c in self._terms.items()})

    def shifted(self, s: int) -> "LaurentPolynomial":
        return LaurentPolynomial._raw({m.shifted(s): c for m, c in self._terms.items()})

    # -- comparison -------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Monomial)):
            other = LaurentPolynomial.coerce(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def compare(self, other) -> Ordering:
        return poly_compare(self, LaurentPolynomial.coerce(other))

    def __lt__(self, other) -> bool:
        return self.compare(other) is Ordering.LT

    def __gt__(self, other) -> bool:
        return self.compare(other) is Ordering.GT

    def __le__(self, other) -> bool:
        return self.compare(other) is not Ordering.GT

    def __ge__(self, other) -> bool:
        return self.compare(other) is not Ordering.LT

    # -- text -------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            if m.is_identity():
                body = str(a)
            elif a == 1:
                body = str(m)
            else:
                body = f"{a}*{m}"
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPolynomial":
        """Inverse of ``str``: ``3*x[1,2]^2*u[3]^-1 - 1/2``."""
        return _parse_poly(text)


_ZERO = LaurentPolynomial._raw({})
_ONE = LaurentPolynomial._raw({ONE_MONOMIAL: Fraction(1)})


def poly_compare(p: LaurentPolynomial, q: LaurentPolynomial) -> Ordering:
    """Leading-coefficient order: sign of the top coefficient of ``p - q``."""
    return Ordering((p - q).sign())


def poly_sign(p: LaurentPolynomial) -> int:
    return p.sign()


def x(i: int, j: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(Monomial.of(Symbol.make(X, i, j)))


def y(i: int, j: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(Monomial.of(Symbol.make(Y, i, j)))


def u(i: int, exp: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(Monomial.of(Symbol.make(U, i), exp))


def v(i: int, exp: int = 1) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(Monomial.of(Symbol.make(V, i), exp))


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<sym>[xyuv])\[(?P<idx>[^\]]*)\]|(?P<op>[-+*^]))")


def _parse_poly(text: str) -> LaurentPolynomial:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ValueError(f"cannot parse polynomial at {text[pos:]!r}")
        tokens.append(mt)
        pos = mt.end()
    if not tokens:
        raise ValueError("empty polynomial literal")
    if len(tokens) == 1 and tokens[0].group("num") == "0":
        return _ZERO

    terms: list[tuple[Monomial, Fraction]] = []
    k = 0
    first = True
    while k < len(tokens):
        sign = 1
        if tokens[k].group("op") in ("+", "-"):
            sign = -1 if tokens[k].group("op") == "-" else 1
            k += 1
        elif not first:
            raise ValueError(f"expected '+' or '-' in {text!r}")
        first = False
        coef = Fraction(sign)
        mono: dict[Symbol, int] = {}
        expect_factor = True
        while k < len(tokens) and expect_factor:
            t = tokens[k]
            if t.group("num") is not None:
                coef *= Fraction(t.group("num"))
                k += 1
            elif t.group("sym") is not None:
                fam = _FAMILY_NAMES.index(t.group("sym"))
                idx = [int(s) for s in t.group("idx").split(",")]
                sym = Symbol.make(fam, *idx)
                k += 1
                exp = 1
                if k < len(tokens) and tokens[k].group("op") == "^":
                    k += 1
                    neg = False
                    if k < len(tokens) and tokens[k].group("op") == "-":
                        neg = True
                        k += 1
                    if k >= len(tokens) or tokens[k].group("num") is None:
                        raise ValueError(f"bad exponent in {text!r}")
                    exp = int(tokens[k].group("num"))
                    exp = -exp if neg else exp
                    k += 1
                mono[sym] = mono.get(sym, 0) + exp
            else:
                raise ValueError(f"unexpected token {t.group(0)!r} in {text!r}")
            if k < len(tokens) and tokens[k].group("op") == "*":
                k += 1
            else:
                expect_factor = False
        terms.append((Monomial(mono), coef))
    return LaurentPolynomial(terms)
