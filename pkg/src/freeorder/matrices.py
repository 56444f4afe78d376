"""Upper-triangular matrices over the group algebra.

Infinite representation matrices are never materialised: the entry at
``(i, k)`` of a product of upper-triangular matrices only involves index
chains inside ``[i, k]``, so every entry is computed from a finite block.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterator, Mapping, Optional, Sequence

from .core import (
    U,
    V,
    X,
    Y,
    LaurentPolynomial,
    Monomial,
    Ordering,
    Symbol,
)
from .ordered import AlgebraElement, GroupAlgebra

__all__ = [
    "Position",
    "Generator",
    "TransX", "TransY", "DiagU", "DiagV", "DiagAlt",
    "TriangularBlock",
    "LazyMatrix",
    "generator_entry",
    "generator_block",
    "unitriangular_inverse_block",
    "inverse_entry",
    "inverse_entry_formula",
    "conjugated_parts",
    "conjugated_entry",
    "lemma4_scan",
    "Lemma4Report",
    "Lemma4Violation",
    "position_precedes",
    "position_key",
    "positions",
    "block_compare",
    "matrix_entry",
    "matrix_row",
    "path_sum_entry",
    "path_sum_terms",
    "letter_entry",
]

DIAG_FAMILY = {X: U, Y: V}


@dataclass(frozen=True, order=True)
class Position:
    row: int
    col: int

    def __post_init__(self):
        if self.row < 1 or self.col < self.row:
            raise ValueError(f"position ({self.row},{self.col}) is not on/above the diagonal")

    @property
    def band(self) -> int:
        return self.col - self.row

    def shifted(self, s: int) -> "Position":
        return Position(self.row + s, self.col + s)

    def __iter__(self):
        return iter((self.row, self.col))

    def __str__(self):
        return f"({self.row},{self.col})"


def position_precedes(p: Position, q: Position) -> bool:
    """Whether entry ``p = (m, n)`` is one of the entries preceding ``q = (i, k)``."""
    m, n = p
    i, k = q
    if m < i:
        return n - m <= k - i
    return n - m < k - i


def position_key(p: Position) -> tuple[int, int]:
    """Sort key of the total position order: band first, then row."""
    return (p.col - p.row, p.row)


def positions(size: int) -> list[Position]:
    """All on/above-diagonal positions of a ``size`` block, in decision order."""
    return sorted(
        (Position(i, k) for i in range(1, size + 1) for k in range(i, size + 1)),
        key=position_key,
    )


# -- generators -------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """One factor of a representation matrix.

    ``kind`` is ``"trans"`` (unitriangular, symbol family X or Y),
    ``"diag"`` (diagonal monomials, family U or V) or ``"alt"``
    (``diag(1, m, 1, m, ...)`` for a group element ``m``).
    """

    kind: str
    family: Optional[int] = None
    element: Any = None
    inverse: bool = False

    def inv(self) -> "Generator":
        return Generator(self.kind, self.family, self.element, not self.inverse)

    def __str__(self):
        if self.kind == "alt":
            name = f"DiagAlt({self.element!r})"
        else:
            name = {X: "TransX", Y: "TransY", U: "DiagU", V: "DiagV"}[self.family]
        return name + ("^-1" if self.inverse else "")


TransX = Generator("trans", X)
TransY = Generator("trans", Y)
DiagU = Generator("diag", U)
DiagV = Generator("diag", V)


def DiagAlt(m) -> Generator:
    return Generator("alt", element=m)


def _sym_poly(family: int, i: int, k: int) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(Monomial.of(Symbol(family, i, k)))


@lru_cache(maxsize=None)
def inverse_entry(family: int, i: int, k: int) -> LaurentPolynomial:
    """Entry ``(i, k)`` of the inverse of the unitriangular ``family`` matrix.

    Back-substitution on ``Y * X = 1``: ``y_ik = -sum_{i <= j < k} y_ij x_jk``.
    """
    if k < i:
        return LaurentPolynomial.zero()
    if i == k:
        return LaurentPolynomial.one()
    acc = LaurentPolynomial.zero()
    for j in range(i, k):
        acc = acc + inverse_entry(family, i, j) * _sym_poly(family, j, k)
    return -acc


def inverse_entry_formula(i: int, n: int, family: int = X) -> LaurentPolynomial:
    """Closed form of an inverse entry as an alternating sum over index chains.

    Sums ``(-1)^r x_{i a1} x_{a1 a2} ... x_{a_{r-1} n}`` over all strictly
    increasing chains ``i < a1 < ... < a_{r-1} < n``.  Only valid off the
    diagonal.
    """
    if i >= n:
        raise ValueError(f"chain formula needs i < n, got ({i}, {n})")
    inner = range(i + 1, n)
    out = LaurentPolynomial.zero()
    for r in range(0, n - i):
        for mids in itertools.combinations(inner, r):
            chain = (i, *mids, n)
            mono = Monomial((Symbol(family, a, b), 1) for a, b in zip(chain, chain[1:]))
            out = out + LaurentPolynomial.monomial(mono, (-1) ** (r + 1))
    return out


def generator_entry(g: Generator, p: Position, algebra: GroupAlgebra) -> AlgebraElement:
    i, k = p
    if g.kind == "trans":
        if g.family not in (X, Y):
            raise ValueError(f"unitriangular generator needs family X or Y, got {g.family}")
        if i == k:
            return algebra.one
        if g.inverse:
            return algebra.scalar(inverse_entry(g.family, i, k))
        return algebra.scalar(_sym_poly(g.family, i, k))
    if i != k:
        return algebra.zero
    if g.kind == "diag":
        if g.family not in (U, V):
            raise ValueError(f"diagonal generator needs family U or V, got {g.family}")
        return algebra.scalar(LaurentPolynomial.monomial(Monomial.of(Symbol(g.family, i), -1 if g.inverse else 1)))
    if g.kind == "alt":
        if i % 2:
            return algebra.one
        m = algebra.group.inv(g.element) if g.inverse else g.element
        return algebra.element(m)
    raise ValueError(f"unknown generator kind {g.kind!r}")


# -- finite blocks ----------------------------------------------------------

@dataclass(frozen=True)
class TriangularBlock:
    """``size x size`` upper-triangular block; missing entries are zero.

    Entries may be any ring elements that support ``+`` and ``*``
    (Laurent polynomials or algebra elements).
    """

    size: int
    entries: Mapping[Position, Any]
    zero: Any = field(default_factory=LaurentPolynomial.zero)

    def __getitem__(self, p) -> Any:
        i, k = p
        if not (1 <= i <= self.size and 1 <= k <= self.size):
            raise IndexError(f"position ({i},{k}) outside block of size {self.size}")
        if k < i:
            return self.zero
        return self.entries.get(Position(i, k), self.zero)

    @classmethod
    def identity(cls, size: int, one=None, zero=None) -> "TriangularBlock":
        one = LaurentPolynomial.one() if one is None else one
        zero = LaurentPolynomial.zero() if zero is None else zero
        return cls(size, {Position(i, i): one for i in range(1, size + 1)}, zero)

    def __matmul__(self, other: "TriangularBlock") -> "TriangularBlock":
        if self.size != other.size:
            raise ValueError("block sizes differ")
        out = {}
        for i in range(1, self.size + 1):
            for k in range(i, self.size + 1):
                acc = self.zero
                for j in range(i, k + 1):
                    a = self.entries.get(Position(i, j))
                    b = other.entries.get(Position(j, k))
                    if a is not None and b is not None:
                        acc = acc + a * b
                if acc:
                    out[Position(i, k)] = acc
        return TriangularBlock(self.size, out, self.zero)

    def __eq__(self, other):
        if not isinstance(other, TriangularBlock) or self.size != other.size:
            return NotImplemented
        return all(self[p] == other[p] for p in positions(self.size))

    def __hash__(self):
        return hash((self.size, frozenset((p, v) for p, v in self.entries.items() if v)))

    def diagonal(self) -> list:
        return [self[i, i] for i in range(1, self.size + 1)]

    def dump(self) -> str:
        lines = []
        for i in range(1, self.size + 1):
            for k in range(i, self.size + 1):
                lines.append(f"({i},{k}): {self[i, k]}")
        return "\n".join(lines)


def generator_block(g: Generator, size: int, algebra: GroupAlgebra) -> TriangularBlock:
    entries = {}
    for i in range(1, size + 1):
        for k in range(i, size + 1):
            e = generator_entry(g, Position(i, k), algebra)
            if e:
                entries[Position(i, k)] = e
    return TriangularBlock(size, entries, algebra.zero)


def unitriangular_inverse_block(family: int, size: int) -> TriangularBlock:
    if size < 1:
        raise ValueError("block size must be positive")
    if family not in (X, Y):
        raise ValueError("inverse blocks exist for families X and Y")
    entries = {}
    for i in range(1, size + 1):
        for k in range(i, size + 1):
            entries[Position(i, k)] = inverse_entry(family, i, k)
    return TriangularBlock(size, entries)


def unitriangular_block(family: int, size: int) -> TriangularBlock:
    entries = {Position(i, i): LaurentPolynomial.one() for i in range(1, size + 1)}
    for i in range(1, size + 1):
        for k in range(i + 1, size + 1):
            entries[Position(i, k)] = _sym_poly(family, i, k)
    return TriangularBlock(size, entries)


def block_compare(a: TriangularBlock, b: TriangularBlock) -> Ordering:
    """Compare blocks at the first differing entry in position order.

    Both blocks must have positive diagonal entries in their group algebra.
    """
    if a.size != b.size:
        raise ValueError(f"block sizes differ: {a.size} vs {b.size}")
    for blk in (a, b):
        for i, d in enumerate(blk.diagonal(), start=1):
            if not isinstance(d, AlgebraElement) or d.sign() <= 0:
                raise ValueError(f"diagonal entry ({i},{i}) is not positive")
    for p in positions(a.size):
        ea, eb = a[p], b[p]
        if ea != eb:
            return ea.algebra.compare(ea, eb)
    return Ordering.EQ


# -- conjugation ------------------------------------------------------------

@lru_cache(maxsize=None)
def conjugated_parts(family: int, i: int, k: int) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    """Odd- and even-index parts of entry ``(i, k)`` of ``T^-1 diag(1, m, 1, m, ...) T``.

    The entry equals ``odd * 1 + even * m``.
    """
    odd = LaurentPolynomial.zero()
    even = LaurentPolynomial.zero()
    for j in range(i, k + 1):
        right = LaurentPolynomial.one() if j == k else _sym_poly(family, j, k)
        t = inverse_entry(family, i, j) * right
        if j % 2:
            odd = odd + t
        else:
            even = even + t
    return odd, even


def conjugated_entry(m, family: int, p: Position, algebra: GroupAlgebra) -> AlgebraElement:
    i, k = p
    odd, even = conjugated_parts(family, i, k)
    return algebra.scalar(odd) + algebra.element(m, even)


@lru_cache(maxsize=None)
def _letter_parts(family: int, i: int, k: int) -> tuple[LaurentPolynomial, LaurentPolynomial]:
    odd, even = conjugated_parts(family, i, k)
    diag = DIAG_FAMILY[family]
    scale = Monomial.of(Symbol(diag, i), -1) * Monomial.of(Symbol(diag, k), 1)
    return odd.scale_monomial(scale), even.scale_monomial(scale)


def letter_entry(m, family: int, p: Position, algebra: GroupAlgebra) -> AlgebraElement:
    """Entry of ``D^-1 T^-1 diag(1, m, ...) T D`` where ``D`` is the diagonal paired with ``T``."""
    odd, even = _letter_parts(family, p.row, p.col)
    return algebra.scalar(odd) + algebra.element(m, even)


class Lemma4Violation(AssertionError):
    def __init__(self, position: Position, reason: str):
        super().__init__(f"conjugated entry {position}: {reason}")
        self.position = position
        self.reason = reason


@dataclass
class Lemma4Report:
    element: Any
    family: int
    size: int
    entries: dict

    @property
    def checked(self) -> int:
        return len(self.entries)


def lemma4_scan(m, size: int, algebra: GroupAlgebra, family: int = X) -> Lemma4Report:
    """Check every on/above-diagonal entry of the conjugate of ``diag(1, m, 1, m, ...)``.

    Entries must be nonzero, and strictly above the diagonal the coefficient
    at the group identity must be nonzero too.
    """
    if m == algebra.group.identity:
        raise ValueError("scan needs a non-identity group element")
    if size < 1:
        raise ValueError("block size must be positive")
    entries = {}
    for p in positions(size):
        e = conjugated_entry(m, family, p, algebra)
        if not e:
            raise Lemma4Violation(p, "entry vanishes")
        if p.col > p.row and not e.coefficient(algebra.group.identity):
            raise Lemma4Violation(p, "coefficient of 1 vanishes")
        entries[p] = e
    return Lemma4Report(m, family, size, entries)


# -- lazy products ----------------------------------------------------------

@dataclass(frozen=True)
class LazyMatrix:
    """Formal product of generator matrices, evaluated entry by entry."""

    factors: tuple[Generator, ...] = ()

    def __matmul__(self, other: "LazyMatrix") -> "LazyMatrix":
        return LazyMatrix(self.factors + other.factors)

    def inverse(self) -> "LazyMatrix":
        return LazyMatrix(tuple(g.inv() for g in reversed(self.factors)))

    def letters(self) -> list[tuple[int, Any]]:
        """Split into conjugated letter matrices ``[(family, m), ...]``.

        Raises ``ValueError`` when the factors are not a concatenation of
        ``[D^-1, T^-1, DiagAlt(m), T, D]`` windows.
        """
        out = []
        fs = self.factors
        if len(fs) % 5:
            raise ValueError("factor list is not a product of letter matrices")
        for n in range(0, len(fs), 5):
            win = fs[n:n + 5]
            fam = _letter_family(win)
            if fam is None:
                raise ValueError(f"factors {n}..{n + 4} do not form a letter matrix")
            out.append((fam, win[2].element))
        return out


def _letter_family(win: Sequence[Generator]) -> Optional[int]:
    if len(win) != 5:
        return None
    d_inv, t_inv, alt, t, d = win
    if not (t.kind == "trans" and not t.inverse and t_inv == t.inv()):
        return None
    if not (d.kind == "diag" and not d.inverse and d_inv == d.inv() and d.family == DIAG_FAMILY.get(t.family)):
        return None
    if alt.kind != "alt" or alt.inverse:
        return None
    return t.family


def matrix_row(m: LazyMatrix, i: int, k: int, algebra: GroupAlgebra, fuse: bool = True) -> list[AlgebraElement]:
    """Entries ``(i, i), (i, i+1), ..., (i, k)`` of the product.

    With ``fuse`` set, letter-matrix windows are applied as one cached block
    instead of five separate factors; the result is identical.
    """
    if k < i:
        raise ValueError("need k >= i")
    width = k - i + 1
    row: list[AlgebraElement] = [algebra.one] + [algebra.zero] * (width - 1)
    fs = m.factors
    n = 0
    while n < len(fs):
        fam = _letter_family(fs[n:n + 5]) if fuse else None
        if fam is not None:
            elem = fs[n + 2].element
            row = _apply(row, i, algebra, lambda a, b: letter_entry(elem, fam, Position(a, b), algebra), dense=True)
            n += 5
            continue
        g = fs[n]
        dense = g.kind == "trans"
        row = _apply(row, i, algebra, lambda a, b, g=g: generator_entry(g, Position(a, b), algebra), dense=dense)
        n += 1
    return row


def _apply(row, i, algebra, entry, dense):
    width = len(row)
    if not dense:
        return [row[c] * entry(i + c, i + c) if row[c] else row[c] for c in range(width)]
    out = []
    for c in range(width):
        acc = algebra.zero
        for j in range(c + 1):
            if row[j]:
                acc = acc + row[j] * entry(i + j, i + c)
        out.append(acc)
    return out


def matrix_entry(m: LazyMatrix, p: Position, algebra: GroupAlgebra, fuse: bool = True) -> AlgebraElement:
    return matrix_row(m, p.row, p.col, algebra, fuse=fuse)[-1]


def _chains(i: int, k: int, steps: int) -> Iterator[tuple[int, ...]]:
    if steps == 0:
        if i == k:
            yield (i,)
        return
    for mids in itertools.combinations_with_replacement(range(i, k + 1), steps - 1):
        yield (i, *mids, k)


def _diag_monomial(family: int, a: int, b: int) -> Monomial:
    diag = DIAG_FAMILY[family]
    return Monomial.of(Symbol(diag, a), -1) * Monomial.of(Symbol(diag, b), 1)


def path_sum_terms(m: LazyMatrix, p: Position, algebra: GroupAlgebra):
    """Yield ``(chain, skeleton, term)`` for every weakly increasing index chain.

    ``skeleton`` is the product of the diagonal-conjugation monomials
    ``u_a^-1 u_b`` (or ``v``) picked up along the chain.
    """
    letters = m.letters()
    i, k = p
    for chain in _chains(i, k, len(letters)):
        term = algebra.one
        skeleton = Monomial()
        for (fam, elem), a, b in zip(letters, chain, chain[1:]):
            mono = _diag_monomial(fam, a, b)
            inner = conjugated_entry(elem, fam, Position(a, b), algebra)
            term = term * (inner * LaurentPolynomial.monomial(mono))
            skeleton = skeleton * mono
        yield chain, skeleton, term


def path_sum_entry(m: LazyMatrix, p: Position, algebra: GroupAlgebra) -> AlgebraElement:
    """Entry ``(i, k)`` as an explicit sum over index chains ``i <= i2 <= ... <= k``."""
    out = algebra.zero
    for _, _, term in path_sum_terms(m, p, algebra):
        out = out + term
    return out
