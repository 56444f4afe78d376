"""Free products of ordered groups and the order induced by their matrix representation."""

from __future__ import annotations

import random
import re
import threading
from dataclasses import dataclass, field
from typing import Any, Iterable, NamedTuple, Optional

from .core import Ordering
from .matrices import (
    DiagAlt,
    DiagU,
    DiagV,
    LazyMatrix,
    Position,
    TransX,
    TransY,
    matrix_row,
    _letter_parts,
)
from .ordered import DirectProduct, GroupAlgebra, OrderedGroup, ParseError, _expect

__all__ = [
    "Letter",
    "FPWord",
    "FreeProductGroup",
    "make_free_product_group",
    "ComparisonReport",
    "Locus",
    "BandCeilingExceeded",
]

DEFAULT_BAND_CEILING = 64


class Letter(NamedTuple):
    factor: str  # "A" or "B"
    value: Any


FPWord = tuple  # tuple[Letter, ...]


class Locus(NamedTuple):
    """Where a comparison was decided: ``("diagonal", 0, 2)`` or ``("band", d, row)``."""

    kind: str
    band: int
    row: int

    def __str__(self):
        if self.kind == "diagonal":
            return f"diagonal row {self.row}"
        return f"band {self.band}, row {self.row}"

    @property
    def position(self) -> Position:
        return Position(self.row, self.row + self.band)


@dataclass
class ComparisonReport:
    result: Ordering
    locus: Optional[Locus] = None
    entries_computed: int = 0
    cache_hits: int = 0

    def __post_init__(self):
        if (self.locus is None) != (self.result == Ordering.EQ):
            raise ValueError("a decision locus is present exactly when the result is not EQ")


class BandCeilingExceeded(RuntimeError):
    def __init__(self, ceiling: int, w1, w2):
        super().__init__(
            f"band ceiling {ceiling} reached without a difference; distinct words "
            f"differ at some finite band, so raise --band-ceiling"
        )
        self.ceiling = ceiling
        self.words = (w1, w2)


_NAME = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)")
_EXPONENT = re.compile(r"\s*\^\s*(-?\d+)")


class FreeProductGroup(OrderedGroup):
    """The free product of two ordered groups with its matrix-induced order.

    Elements are reduced words: tuples of :class:`Letter` with alternating
    factors and no identity letters.  ``A``-letters are represented by
    ``U^-1 X^-1 diag(1, (a, e), 1, ...) X U`` and ``B``-letters by the
    same construction over ``Y`` and ``V``; words are compared through the
    first differing entry of their representation matrices.
    """

    identity = ()

    def __init__(self, left: OrderedGroup, right: OrderedGroup, band_ceiling: int = DEFAULT_BAND_CEILING,
                 names: tuple[str, str] = ("A", "B")):
        self.left = left
        self.right = right
        self.names = names
        self.band_ceiling = band_ceiling
        self.pairs = DirectProduct([left, right])
        self.algebra = GroupAlgebra(self.pairs)
        self._cache: dict = {}
        self._lock = threading.Lock()

    def factor(self, tag: str) -> OrderedGroup:
        if tag == "A":
            return self.left
        if tag == "B":
            return self.right
        raise ValueError(f"unknown factor tag {tag!r}")

    # -- group structure ----------------------------------------------------
    def normalize(self, seq: Iterable[tuple[str, Any]]) -> FPWord:
        stack: list[Letter] = []
        for tag, value in seq:
            grp = self.factor(tag)
            if value == grp.identity:
                continue
            if stack and stack[-1].factor == tag:
                merged = grp.op(stack.pop().value, value)
                if merged != grp.identity:
                    stack.append(Letter(tag, merged))
            else:
                stack.append(Letter(tag, value))
        return tuple(stack)

    def letter(self, tag: str, value) -> FPWord:
        return self.normalize([(tag, value)])

    def op(self, w1: FPWord, w2: FPWord) -> FPWord:
        if not w1:
            return w2
        if not w2:
            return w1
        return self.normalize(tuple(w1) + tuple(w2))

    mul = op

    def inv(self, w: FPWord) -> FPWord:
        return tuple(Letter(l.factor, self.factor(l.factor).inv(l.value)) for l in reversed(w))

    def is_normal(self, w) -> bool:
        if not isinstance(w, tuple):
            return False
        for n, l in enumerate(w):
            if l.value == self.factor(l.factor).identity:
                return False
            if n and w[n - 1].factor == l.factor:
                return False
        return True

    # -- representation -----------------------------------------------------
    def pair_of(self, l: Letter):
        return self.pairs.embed(0 if l.factor == "A" else 1, l.value)

    def represent(self, w: FPWord) -> LazyMatrix:
        factors = []
        for l in w:
            m = self.pair_of(l)
            if l.factor == "A":
                factors += [DiagU.inv(), TransX.inv(), DiagAlt(m), TransX, DiagU]
            else:
                factors += [DiagV.inv(), TransY.inv(), DiagAlt(m), TransY, DiagV]
        return LazyMatrix(tuple(factors))

    def diagonal_projection(self, w: FPWord):
        a, b = self.left.identity, self.right.identity
        for l in w:
            if l.factor == "A":
                a = self.left.op(a, l.value)
            else:
                b = self.right.op(b, l.value)
        return (a, b)

    def row(self, w: FPWord, i: int, k: int, fuse: bool = True):
        return matrix_row(self.represent(w), i, k, self.algebra, fuse=fuse)

    # -- order --------------------------------------------------------------
    def decide(self, w1: FPWord, w2: FPWord, band_ceiling: Optional[int] = None) -> ComparisonReport:
        """Compare two reduced words and report where the decision was made."""
        ceiling = self.band_ceiling if band_ceiling is None else band_ceiling
        key = (w1, w2)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        report = self._decide(w1, w2, ceiling)
        with self._lock:
            self._cache[key] = report
            self._cache[(w2, w1)] = ComparisonReport(
                Ordering(-report.result), report.locus, report.entries_computed, report.cache_hits
            )
        return report

    def _decide(self, w1, w2, ceiling) -> ComparisonReport:
        if w1 == w2:
            return ComparisonReport(Ordering.EQ)
        o = self.pairs.compare(self.diagonal_projection(w1), self.diagonal_projection(w2))
        if o:
            return ComparisonReport(o, Locus("diagonal", 0, 2))
        before = _letter_parts.cache_info().hits
        computed = 0
        compare = self.algebra.compare
        width = min(1, ceiling)
        checked = 0
        while True:
            rows = {}
            for i in (1, 2):
                rows[i] = (self.row(w1, i, i + width), self.row(w2, i, i + width))
                computed += 2 * (width + 1)
            for d in range(checked + 1, width + 1):
                for i in (1, 2):
                    e1, e2 = rows[i][0][d], rows[i][1][d]
                    if e1 != e2:
                        hits = _letter_parts.cache_info().hits - before
                        return ComparisonReport(compare(e1, e2), Locus("band", d, i), computed, hits)
            checked = width
            if width >= ceiling:
                raise BandCeilingExceeded(ceiling, w1, w2)
            width = min(2 * width, ceiling)

    def compare(self, w1: FPWord, w2: FPWord) -> Ordering:
        return self.decide(w1, w2).result

    def sign(self, w: FPWord) -> int:
        return int(self.compare(w, ()))

    # -- text ---------------------------------------------------------------
    def render(self, w: FPWord) -> str:
        return "(" + self.render_word(w) + ")"

    def render_word(self, w: FPWord) -> str:
        if not w:
            return "1"
        out = []
        for l in w:
            name = self.names[0] if l.factor == "A" else self.names[1]
            out.append(name + self.factor(l.factor).render(l.value))
        return " * ".join(out)

    def parse_at(self, text, pos):
        pos = _expect(text, pos, "(")
        end = _matching_paren(text, pos - 1)
        return self.parse_word(text[pos:end]), end + 1

    def parse_word(self, text: str) -> FPWord:
        """Parse ``A[1,0] * B[3] * A[-1,2]^-1``; empty text or ``1`` is the identity."""
        body = text.strip()
        if body in ("", "1", "e"):
            return ()
        seq = []
        pos = 0
        while True:
            m = _NAME.match(body, pos)
            if not m:
                raise ParseError(f"expected a factor name at {body[pos:]!r}")
            name = m.group(1)
            if name not in self.names:
                raise ParseError(f"unknown factor {name!r}; expected one of {self.names}")
            tag = "A" if name == self.names[0] else "B"
            grp = self.factor(tag)
            value, pos = grp.parse_at(body, m.end())
            ex = _EXPONENT.match(body, pos)
            if ex:
                value = grp.pow(value, int(ex.group(1)))
                pos = ex.end()
            seq.append((tag, value))
            rest = body[pos:].lstrip()
            if not rest:
                break
            if rest[0] != "*":
                raise ParseError(f"expected '*' at {rest!r}")
            pos = len(body) - len(rest) + 1
        return self.normalize(seq)

    def parse(self, text: str) -> FPWord:
        return self.parse_word(text)

    # -- sampling -----------------------------------------------------------
    def random_word(self, rng: random.Random, max_len: int = 4, min_len: int = 0) -> FPWord:
        n = rng.randint(min_len, max_len)
        tags = []
        if n:
            usable = [t for t in "AB" if not self.factor(t).is_trivial()]
            if not usable:
                return ()
            if len(usable) == 1:
                n = 1
            tag = rng.choice(usable)
            for _ in range(n):
                tags.append(tag)
                tag = "B" if tag == "A" else "A"
        return tuple(Letter(t, self.factor(t).random_nonidentity(rng)) for t in tags)

    def random_element(self, rng):
        return self.random_word(rng, max_len=3)

    def is_trivial(self):
        return self.left.is_trivial() and self.right.is_trivial()

    def __repr__(self):
        return f"FreeProductGroup({self.left!r}, {self.right!r})"


def _matching_paren(text: str, open_pos: int) -> int:
    depth = 0
    for n in range(open_pos, len(text)):
        if text[n] == "(":
            depth += 1
        elif text[n] == ")":
            depth -= 1
            if depth == 0:
                return n
    raise ParseError(f"unbalanced parenthesis in {text!r}")


def make_free_product_group(left: OrderedGroup, right: OrderedGroup, **kwargs) -> FreeProductGroup:
    return FreeProductGroup(left, right, **kwargs)
