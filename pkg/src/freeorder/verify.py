"""Randomised verification suites for every layer of the construction.

Each suite is deterministic for a given seed and returns a
:class:`SuiteReport`; the CLI ``verify`` command prints them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .core import X, Y, LaurentPolynomial, Ordering, monomial_compare, poly_compare
from .freeproduct import FreeProductGroup
from .matrices import (
    LazyMatrix,
    Lemma4Violation,
    Position,
    inverse_entry,
    inverse_entry_formula,
    block_compare,
    lemma4_scan,
    matrix_entry,
    path_sum_entry,
    position_key,
    position_precedes,
    positions,
)
from .ordered import DirectProduct, FreeAbelian, GroupAlgebra, OrderedGroup
from . import sampling

SUITES = ("lemma1", "lemma2", "lemma3", "lemma4", "theorem")


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def check(self, ok: bool, describe: Callable[[], str]) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(describe())
        return ok

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        extra = "".join(f"  {k}={v}" for k, v in self.details.items())
        return f"{self.name:<8} {status}  checks={self.checks}  failures={len(self.failures)}{extra}"


# -- generic order-axiom checks ---------------------------------------------

def totality_ok(cmp, a, b) -> bool:
    c, d = cmp(a, b), cmp(b, a)
    return c == -d and (c == Ordering.EQ) == (a == b)


def transitivity_ok(cmp, a, b, c) -> bool:
    items = (a, b, c)
    for p, q, r in itertools.permutations(items):
        pq, qr, pr = cmp(p, q), cmp(q, r), cmp(p, r)
        if pq >= 0 and qr >= 0:
            want_strict = pq > 0 or qr > 0
            if pr < 0 or (want_strict and pr == 0):
                return False
    return True


def biinvariance_ok(cmp, op, g, a, b, h) -> bool:
    return cmp(op(op(g, a), h), op(op(g, b), h)) == cmp(a, b)


def translation_ok(cmp, a, b, c) -> bool:
    return cmp(a + c, b + c) == cmp(a, b)


def ordered_ring_ok(cmp, zero, p, q, r) -> bool:
    """``p > 0`` and ``q > r`` imply ``pq > pr`` and ``qp > rp``."""
    if cmp(p, zero) <= 0:
        p = -p
    if not p:
        return True
    if cmp(q, r) < 0:
        q, r = r, q
    if cmp(q, r) == 0:
        return True
    return cmp(p * q, p * r) > 0 and cmp(q * p, r * p) > 0


def group_order_suite(report: SuiteReport, group: OrderedGroup, rng: random.Random, samples: int,
                      sample: Optional[Callable] = None, render: Optional[Callable] = None) -> None:
    """Totality, transitivity and two-sided invariance of ``group.compare``."""
    sample = sample or (lambda: group.random_element(rng))
    render = render or group.render
    cmp = group.compare
    for _ in range(samples):
        a, b = sample(), sample()
        report.check(totality_ok(cmp, a, b), lambda: f"totality: {render(a)} vs {render(b)}")
    for _ in range(max(1, samples // 3)):
        a, b, c = sample(), sample(), sample()
        report.check(transitivity_ok(cmp, a, b, c),
                     lambda: f"transitivity: {render(a)}, {render(b)}, {render(c)}")
    for _ in range(max(1, samples // 3)):
        g, a, b, h = sample(), sample(), sample(), sample()
        report.check(biinvariance_ok(cmp, group.op, g, a, b, h),
                     lambda: f"bi-invariance: g={render(g)} x={render(a)} y={render(b)} h={render(h)}")


def default_pair_group() -> DirectProduct:
    return DirectProduct([FreeAbelian(2), FreeAbelian(1)])


# -- suites -----------------------------------------------------------------

def suite_lemma1(rng: random.Random, samples: int) -> SuiteReport:
    """Laurent polynomials and the group algebra as ordered rings."""
    rep = SuiteReport("lemma1")
    zero = LaurentPolynomial.zero()
    for _ in range(samples):
        p, q, r = (sampling.random_poly(rng) for _ in range(3))
        rep.check((p * q) * r == p * (q * r) and p * (q + r) == p * q + p * r and p * q == q * p
                  and (p + q) + r == p + (q + r) and p + zero == p,
                  lambda: f"ring axioms: p={p}  q={q}  r={r}")
        rep.check(totality_ok(poly_compare, p, q), lambda: f"totality: {p} vs {q}")
        rep.check(transitivity_ok(poly_compare, p, q, r), lambda: f"transitivity: {p}, {q}, {r}")
        rep.check(translation_ok(poly_compare, p, q, r), lambda: f"translation: {p}, {q}, +{r}")
        rep.check(ordered_ring_ok(poly_compare, zero, p, q, r), lambda: f"ordered ring: {p}, {q}, {r}")
        if p and q:
            rep.check((p * q).sign() == p.sign() * q.sign(), lambda: f"sign not multiplicative: {p}, {q}")
        m1, m2, g = (sampling.random_monomial(rng) for _ in range(3))
        rep.check(monomial_compare(m1 * g, m2 * g) == monomial_compare(m1, m2),
                  lambda: f"monomial order not invariant: {m1}, {m2}, *{g}")
        key_order = Ordering.of((m1.sort_key() > m2.sort_key()) - (m1.sort_key() < m2.sort_key()))
        rep.check(key_order == monomial_compare(m1, m2), lambda: f"sort key disagrees: {m1} vs {m2}")

    alg = GroupAlgebra(default_pair_group())
    for _ in range(samples):
        a, b, c = (sampling.random_algebra_element(rng, alg) for _ in range(3))
        rep.check(totality_ok(alg.compare, a, b), lambda: f"L totality: {a} vs {b}")
        rep.check(transitivity_ok(alg.compare, a, b, c), lambda: f"L transitivity: {a}, {b}, {c}")
        rep.check(translation_ok(alg.compare, a, b, c), lambda: f"L translation: {a}, {b}, +{c}")
        rep.check(ordered_ring_ok(alg.compare, alg.zero, a, b, c), lambda: f"L ordered ring: {a}, {b}, {c}")
        if a and b:
            rep.check((a * b).sign() == a.sign() * b.sign(), lambda: f"L zero divisor / sign: {a}, {b}")
    return rep


def suite_lemma2(rng: random.Random, samples: int, block: int = 3) -> SuiteReport:
    """Triangular blocks with positive diagonal under the position order."""
    rep = SuiteReport("lemma2", details={"block": block})
    for p in positions(block):
        for q in positions(block):
            rep.check(position_precedes(p, q) == (position_key(p) < position_key(q)),
                      lambda: f"position order: {p} vs {q}")
    alg = GroupAlgebra(default_pair_group())

    def sample_pair():
        a = sampling.random_block(rng, alg, block)
        b = sampling.perturb_block(rng, a, alg) if rng.random() < 0.5 else sampling.random_block(rng, alg, block)
        return a, b

    for _ in range(samples):
        a, b = sample_pair()
        rep.check(totality_ok(block_compare, a, b), lambda: f"totality:\n{a.dump()}\nvs\n{b.dump()}")
    for _ in range(max(1, samples // 3)):
        a, b = sample_pair()
        c = sampling.perturb_block(rng, b, alg)
        rep.check(transitivity_ok(block_compare, a, b, c), lambda: "transitivity failure")
    for _ in range(max(1, samples // 3)):
        a, b = sample_pair()
        g = sampling.random_block(rng, alg, block)
        h = sampling.random_block(rng, alg, block)
        rep.check(block_compare(g @ a @ h, g @ b @ h) == block_compare(a, b),
                  lambda: f"bi-invariance:\n{a.dump()}\nvs\n{b.dump()}")
    return rep


def suite_lemma3(rng: random.Random, samples: int) -> SuiteReport:
    """Lexicographic order on direct products."""
    rep = SuiteReport("lemma3")
    pairs = default_pair_group()
    group_order_suite(rep, pairs, rng, samples)
    left = pairs.factors[0]
    for _ in range(samples):
        a, b = left.random_element(rng), left.random_element(rng)
        rep.check(pairs.compare(pairs.embed(0, a), pairs.embed(0, b)) == left.compare(a, b),
                  lambda: f"embedding: {a} vs {b}")
    z = FreeAbelian(1)
    nested = DirectProduct([DirectProduct([z, z]), z])
    flat = FreeAbelian(3)
    for _ in range(samples):
        s, t = flat.random_element(rng), flat.random_element(rng)
        ns = (((s[0],), (s[1],)), (s[2],))
        nt = (((t[0],), (t[1],)), (t[2],))
        rep.check(nested.compare(ns, nt) == flat.compare(s, t), lambda: f"nested vs flat: {s} vs {t}")
    return rep


def suite_lemma4(rng: random.Random, samples: int, block: int = 4) -> SuiteReport:
    """Non-vanishing of conjugated entries, plus the inverse chain formula."""
    rep = SuiteReport("lemma4", details={"block": block, "entries/sample": block * (block + 1) // 2})
    alg = GroupAlgebra(default_pair_group())
    for _ in range(samples):
        m = alg.group.random_nonidentity(rng)
        for fam in (X, Y):
            try:
                lemma4_scan(m, block, alg, fam)
                rep.check(True, str)
            except Lemma4Violation as exc:
                rep.check(False, lambda: f"m={alg.group.render(m)} family={'xy'[fam]}: {exc}")
    for fam in (X, Y):
        for i in range(1, 8):
            for n in range(i + 1, 8):
                rep.check(inverse_entry_formula(i, n, fam) == inverse_entry(fam, i, n),
                          lambda: f"inverse formula ({i},{n})")
    return rep


def standard_free_product() -> FreeProductGroup:
    return FreeProductGroup(FreeAbelian(2), FreeAbelian(1))


def nested_free_product() -> FreeProductGroup:
    z = FreeAbelian(1)
    return FreeProductGroup(FreeProductGroup(z, z), z)


def word_sampler(group: FreeProductGroup, rng: random.Random, max_len: int = 5):
    return lambda: group.random_word(rng, max_len)


def fp_order_suite(rep: SuiteReport, group: FreeProductGroup, rng: random.Random, samples: int,
                   max_len: int = 5) -> None:
    """Order axioms, restriction and faithfulness for one free product."""
    render = group.render_word
    sample = word_sampler(group, rng, max_len)

    def pair():
        w = sample()
        roll = rng.random()
        if roll < 1 / 3:
            return w, sampling.shuffled_word(rng, group, w)
        if roll < 2 / 3:
            return w, sampling.commutator_partner(rng, group, w, depth=rng.randint(1, 2))
        return w, sample()

    bands = []

    def cmp(a, b):
        r = group.decide(a, b)
        if r.locus is not None:
            bands.append(r.locus.band)
        return r.result

    for _ in range(samples):
        a, b = pair()
        rep.check(totality_ok(cmp, a, b), lambda: f"totality: {render(a)} vs {render(b)}")
    for _ in range(max(1, samples // 3)):
        a, b = pair()
        c = sampling.shuffled_word(rng, group, b)
        rep.check(transitivity_ok(cmp, a, b, c), lambda: f"transitivity: {render(a)}, {render(b)}, {render(c)}")
    for _ in range(max(1, samples // 3)):
        a, b = pair()
        g, h = sample(), sample()
        rep.check(biinvariance_ok(cmp, group.op, g, a, b, h),
                  lambda: f"bi-invariance: u={render(g)} x={render(a)} y={render(b)} v={render(h)}")
    for tag in "AB":
        fac = group.factor(tag)
        if fac.is_trivial():
            continue
        for _ in range(samples):
            a, b = fac.random_nonidentity(rng), fac.random_nonidentity(rng)
            rep.check(cmp(group.letter(tag, a), group.letter(tag, b)) == fac.compare(a, b),
                      lambda: f"restriction to {tag}: {fac.render(a)} vs {fac.render(b)}")
            rep.check(cmp(group.letter(tag, a), ()) == fac.compare(a, fac.identity),
                      lambda: f"restriction to {tag}: {fac.render(a)} vs identity")
    key = "order_max_band" if "order_max_band" not in rep.details else "nested_max_band"
    rep.details[key] = max(bands, default=0)


def faithfulness_suite(rep: SuiteReport, group: FreeProductGroup, rng: random.Random, samples: int) -> None:
    render = group.render_word
    bands = []
    for _ in range(samples):
        w1 = group.random_word(rng, 4)
        w2 = sampling.shuffled_word(rng, group, w1) if rng.random() < 0.5 else group.random_word(rng, 4)
        if w1 == w2:
            continue
        r = group.decide(w1, w2)
        ok = r.result != Ordering.EQ and r.locus is not None
        if ok and r.locus.kind == "band":
            p = r.locus.position
            e1 = matrix_entry(group.represent(w1), p, group.algebra, fuse=False)
            e2 = matrix_entry(group.represent(w2), p, group.algebra, fuse=False)
            ok = e1 != e2
            bands.append(r.locus.band)
        rep.check(ok, lambda: f"faithfulness: {render(w1)} vs {render(w2)}")
        inv = group.op(w1, group.inv(w2))
        rep.check(group.compare(inv, ()) == r.result,
                  lambda: f"consistency: {render(w1)} vs {render(w2)}")
    rep.details["max_band"] = max(bands, default=0)


def suite_theorem(rng: random.Random, samples: int) -> SuiteReport:
    rep = SuiteReport("theorem")
    group = standard_free_product()
    fp_order_suite(rep, group, rng, samples)
    faithfulness_suite(rep, group, rng, samples)
    for _ in range(max(1, samples // 4)):
        w = group.random_word(rng, 4)
        i = rng.randint(1, 2)
        p = Position(i, i + rng.randint(0, 4))
        m = group.represent(w)
        e = matrix_entry(m, p, group.algebra)
        rep.check(path_sum_entry(m, p, group.algebra) == e,
                  lambda: f"path sum: {group.render_word(w)} at {p}")
        rep.check(matrix_entry(m, p.shifted(2), group.algebra) == e.shifted(2),
                  lambda: f"shift periodicity: {group.render_word(w)} at {p}")
    nested = nested_free_product()
    fp_order_suite(rep, nested, rng, max(3, samples // 3), max_len=3)
    return rep


def run_suite(name: str, seed: int, samples: int, block: int) -> SuiteReport:
    rng = random.Random(f"{seed}:{name}")
    if name == "lemma1":
        return suite_lemma1(rng, samples)
    if name == "lemma2":
        return suite_lemma2(rng, samples, min(block, 4))
    if name == "lemma3":
        return suite_lemma3(rng, samples)
    if name == "lemma4":
        return suite_lemma4(rng, samples, block)
    if name == "theorem":
        return suite_theorem(rng, samples)
    raise ValueError(f"unknown suite {name!r}")
