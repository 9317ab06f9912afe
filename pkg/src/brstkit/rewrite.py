"""Oriented rewrite rules, normal forms and critical-pair confluence checks.

The order is degree-lexicographic on precedence-ranked letters.  ``reduce``
always rewrites the largest pending word first; since every rule strictly
lowers a word and the order is compatible with concatenation, a word that has
been popped can never reappear, so each word is reduced exactly once with its
final accumulated coefficient.
"""
from __future__ import annotations

import heapq
import random
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .coeff import Scalar
from .ncpoly import Alphabet, Poly, Presentation, Word, order_key

DEFAULT_STEP_LIMIT = 10**6
DEFAULT_OVERLAP_DEGREE = 4
STRATEGIES = ("leftmost", "rightmost", "outermost", "innermost", "random")


@contextmanager
def step_limit(n: int):
    """Temporarily change the default reduction step limit."""
    global DEFAULT_STEP_LIMIT
    old, DEFAULT_STEP_LIMIT = DEFAULT_STEP_LIMIT, n
    try:
        yield
    finally:
        DEFAULT_STEP_LIMIT = old


class OrientationError(ValueError):
    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class StepLimitExceeded(RuntimeError):
    """Reduction ran past the step limit; ``partial`` holds the current state."""

    def __init__(self, message, partial=None, steps=0):
        super().__init__(message)
        self.partial = partial
        self.steps = steps


@dataclass(frozen=True)
class TermOrder:
    """Degree first, then lexicographic by generator precedence."""

    kind: str = "deglex"

    def key(self, word: Word):
        return order_key(word)

    def less(self, u: Word, v: Word) -> bool:
        return order_key(u) < order_key(v)


DEGLEX = TermOrder()


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Poly
    id: int = 0

    def render(self) -> str:
        a = self.rhs.alphabet
        return f"{a.render_word(self.lhs)} -> {self.rhs}"

    __str__ = render


def orient(lhs: Word, rhs: Poly, order: TermOrder = DEGLEX, rule_id: int = 0) -> RewriteRule:
    lhs = tuple(lhs)
    alphabet = rhs.alphabet
    if len(lhs) < 2:
        raise OrientationError(f"rule lhs {alphabet.render_word(lhs)} must have length >= 2")
    for w in rhs.terms:
        if not order.less(w, lhs):
            term = alphabet.render_word(w)
            raise OrientationError(
                f"cannot orient {alphabet.render_word(lhs)} -> {rhs}: "
                f"rhs term {term} is not smaller than the lhs",
                term=term,
            )
    gh = alphabet.ghost_number(lhs)
    for w in rhs.terms:
        if alphabet.ghost_number(w) != gh:
            raise OrientationError(
                f"rule {alphabet.render_word(lhs)} -> {rhs} mixes ghost numbers",
                term=alphabet.render_word(w),
            )
    return RewriteRule(lhs, rhs, rule_id)


class RewriteSystem:
    """Immutable rule set with an lhs lookup table."""

    def __init__(self, alphabet: Alphabet, rules: Iterable[RewriteRule], order: TermOrder = DEGLEX):
        self.alphabet = alphabet
        self.order = order
        self.rules: List[RewriteRule] = list(rules)
        self.by_lhs: Dict[Word, RewriteRule] = {}
        for r in self.rules:
            if r.lhs in self.by_lhs:
                raise OrientationError(f"two rules share lhs {alphabet.render_word(r.lhs)}")
            self.by_lhs[r.lhs] = r
        self.lengths = sorted({len(r.lhs) for r in self.rules})

    @classmethod
    def from_presentation(cls, p: Presentation, order: TermOrder = DEGLEX) -> "RewriteSystem":
        rules = [orient(rel.lhs, rel.rhs, order, i) for i, rel in enumerate(p.relations)]
        return cls(p.alphabet, rules, order)

    @classmethod
    def coerce(cls, rules) -> "RewriteSystem":
        if isinstance(rules, RewriteSystem):
            return rules
        if isinstance(rules, Presentation):
            return rules.rules()
        rules = list(rules)
        if not rules:
            raise ValueError("an empty rule list carries no alphabet; pass a RewriteSystem")
        return cls(rules[0].rhs.alphabet, rules)

    def __len__(self):
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)

    def matches(self, word: Word) -> List[Tuple[int, RewriteRule]]:
        """All (position, rule) redexes, ordered by position then rule id."""
        out = []
        by_lhs = self.by_lhs
        n = len(word)
        for i in range(n):
            found = []
            for L in self.lengths:
                if i + L > n:
                    break
                r = by_lhs.get(word[i : i + L])
                if r is not None:
                    found.append(r)
            found.sort(key=lambda r: r.id)
            out.extend((i, r) for r in found)
        return out

    def first_match(self, word: Word):
        by_lhs = self.by_lhs
        n = len(word)
        for i in range(n - 1):
            best = None
            for L in self.lengths:
                if i + L > n:
                    break
                r = by_lhs.get(word[i : i + L])
                if r is not None and (best is None or r.id < best.id):
                    best = r
            if best is not None:
                return i, best
        return None

    def is_normal(self, word: Word) -> bool:
        return self.first_match(word) is None


@dataclass
class ReductionReport:
    normal_form: Poly
    steps: int = 0
    rules_fired: Counter = field(default_factory=Counter)

    def to_dict(self):
        return {
            "normal_form": str(self.normal_form),
            "steps": self.steps,
            "rules_fired": {str(k): v for k, v in sorted(self.rules_fired.items())},
        }


def _pick(system: RewriteSystem, word: Word, strategy: str, rng):
    if strategy == "leftmost":
        return system.first_match(word)
    ms = system.matches(word)
    if not ms:
        return None
    if strategy == "rightmost":
        last = max(i for i, _ in ms)
        return next(m for m in ms if m[0] == last)
    if strategy == "outermost":
        # longest redex, leftmost among equals
        return min(ms, key=lambda m: (-len(m[1].lhs), m[0], m[1].id))
    if strategy == "innermost":
        return min(ms, key=lambda m: (len(m[1].lhs), m[0], m[1].id))
    if strategy == "random":
        return rng.choice(ms)
    raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")


def _heap_key(word: Word):
    # heapq pops the minimum, we want the maximal word under deg-lex
    return (-len(word), tuple(-x for x in word))


def reduce(
    p: Poly,
    rules,
    order: TermOrder = DEGLEX,
    strategy: str = "leftmost",
    step_limit: Optional[int] = None,
    seed: Optional[int] = None,
) -> ReductionReport:
    if step_limit is None:
        step_limit = DEFAULT_STEP_LIMIT
    system = RewriteSystem.coerce(rules)
    if p.alphabet != system.alphabet:
        raise ValueError("polynomial and rules use different alphabets")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    rng = random.Random(seed)
    pending: Dict[Word, Scalar] = dict(p.terms)
    heap = [(_heap_key(w), w) for w in pending]
    heapq.heapify(heap)
    result: Dict[Word, Scalar] = {}
    fired: Counter = Counter()
    steps = 0
    params = p.params
    while heap:
        _, w = heapq.heappop(heap)
        c = pending.pop(w, None)
        if c is None or c.is_zero():
            continue
        m = _pick(system, w, strategy, rng)
        if m is None:
            result[w] = c
            continue
        steps += 1
        if steps > step_limit:
            pending[w] = c
            partial = dict(result)
            partial.update(pending)
            raise StepLimitExceeded(
                f"step limit {step_limit} exceeded; the rule set is probably mis-oriented",
                partial=Poly(p.alphabet, partial, params),
                steps=steps - 1,
            )
        i, rule = m
        fired[rule.id] += 1
        pre, post = w[:i], w[i + len(rule.lhs) :]
        for rw, rc in rule.rhs.terms.items():
            nw = pre + rw + post
            v = pending.get(nw)
            add = c * rc
            if v is None:
                pending[nw] = add
                heapq.heappush(heap, (_heap_key(nw), nw))
            else:
                pending[nw] = v + add
        params = params.union(rule.rhs.params)
    nf = Poly._from_clean(p.alphabet, result, params)
    return ReductionReport(nf, steps, fired)


def normal_form(p: Poly, rules, **kw) -> Poly:
    return reduce(p, rules, **kw).normal_form


# -- overlaps ---------------------------------------------------------------


@dataclass
class CriticalPair:
    word: Word
    first: Tuple[int, int]  # (rule id, position)
    second: Tuple[int, int]
    branch1: Poly
    branch2: Poly

    def render(self, alphabet: Alphabet) -> str:
        return (
            f"{alphabet.render_word(self.word)}: "
            f"rule {self.first[0]}@{self.first[1]} -> {self.branch1} | "
            f"rule {self.second[0]}@{self.second[1]} -> {self.branch2}"
        )


def _apply(rule: RewriteRule, word: Word, pos: int) -> Poly:
    pre, post = word[:pos], word[pos + len(rule.lhs) :]
    terms = {pre + w + post: c for w, c in rule.rhs.terms.items()}
    return Poly._from_clean(rule.rhs.alphabet, terms, rule.rhs.params)


def overlaps(rules, max_degree: int = DEFAULT_OVERLAP_DEGREE) -> List[CriticalPair]:
    """Critical pairs from suffix/prefix overlaps and inclusions of rule lhs."""
    if isinstance(rules, (list, tuple)) and not rules:
        return []
    system = RewriteSystem.coerce(rules)
    if max_degree < 3:
        raise ValueError("max_degree must be at least 3")
    out = []
    seen = set()
    rs = system.rules
    for r1 in rs:
        u = r1.lhs
        for r2 in rs:
            v = r2.lhs
            # proper overlap: suffix of u equals prefix of v
            for k in range(1, min(len(u), len(v))):
                if u[len(u) - k :] == v[:k]:
                    w = u + v[k:]
                    if len(w) > max_degree:
                        continue
                    key = (w, r1.id, 0, r2.id, len(u) - k)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(
                        CriticalPair(
                            w, (r1.id, 0), (r2.id, len(u) - k), _apply(r1, w, 0), _apply(r2, w, len(u) - k)
                        )
                    )
            # inclusion: v occurs strictly inside u
            if r1.id != r2.id and len(v) < len(u):
                for pos in range(len(u) - len(v) + 1):
                    if u[pos : pos + len(v)] == v and len(u) <= max_degree:
                        out.append(CriticalPair(u, (r1.id, 0), (r2.id, pos), _apply(r1, u, 0), _apply(r2, u, pos)))
    out.sort(key=lambda cp: (order_key(cp.word), cp.first, cp.second))
    return out


@dataclass
class ConfluenceReport:
    passed: bool
    pairs_checked: int
    unresolved: List[Tuple[CriticalPair, Poly, Poly]] = field(default_factory=list)

    def __bool__(self):
        return self.passed

    def to_dict(self, alphabet: Alphabet):
        return {
            "passed": self.passed,
            "pairs_checked": self.pairs_checked,
            "unresolved": [
                {"pair": cp.render(alphabet), "nf1": str(a), "nf2": str(b)} for cp, a, b in self.unresolved
            ],
        }


def confluence_check(rules, max_degree: int = DEFAULT_OVERLAP_DEGREE, step_limit: Optional[int] = None):
    if isinstance(rules, (list, tuple)) and not rules:
        return ConfluenceReport(True, 0)
    system = RewriteSystem.coerce(rules)
    pairs = overlaps(system, max_degree)
    bad = []
    for cp in pairs:
        a = reduce(cp.branch1, system, step_limit=step_limit).normal_form
        b = reduce(cp.branch2, system, step_limit=step_limit).normal_form
        if a != b:
            bad.append((cp, a, b))
    return ConfluenceReport(not bad, len(pairs), bad)
