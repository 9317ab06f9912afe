"""Noncommutative polynomials over Scalar and finite presentations.

Words are tuples of letter indices into an :class:`Alphabet`; letters are
numbered by precedence, so Python tuple comparison *is* the lexicographic part
of the degree-lex term order.  Free multiplication is plain concatenation:
parity is metadata only and never produces a sign.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .coeff import ParameterSet, Scalar, as_scalar

Word = Tuple[int, ...]

EVEN, ODD = "even", "odd"
INHOMOGENEOUS = "inhomogeneous"


class PresentationError(ValueError):
    pass


class MixedAlphabetError(TypeError):
    pass


@dataclass(frozen=True)
class GeneratorInfo:
    name: str
    parity: str = EVEN
    ghost_number: int = 0
    precedence: int = 0

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise PresentationError(f"{self.name}: parity must be even or odd")
        if (self.parity == ODD) != (self.ghost_number % 2 == 1):
            raise PresentationError(
                f"{self.name}: parity {self.parity} does not match ghost number {self.ghost_number}"
            )
        if not self.name.isidentifier():
            raise PresentationError(f"invalid generator name {self.name!r}")


def constraint(name, precedence=0):
    return GeneratorInfo(name, EVEN, 0, precedence)


def ghost(name, precedence=0):
    return GeneratorInfo(name, ODD, 1, precedence)


def antighost(name, precedence=0):
    return GeneratorInfo(name, ODD, -1, precedence)


class Alphabet:
    """Generators ordered by precedence; letter ``i`` is ``gens[i]``."""

    __slots__ = ("gens", "names", "index", "ghost_numbers", "_hash")

    def __init__(self, gens: Iterable[GeneratorInfo]):
        gens = sorted(gens, key=lambda g: g.precedence)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate generator names in {names}")
        precs = [g.precedence for g in gens]
        if len(set(precs)) != len(precs):
            raise PresentationError("generator precedences must be distinct")
        self.gens = tuple(gens)
        self.names = tuple(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.ghost_numbers = tuple(g.ghost_number for g in gens)
        self._hash = hash(self.gens)

    @classmethod
    def ordered(cls, gens: Sequence[GeneratorInfo]) -> "Alphabet":
        """Build from a list whose order *is* the precedence."""
        return cls(
            GeneratorInfo(g.name, g.parity, g.ghost_number, i) for i, g in enumerate(gens)
        )

    def __eq__(self, other):
        return isinstance(other, Alphabet) and (other is self or other.gens == self.gens)

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.gens)

    def __repr__(self):
        return f"Alphabet({list(self.names)})"

    def __contains__(self, name):
        return name in self.index

    def letter(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def word(self, *names: str) -> Word:
        return tuple(self.letter(n) for n in names)

    def parse_word(self, text: str) -> Word:
        """``x*y^2*z`` (or ``1``) as a word."""
        text = text.replace(" ", "")
        if text == "1":
            return ()
        out = []
        for factor in text.split("*"):
            name, _, power = factor.partition("^")
            out.extend([self.letter(name)] * (int(power) if power else 1))
        return tuple(out)

    def info(self, letter: int) -> GeneratorInfo:
        return self.gens[letter]

    def ghost_number(self, word: Word) -> int:
        gn = self.ghost_numbers
        return sum(gn[x] for x in word)

    def render_word(self, word: Word) -> str:
        if not word:
            return "1"
        out = []
        i = 0
        while i < len(word):
            j = i
            while j < len(word) and word[j] == word[i]:
                j += 1
            name = self.names[word[i]]
            out.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(out)


def order_key(word: Word):
    """Degree, then lexicographic by precedence."""
    return (len(word), word)


class Poly:
    """Finite sum of Scalar-weighted words over one alphabet.

    Zero coefficients are never stored.  ``terms`` must not be mutated after
    construction; all operations return new objects.
    """

    __slots__ = ("alphabet", "terms", "params")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Scalar] = None, params=None):
        self.alphabet = alphabet
        self.params = params if params is not None else ParameterSet(())
        clean = {}
        if terms:
            for w, c in terms.items():
                c = as_scalar(c, self.params)
                if not c.is_zero():
                    clean[tuple(w)] = c
        self.terms: Dict[Word, Scalar] = clean

    @classmethod
    def _from_clean(cls, alphabet, terms, params):
        obj = object.__new__(cls)
        obj.alphabet = alphabet
        obj.terms = terms
        obj.params = params
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, alphabet, params=None):
        return cls(alphabet, {}, params)

    @classmethod
    def constant(cls, alphabet, value, params=None):
        return cls(alphabet, {(): value}, params)

    @classmethod
    def gen(cls, alphabet, name, params=None):
        return cls(alphabet, {(alphabet.letter(name),): 1}, params)

    @classmethod
    def monomial(cls, alphabet, word: Word, coeff=1, params=None):
        return cls(alphabet, {tuple(word): coeff}, params)

    # -- helpers --------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.alphabet != self.alphabet:
            raise MixedAlphabetError(
                f"polynomials over different presentations: {self.alphabet} vs {other.alphabet}"
            )

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        return Poly.constant(self.alphabet, other, self.params)

    def _params_with(self, other):
        if isinstance(other, Poly):
            return self.params.union(other.params)
        if isinstance(other, Scalar):
            return self.params.union(other.params)
        return self.params

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Poly):
            self._check(other)
        else:
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            v = terms.get(w)
            if v is None:
                terms[w] = c
            else:
                v = v + c
                if v.is_zero():
                    del terms[w]
                else:
                    terms[w] = v
        return Poly._from_clean(self.alphabet, terms, self._params_with(other))

    __radd__ = __add__

    def __neg__(self):
        return Poly._from_clean(self.alphabet, {w: -c for w, c in self.terms.items()}, self.params)

    def __sub__(self, other):
        if isinstance(other, Poly):
            self._check(other)
        else:
            try:
                other = self._lift(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, factor) -> "Poly":
        factor = as_scalar(factor, self.params)
        if factor.is_zero():
            return Poly.zero(self.alphabet, self.params)
        return Poly._from_clean(
            self.alphabet,
            {w: c * factor for w, c in self.terms.items()},
            self.params.union(factor.params),
        )

    def __mul__(self, other):
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        terms: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                v = terms.get(w)
                terms[w] = c if v is None else v + c
        terms = {w: c for w, c in terms.items() if not c.is_zero()}
        return Poly._from_clean(self.alphabet, terms, self._params_with(other))

    def __rmul__(self, other):
        # scalars commute with everything
        return self.__mul__(other)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Poly.constant(self.alphabet, 1, self.params)
        for _ in range(k):
            out = out * self
        return out

    # -- queries --------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Poly):
            if other.alphabet != self.alphabet:
                return False
            return self.terms == other.terms
        if isinstance(other, (int, Scalar)):
            return self == Poly.constant(self.alphabet, other, self.params)
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[Word, Scalar]]:
        """Terms in descending term order."""
        for w in sorted(self.terms, key=order_key, reverse=True):
            yield w, self.terms[w]

    def coeff(self, word) -> Scalar:
        if isinstance(word, str):
            word = self.alphabet.parse_word(word)
        c = self.terms.get(tuple(word))
        return c if c is not None else self.params.zero

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def ghost_number(self):
        """Common ghost number of all terms, or ``INHOMOGENEOUS``.

        The zero polynomial is homogeneous of every degree; 0 is returned.
        """
        gns = {self.alphabet.ghost_number(w) for w in self.terms}
        if not gns:
            return 0
        if len(gns) > 1:
            return INHOMOGENEOUS
        return gns.pop()

    def leading_word(self) -> Optional[Word]:
        return max(self.terms, key=order_key) if self.terms else None

    def map_coefficients(self, fn) -> "Poly":
        out = {}
        for w, c in self.terms.items():
            v = fn(c)
            if not v.is_zero():
                out[w] = v
        params = self.params
        for v in out.values():
            params = params.union(v.params)
        return Poly._from_clean(self.alphabet, out, params)

    def substitute(self, bindings: Mapping[str, object]) -> "Poly":
        p = self.map_coefficients(lambda c: c.substitute(bindings))
        keep = ParameterSet([n for n in p.params.names if n not in bindings])
        for c in p.terms.values():
            keep = keep.union(c.params)
        p.params = keep
        return p

    def transfer(self, alphabet: Alphabet, rename: Mapping[str, str] = None) -> "Poly":
        """Re-express over another alphabet by generator name."""
        rename = rename or {}
        src = self.alphabet.names
        table = [alphabet.letter(rename.get(n, n)) for n in src]
        terms = {tuple(table[x] for x in w): c for w, c in self.terms.items()}
        return Poly._from_clean(alphabet, terms, self.params)

    def filter(self, pred) -> "Poly":
        return Poly._from_clean(
            self.alphabet, {w: c for w, c in self.terms.items() if pred(w)}, self.params
        )

    # -- text -----------------------------------------------------------
    def render(self) -> str:
        return render_poly(self)

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"


def render_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for i, (w, c) in enumerate(p):
        ws = p.alphabet.render_word(w) if w else ""
        if c.is_monomial_like():
            lc = c.num.LC
            neg = lc < 0
            mag = -c if neg else c
            ms = str(mag)
            if not ws:
                body = ms
            elif mag.is_one():
                body = ws
            else:
                body = f"{ms}*{ws}"
        else:
            neg = False
            body = f"({c})" + (f"*{ws}" if ws else "")
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f" - {body}" if neg else f" + {body}")
    return "".join(parts)


def bracket(p: Poly, q: Poly, kind: str = "commutator") -> Poly:
    """``pq - qp`` (commutator) or ``pq + qp`` (anticommutator), unreduced."""
    if kind in ("commutator", "-"):
        return p * q - q * p
    if kind in ("anticommutator", "+"):
        return p * q + q * p
    raise ValueError(f"unknown bracket kind {kind!r}")


def commutator(p, q):
    return bracket(p, q, "commutator")


def anticommutator(p, q):
    return bracket(p, q, "anticommutator")


@dataclass(frozen=True)
class Relation:
    lhs: Word
    rhs: Poly

    def as_poly(self) -> Poly:
        return Poly.monomial(self.rhs.alphabet, self.lhs, 1, self.rhs.params) - self.rhs


@dataclass(eq=False)
class Presentation:
    """Generators, parameters and oriented relations ``lhs -> rhs``."""

    alphabet: Alphabet
    params: ParameterSet
    relations: List[Relation] = field(default_factory=list)
    label: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    # -- construction ---------------------------------------------------
    @classmethod
    def from_polys(cls, alphabet, params, polys: Iterable[Poly], label="", metadata=None):
        """Orient the linear span of relation polynomials ``p = 0``.

        Computes the reduced echelon form of the span with columns in
        descending term order; each row becomes ``leading word -> rest``.
        """
        from .linalg import Echelon

        ech = Echelon(key=order_key)
        for p in polys:
            ech.add(dict(p.terms))
        rels = []
        for lead in sorted(ech.rows, key=order_key):
            row = ech.rows[lead]
            rhs = {w: -c for w, c in row.items() if w != lead}
            rels.append(Relation(lead, Poly(alphabet, rhs, params)))
        return cls(alphabet, params, rels, label, metadata or {})

    def validate(self):
        seen = set()
        for rel in self.relations:
            if rel.rhs.alphabet != self.alphabet:
                raise PresentationError("relation over a foreign alphabet")
            if len(rel.lhs) < 2:
                raise PresentationError(
                    f"relation lhs {self.alphabet.render_word(rel.lhs)} has length < 2"
                )
            if rel.lhs in seen:
                raise PresentationError(
                    f"duplicate relation lhs {self.alphabet.render_word(rel.lhs)}"
                )
            seen.add(rel.lhs)
            gh = self.alphabet.ghost_number(rel.lhs)
            for w in rel.rhs.terms:
                if self.alphabet.ghost_number(w) != gh:
                    raise PresentationError(
                        f"relation {self.alphabet.render_word(rel.lhs)} = {rel.rhs} "
                        "mixes ghost numbers"
                    )
                if len(w) > len(rel.lhs):
                    raise PresentationError(
                        f"relation {self.alphabet.render_word(rel.lhs)} = {rel.rhs} "
                        "raises degree"
                    )

    # -- convenience ----------------------------------------------------
    def gen(self, name: str) -> Poly:
        return Poly.gen(self.alphabet, name, self.params)

    def gens(self, *names: str):
        return tuple(self.gen(n) for n in names)

    def one(self) -> Poly:
        return Poly.constant(self.alphabet, 1, self.params)

    def zero(self) -> Poly:
        return Poly.zero(self.alphabet, self.params)

    def param(self, name: str) -> Scalar:
        return self.params.symbol(name)

    def parse(self, text: str) -> Poly:
        from .parsing import parse_poly

        return parse_poly(text, self)

    def rules(self):
        from .rewrite import RewriteSystem

        cached = self.metadata.get("_rules")
        if cached is None:
            cached = RewriteSystem.from_presentation(self)
            self.metadata["_rules"] = cached
        return cached

    def reduce(self, p: Poly, **kw) -> Poly:
        from .rewrite import reduce

        return reduce(p, self.rules(), **kw).normal_form

    def relation_polys(self) -> List[Poly]:
        return [r.as_poly() for r in self.relations]

    def with_relations(self, relations, label=None) -> "Presentation":
        return Presentation(self.alphabet, self.params, list(relations), label or self.label)

    def substitute(self, bindings) -> "Presentation":
        """Specialize parameters; relations are re-oriented from their span."""
        polys = [p.substitute(bindings) for p in self.relation_polys()]
        params = ParameterSet([n for n in self.params.names if n not in bindings])
        for p in polys:
            params = params.union(p.params)
        polys = [Poly._from_clean(p.alphabet, p.terms, params) for p in polys]
        return Presentation.from_polys(self.alphabet, params, polys, self.label, self._public_metadata())

    def rename(self, mapping: Mapping[str, str], order: Sequence[str] = None) -> "Presentation":
        """Rename generators (optionally re-ranking precedence by ``order``)."""
        gens = [
            GeneratorInfo(mapping.get(g.name, g.name), g.parity, g.ghost_number, g.precedence)
            for g in self.alphabet.gens
        ]
        if order is not None:
            rank = {n: i for i, n in enumerate(order)}
            gens = [GeneratorInfo(g.name, g.parity, g.ghost_number, rank[g.name]) for g in gens]
        alphabet = Alphabet(gens)
        polys = [p.transfer(alphabet, mapping) for p in self.relation_polys()]
        return Presentation.from_polys(alphabet, self.params, polys, self.label, self._public_metadata())

    def _public_metadata(self) -> dict:
        return {k: v for k, v in self.metadata.items() if not k.startswith("_")}

    def sector(self, names: Iterable[str]) -> List[Relation]:
        """Relations whose lhs uses only the given generators."""
        letters = {self.alphabet.letter(n) for n in names}
        return [r for r in self.relations if set(r.lhs) <= letters]

    def render_relations(self, names: Iterable[str] = None) -> List[str]:
        rels = self.relations if names is None else self.sector(names)
        return [f"{self.alphabet.render_word(r.lhs)} = {r.rhs}" for r in rels]
