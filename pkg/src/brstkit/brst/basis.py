"""Nonlinear changes of generators and the presentations they induce."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Tuple

from ..coeff import Scalar
from ..linalg import InconsistentSystem, solve_linear
from ..ncpoly import ODD, Alphabet, Poly, Presentation, Relation, Word, order_key
from ..rewrite import OrientationError, reduce


class BasisChangeError(ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def substitute_generators(p: Poly, images: Mapping[str, Poly], target: Alphabet, params=None, reducer=None) -> Poly:
    """Replace each letter by its image (letters without one map to themselves)."""
    params = params or p.params
    letters = []
    for name in p.alphabet.names:
        img = images.get(name)
        if img is None:
            img = Poly.gen(target, name, params)
        elif img.alphabet != target:
            raise BasisChangeError(f"image of {name} is not over the target alphabet")
        letters.append(img)
    cache: Dict[Word, Poly] = {}
    total = Poly.zero(target, params)
    for w, c in p.terms.items():
        img = cache.get(w)
        if img is None:
            img = Poly.constant(target, 1, params)
            for x in w:
                img = img * letters[x]
                if reducer is not None:
                    img = reducer(img)
            cache[w] = img
        total = total + img.scale(c)
    return reducer(total) if reducer is not None else total


@dataclass
class BasisChange:
    """New generators as polynomials in the old ones, and optionally back.

    ``new_in_old[g]`` is a Poly over the source alphabet; ``old_in_new[s]`` a
    Poly over the target alphabet.  Generators absent from a map are mapped to
    the generator of the same name.
    """

    source: Presentation
    new_in_old: Dict[str, Poly]
    target_alphabet: Alphabet = None
    old_in_new: Optional[Dict[str, Poly]] = None
    label: str = ""

    def __post_init__(self):
        if self.target_alphabet is None:
            self.target_alphabet = self.source.alphabet
        for g, img in self.new_in_old.items():
            if g not in self.target_alphabet:
                raise BasisChangeError(f"{g} is not a target generator")
            if img.alphabet != self.source.alphabet:
                raise BasisChangeError(f"image of {g} is not over the source presentation")
            gh = img.ghost_number()
            if img and gh != self.target_alphabet.info(self.target_alphabet.letter(g)).ghost_number:
                raise BasisChangeError(f"image of {g} has ghost number {gh}")
        self._images: Dict[Word, Poly] = {}

    @classmethod
    def from_text(cls, source: Presentation, mapping: Mapping[str, str], target_alphabet=None, inverse: Mapping[str, str] = None, target: Presentation = None, label=""):
        new = {g: source.parse(t) for g, t in mapping.items()}
        old = None
        if inverse is not None:
            if target is None:
                raise BasisChangeError("a declared inverse needs the target presentation to parse")
            old = {s: target.parse(t) for s, t in inverse.items()}
        return cls(source, new, target_alphabet or (target.alphabet if target else None), old, label)

    def params(self):
        ps = self.source.params
        for v in self.new_in_old.values():
            ps = ps.union(v.params)
        return ps

    def image(self, word: Word) -> Poly:
        """Reduced source image of a target word."""
        got = self._images.get(word)
        if got is not None:
            return got
        ps = self.params()
        if not word:
            img = Poly.constant(self.source.alphabet, 1, ps)
        else:
            head = self.image(word[:-1])
            name = self.target_alphabet.names[word[-1]]
            g = self.new_in_old.get(name)
            if g is None:
                g = Poly.gen(self.source.alphabet, name, ps)
            img = self.source.reduce(head * g)
        self._images[word] = img
        return img

    def forward(self, p: Poly) -> Poly:
        """A target polynomial expressed (and reduced) in the source algebra."""
        return substitute_generators(p, self.new_in_old, self.source.alphabet, self.params(), self.source.reduce)

    def compute_inverse(self, target: Presentation, max_iter: int = 32) -> Dict[str, Poly]:
        """Fixed-point iteration s = g - (image(g) - s), reduced in the target."""
        ps = self.params()
        guess = {s: Poly.gen(target.alphabet, s, ps) for s in self.new_in_old}
        for _ in range(max_iter):
            nxt = {}
            for g, img in self.new_in_old.items():
                corr = img - Poly.gen(self.source.alphabet, g, ps)
                corr_t = substitute_generators(corr, guess, target.alphabet, ps, target.reduce)
                nxt[g] = target.reduce(Poly.gen(target.alphabet, g, ps) - corr_t)
            if nxt == guess:
                return nxt
            guess = nxt
        raise BasisChangeError("inverse did not converge; declare it explicitly")

    def certificate(self, target: Presentation) -> List[str]:
        """Failures of the two compositions (empty when the change is invertible)."""
        if self.old_in_new is None:
            self.old_in_new = self.compute_inverse(target)
        ps = self.params()
        bad = []
        for g in self.target_alphabet.names:
            img = self.new_in_old.get(g) or Poly.gen(self.source.alphabet, g, ps)
            back = substitute_generators(img, self.old_in_new, target.alphabet, ps, target.reduce)
            if back != Poly.gen(target.alphabet, g, ps):
                bad.append(f"new->old->new on {g}: {back}")
        for s in self.source.alphabet.names:
            img = self.old_in_new.get(s) or Poly.gen(target.alphabet, s, ps)
            back = self.forward(img)
            if back != Poly.gen(self.source.alphabet, s, ps):
                bad.append(f"old->new->old on {s}: {back}")
        return bad

    def to_json(self) -> dict:
        doc = {"map": {g: str(p) for g, p in self.new_in_old.items()}}
        if self.old_in_new is not None:
            doc["inverse"] = {s: str(p) for s, p in self.old_in_new.items()}
        return doc


def apply_basis_change(p: Poly, bc: BasisChange, target: Presentation) -> Poly:
    """Rewrite a source polynomial in the new generators, reduced in the target."""
    bad = bc.certificate(target)
    if bad:
        raise BasisChangeError("basis change is not invertible: " + "; ".join(bad))
    return substitute_generators(p, bc.old_in_new, target.alphabet, bc.params(), target.reduce)


# -- induced presentation ---------------------------------------------------------


def pbw_words(alphabet: Alphabet, max_degree: int, ghost_number: int = None) -> List[Word]:
    """Nondecreasing words with no repeated odd letter, by degree."""
    out = []
    n = len(alphabet)
    for d in range(max_degree + 1):
        for w in itertools.combinations_with_replacement(range(n), d):
            if any(w[i] == w[i + 1] and alphabet.info(w[i]).parity == ODD for i in range(d - 1)):
                continue
            if ghost_number is not None and alphabet.ghost_number(w) != ghost_number:
                continue
            out.append(w)
    return out


@dataclass
class DerivedPresentation:
    presentation: Optional[Presentation]
    closure_degree: int
    structure: Dict[Tuple[str, str], Poly]
    kinds: Dict[Tuple[str, str], str] = field(default_factory=dict)

    @property
    def quadratic(self) -> bool:
        return self.presentation is not None

    def bracket(self, lower: str, higher: str) -> Poly:
        return self.structure[(lower, higher)]

    def coefficient(self, lower: str, higher: str, word: str) -> Scalar:
        return self.structure[(lower, higher)].coeff(word)


def derived_presentation(
    source: Presentation,
    bc: BasisChange,
    max_degree: int = 3,
    label: str = "",
    step_limit: Optional[int] = None,
) -> DerivedPresentation:
    """Brackets of the new generators, re-expressed in sorted new-generator words.

    For letters y < x the bracket is [y, x] = yx - xy, or {y, x} when both are
    odd; for an odd x it is {x, x} = 2 x^2.  Each is solved exactly as a
    combination of images of nondecreasing words of degree <= ``max_degree``.
    """
    ta = bc.target_alphabet
    ps = bc.params()
    n = len(ta)
    structure: Dict[Tuple[str, str], Poly] = {}
    kinds = {}
    polys: List[Poly] = []
    closure = 0
    candidates: Dict[int, List[Word]] = {}
    for hi in range(n):
        for lo in range(hi + 1):
            odd = ta.info(lo).parity == ODD and ta.info(hi).parity == ODD
            if lo == hi and not odd:
                continue
            y, x = bc.image((lo,)), bc.image((hi,))
            br = y * x + x * y if odd else y * x - x * y
            br = reduce(br, source.rules(), step_limit=step_limit).normal_form
            gh = ta.ghost_numbers[lo] + ta.ghost_numbers[hi]
            if gh not in candidates:
                candidates[gh] = pbw_words(ta, max_degree, gh)
            words = candidates[gh]
            rows: Dict[Word, Dict[Word, Scalar]] = {}
            for w in words:
                for u, v in bc.image(w).terms.items():
                    rows.setdefault(u, {})[w] = v
            eqs = [(rows.get(u, {}), br.coeff(u)) for u in sorted(set(rows) | set(br.terms), key=order_key)]
            try:
                sol, kern = solve_linear(eqs, words, ps.zero)
            except InconsistentSystem as exc:
                raise BasisChangeError(
                    f"bracket of {ta.names[lo]}, {ta.names[hi]} is not expressible within degree {max_degree}",
                    residual=exc.residual,
                ) from None
            if kern:
                raise BasisChangeError("images of new-generator words are linearly dependent")
            expr = Poly(ta, sol, ps)
            key = (ta.names[lo], ta.names[hi])
            structure[key] = expr
            kinds[key] = "anticommutator" if odd else "commutator"
            closure = max(closure, expr.degree())
            # relation: anticommutator or commutator = expr, in terms of the new letters
            yx = Poly.monomial(ta, (lo, hi), 1, ps)
            xy = Poly.monomial(ta, (hi, lo), 1, ps)
            if lo == hi:
                polys.append(xy.scale(2) - expr)
            elif odd:
                polys.append(yx + xy - expr)
            else:
                polys.append(yx - xy - expr)
    pres = None
    if closure <= 2:
        try:
            pres = Presentation.from_polys(ta, ps, polys, label or f"derived from {source.label}", dict(source.metadata))
            pres.metadata.pop("_rules", None)
            pres.rules()
        except (OrientationError, ValueError):
            pres = None
    return DerivedPresentation(pres, closure, structure, kinds)


def presentations_equivalent(first: Presentation, second: Presentation, rename: Mapping[str, str] = None) -> List[str]:
    """Relations of either presentation that do not reduce to zero in the other.

    ``rename`` maps generator names of ``first`` to those of ``second``.  An
    empty result means the two relation ideals coincide.
    """
    rename = dict(rename or {})
    back = {v: k for k, v in rename.items()}
    bad = []
    for rel in first.relation_polys():
        r = second.reduce(rel.transfer(second.alphabet, rename))
        if r:
            bad.append(f"{rel} -> {r} in {second.label or 'second'}")
    for rel in second.relation_polys():
        r = first.reduce(rel.transfer(first.alphabet, back))
        if r:
            bad.append(f"{rel} -> {r} in {first.label or 'first'}")
    return bad
