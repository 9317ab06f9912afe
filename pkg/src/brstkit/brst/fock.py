"""Physical-state conditions Q|Phi> = 0 on the ghost Fock space."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from ..linalg import dense_inverse
from ..ncpoly import Poly, Presentation, Word
from .charge import BrstCharge, names_of
from .omega import GhostNames


class FockError(ValueError):
    pass


@dataclass(frozen=True)
class FockState:
    """Ghost monomials c^{i1}...c^{ik} (i1 < ... < ik) carrying components psi_K."""

    names: GhostNames

    @property
    def subsets(self) -> List[Tuple[int, ...]]:
        n = self.names.n
        return [s for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]

    @staticmethod
    def label(subset) -> str:
        return "psi_" + ("".join(str(i) for i in subset) or "0")

    def monomial_name(self, subset) -> str:
        return "*".join(self.names.ghost(i) for i in subset) or "1"

    def monomial(self, subset, presentation: Presentation) -> Poly:
        p = presentation.one()
        for i in subset:
            p = p * presentation.gen(self.names.ghost(i))
        return p

    def __len__(self):
        return 2 ** self.names.n


@dataclass
class FockEquation:
    """sum_K terms[K] |psi_K> = 0, read off the ghost monomial ``monomial``."""

    monomial: str
    ghost_number: int
    terms: Dict[str, Poly] = field(default_factory=dict)

    def component(self, label: str) -> Poly:
        return self.terms[label]

    def render(self) -> str:
        out = ""
        for label, poly in self.terms.items():
            text = str(poly)
            if len(poly.terms) > 1:
                text = f"({text})"
            elif text == "1" or text == "-1":
                text = text[:-1]
            if out:
                out += " - " + text[1:] if text.startswith("-") else " + " + text
            else:
                out = text
            out += f"|{label}>"
        return f"[{self.monomial}] {out} = 0"

    __str__ = render


def fock_expand(Q: BrstCharge, names: GhostNames = None) -> List[FockEquation]:
    """Expand Q acting on sum_K c^K |psi_K> with b_i |psi> = 0.

    Each product Q c^K is brought to normal form (ghosts left of anti-ghosts);
    words ending in an anti-ghost annihilate the component.  Constraints must
    commute with the ghosts, so every surviving word splits into a constraint
    part acting on psi_K and a ghost monomial, which is rewritten in the basis
    c^L through the inverse of the normal-form transition matrix.
    """
    pres = Q.presentation
    names = names or names_of(pres)
    a = pres.alphabet
    kinds = names.kinds(a)
    if not Q.q:
        return []
    for x in names.constraints + ((names.chi0,) if names.chi0 else ()):
        for g in names.ghosts:
            if pres.reduce(pres.gen(x) * pres.gen(g) - pres.gen(g) * pres.gen(x)):
                raise FockError(f"{x} does not commute with {g}")
    state = FockState(names)
    subsets = state.subsets
    ps = pres.params

    # basis monomials in terms of normal ghost words
    normal = [pres.reduce(state.monomial(s, pres)) for s in subsets]
    cwords = sorted({w for p in normal for w in p.terms}, key=lambda w: (len(w), w))
    if len(cwords) != len(subsets):
        raise FockError("ghost monomials do not span a 2^n dimensional space")
    index = {w: i for i, w in enumerate(cwords)}
    trans = [[normal[k].coeff(w) for k in range(len(subsets))] for w in cwords]
    inv = dense_inverse(trans)  # inv[L][w]: coordinate of normal word w on c^L

    # coefficient of each normal ghost word, per component
    coef: Dict[Word, Dict[int, Poly]] = {}
    for k, s in enumerate(subsets):
        v = pres.reduce(Q.q * state.monomial(s, pres))
        for w, c in v.terms.items():
            if any(kinds[x] == "b" for x in w):
                if kinds[w[-1]] != "b":
                    raise FockError("anti-ghosts are not ordered to the right")
                continue
            chis = tuple(x for x in w if kinds[x] == "chi")
            cs = tuple(x for x in w if kinds[x] == "c")
            if cs not in index:
                raise FockError(f"ghost word {a.render_word(cs)} is not normal")
            row = coef.setdefault(cs, {})
            row[k] = row.get(k, Poly.zero(a, ps)) + Poly.monomial(a, chis, c, ps)

    eqs = []
    for L, s in enumerate(subsets):
        terms: Dict[str, Poly] = {}
        for k, t in enumerate(subsets):
            total = Poly.zero(a, ps)
            for w, row in coef.items():
                f = inv[L][index[w]]
                if k in row and not f.is_zero():
                    total = total + row[k].scale(f)
            if total:
                terms[state.label(t)] = total
        if terms:
            eqs.append(FockEquation(state.monomial_name(s), len(s), terms))
    return eqs


def fock_matrix(eqs: List[FockEquation]) -> Dict[Tuple[str, str], Poly]:
    """Equations as a (row monomial, component) -> coefficient map."""
    return {(e.monomial, label): p for e in eqs for label, p in e.terms.items()}
