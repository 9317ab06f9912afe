"""BRST charges: the closed-form c0, assembly of Q, nilpotency and the
order-by-order ansatz solver."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..coeff import Scalar, as_scalar
from ..linalg import InconsistentSystem, solve_linear
from ..ncpoly import Poly, Presentation, Word, anticommutator, order_key
from ..rewrite import reduce
from ..ybtensor import StructureData, TensorSquareOp
from .omega import GhostNames, GhostSystem

PROVENANCES = ("proposition", "ansatz-solver", "explicit")


class GradingError(ValueError):
    pass


@dataclass
class BrstCharge:
    q: Poly
    presentation: Presentation
    provenance: str = "explicit"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        gh = self.q.ghost_number()
        if self.q and gh != 1:
            raise GradingError(f"a BRST charge must have ghost number +1, got {gh}")

    def __str__(self):
        return str(self.q)


def names_of(p: Presentation) -> GhostNames:
    names = p.metadata.get("names")
    if names is None:
        raise ValueError("presentation carries no ghost naming; pass names explicitly")
    return names


def build_c0(s: StructureData, phi: TensorSquareOp, presentation: Presentation, chi0=None, names: GhostNames = None) -> Poly:
    """-1/2 c^j c^i phi^{km}_{ij} C^r_{km} b_r chi0, reduced.

    chi0 is the central generator when the naming has one, otherwise the
    given value (a parameter name or rational; default 1).
    """
    names = names or names_of(presentation)
    I = s.indices
    ps = presentation.params
    a = presentation.alphabet
    if names.chi0 is not None:
        x0 = presentation.gen(names.chi0)
    else:
        value = ps.symbol(chi0) if isinstance(chi0, str) else as_scalar(1 if chi0 is None else chi0, ps)
        x0 = Poly.constant(a, value, ps)
    terms: Dict[Word, Scalar] = {}
    half = Scalar(-1, ps) / 2
    for i in I:
        for j in I:
            for r in I:
                t = ps.zero
                for k in I:
                    for m in I:
                        v = phi[(k, m, i, j)]
                        if not v.is_zero():
                            t = t + v * s.C(r, k, m)
                if t.is_zero():
                    continue
                w = a.word(names.ghost(j), names.ghost(i), names.antighost(r))
                terms[w] = terms.get(w, ps.zero) + t * half
    return presentation.reduce(Poly(a, terms, ps) * x0)


def build_Q(constraints: Sequence[Poly], c0: Poly, ghosts: Sequence[Poly] = None, presentation: Presentation = None, provenance="proposition") -> BrstCharge:
    """q = sum_i c^i chi_i + c0."""
    if c0 and c0.ghost_number() != 1:
        raise GradingError(f"c0 must have ghost number +1, got {c0.ghost_number()}")
    if presentation is None:
        raise ValueError("build_Q needs the presentation the charge lives in")
    if ghosts is None:
        names = names_of(presentation)
        ghosts = [presentation.gen(g) for g in names.ghosts]
    if len(ghosts) != len(constraints):
        raise GradingError("one ghost per constraint")
    q = c0
    for g, x in zip(ghosts, constraints):
        if x.ghost_number() != 0:
            raise GradingError(f"constraint {x} must have ghost number 0")
        q = q + g * x
    return BrstCharge(presentation.reduce(q), presentation, provenance)


def initial_charge(presentation: Presentation, names: GhostNames = None) -> Poly:
    names = names or names_of(presentation)
    q = presentation.zero()
    for c, x in zip(names.ghosts, names.constraints):
        q = q + presentation.gen(c) * presentation.gen(x)
    return q


def square(q: Poly, presentation: Presentation, step_limit=None) -> Poly:
    return reduce(q * q, presentation.rules(), step_limit=step_limit).normal_form


def verify_nilpotent(Q: BrstCharge, step_limit: Optional[int] = None) -> Poly:
    """Normal form of Q*Q: the zero polynomial iff Q is nilpotent."""
    return square(Q.q, Q.presentation, step_limit)


# -- ansatz -----------------------------------------------------------------


def normal_words(presentation: Presentation, letters: Sequence[int], length: int) -> List[Word]:
    """Normal words of exact length over the given letters."""
    rules = presentation.rules()
    words = [()]
    for _ in range(length):
        nxt = []
        for w in words:
            for x in letters:
                nw = w + (x,)
                if rules.is_normal(nw):
                    nxt.append(nw)
        words = nxt
    return words


def ansatz_words(presentation: Presentation, names: GhostNames, k: int, chi_degree: int) -> List[Word]:
    """Normal words (chi...)(c^{k+1})(b^k) with chi-degree <= chi_degree."""
    a = presentation.alphabet
    rules = presentation.rules()
    chis = [a.letter(x) for x in names.constraints]
    cs = [a.letter(x) for x in names.ghosts]
    bs = [a.letter(x) for x in names.antighosts]
    cw = normal_words(presentation, cs, k + 1)
    bw = normal_words(presentation, bs, k)
    out = []
    for d in range(chi_degree + 1):
        for xw in normal_words(presentation, chis, d):
            for c in cw:
                for b in bw:
                    w = xw + c + b
                    if rules.is_normal(w):
                        out.append(w)
    return out


def _b_degree(word, bset) -> int:
    return sum(1 for x in word if x in bset)


def _pivot_key(word, bset):
    # pivot preference: fewest constraint letters, then smallest anti-ghost
    # letters; a quadratic term chi_a chi_b (a <= b) is thereby attributed to
    # the anti-ghost of the left factor, and pure ghost terms win when possible
    bs = tuple(x for x in word if x in bset)
    n_chi = len(word) - 2 * len(bs) - 1  # ansatz words are chi^d c^(k+1) b^k
    return (n_chi, bs, len(word), order_key(word))


def _component(p: Poly, bset, k) -> Dict[Word, Scalar]:
    return {w: c for w, c in p.terms.items() if _b_degree(w, bset) == k}


@dataclass
class LevelResult:
    levels: Dict[int, Dict[Word, Scalar]]
    kernels: Dict[int, List[Dict[Word, Scalar]]]
    charge: Poly
    obstruction: Optional[Poly] = None
    obstruction_level: Optional[int] = None

    @property
    def kernel_dimension(self) -> int:
        return sum(len(k) for k in self.kernels.values())


def solve_levels(
    presentation: Presentation,
    q0: Poly,
    max_level: int,
    chi_degree: int = 1,
    names: GhostNames = None,
    step_limit: Optional[int] = None,
) -> LevelResult:
    """Add corrections with k anti-ghosts, k = 1..max_level, so that Q^2 = 0.

    At level k the unknown X enters the anti-ghost-degree (k-1) part of
    (P + X)^2 only linearly, through P X + X P; that part is solved exactly.
    Free unknowns are set to zero and the kernel is reported as ambiguity.
    """
    names = names or names_of(presentation)
    a = presentation.alphabet
    rules = presentation.rules()
    bset = {a.letter(x) for x in names.antighosts}
    ps = presentation.params

    def red(p):
        return reduce(p, rules, step_limit=step_limit).normal_form

    P = red(q0)
    levels, kernels = {}, {}
    for k in range(1, max_level + 1):
        unknowns = sorted(ansatz_words(presentation, names, k, chi_degree), key=lambda w: _pivot_key(w, bset))
        sq = _component(red(P * P), bset, k - 1)
        cols: Dict[Word, Dict[Word, Scalar]] = {}
        for w in unknowns:
            mono = Poly.monomial(a, w, 1, ps)
            cols[w] = _component(red(P * mono + mono * P), bset, k - 1)
        rows: Dict[Word, Dict[Word, Scalar]] = {}
        for w, col in cols.items():
            for u, v in col.items():
                rows.setdefault(u, {})[w] = v
        eqs = [(rows.get(u, {}), -sq.get(u, ps.zero)) for u in sorted(set(rows) | set(sq), key=order_key)]
        try:
            sol, kern = solve_linear(eqs, unknowns, ps.zero)
        except InconsistentSystem:
            return LevelResult(levels, kernels, P, Poly(a, sq, ps), k)
        sol = {w: v for w, v in sol.items() if not v.is_zero()}
        levels[k] = sol
        kernels[k] = kern
        P = P + Poly(a, sol, ps)
    residual = red(P * P)
    if residual:
        return LevelResult(levels, kernels, P, residual, max_level + 1)
    return LevelResult(levels, kernels, P)


@dataclass
class AnsatzResult:
    charge: Optional[BrstCharge]
    levels: Dict[int, Dict[Word, Scalar]]
    ambiguity: Dict[int, List[Poly]]
    obstruction: Optional[Poly] = None
    obstruction_level: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.obstruction is None


def solve_brst_ansatz(
    p: Presentation,
    ghosts=None,
    max_antighost_degree: int = 2,
    chi_degree: int = 1,
    step_limit: Optional[int] = None,
) -> AnsatzResult:
    """Start from Q0 = sum c^i chi_i and solve for b-ordered corrections.

    ``p`` must already contain the ghost relations (e.g. from
    :func:`canonical_omega`).  ``chi_degree`` bounds the number of constraint
    letters in each correction word.
    """
    if isinstance(ghosts, GhostSystem):
        names = ghosts.names
    else:
        names = ghosts or names_of(p)
    q0 = initial_charge(p, names)
    res = solve_levels(p, q0, max_antighost_degree, chi_degree, names, step_limit)
    amb = {k: [Poly(p.alphabet, v, p.params) for v in vs] for k, vs in res.kernels.items() if vs}
    charge = None if res.obstruction is not None else BrstCharge(res.charge, p, "ansatz-solver")
    return AnsatzResult(charge, res.levels, amb, res.obstruction, res.obstruction_level)


# -- double complex and involution -----------------------------------------


@dataclass
class DoubleComplexReport:
    q_squared: Poly
    qt_squared: Poly
    anticommutator: Poly

    @property
    def passed(self) -> bool:
        return not (self.q_squared or self.qt_squared or self.anticommutator)

    def items(self):
        return [("Q^2", self.q_squared), ("Qt^2", self.qt_squared), ("{Q,Qt}", self.anticommutator)]


def double_complex_check(Q: BrstCharge, Qt: BrstCharge, step_limit: Optional[int] = None) -> DoubleComplexReport:
    if Q.presentation.alphabet != Qt.presentation.alphabet:
        raise ValueError("both charges must live in one presentation")
    rules = Q.presentation.rules()

    def red(x):
        return reduce(x, rules, step_limit=step_limit).normal_form

    return DoubleComplexReport(red(Q.q * Q.q), red(Qt.q * Qt.q), red(anticommutator(Q.q, Qt.q)))


def involution(t) -> Scalar:
    t = as_scalar(t)
    if t.is_zero():
        raise ZeroDivisionError("the involution is undefined at t = 0")
    return t.inv()


def tilde_map(a1, a2, a3) -> Tuple[Scalar, Scalar, Scalar]:
    """(a1, a2, a3) -> (a1, a3/2, 2 a2), the coefficients of the second quadratic face."""
    return a1, a3 / 2, a2 * 2


def t_parameter(a1, a2, a3) -> Scalar:
    return (a2 * 2) / a3


def beta_special(a1, a2, a3) -> Scalar:
    """The shift T -> T + beta J^2 that keeps the relations quadratic."""
    return (a2 * 2 - a3) / (a1 * 2)
