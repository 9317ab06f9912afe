"""Worked instances: the three-generator quantum Lie algebra and the
one-parameter family {J, T, W} with its ghost systems and charges.

ASCII names: chi0..chi3 for the constraints, c1..c3 / b1..b3 for the
(non-canonical) ghosts; J, T, W with cJ, cT, cW / bJ, bT, bW for the family.
Parameter ``a`` is the deformation parameter of the three-generator algebra,
``C`` the value of the central generator chi0.
"""
from __future__ import annotations

from functools import lru_cache

from .coeff import ParameterSet
from .ncpoly import Alphabet, Presentation, constraint
from .ybtensor import StructureData, TensorSquareOp, assemble_R

QLA_PARAMS = ParameterSet(["a", "C"])
FAMILY_PARAMS = ParameterSet(["a1", "a2", "a3"])


def qla_sigma(params: ParameterSet = QLA_PARAMS) -> TensorSquareOp:
    a = params.symbol("a")
    ents = {(i, j, j, i): 1 for i in (1, 2, 3) for j in (1, 2, 3)}
    ents[(1, 1, 1, 3)] = a
    ents[(1, 1, 3, 1)] = -a
    ents[(1, 2, 2, 3)] = a
    ents[(2, 1, 3, 2)] = -a
    return TensorSquareOp(3, ents, params, 1)


def qla_structure(params: ParameterSet = QLA_PARAMS) -> StructureData:
    """sigma and C^j_{kl} = delta^j_2 (delta^1_k delta^3_l - delta^3_k delta^1_l)."""
    return StructureData(3, qla_sigma(params), {(2, 1, 3): 1, (2, 3, 1): -1}, params)


def qla_R(params: ParameterSet = QLA_PARAMS) -> TensorSquareOp:
    return assemble_R(qla_structure(params))


def qla_R_literal(params: ParameterSet = QLA_PARAMS) -> TensorSquareOp:
    """The R-matrix written directly from its delta-expression, as an oracle."""
    a = params.symbol("a")
    d = lambda x, y: 1 if x == y else 0
    ents = {}
    rng = range(4)
    for A in rng:
        for B in rng:
            for Cc in rng:
                for D in rng:
                    v = d(A, D) * d(B, Cc) + (d(A, 0) * d(B, 2) + a * d(A, 1) * d(B, 1)) * (
                        d(1, Cc) * d(3, D) - d(3, Cc) * d(1, D)
                    )
                    v = v + a * (d(A, 1) * d(B, 2) * d(2, Cc) * d(3, D) - d(A, 2) * d(B, 1) * d(3, Cc) * d(2, D))
                    ents[(A, B, Cc, D)] = v
    return TensorSquareOp(4, ents, params, 0)


QLA_CONSTRAINTS = [
    "chi1*chi2 - chi2*chi1",
    "chi1*chi3 - chi3*chi1 - a*chi1^2 - chi0*chi2",
    "chi2*chi3 - chi3*chi2 - a*chi1*chi2",
]

# anticommutator statements {x, y} = rhs, and squares x^2 = rhs
QLA_GHOSTS = [
    ("c1*c1", "a*c3*c1"),
    ("c2*c2", "0"),
    ("c3*c3", "0"),
    ("c1*c3 + c3*c1", "0"),
    ("c2*c3 + c3*c2", "0"),
    ("c1*c2 + c2*c1", "a*c3*c2"),
    ("b1*b1", "0"),
    ("b2*b2", "0"),
    ("b3*b3", "0"),
    ("b1*b2 + b2*b1", "0"),
    ("b1*b3 + b3*b1", "0"),
    ("b2*b3 + b3*b2", "a*b1*b2"),
    ("b1*c1 + c1*b1", "-a*c3*b1 + 1"),
    ("b2*c2 + c2*b2", "1"),
    ("b3*c3 + c3*b3", "1"),
    ("b3*c2 + c2*b3", "a*c2*b1"),
    ("b2*c1 + c1*b2", "-a*c3*b2"),
    ("b3*c1 + c1*b3", "a*c1*b1"),
    ("b1*c2 + c2*b1", "0"),
    ("b1*c3 + c3*b1", "0"),
    ("b2*c3 + c3*b2", "0"),
] + [
    (f"chi{i}*{g}{j} - {g}{j}*chi{i}", "0") for i in (1, 2, 3) for g in ("c", "b") for j in (1, 2, 3)
]

QLA_CHARGE = "c1*chi1 + c2*chi2 + c3*chi3 - c1*c3*C*b2"

FAMILY_CONSTRAINTS = [
    "J*W - W*J - a1*T - a2*J^2",
    "J*T - T*J",
    "T*W - W*T - a3*J*T",
]

FAMILY_CANONICAL_GHOSTS = (
    [(f"b{x}*c{x} + c{x}*b{x}", "1") for x in "JTW"]
    + [(f"b{x}*c{y} + c{y}*b{x}", "0") for x in "JTW" for y in "JTW" if x != y]
    + [(f"c{x}*c{y} + c{y}*c{x}", "0") for x in "JTW" for y in "JTW" if x <= y]
    + [(f"b{x}*b{y} + b{y}*b{x}", "0") for x in "JTW" for y in "JTW" if x <= y]
    + [(f"{k}*{g}{x} - {g}{x}*{k}", "0") for k in "JTW" for g in "cb" for x in "JTW"]
)

FAMILY_CHARGE = "cJ*J + cT*T + cW*W - a1*cJ*cW*bT - a3*T*cT*cW*bJ + a2*J*cW*cJ*bJ"
FAMILY_CHARGE_NEW_GHOSTS = "cJ*J + cT*T + cW*W - a1*cJ*cW*bT"

# new ghosts in terms of canonical ones, and the anti-ghost redefinition
FAMILY_GHOST_MAP = {"cJ": "cJ + a2*cW*cJ*bJ", "cT": "cT - a3*cT*cW*bJ", "cW": "cW"}
FAMILY_ANTIGHOST_MAP = {"bJ": "bJ", "bT": "bT + a3*cW*bJ*bT", "bW": "bW"}

FAMILY_MODIFIED_GHOSTS = (
    [
        ("cJ*cJ + cJ*cJ", "-2*a2*cJ*cW"),
        ("cJ*cT + cT*cJ", "-a3*cT*cW"),
        ("cJ*bJ + bJ*cJ", "1 - a2*cW*bJ"),
        ("cJ*bW + bW*cJ", "a2*cJ*bJ"),
        ("cT*bT + bT*cT", "1 - a3*cW*bJ"),
        ("cT*bW + bW*cT", "a3*cT*bJ"),
        ("cW*bW + bW*cW", "1"),
    ]
    + [(f"{x}*{y} + {y}*{x}", "0") for x, y in [
        ("cJ", "cW"), ("cT", "cT"), ("cT", "cW"), ("cW", "cW"),
        ("cJ", "bT"), ("cT", "bJ"), ("cW", "bJ"), ("cW", "bT"),
        ("bJ", "bJ"), ("bT", "bT"), ("bW", "bW"), ("bJ", "bT"), ("bJ", "bW"), ("bT", "bW"),
    ]]
    + [(f"{k}*{g}{x} - {g}{x}*{k}", "0") for k in "JTW" for g in "cb" for x in "JTW"]
)


def family_constraint_alphabet() -> Alphabet:
    return Alphabet.ordered([constraint("J"), constraint("T"), constraint("W")])


def family_names():
    from .brst.omega import GhostNames

    return GhostNames(("J", "T", "W"), ("cJ", "cT", "cW"), ("bJ", "bT", "bW"))


def qla_names(chi0: bool = False):
    from .brst.omega import GhostNames

    return GhostNames.indexed(3, chi0="chi0" if chi0 else None)


def presentation_from_statements(alphabet, params, statements, label="") -> Presentation:
    """Relations written as ``lhs = rhs`` text pairs, oriented by the term order."""
    shell = Presentation(alphabet, params, [], label)
    polys = [shell.parse(l) - shell.parse(r) for l, r in statements]
    return Presentation.from_polys(alphabet, params, polys, label)


@lru_cache(maxsize=None)
def qla_omega(chi0_generator: bool = False) -> Presentation:
    """Constraints, ghost algebra and cross relations written from the literal relations."""
    names = qla_names(chi0_generator)
    alphabet = names.alphabet()
    if chi0_generator:
        params = ParameterSet(["a"])
        stmts = [(r, "0") for r in QLA_CONSTRAINTS] + [(f"chi0*{g} - {g}*chi0", "0") for g in alphabet.names if g != "chi0"]
    else:
        params = QLA_PARAMS
        stmts = [(r.replace("chi0", "C"), "0") for r in QLA_CONSTRAINTS]
    p = presentation_from_statements(alphabet, params, stmts + QLA_GHOSTS, "omega qla")
    p.metadata["names"] = names
    return p


@lru_cache(maxsize=None)
def family_constraints() -> Presentation:
    return presentation_from_statements(family_constraint_alphabet(), FAMILY_PARAMS, [(r, "0") for r in FAMILY_CONSTRAINTS], "family J T W")


@lru_cache(maxsize=None)
def family_omega() -> Presentation:
    names = family_names()
    p = presentation_from_statements(
        names.alphabet(), FAMILY_PARAMS, [(r, "0") for r in FAMILY_CONSTRAINTS] + FAMILY_CANONICAL_GHOSTS, "family + canonical ghosts"
    )
    p.metadata["names"] = names
    return p


@lru_cache(maxsize=None)
def family_modified_omega() -> Presentation:
    names = family_names()
    p = presentation_from_statements(
        names.alphabet(), FAMILY_PARAMS, [(r, "0") for r in FAMILY_CONSTRAINTS] + FAMILY_MODIFIED_GHOSTS, "family + modified ghosts"
    )
    p.metadata["names"] = names
    return p


@lru_cache(maxsize=None)
def qla_constraints() -> Presentation:
    """The three-generator algebra alone, with chi0 set to C."""
    alphabet = Alphabet.ordered([constraint(f"chi{i}") for i in (1, 2, 3)])
    stmts = [(r.replace("chi0", "C"), "0") for r in QLA_CONSTRAINTS]
    return presentation_from_statements(alphabet, QLA_PARAMS, stmts, "three-generator algebra")


def gamma_shift(p: Presentation = None):
    """chi2 -> chi2 + gamma chi1^2 with gamma = a/(2C)."""
    from .brst.basis import BasisChange

    p = p or qla_constraints()
    ps = p.params
    gamma = ps.symbol("a") / (ps.symbol("C") * 2)
    return BasisChange(p, {"chi2": p.gen("chi2") + p.parse("chi1^2").scale(gamma)}, label="gamma shift")


def beta_shift(p: Presentation, beta):
    """T -> T + beta J^2 on any presentation containing J and T."""
    from .brst.basis import BasisChange

    return BasisChange(p, {"T": p.gen("T") + p.parse("J^2").scale(beta)}, label="beta shift")


def family_charge(p: Presentation, coeffs=None, t_expr=None):
    """The canonical-ghost charge of the family with the given (a1, a2, a3).

    ``t_expr`` replaces the generator T (e.g. by T + beta J^2) wherever it
    occurs, which gives the charge of the second quadratic face.
    """
    ps = p.params
    a1, a2, a3 = coeffs or tuple(ps.symbol(x) for x in ("a1", "a2", "a3"))
    J, W, cJ, cT, cW, bJ, bT = (p.gen(x) for x in ("J", "W", "cJ", "cT", "cW", "bJ", "bT"))
    T = t_expr if t_expr is not None else p.gen("T")
    q = (
        cJ * J
        + cT * T
        + cW * W
        - (cJ * cW * bT).scale(a1)
        - (T * cT * cW * bJ).scale(a3)
        + (J * cW * cJ * bJ).scale(a2)
    )
    return p.reduce(q)
