"""Builders for the cross-product algebra of constraints, ghosts and anti-ghosts.

Letter precedence: constraints lowest (by index, with an optional central
``chi0`` first), then ghosts in descending index, then anti-ghosts in
ascending index.  Normal words therefore read (constraints)(ghosts)(anti-ghosts).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..coeff import ParameterSet, Scalar, as_scalar
from ..ncpoly import Alphabet, GeneratorInfo, Poly, Presentation, antighost, constraint, ghost
from ..ybtensor import (
    StructureData,
    TensorSquareOp,
    assemble_F,
    assemble_R,
    split_special_form,
    twist_consistency,
    twisted,
)


class GhostAlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class GhostNames:
    """Generator names for constraint i, its ghost and its anti-ghost (1-based)."""

    constraints: Tuple[str, ...]
    ghosts: Tuple[str, ...]
    antighosts: Tuple[str, ...]
    chi0: Optional[str] = None

    def __post_init__(self):
        if not (len(self.constraints) == len(self.ghosts) == len(self.antighosts)):
            raise GhostAlgebraError("one ghost and one anti-ghost per constraint")

    @classmethod
    def indexed(cls, n, chi="chi", c="c", b="b", chi0=None):
        r = range(1, n + 1)
        return cls(tuple(f"{chi}{i}" for i in r), tuple(f"{c}{i}" for i in r), tuple(f"{b}{i}" for i in r), chi0)

    @property
    def n(self):
        return len(self.constraints)

    def constraint(self, i):
        return self.constraints[i - 1]

    def ghost(self, i):
        return self.ghosts[i - 1]

    def antighost(self, i):
        return self.antighosts[i - 1]

    def index_of(self, name) -> Tuple[str, int]:
        for kind, seq in (("chi", self.constraints), ("c", self.ghosts), ("b", self.antighosts)):
            if name in seq:
                return kind, seq.index(name) + 1
        if name == self.chi0:
            return "chi", 0
        raise KeyError(name)

    def alphabet(self) -> Alphabet:
        gens = []
        if self.chi0:
            gens.append(constraint(self.chi0))
        gens += [constraint(x) for x in self.constraints]
        gens += [ghost(x) for x in reversed(self.ghosts)]
        gens += [antighost(x) for x in self.antighosts]
        return Alphabet.ordered(gens)

    def kinds(self, alphabet: Alphabet):
        """Per-letter kind tag: 'chi', 'c' or 'b'."""
        return tuple(self.index_of(n)[0] for n in alphabet.names)

    def to_json(self):
        return {
            "constraints": list(self.constraints),
            "ghosts": list(self.ghosts),
            "antighosts": list(self.antighosts),
            "chi0": self.chi0,
        }


@dataclass
class GhostSystem:
    """Names, pairing D^i_j = delta and the ghost commutation mode."""

    names: GhostNames
    mode: str = "canonical"  # or "sigma-twisted"
    sigma: Optional[TensorSquareOp] = None
    phi: Optional[TensorSquareOp] = None

    def pairing(self, i, j) -> int:
        return 1 if i == j else 0


def _mono(alphabet, params, coeff, *names):
    return Poly(alphabet, {tuple(alphabet.letter(n) for n in names): coeff}, params)


def _value_or_generator(alphabet, params, names: GhostNames, chi0):
    """chi0 either as a central generator or as a scalar value."""
    if names.chi0 is not None:
        return Poly.gen(alphabet, names.chi0, params)
    return Poly.constant(alphabet, chi0 if chi0 is not None else 1, params)


def ghost_relation_polys(
    alphabet: Alphabet,
    params: ParameterSet,
    names: GhostNames,
    sigma_t: TensorSquareOp,
    phi: TensorSquareOp,
    f_c: Dict[Tuple[int, int, int], Scalar] = None,
    chi0=None,
) -> List[Poly]:
    """Ghost-ghost, anti-ghost relations and the constraint cross relations.

    ``sigma_t`` is the twisted braid matrix, ``phi`` the N-dim block of F and
    ``f_c[(l, i, j)] = F^{0l}_{ij}`` its optional C block.  Terms with c^0 or
    b_0 are dropped.
    """
    n = names.n
    I = range(1, n + 1)
    st_inv = sigma_t.inverse()
    zero = Poly.zero(alphabet, params)
    x0 = _value_or_generator(alphabet, params, names, chi0)
    f_c = f_c or {}
    c, b, x = names.ghost, names.antighost, names.constraint
    out = []

    def m(coeff, *ns):
        return _mono(alphabet, params, coeff, *ns)

    for i in I:
        for j in I:
            # c^j c^i + sigma~^{ij}_{kl} c^l c^k = 0
            p = m(1, c(j), c(i))
            for k in I:
                for l in I:
                    v = sigma_t[(i, j, k, l)]
                    if not v.is_zero():
                        p = p + m(v, c(l), c(k))
            out.append(p)
            # b_i b_j + sigma~^{kl}_{ij} b_k b_l = 0
            p = m(1, b(i), b(j))
            for k in I:
                for l in I:
                    v = sigma_t[(k, l, i, j)]
                    if not v.is_zero():
                        p = p + m(v, b(k), b(l))
            out.append(p)
            # b_i c^j + (sigma~^{-1})^{lj}_{ki} c^k b_l - delta = 0
            p = m(1, b(i), c(j))
            for k in I:
                for l in I:
                    v = st_inv[(l, j, k, i)]
                    if not v.is_zero():
                        p = p + m(v, c(k), b(l))
            if i == j:
                p = p - 1
            out.append(p)
            # chi_i c^j - phi^{lj}_{ki} c^k chi_l - F^{0j}_{ki} c^k chi0 = 0
            p = m(1, x(i), c(j))
            for k in I:
                for l in I:
                    v = phi[(l, j, k, i)]
                    if not v.is_zero():
                        p = p - m(v, c(k), x(l))
                v = f_c.get((j, k, i))
                if v is not None:
                    p = p - m(v, c(k)) * x0
            out.append(p)
            # b_i chi_j - phi^{kl}_{ij} chi_k b_l - F^{0l}_{ij} chi0 b_l = 0
            p = m(1, b(i), x(j))
            for k in I:
                for l in I:
                    v = phi[(k, l, i, j)]
                    if not v.is_zero():
                        p = p - m(v, x(k), b(l))
            for l in I:
                v = f_c.get((l, i, j))
                if v is not None:
                    p = p - x0 * m(v, b(l))
            out.append(p)
    if names.chi0 is not None:
        for g in names.ghosts + names.antighosts:
            out.append(m(1, names.chi0, g) - m(1, g, names.chi0))
    return [p for p in out if p != zero]


def constraint_relation_polys(alphabet, params, names: GhostNames, s: StructureData, chi0=None) -> List[Poly]:
    """chi_i chi_j - sigma^{kl}_{ij} chi_k chi_l - chi0 C^l_{ij} chi_l = 0 (plus chi0 central)."""
    I = s.indices
    x = names.constraint
    x0 = _value_or_generator(alphabet, params, names, chi0)
    out = []
    for i in I:
        for j in I:
            p = _mono(alphabet, params, 1, x(i), x(j))
            for k in I:
                for l in I:
                    v = s.s(k, l, i, j)
                    if not v.is_zero():
                        p = p - _mono(alphabet, params, v, x(k), x(l))
            for l in I:
                v = s.C(l, i, j)
                if not v.is_zero():
                    p = p - x0 * _mono(alphabet, params, v, x(l))
            if p:
                out.append(p)
    if names.chi0 is not None:
        for i in I:
            out.append(
                _mono(alphabet, params, 1, names.chi0, x(i)) - _mono(alphabet, params, 1, x(i), names.chi0)
            )
    return out


def _params_for(s_params, chi0):
    ps = s_params
    if isinstance(chi0, Scalar):
        ps = ps.union(chi0.params)
    elif isinstance(chi0, str):
        ps = ps.extend([chi0])
    return ps


def _chi0_value(ps, chi0):
    if chi0 is None:
        return None
    if isinstance(chi0, str):
        return ps.symbol(chi0)
    return as_scalar(chi0, ps)


def build_ghost_presentation(
    s: StructureData,
    phi: TensorSquareOp = None,
    mode: str = "sigma-twisted",
    names: GhostNames = None,
    chi0=None,
    constraints: bool = False,
    label: str = "",
) -> Presentation:
    """Ghost algebra with sigma~ = phi sigma phi^{-1} and the cross relations.

    ``mode='canonical'`` uses sigma~ = phi = permutation.  With
    ``constraints=True`` the quadratic constraint relations are added, with
    chi0 replaced by ``chi0`` (a Scalar, a rational, or a parameter name) or
    kept as a central generator when ``names.chi0`` is set.
    """
    n = s.n
    names = names or GhostNames.indexed(n)
    ps = _params_for(s.params, chi0)
    value = _chi0_value(ps, chi0)
    perm = TensorSquareOp.permutation(n, ps, 1)
    if mode == "canonical":
        phi = perm
        sigma_t = perm
    elif mode == "sigma-twisted":
        if phi is None:
            raise GhostAlgebraError("sigma-twisted mode needs phi")
        report = twist_consistency(s, phi)
        if not report.passed:
            bad = ", ".join(f"{c.name} ({c.witness})" for c in report.failures())
            raise GhostAlgebraError(f"(sigma, phi) inconsistent: {bad}")
        sigma_t = phi @ s.sigma @ phi.inverse()
    else:
        raise GhostAlgebraError(f"unknown mode {mode!r}")
    alphabet = names.alphabet()
    polys = ghost_relation_polys(alphabet, ps, names, sigma_t, phi, None, value)
    if constraints:
        polys += constraint_relation_polys(alphabet, ps, names, s, value)
    meta = {"names": names, "mode": mode}
    return Presentation.from_polys(alphabet, ps, polys, label or f"ghost algebra ({mode})", meta)


def build_omega(s: StructureData, phi: TensorSquareOp = None, chi0=None, names: GhostNames = None, mode=None, label="") -> Presentation:
    mode = mode or ("sigma-twisted" if phi is not None else "canonical")
    return build_ghost_presentation(s, phi, mode, names, chi0, True, label)


def omega_from_tensors(R: TensorSquareOp, F: TensorSquareOp, chi0=1, names: GhostNames = None):
    """Cross-product algebra straight from (R, F), including any C block of F."""
    s = split_special_form(R)
    n = s.n
    names = names or GhostNames.indexed(n)
    ps = _params_for(s.params.union(F.params), chi0)
    value = _chi0_value(ps, chi0)
    rt = twisted(F, R)
    sigma_t = rt.block()
    phi = F.block()
    f_c = {(l, i, j): v for (a, l, i, j), v in F.entries.items() if a == 0 and 0 not in (l, i, j)}
    alphabet = names.alphabet()
    polys = ghost_relation_polys(alphabet, ps, names, sigma_t, phi, f_c, value)
    polys += constraint_relation_polys(alphabet, ps, names, s, value)
    pres = Presentation.from_polys(alphabet, ps, polys, "omega(R, F)", {"names": names})
    return pres, names


def canonical_omega(constraints: Presentation, names: GhostNames, label: str = "") -> Presentation:
    """Constraint presentation extended by canonical ghosts commuting with it."""
    alphabet = names.alphabet()
    for g in constraints.alphabet.names:
        if g not in alphabet:
            raise GhostAlgebraError(f"constraint generator {g} missing from the ghost names")
    ps = constraints.params
    I = range(1, names.n + 1)
    c, b, x = names.ghost, names.antighost, names.constraint

    def m(coeff, *ns):
        return _mono(alphabet, ps, coeff, *ns)

    polys = [p.transfer(alphabet) for p in constraints.relation_polys()]
    for i in I:
        for j in I:
            polys.append(m(1, c(i), c(j)) + m(1, c(j), c(i)))
            polys.append(m(1, b(i), b(j)) + m(1, b(j), b(i)))
            polys.append(m(1, b(i), c(j)) + m(1, c(j), b(i)) - (1 if i == j else 0))
            polys.append(m(1, x(i), c(j)) - m(1, c(j), x(i)))
            polys.append(m(1, x(i), b(j)) - m(1, b(j), x(i)))
    return Presentation.from_polys(alphabet, ps, polys, label or f"{constraints.label} + canonical ghosts", {"names": names})
