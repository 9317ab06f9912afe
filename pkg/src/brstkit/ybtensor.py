"""Exact operators on V (x) V: Yang-Baxter and twist checks, special-form
assembly, quantum Lie algebra axioms and the X tensors of the c0 series.

Index convention: ``op.entries[(A, B, C, D)]`` is R^{AB}_{CD} (upper A, B;
lower C, D).  As a matrix the *lower* pair labels the row,
``M[(C, D)][(A, B)] = R^{AB}_{CD}``, and with that choice the product written
``XY`` in index notation is the ordinary matrix product ``M_X @ M_Y``.
``X_12 = X (x) 1`` and ``X_23 = 1 (x) X`` on V (x) V (x) V.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .coeff import ParameterSet, Scalar, ScalarDivisionError, as_scalar
from .linalg import dense_inverse
from .parsing import parse_scalar

Index4 = Tuple[int, int, int, int]

CONVENTION = "entries[A,B,C,D] = R^{AB}_{CD}: A,B upper, C,D lower"


class TensorFormError(ValueError):
    pass


# -- sparse matrices over tuple indices --------------------------------------

Matrix = Dict[tuple, Dict[tuple, Scalar]]


def mat_mul(x: Matrix, y: Matrix) -> Matrix:
    out: Matrix = {}
    for r, row in x.items():
        acc: Dict[tuple, Scalar] = {}
        for k, v in row.items():
            yrow = y.get(k)
            if not yrow:
                continue
            for c, w in yrow.items():
                t = acc.get(c)
                acc[c] = v * w if t is None else t + v * w
        acc = {c: v for c, v in acc.items() if not v.is_zero()}
        if acc:
            out[r] = acc
    return out


def mat_add(x: Matrix, y: Matrix, sign: int = 1) -> Matrix:
    out = {r: dict(row) for r, row in x.items()}
    for r, row in y.items():
        tgt = out.setdefault(r, {})
        for c, v in row.items():
            t = tgt.get(c)
            nv = (v if sign > 0 else -v) if t is None else (t + v if sign > 0 else t - v)
            if nv.is_zero():
                tgt.pop(c, None)
            else:
                tgt[c] = nv
        if not tgt:
            del out[r]
    return out


def mat_identity(basis: Iterable[tuple], one: Scalar) -> Matrix:
    return {b: {b: one} for b in basis}


def mat_equal(x: Matrix, y: Matrix) -> bool:
    return mat_add(x, y, -1) == {}


def embed(m: Matrix, pos: int, nfactors: int, labels: Sequence[int]) -> Matrix:
    """Act with a two-site matrix on sites ``pos, pos+1`` of an n-fold product."""
    out: Matrix = {}
    others = nfactors - 2
    for rest in itertools.product(labels, repeat=others):
        left, right = rest[:pos], rest[pos:]
        for r, row in m.items():
            out[left + r + right] = {left + c + right: v for c, v in row.items()}
    return out


# -- operators on V (x) V ----------------------------------------------------


class TensorSquareOp:
    """Operator on V (x) V with exact entries; zero entries are not stored.

    ``offset`` is the first index label: 0 for V_{N+1} = span(e_0..e_N), 1 for
    the N-dimensional blocks (sigma, phi) indexed 1..N.
    """

    __slots__ = ("dim", "offset", "entries", "params")

    def __init__(self, dim: int, entries: Mapping[Index4, object] = None, params=None, offset: int = 0):
        if dim < 1:
            raise ValueError("dim must be positive")
        self.dim = dim
        self.offset = offset
        self.params = params if params is not None else ParameterSet(())
        clean = {}
        hi = offset + dim
        for idx, v in (entries or {}).items():
            idx = tuple(int(x) for x in idx)
            if len(idx) != 4 or not all(offset <= x < hi for x in idx):
                raise ValueError(f"index {idx} out of range {offset}..{hi - 1}")
            v = as_scalar(v, self.params)
            if not v.is_zero():
                clean[idx] = v
                self.params = self.params.union(v.params)
        self.entries: Dict[Index4, Scalar] = clean

    @property
    def labels(self) -> range:
        return range(self.offset, self.offset + self.dim)

    def __getitem__(self, idx) -> Scalar:
        v = self.entries.get(tuple(idx))
        return v if v is not None else self.params.zero

    def __eq__(self, other):
        if not isinstance(other, TensorSquareOp):
            return NotImplemented
        return (self.dim, self.offset, self.entries) == (other.dim, other.offset, other.entries)

    def __repr__(self):
        return f"TensorSquareOp(dim={self.dim}, offset={self.offset}, nonzero={len(self.entries)})"

    # -- constructors ---------------------------------------------------------
    @classmethod
    def identity(cls, dim, params=None, offset=0):
        ls = range(offset, offset + dim)
        return cls(dim, {(a, b, a, b): 1 for a in ls for b in ls}, params, offset)

    @classmethod
    def permutation(cls, dim, params=None, offset=0):
        ls = range(offset, offset + dim)
        return cls(dim, {(a, b, b, a): 1 for a in ls for b in ls}, params, offset)

    @classmethod
    def from_matrix(cls, m: Matrix, dim, params=None, offset=0):
        entries = {}
        for (c, d), row in m.items():
            for (a, b), v in row.items():
                entries[(a, b, c, d)] = v
        return cls(dim, entries, params, offset)

    # -- algebra ----------------------------------------------------------------
    def matrix(self) -> Matrix:
        m: Matrix = {}
        for (a, b, c, d), v in self.entries.items():
            m.setdefault((c, d), {})[(a, b)] = v
        return m

    def pairs(self):
        return [(a, b) for a in self.labels for b in self.labels]

    def __matmul__(self, other: "TensorSquareOp") -> "TensorSquareOp":
        self._same_space(other)
        return TensorSquareOp.from_matrix(
            mat_mul(self.matrix(), other.matrix()), self.dim, self.params.union(other.params), self.offset
        )

    def __add__(self, other):
        self._same_space(other)
        return TensorSquareOp.from_matrix(
            mat_add(self.matrix(), other.matrix()), self.dim, self.params.union(other.params), self.offset
        )

    def __sub__(self, other):
        self._same_space(other)
        return TensorSquareOp.from_matrix(
            mat_add(self.matrix(), other.matrix(), -1), self.dim, self.params.union(other.params), self.offset
        )

    def scale(self, s) -> "TensorSquareOp":
        s = as_scalar(s, self.params)
        return TensorSquareOp(self.dim, {k: v * s for k, v in self.entries.items()}, self.params, self.offset)

    def _same_space(self, other):
        if (self.dim, self.offset) != (other.dim, other.offset):
            raise ValueError("operators act on different spaces")

    def inverse(self) -> "TensorSquareOp":
        basis = self.pairs()
        m = self.matrix()
        zero = self.params.zero
        dense = [[m.get(r, {}).get(c, zero) for c in basis] for r in basis]
        try:
            inv = dense_inverse(dense)
        except ScalarDivisionError:
            raise ScalarDivisionError("operator is singular over the coefficient field") from None
        out: Matrix = {}
        for i, r in enumerate(basis):
            row = {c: inv[i][j] for j, c in enumerate(basis) if not inv[i][j].is_zero()}
            if row:
                out[r] = row
        return TensorSquareOp.from_matrix(out, self.dim, self.params, self.offset)

    def substitute(self, bindings) -> "TensorSquareOp":
        ents = {k: v.substitute(bindings) for k, v in self.entries.items()}
        keep = ParameterSet([n for n in self.params.names if n not in bindings])
        for v in ents.values():
            keep = keep.union(v.params)
        return TensorSquareOp(self.dim, ents, keep, self.offset)

    def with_entry(self, idx, value) -> "TensorSquareOp":
        ents = dict(self.entries)
        ents[tuple(idx)] = as_scalar(value, self.params)
        return TensorSquareOp(self.dim, ents, self.params, self.offset)

    def block(self) -> "TensorSquareOp":
        """Restriction to the indices 1..N of an operator on V_{N+1}."""
        if self.offset != 0:
            raise ValueError("block() expects an operator on V_{N+1}")
        ents = {k: v for k, v in self.entries.items() if 0 not in k}
        return TensorSquareOp(self.dim - 1, ents, self.params, 1)

    # -- serialization ------------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "offset": self.offset,
            "convention": CONVENTION,
            "parameters": list(self.params.names),
            "entries": [[*k, str(v)] for k, v in sorted(self.entries.items())],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "TensorSquareOp":
        params = ParameterSet(doc.get("parameters", []))
        entries = {}
        for row in doc["entries"]:
            if len(row) != 5:
                raise ValueError(f"tensor entry {row!r} must be [A, B, C, D, coefficient]")
            a, b, c, d, v = row
            entries[(a, b, c, d)] = parse_scalar(str(v), params)
        return cls(int(doc["dim"]), entries, params, int(doc.get("offset", 0)))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def loads(cls, text: str) -> "TensorSquareOp":
        return cls.from_json(json.loads(text))


def _triple(op: TensorSquareOp):
    m = op.matrix()
    ls = list(op.labels)
    return embed(m, 0, 3, ls), embed(m, 1, 3, ls)


def _first_difference(x: Matrix, y: Matrix):
    d = mat_add(x, y, -1)
    if not d:
        return None
    r = min(d)
    c = min(d[r])
    return r, c


@dataclass
class CheckResult:
    name: str
    passed: bool
    components: int = 0
    witness: Optional[str] = None

    def to_dict(self):
        return {"name": self.name, "passed": self.passed, "components": self.components, "witness": self.witness}


@dataclass
class CheckReport:
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def __getitem__(self, name) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def _compare(name, lhs: Matrix, rhs: Matrix, ncomp: int, fmt) -> CheckResult:
    diff = _first_difference(lhs, rhs)
    if diff is None:
        return CheckResult(name, True, ncomp)
    r, c = diff
    lv = lhs.get(r, {}).get(c)
    rv = rhs.get(r, {}).get(c)
    return CheckResult(name, False, ncomp, f"{fmt(r, c)}: lhs={lv or 0}, rhs={rv or 0}")


def _fmt3(r, c):
    return f"component lower {r} upper {c}"


def ybe_check(R: TensorSquareOp) -> CheckResult:
    """R23 R12 R23 == R12 R23 R12, all dim^6 components."""
    r12, r23 = _triple(R)
    lhs = mat_mul(mat_mul(r23, r12), r23)
    rhs = mat_mul(mat_mul(r12, r23), r12)
    return _compare("ybe", lhs, rhs, R.dim**6, _fmt3)


def twist_check(R: TensorSquareOp, F: TensorSquareOp) -> CheckReport:
    R._same_space(F)
    r12, r23 = _triple(R)
    f12, f23 = _triple(F)
    n = R.dim**6
    f = ybe_check(F)
    f.name = "F-ybe"
    return CheckReport(
        [
            f,
            _compare("R23F12F23=F12F23R12", mat_mul(mat_mul(r23, f12), f23), mat_mul(mat_mul(f12, f23), r12), n, _fmt3),
            _compare("F23F12R23=R12F23F12", mat_mul(mat_mul(f23, f12), r23), mat_mul(mat_mul(r12, f23), f12), n, _fmt3),
        ]
    )


def twisted(F: TensorSquareOp, R: TensorSquareOp) -> TensorSquareOp:
    """F R F^{-1}; raises ScalarDivisionError for singular F."""
    return F @ R @ F.inverse()


# -- special form -------------------------------------------------------------


@dataclass
class StructureData:
    """sigma^{ij}_{kl} (operator with offset 1) and C^k_{ij} keyed ``(k, i, j)``."""

    n: int
    sigma: TensorSquareOp
    c_const: Dict[Tuple[int, int, int], Scalar]
    params: ParameterSet = None

    def __post_init__(self):
        if self.sigma.dim != self.n or self.sigma.offset != 1:
            raise ValueError("sigma must act on V_N with indices 1..N")
        ps = self.params if self.params is not None else self.sigma.params
        clean = {}
        for (k, i, j), v in self.c_const.items():
            if not all(1 <= x <= self.n for x in (k, i, j)):
                raise ValueError(f"structure constant index {(k, i, j)} out of range")
            v = as_scalar(v, ps)
            ps = ps.union(v.params)
            if not v.is_zero():
                clean[(k, i, j)] = v
        self.c_const = clean
        self.params = ps.union(self.sigma.params)

    def C(self, k, i, j) -> Scalar:
        v = self.c_const.get((k, i, j))
        return v if v is not None else self.params.zero

    def s(self, i, j, k, l) -> Scalar:
        return self.sigma[(i, j, k, l)]

    @property
    def indices(self):
        return range(1, self.n + 1)

    def scaled(self, factor) -> "StructureData":
        """Same sigma, C multiplied by ``factor`` (e.g. the value of chi0)."""
        factor = as_scalar(factor, self.params)
        return StructureData(self.n, self.sigma, {k: v * factor for k, v in self.c_const.items()}, self.params.union(factor.params))

    def substitute(self, bindings) -> "StructureData":
        sig = self.sigma.substitute(bindings)
        cc = {k: v.substitute(bindings) for k, v in self.c_const.items()}
        return StructureData(self.n, sig, cc, sig.params)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "parameters": list(self.params.names),
            "sigma": [[*k, str(v)] for k, v in sorted(self.sigma.entries.items())],
            "C": [[*k, str(v)] for k, v in sorted(self.c_const.items())],
        }

    @classmethod
    def from_json(cls, doc: Mapping, params: ParameterSet = None) -> "StructureData":
        ps = params if params is not None else ParameterSet(doc.get("parameters", []))
        n = int(doc["n"])
        sig = {}
        for a, b, c, d, v in doc["sigma"]:
            sig[(a, b, c, d)] = parse_scalar(str(v), ps)
        cc = {}
        for k, i, j, v in doc.get("C", []):
            cc[(k, i, j)] = parse_scalar(str(v), ps)
        return cls(n, TensorSquareOp(n, sig, ps, 1), cc, ps)


def _special_form(block: TensorSquareOp, c_const=None, params=None) -> TensorSquareOp:
    n = block.dim
    ents: Dict[Index4, Scalar] = dict(block.entries)
    for (k, i, j), v in (c_const or {}).items():
        ents[(0, k, i, j)] = v
    for a in range(n + 1):
        ents[(0, a, a, 0)] = 1
        ents[(a, 0, 0, a)] = 1
    return TensorSquareOp(n + 1, ents, params or block.params, 0)


def assemble_R(s: StructureData) -> TensorSquareOp:
    """R^{ij}_{kl} = sigma, R^{0j}_{kl} = C^j_{kl}, R^{0A}_{B0} = R^{A0}_{0B} = delta."""
    return _special_form(s.sigma, s.c_const, s.params)


def assemble_F(phi: TensorSquareOp) -> TensorSquareOp:
    """F^{ij}_{kl} = phi, F^{0A}_{B0} = F^{A0}_{0B} = delta; no C block."""
    if phi.offset != 1:
        raise ValueError("phi must be indexed 1..N")
    return _special_form(phi, None, phi.params)


def split_special_form(R: TensorSquareOp) -> StructureData:
    """Inverse of :func:`assemble_R`; raises if R is not of the special form."""
    n = R.dim - 1
    for (a, b, c, d), v in R.entries.items():
        if 0 not in (a, b, c, d):
            continue
        if a == 0 and b != 0 and c != 0 and d != 0:
            continue
        if (a, d) == (0, 0) and b == c:
            if v.is_one():
                continue
        if (b, c) == (0, 0) and a == d:
            if v.is_one():
                continue
        raise TensorFormError(f"R^{{{a}{b}}}_{{{c}{d}}} = {v} is outside the special form")
    for a in range(n + 1):
        if not R[(0, a, a, 0)].is_one() or not R[(a, 0, 0, a)].is_one():
            raise TensorFormError(f"R^{{0{a}}}_{{{a}0}} and R^{{{a}0}}_{{0{a}}} must equal 1")
    sigma = R.block()
    cc = {(b, c, d): v for (a, b, c, d), v in R.entries.items() if a == 0 and 0 not in (b, c, d)}
    return StructureData(n, sigma, cc, R.params)


# -- axioms ---------------------------------------------------------------------


def _block_triple_check(name, x_ops: Sequence[Tuple[str, TensorSquareOp]], y_ops) -> CheckResult:
    """Compare two products of ``X_12``/``X_23`` factors on V_N^{(x)3}."""

    def product(ops):
        acc = None
        for site, op in ops:
            m = embed(op.matrix(), 0 if site == "12" else 1, 3, list(op.labels))
            acc = m if acc is None else mat_mul(acc, m)
        return acc

    n = x_ops[0][1].dim
    return _compare(name, product(x_ops), product(y_ops), n**6, _fmt3)


def _index_check(name, idx_ranges, lhs_fn, rhs_fn) -> CheckResult:
    count = 0
    for idx in itertools.product(*idx_ranges):
        count += 1
        lv, rv = lhs_fn(*idx), rhs_fn(*idx)
        if lv != rv:
            return CheckResult(name, False, count, f"indices {idx}: lhs={lv}, rhs={rv}")
    return CheckResult(name, True, count)


def qla_axioms(s: StructureData) -> CheckReport:
    """Braid relation, Jacobi-type identities, unitarity and (1+sigma)C = 0."""
    I = s.indices
    zero = s.params.zero
    S, C = s.s, s.C
    sig = s.sigma
    checks = [_block_triple_check("braid", [("12", sig), ("23", sig), ("12", sig)], [("23", sig), ("12", sig), ("23", sig)])]

    def jac_l(i1, i2, i3, m):
        return sum((C(k, i1, i2) * C(m, k, i3) for k in I), zero)

    def jac_r(i1, i2, i3, m):
        t = zero
        for p2 in I:
            for p3 in I:
                sv = S(p2, p3, i2, i3)
                if sv.is_zero():
                    continue
                for k in I:
                    t = t + sv * C(k, i1, p2) * C(m, k, p3)
        for j in I:
            t = t + C(j, i2, i3) * C(m, i1, j)
        return t

    checks.append(_index_check("jacobi", [I] * 4, jac_l, jac_r))

    def c_sigma_l(i1, i2, i3, m1, m3):
        return sum((C(k, i1, i2) * S(m1, m3, k, i3) for k in I), zero)

    def c_sigma_r(i1, i2, i3, m1, m3):
        t = zero
        for p2 in I:
            for p3 in I:
                a = S(p2, p3, i2, i3)
                if a.is_zero():
                    continue
                for q2 in I:
                    t = t + a * S(m1, q2, i1, p2) * C(m3, q2, p3)
        return t

    checks.append(_index_check("c-sigma", [I] * 5, c_sigma_l, c_sigma_r))

    def X(k, l, i1, i2, i3):
        t = zero
        for p2 in I:
            t = t + S(p2, l, i2, i3) * C(k, i1, p2)
        if k == i1:
            t = t + C(l, i2, i3)
        return t

    def x_l(i1, i2, i3, m1, m3):
        return sum((X(k, l, i1, i2, i3) * S(m1, m3, k, l) for k in I for l in I), zero)

    def x_r(i1, i2, i3, m1, m3):
        return sum((S(q1, q2, i1, i2) * X(m1, m3, q1, q2, i3) for q1 in I for q2 in I), zero)

    checks.append(_index_check("x-sigma", [I] * 5, x_l, x_r))
    sq = sig @ sig
    ident = TensorSquareOp.identity(s.n, s.params, 1)
    checks.append(_compare("unitarity", sq.matrix(), ident.matrix(), s.n**4, lambda r, c: f"lower {r} upper {c}"))

    def antisym(j, k, l):
        return C(j, k, l) + sum((S(m, n, k, l) * C(j, m, n) for m in I for n in I), zero)

    checks.append(_index_check("antisymmetry", [I] * 3, antisym, lambda *a: zero))
    return CheckReport(checks)


def twist_consistency(s: StructureData, phi: TensorSquareOp) -> CheckReport:
    """The three braid-compatibility relations between sigma and phi and the C-phi relation."""
    sig = s.sigma
    checks = [
        _block_triple_check("sigma-phi-phi", [("12", sig), ("23", phi), ("12", phi)], [("23", phi), ("12", phi), ("23", sig)]),
        _block_triple_check("phi-phi-sigma", [("12", phi), ("23", phi), ("12", sig)], [("23", sig), ("12", phi), ("23", phi)]),
        _block_triple_check("phi-braid", [("12", phi), ("23", phi), ("12", phi)], [("23", phi), ("12", phi), ("23", phi)]),
    ]
    I = s.indices
    zero = s.params.union(phi.params).zero
    C = s.C

    def lhs(i1, i2, i3, m1, m2):
        t = zero
        for p1 in I:
            for p2 in I:
                a = phi[(p1, p2, i1, i2)]
                if a.is_zero():
                    continue
                for q2 in I:
                    t = t + a * phi[(q2, m2, p2, i3)] * C(m1, p1, q2)
        return t

    def rhs(i1, i2, i3, m1, m2):
        return sum((C(j, i2, i3) * phi[(m1, m2, i1, j)] for j in I), zero)

    checks.append(_index_check("phi-C", [I] * 5, lhs, rhs))
    return CheckReport(checks)


# -- X tensors ------------------------------------------------------------------


@dataclass
class XTensors:
    """Components X^{j_1..j_k}_{i_1..i_{k+1}} for k = 1..rank.

    ``components[k]`` maps ``(js, is_)`` to a Scalar.
    """

    rank: int
    n: int
    components: Dict[int, Dict[Tuple[tuple, tuple], Scalar]]
    status: str = "ok"
    kernel_dimension: int = 0

    def level(self, k) -> Dict[Tuple[tuple, tuple], Scalar]:
        return self.components.get(k, {})

    def to_c0(self, presentation, ghost_names, antighost_names, levels=None):
        """sum 1/(k+1)! c^{i_{k+1}}...c^{i_1} X b_{j_1}...b_{j_k}, reduced.

        The factorial turns the tensor-product expansion of the series into
        the (antisymmetrizing) algebra product.
        """
        from .ncpoly import Poly

        alphabet = presentation.alphabet
        total = presentation.zero()
        for k in levels or range(1, self.rank + 1):
            terms = {}
            w = Scalar(1, presentation.params) / factorial(k + 1)
            for (js, is_), v in self.level(k).items():
                word = tuple(alphabet.letter(ghost_names[i - 1]) for i in reversed(is_)) + tuple(
                    alphabet.letter(antighost_names[j - 1]) for j in js
                )
                prev = terms.get(word)
                terms[word] = v * w if prev is None else prev + v * w
            total = total + Poly(alphabet, terms, presentation.params)
        return presentation.reduce(total)


def x_tensors_formula(R: TensorSquareOp, r: int) -> XTensors:
    """Alternating product formula for the F = R series, components (j..,0) / (i..)."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    split_special_form(R)  # validates the form
    ls = list(R.labels)
    n = R.dim - 1
    nf = r + 1
    m = R.matrix()
    ops = {k: embed(m, k - 1, nf, ls) for k in range(1, r + 1)}
    one = R.params.one
    ident = mat_identity(itertools.product(ls, repeat=nf), one)
    r_sq = mat_mul(ops[r], ops[r])
    total = None
    for mm in range(1, r + 1):
        chain = None
        for k in range(r - mm + 1, r):
            chain = ops[k] if chain is None else mat_mul(chain, ops[k])
        prod = r_sq if chain is None else mat_mul(chain, r_sq)
        factor = mat_add(ident, prod, 1 if mm % 2 == 0 else -1)
        total = factor if total is None else mat_mul(total, factor)
    sign = 1 if (r + 1) % 2 == 0 else -1
    comps = {}
    lower_idx = itertools.product(range(1, n + 1), repeat=nf)
    for is_ in lower_idx:
        row = total.get(is_, {})
        for js in itertools.product(range(1, n + 1), repeat=r):
            v = row.get(js + (0,))
            if v is not None and not v.is_zero():
                comps[(js, is_)] = v * sign
    return XTensors(r, n, {r: comps})


def x_tensors_solve(R: TensorSquareOp, F: TensorSquareOp, r: int = 1, chi0=1, max_rank: int = 3) -> XTensors:
    """Solve Q^2 = 0 for the c0 series level by level up to rank ``r``.

    The algebra is built from (R, F) with chi0 set to ``chi0``; unknowns are
    the coefficients of normal ghost words with k+1 ghosts and k anti-ghosts.
    ``status`` is ``ok`` (unique), ``non-unique`` or ``no-solution``.
    """
    from .brst import omega_from_tensors, solve_levels

    if r > max_rank:
        raise ValueError(f"rank {r} exceeds the bound {max_rank}")
    data = split_special_form(R)
    pres, names = omega_from_tensors(R, F, chi0)
    q0 = pres.zero()
    for i in data.indices:
        q0 = q0 + pres.gen(names.ghost(i)) * pres.gen(names.constraint(i))
    result = solve_levels(pres, q0, r, chi_degree=0, names=names)
    comps = {}
    for k, sol in result.levels.items():
        level = {}
        for word, v in sol.items():
            gh = [names.index_of(pres.alphabet.names[x]) for x in word]
            cs = [i for kind, i in gh if kind == "c"]
            bs = [j for kind, j in gh if kind == "b"]
            level[(tuple(bs), tuple(reversed(cs)))] = v * factorial(k + 1)
        comps[k] = level
    status = "no-solution" if result.obstruction is not None else ("non-unique" if result.kernel_dimension else "ok")
    return XTensors(r, data.n, comps, status, result.kernel_dimension)
