"""Independent matrix realizations used to cross-check the rewriting engine.

Nothing here calls the reducer: generators become explicit exact matrices and
polynomials are evaluated by matrix products.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from ..coeff import Scalar
from ..ncpoly import Poly


def _iszero(v) -> bool:
    z = getattr(v, "is_zero", None)
    if callable(z):
        return z()
    if isinstance(z, bool):
        return z
    return v == 0


class SparseMatrix:
    """Square matrix as {row: {col: value}} over any exact ring."""

    __slots__ = ("dim", "rows")

    def __init__(self, dim: int, rows: Mapping[int, Mapping[int, object]] = None):
        self.dim = dim
        self.rows: Dict[int, Dict[int, object]] = {}
        for i, row in (rows or {}).items():
            r = {j: v for j, v in row.items() if not _iszero(v)}
            if r:
                self.rows[i] = r

    @classmethod
    def identity(cls, dim, one=1):
        return cls(dim, {i: {i: one} for i in range(dim)})

    @classmethod
    def zero(cls, dim):
        return cls(dim)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows.get(i, {}).get(j, 0)

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        out: Dict[int, Dict[int, object]] = {}
        for i, row in self.rows.items():
            acc: Dict[int, object] = {}
            for k, v in row.items():
                for j, w in other.rows.get(k, {}).items():
                    acc[j] = acc[j] + v * w if j in acc else v * w
            out[i] = acc
        return SparseMatrix(self.dim, out)

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            tgt = out.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt[j] + v if j in tgt else v
        return SparseMatrix(self.dim, out)

    def scale(self, c) -> "SparseMatrix":
        return SparseMatrix(self.dim, {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        n = other.dim
        out = {}
        for i, r in self.rows.items():
            for k, s in other.rows.items():
                out[i * n + k] = {j * n + l: v * w for j, v in r.items() for l, w in s.items()}
        return SparseMatrix(self.dim * n, out)

    def is_zero(self) -> bool:
        return not self.rows

    def zero_on(self, columns: Iterable[int]) -> bool:
        cols = set(columns)
        return all(not (set(r) & cols) for r in self.rows.values())

    def __eq__(self, other):
        return isinstance(other, SparseMatrix) and self.dim == other.dim and (self - other).is_zero()

    def to_dense(self) -> List[List[object]]:
        return [[self[i, j] for j in range(self.dim)] for i in range(self.dim)]

    def column(self, j) -> Dict[int, object]:
        return {i: r[j] for i, r in self.rows.items() if j in r}

    def __repr__(self):
        return f"SparseMatrix({self.dim}, nnz={sum(len(r) for r in self.rows.values())})"


def anticommutator(x: SparseMatrix, y: SparseMatrix) -> SparseMatrix:
    return x @ y + y @ x


def commutator(x: SparseMatrix, y: SparseMatrix) -> SparseMatrix:
    return x @ y - y @ x


# -- fermionic modes -----------------------------------------------------------


def canonical_ghosts(n: int) -> Tuple[List[SparseMatrix], List[SparseMatrix]]:
    """Creation and annihilation matrices of n fermionic modes (Jordan-Wigner).

    Basis state s encodes occupation of mode k in bit k; the sign is the parity
    of the occupied modes before k.
    """
    dim = 2 ** n
    cs, bs = [], []
    for k in range(n):
        c, b = {}, {}
        for s in range(dim):
            sign = -1 if bin(s & ((1 << k) - 1)).count("1") % 2 else 1
            if not s >> k & 1:
                c.setdefault(s | 1 << k, {})[s] = sign
            else:
                b.setdefault(s & ~(1 << k), {})[s] = sign
        cs.append(SparseMatrix(dim, c))
        bs.append(SparseMatrix(dim, b))
    return cs, bs


def qla_ghost_matrices(alpha) -> Dict[str, SparseMatrix]:
    """The deformed ghosts c1..c3, b1..b3 built from three canonical modes.

    c1 = C1 + alpha C3 C1 B1, c2 = C2 - alpha C2 C3 B1, c3 = C3,
    b1 = B1, b2 = B2 + alpha C3 B1 B2, b3 = B3.
    """
    (C1, C2, C3), (B1, B2, B3) = canonical_ghosts(3)
    return {
        "c1": C1 + (C3 @ C1 @ B1).scale(alpha),
        "c2": C2 - (C2 @ C3 @ B1).scale(alpha),
        "c3": C3,
        "b1": B1,
        "b2": B2 + (C3 @ B1 @ B2).scale(alpha),
        "b3": B3,
    }


# -- evaluating polynomials -----------------------------------------------------


class Representation:
    """Generator name -> matrix, plus numeric values for the parameters."""

    def __init__(self, generators: Mapping[str, SparseMatrix], values: Mapping[str, object] = None, dim: int = None):
        self.generators = dict(generators)
        self.values = dict(values or {})
        self.dim = dim or next(iter(self.generators.values())).dim

    def coefficient(self, c: Scalar):
        if not self.values and c.is_constant():
            return c.to_fraction()
        v = c.substitute({k: str(x) if isinstance(x, Fraction) else x for k, x in self.values.items()})
        if not v.is_constant():
            raise ValueError(f"coefficient {c} is not fixed by {sorted(self.values)}")
        return v.to_fraction()

    def word(self, names: Sequence[str]) -> SparseMatrix:
        m = SparseMatrix.identity(self.dim)
        for n in names:
            m = m @ self.generators[n]
        return m

    def evaluate(self, p: Poly) -> SparseMatrix:
        total = SparseMatrix.zero(self.dim)
        for w, c in p.terms.items():
            names = [p.alphabet.names[x] for x in w]
            total = total + self.word(names).scale(self.coefficient(c))
        return total


class PolynomialRepresentation(Representation):
    """The family [J,W] = a1 T + a2 J^2, [J,T] = 0, [T,W] = a3 J T on polynomials.

    J and T multiply by x and y; W = -(a1 y + a2 x^2) d/dx - a3 x y d/dy.
    Polynomials are truncated at total degree ``degree`` and tensored with the
    eight-dimensional canonical ghost space of cJ, cT, cW, bJ, bT, bW.
    """

    def __init__(self, a1, a2, a3, degree: int):
        if degree < 3:
            raise ValueError("truncation degree must be at least 3")
        self.degree = degree
        self.monomials = [(i, k - i) for k in range(degree + 1) for i in range(k, -1, -1)]
        self.index = {m: n for n, m in enumerate(self.monomials)}
        a1, a2, a3 = (Fraction(v) for v in (a1, a2, a3))
        P = len(self.monomials)

        def op(fn):
            rows: Dict[int, Dict[int, Fraction]] = {}
            for col, (i, j) in enumerate(self.monomials):
                for (p, q), v in fn(i, j):
                    if p + q <= degree and v:
                        r = rows.setdefault(self.index[(p, q)], {})
                        r[col] = r.get(col, 0) + v
            return SparseMatrix(P, rows)

        J = op(lambda i, j: [((i + 1, j), 1)])
        T = op(lambda i, j: [((i, j + 1), 1)])
        W = op(lambda i, j: [
            ((i - 1, j + 1), -a1 * i),
            ((i + 1, j), -a2 * i),
            ((i + 1, j), -a3 * j),
        ] if i or j else [])
        self.constraint_ops = {"J": J, "T": T, "W": W}
        cs, bs = canonical_ghosts(3)
        ghost_id = SparseMatrix.identity(8)
        poly_id = SparseMatrix.identity(P)
        gens = {x: ghost_id.kron(m) for x, m in self.constraint_ops.items()}
        for x, c, b in zip("JTW", cs, bs):
            gens["c" + x] = c.kron(poly_id)
            gens["b" + x] = b.kron(poly_id)
        super().__init__(gens, {"a1": a1, "a2": a2, "a3": a3}, 8 * P)
        self.poly_dim = P

    def interior(self, margin: int) -> List[int]:
        """Basis indices whose polynomial degree is at most degree - margin."""
        keep = [n for n, (i, j) in enumerate(self.monomials) if i + j <= self.degree - margin]
        return [g * self.poly_dim + n for g in range(8) for n in keep]

    @staticmethod
    def margin(p: Poly) -> int:
        cons = {p.alphabet.letter(x) for x in ("J", "T", "W") if x in p.alphabet}
        return max((sum(1 for x in w if x in cons) for w in p.terms), default=0)

    def vanishes(self, p: Poly) -> bool:
        """True when p acts as zero on every vector it maps without truncation."""
        return self.evaluate(p).zero_on(self.interior(self.margin(p)))


def oracle_representation(a1, a2, a3, degree: int = 5) -> PolynomialRepresentation:
    return PolynomialRepresentation(a1, a2, a3, degree)


def su2_representation() -> Representation:
    """chi_k = -(i/2) sigma_k on C^2 tensored with three canonical ghost modes."""
    from sympy import I, Rational

    half = -I * Rational(1, 2)
    sigma = [
        {0: {1: 1}, 1: {0: 1}},
        {0: {1: -I}, 1: {0: I}},
        {0: {0: 1}, 1: {1: -1}},
    ]
    chis = [SparseMatrix(2, s).scale(half) for s in sigma]
    cs, bs = canonical_ghosts(3)
    id2, id8 = SparseMatrix.identity(2), SparseMatrix.identity(8)
    gens = {}
    for k in range(3):
        gens[f"chi{k + 1}"] = id8.kron(chis[k])
        gens[f"c{k + 1}"] = cs[k].kron(id2)
        gens[f"b{k + 1}"] = bs[k].kron(id2)
    return Representation(gens, {}, 16)


# -- Fock-space oracle ----------------------------------------------------------


def fock_oracle(q: Poly, ghosts: Mapping[str, SparseMatrix], ghost_names: Sequence[str], constraint_names: Iterable[str], values: Mapping[str, object] = None):
    """Coefficients of Q on the basis c^K|0> (K increasing), computed by matrices.

    Each term of q must be (constraints)(ghosts and anti-ghosts); the constraint
    part is kept as a formal polynomial.  Returns {(row subset, column subset):
    Poly} with subsets as tuples of 1-based ghost indices.
    """
    import itertools

    from ..linalg import dense_inverse

    cons = set(constraint_names)
    n = len(ghost_names)
    subsets = [s for k in range(n + 1) for s in itertools.combinations(range(1, n + 1), k)]
    dim = 2 ** n
    vac = 0
    cols = []
    for s in subsets:
        m = SparseMatrix.identity(dim)
        for i in s:
            m = m @ ghosts[ghost_names[i - 1]]
        cols.append(m.column(vac))
    zero = q.params.zero
    V = [[zero + cols[k].get(r, 0) for k in range(len(subsets))] for r in range(dim)]
    Vinv = dense_inverse(V)
    out: Dict[Tuple[tuple, tuple], Poly] = {}
    a = q.alphabet
    for w, c in q.terms.items():
        names = [a.names[x] for x in w]
        split = next((i for i, x in enumerate(names) if x not in cons), len(names))
        if any(x in cons for x in names[split:]):
            raise ValueError("constraints must stand to the left of ghosts in every term")
        chi_word = w[:split]
        m = SparseMatrix.identity(dim)
        for x in names[split:]:
            m = m @ ghosts[x]
        # (V^-1 M V)[L][K]
        for K in range(len(subsets)):
            image = {}
            for k, v in cols[K].items():
                for r, row in m.rows.items():
                    if k in row:
                        image[r] = image.get(r, 0) + row[k] * v
            for L in range(len(subsets)):
                val = zero
                for r, v in image.items():
                    val = val + Vinv[L][r] * v
                if not val.is_zero():
                    key = (subsets[L], subsets[K])
                    term = Poly.monomial(a, chi_word, c * val, q.params)
                    out[key] = out[key] + term if key in out else term
    return {k: v for k, v in out.items() if v}
