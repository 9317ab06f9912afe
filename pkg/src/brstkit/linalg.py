"""Exact sparse linear algebra over :class:`~brstkit.coeff.Scalar`.

Rows are ``dict[column -> Scalar]``.  Everything here is Gauss-Jordan with
exact zero tests; column priority is supplied by the caller so the same code
produces rewrite rules (pivot = largest word) and solves ansatz systems.
"""
from __future__ import annotations

from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .coeff import Scalar, ScalarDivisionError

Row = Dict[Hashable, Scalar]


class InconsistentSystem(ValueError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


def _axpy(target: Row, factor: Scalar, source: Row, skip=None):
    """target += factor * source, dropping exact zeros."""
    for col, v in source.items():
        if col == skip:
            continue
        t = target.get(col)
        nv = factor * v if t is None else t + factor * v
        if nv.is_zero():
            target.pop(col, None)
        else:
            target[col] = nv


class Echelon:
    """Incrementally maintained reduced row echelon form.

    ``key`` orders columns; the pivot of each row is its maximal column.
    Every stored row has pivot coefficient one and no other pivot columns.
    """

    def __init__(self, key: Callable = None):
        self.key = key or (lambda c: c)
        self.rows: Dict[Hashable, Row] = {}

    def reduce(self, row: Row) -> Row:
        row = {c: v for c, v in row.items() if not v.is_zero()}
        changed = True
        while changed:
            changed = False
            for col in [c for c in row if c in self.rows]:
                v = row.get(col)
                if v is None:
                    continue
                _axpy(row, -v, self.rows[col])
                changed = True
        return row

    def add(self, row: Row) -> Optional[Hashable]:
        """Insert a row; return its pivot column or None if it was dependent."""
        row = self.reduce(row)
        if not row:
            return None
        pivot = max(row, key=self.key)
        inv = row[pivot].inv()
        row = {c: v * inv for c, v in row.items()}
        for other in self.rows.values():
            v = other.get(pivot)
            if v is not None:
                _axpy(other, -v, row)
        self.rows[pivot] = row
        return pivot

    def __len__(self):
        return len(self.rows)


def solve_linear(
    equations: Iterable[Tuple[Row, Scalar]],
    unknowns: Sequence[Hashable],
    zero: Scalar,
):
    """Solve ``sum_u row[u] * x_u = rhs`` for every equation.

    Returns ``(particular, kernel)``: the particular solution sets all free
    unknowns to zero; ``kernel`` is a basis of the homogeneous solutions.
    Raises :class:`InconsistentSystem` carrying the offending reduced rhs.
    Unknowns earlier in ``unknowns`` are preferred as pivots.
    """
    rank = {u: i for i, u in enumerate(unknowns)}
    rhs_col = object()
    ech = Echelon(key=lambda c: -1 if c is rhs_col else len(rank) - rank[c])
    for row, rhs in equations:
        r = dict(row)
        if not rhs.is_zero():
            r[rhs_col] = -rhs
        r = ech.reduce(r)
        if not r:
            continue
        if all(c is rhs_col for c in r):
            raise InconsistentSystem("inconsistent linear system", residual=-r[rhs_col])
        ech.add(r)
    particular = {}
    pivots = set()
    for pivot, row in ech.rows.items():
        pivots.add(pivot)
        v = row.get(rhs_col)
        particular[pivot] = -v if v is not None else zero
    free = [u for u in unknowns if u not in pivots]
    kernel = []
    for f in free:
        vec = {f: zero + 1}
        for pivot, row in ech.rows.items():
            v = row.get(f)
            if v is not None:
                vec[pivot] = -v
        kernel.append(vec)
    for u in unknowns:
        particular.setdefault(u, zero)
    return particular, kernel


def dense_inverse(m: List[List[Scalar]]) -> List[List[Scalar]]:
    """Gauss-Jordan inverse with exact nonzero pivot selection.

    Among the nonzero candidates in a column the pivot with the fewest
    polynomial terms is used, which keeps symbolic fill-in small.
    """
    n = len(m)
    a = [list(row) + [None] * n for row in m]
    zero = None
    for row in m:
        for v in row:
            zero = v * 0
            break
        break
    for i in range(n):
        for j in range(n):
            a[i][n + j] = zero + (1 if i == j else 0)
    for col in range(n):
        cands = [r for r in range(col, n) if not a[r][col].is_zero()]
        if not cands:
            raise ScalarDivisionError("matrix is singular")
        piv = min(cands, key=lambda r: len(a[r][col].num) + len(a[r][col].den))
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inv()
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and not a[r][col].is_zero():
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]
