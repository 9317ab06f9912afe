"""Exact coefficient field: rational functions over QQ in named parameters.

A :class:`Scalar` is a reduced fraction ``num/den`` of sympy sparse
polynomials.  Canonical form: ``gcd(num, den) = 1`` and the leading
coefficient of ``den`` under graded-lex order (over the parameter order of the
owning :class:`ParameterSet`) equals one.  Polynomial arithmetic and gcd come
from sympy; normalization and the fast paths for polynomial (den = 1) values
live here because the rewriting kernel spends most of its time adding them.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Union

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyRing

__all__ = [
    "ParameterSet",
    "Scalar",
    "ScalarDivisionError",
    "SubstitutionError",
    "as_scalar",
    "parameters",
]


class ScalarDivisionError(ZeroDivisionError):
    """Division by an exactly-zero Scalar."""


class SubstitutionError(ValueError):
    """A binding made some denominator vanish."""


class ParameterSet:
    """Ordered, immutable tuple of parameter names with its polynomial ring.

    Instances are interned: equal name tuples give the same object, so Scalars
    built from the same names share a ring and take the fast arithmetic path.
    """

    __slots__ = ("names", "ring", "_index")
    _interned: dict = {}

    def __new__(cls, names: Iterable[str] = ()):
        names = tuple(names)
        cached = cls._interned.get(names)
        if cached is not None:
            return cached
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter names in {names}")
        for n in names:
            if not isinstance(n, str) or not n.isidentifier():
                raise ValueError(f"invalid parameter name {n!r}")
        obj = super().__new__(cls)
        obj.names = names
        obj.ring = PolyRing(list(names), QQ, grlex)
        obj._index = {n: i for i, n in enumerate(names)}
        cls._interned[names] = obj
        return obj

    def __repr__(self):
        return f"ParameterSet({list(self.names)!r})"

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def union(self, other: "ParameterSet") -> "ParameterSet":
        if other is self or not other.names:
            return self
        extra = [n for n in other.names if n not in self._index]
        if not extra:
            return self
        return ParameterSet(self.names + tuple(extra))

    def extend(self, names: Iterable[str]) -> "ParameterSet":
        extra = [n for n in names if n not in self._index]
        return ParameterSet(self.names + tuple(extra)) if extra else self

    def symbol(self, name: str) -> "Scalar":
        i = self._index[name]
        return Scalar._raw(self.ring.gens[i], self.ring.one, self)

    def symbols(self):
        return tuple(self.symbol(n) for n in self.names)

    def scalar(self, value) -> "Scalar":
        return as_scalar(value, self)

    @property
    def zero(self) -> "Scalar":
        return Scalar._raw(self.ring.zero, self.ring.one, self)

    @property
    def one(self) -> "Scalar":
        return Scalar._raw(self.ring.one, self.ring.one, self)


_EMPTY = ParameterSet(())


def parameters(names: Union[str, Iterable[str]]):
    """``parameters("a1 a2 a3") -> (ParameterSet, a1, a2, a3)``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    ps = ParameterSet(names)
    return (ps,) + ps.symbols()


def _to_qq(value):
    if isinstance(value, bool):
        raise TypeError("bool is not a coefficient")
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, Rational):
        return QQ(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def as_scalar(value, params: ParameterSet = _EMPTY) -> "Scalar":
    if isinstance(value, Scalar):
        return value
    if isinstance(value, str):
        from .parsing import parse_scalar

        return parse_scalar(value, params)
    ring = params.ring
    return Scalar._raw(ring.ground_new(_to_qq(value)), ring.one, params)


class Scalar:
    """Immutable element of QQ(params), always stored in canonical form."""

    __slots__ = ("num", "den", "params", "_hash")

    def __init__(self, value=0, params: ParameterSet = _EMPTY):
        s = as_scalar(value, params)
        self.num, self.den, self.params = s.num, s.den, s.params
        self._hash = None

    @classmethod
    def _raw(cls, num, den, params):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.params = params
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num, den, params):
        """Normalize an arbitrary fraction into canonical form."""
        if not den:
            raise ScalarDivisionError("zero denominator")
        if not num:
            return cls._raw(params.ring.zero, params.ring.one, params)
        if den.is_ground:
            c = den.LC
            if c != 1:
                num = num.quo_ground(c)
            return cls._raw(num, params.ring.one, params)
        g = num.gcd(den)
        if not g.is_ground:
            num = num.exquo(g)
            den = den.exquo(g)
        c = den.LC
        if c != 1:
            num = num.quo_ground(c)
            den = den.quo_ground(c)
        return cls._raw(num, den, params)

    # -- coercion -----------------------------------------------------------
    def _coerce(self, other):
        """Return (a_num, a_den, b_num, b_den, params) over a common ring."""
        if isinstance(other, Scalar):
            if other.params is self.params:
                return self.num, self.den, other.num, other.den, self.params
            ps = self.params.union(other.params)
            a, b = self.to_params(ps), other.to_params(ps)
            return a.num, a.den, b.num, b.den, ps
        ring = self.params.ring
        return self.num, self.den, ring.ground_new(_to_qq(other)), ring.one, self.params

    def to_params(self, params: ParameterSet) -> "Scalar":
        if params is self.params:
            return self
        missing = set(self.variables()) - set(params.names)
        if missing:
            raise ValueError(f"parameters {sorted(missing)} not in {params}")
        return Scalar._make(self.num.set_ring(params.ring), self.den.set_ring(params.ring), params)

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            an, ad, bn, bd, ps = self._coerce(other)
        except TypeError:
            return NotImplemented
        if ad == bd:
            if ad.is_one:
                return Scalar._raw(an + bn, ad, ps)
            return Scalar._make(an + bn, ad, ps)
        return Scalar._make(an * bd + bn * ad, ad * bd, ps)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den, self.params)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            an, ad, bn, bd, ps = self._coerce(other)
        except TypeError:
            return NotImplemented
        if ad == bd:
            if ad.is_one:
                return Scalar._raw(an - bn, ad, ps)
            return Scalar._make(an - bn, ad, ps)
        return Scalar._make(an * bd - bn * ad, ad * bd, ps)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            an, ad, bn, bd, ps = self._coerce(other)
        except TypeError:
            return NotImplemented
        if ad.is_one and bd.is_one:
            return Scalar._raw(an * bn, ad, ps)
        if not an or not bn:
            return ps.zero
        return Scalar._make(an * bn, ad * bd, ps)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            an, ad, bn, bd, ps = self._coerce(other)
        except TypeError:
            return NotImplemented
        if not bn:
            raise ScalarDivisionError(f"division of {self} by zero")
        return Scalar._make(an * bd, ad * bn, ps)

    def __rtruediv__(self, other):
        return as_scalar(other, self.params) / self

    def inv(self) -> "Scalar":
        if not self.num:
            raise ScalarDivisionError("inverse of zero")
        return Scalar._make(self.den, self.num, self.params)

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        return Scalar._raw(self.num**k, self.den**k, self.params)

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num.is_one and self.den.is_one

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def is_polynomial(self) -> bool:
        return self.den.is_one

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if other.params is self.params:
                return self.num == other.num and self.den == other.den
        try:
            an, ad, bn, bd, _ = self._coerce(other)
        except TypeError:
            return NotImplemented
        return an * bd == bn * ad

    def __hash__(self):
        if self._hash is None:
            # hash in a name-sorted ring so equal values in different
            # parameter orders hash alike
            ps = ParameterSet(sorted(self.variables()))
            s = self.to_params(ps)
            self._hash = hash((ps.names, tuple(s.num.terms()), tuple(s.den.terms())))
        return self._hash

    def variables(self) -> tuple:
        used = set()
        for poly in (self.num, self.den):
            for monom in poly.itermonoms():
                used.update(i for i, e in enumerate(monom) if e)
        return tuple(self.params.names[i] for i in sorted(used))

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        c = self.num.LC if self.num else QQ(0)
        return Fraction(int(c.numerator), int(c.denominator)) / Fraction(int(self.den.LC))

    def as_expr(self):
        """sympy expression (for oracles and display)."""
        return self.num.as_expr() / self.den.as_expr()

    # -- substitution -------------------------------------------------------
    def substitute(self, bindings: Mapping[str, object]) -> "Scalar":
        bindings = {k: v for k, v in bindings.items() if k in self.params}
        if not bindings:
            return self
        keep = [n for n in self.params.names if n not in bindings]
        out = ParameterSet(keep)
        values = {}
        for name, v in bindings.items():
            if isinstance(v, str):
                from .parsing import parse_scalar

                values[name] = parse_scalar(v, out, extend=True)
            else:
                values[name] = as_scalar(v, out)
            out = out.union(values[name].params)
        gens = [values[n] if n in values else out.symbol(n) for n in self.params.names]

        def evaluate(poly):
            total = out.zero
            for monom, coeff in poly.iterterms():
                term = Scalar._raw(out.ring.ground_new(coeff), out.ring.one, out)
                for g, e in zip(gens, monom):
                    if e:
                        term = term * g**e
                total = total + term
            return total

        den = evaluate(self.den)
        if den.is_zero():
            culprits = [n for n in self.variables() if n in bindings]
            raise SubstitutionError(
                f"denominator {Scalar._raw(self.den, self.params.ring.one, self.params)} "
                f"vanishes under " + ", ".join(f"{n}={bindings[n]}" for n in culprits)
            )
        return evaluate(self.num) / den

    # -- text ---------------------------------------------------------------
    def is_monomial_like(self) -> bool:
        """Single-term numerator over a unit denominator."""
        return self.den.is_one and len(self.num) <= 1

    def __str__(self):
        return render_scalar(self)

    def __repr__(self):
        return f"Scalar({render_scalar(self)!r})"


def _render_monomial(monom, names) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _render_term(coeff, monom, names):
    """Return (negative, text) for one polynomial term."""
    neg = coeff < 0
    c = -coeff if neg else coeff
    p, q = int(c.numerator), int(c.denominator)
    m = _render_monomial(monom, names)
    if not m:
        text = str(p) if q == 1 else f"{p}/{q}"
    else:
        text = m if p == 1 else f"{p}*{m}"
        if q != 1:
            text = f"{text}/{q}"
    return neg, text


def render_poly(poly, names) -> str:
    if not poly:
        return "0"
    out = []
    for i, (monom, coeff) in enumerate(poly.terms()):
        neg, text = _render_term(coeff, monom, names)
        if i == 0:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out)


def render_scalar(s: Scalar) -> str:
    names = s.params.names
    num = render_poly(s.num, names)
    if s.den.is_one:
        return num
    den = render_poly(s.den, names)
    # a/b*c would misparse, so only bare single-variable powers stay unwrapped
    simple_num = len(s.num) == 1
    if not simple_num:
        num = f"({num})"
    simple_den = len(s.den) == 1 and s.den.LC == 1 and sum(1 for e in s.den.LM if e) == 1
    if not simple_den:
        den = f"({den})"
    return f"{num}/{den}"
