"""Hypothesis strategies shared by the property suites."""
from fractions import Fraction

from hypothesis import strategies as st

from brstkit.coeff import ParameterSet, Scalar
from brstkit.ncpoly import Poly

PS = ParameterSet(["a1", "a2", "a3"])

small_fractions = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polynomials(draw, params=PS, max_terms=3, max_deg=2):
    """A small polynomial Scalar, with the matching sympy expression."""
    syms = params.symbols()
    total = params.zero
    for _ in range(draw(st.integers(0, max_terms))):
        c = draw(small_fractions)
        term = Scalar(c, params)
        for s in syms:
            term = term * s ** draw(st.integers(0, max_deg))
        total = total + term
    return total


@st.composite
def scalars(draw, params=PS):
    num = draw(polynomials(params))
    den = draw(polynomials(params))
    if den.is_zero():
        den = params.one
    return num / den


nonzero_scalars = scalars().filter(lambda s: not s.is_zero())


@st.composite
def polys(draw, presentation, letters=None, max_terms=4, max_len=3):
    """A random Poly over a presentation's alphabet with constant or parameter coefficients."""
    a = presentation.alphabet
    letters = letters if letters is not None else list(range(len(a)))
    ps = presentation.params
    coeffs = [ps.one] + list(ps.symbols())
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        n = draw(st.integers(0, max_len))
        w = tuple(draw(st.sampled_from(letters)) for _ in range(n))
        c = Scalar(draw(small_fractions), ps) * draw(st.sampled_from(coeffs))
        terms[w] = terms[w] + c if w in terms else c
    return Poly(a, terms, ps)


@st.composite
def homogeneous_polys(draw, presentation, ghost_number, max_terms=3, max_len=4):
    """Poly whose words all have the requested ghost number."""
    a = presentation.alphabet
    ps = presentation.params
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        n = draw(st.integers(0, max_len))
        w = tuple(draw(st.sampled_from(range(len(a)))) for _ in range(n))
        if a.ghost_number(w) != ghost_number:
            continue
        terms[w] = Scalar(draw(small_fractions), ps)
    return Poly(a, terms, ps)
