"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

import hypothesis.strategies as st
import sympy

from locres.exactpoly import Monomial, MonIdeal, Poly, render

VARS = ("x", "y", "z", "u")


def rationals(max_den=7, max_num=9):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


@st.composite
def monomials(draw, names=VARS, max_exp=2):
    return Monomial({v: draw(st.integers(0, max_exp)) for v in names})


@st.composite
def polys(draw, names=VARS, max_terms=4, max_exp=2):
    terms = draw(st.lists(st.tuples(monomials(names, max_exp), rationals()), max_size=max_terms))
    p = Poly()
    for m, c in terms:
        p = p + Poly.monomial(m, c)
    return p


@st.composite
def units(draw, names=VARS):
    """Nonzero constant plus a few terms of positive degree."""
    c = draw(rationals().filter(lambda q: q != 0))
    tail = draw(polys(names, max_terms=2))
    return Poly.const(c) + tail - Poly.const(tail.constant_term)


@st.composite
def monideals(draw, names=VARS, max_exp=2, max_gens=5):
    gens = draw(st.lists(monomials(names, max_exp), min_size=1, max_size=max_gens))
    return MonIdeal(gens)


def to_sympy(p, names=VARS):
    syms = sympy.symbols(" ".join(names))
    expr = sympy.sympify(render(p).replace("^", "**")) if not p.is_zero() else sympy.Integer(0)
    return sympy.Poly(expr, *syms, domain="QQ")
