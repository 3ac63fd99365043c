"""Property tests for the algebraic cores."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from perdyn.errors import ParseError
from perdyn.ffield import extension_field, prime_field
from perdyn.heights import height_elem, product_formula_check, rationals
from perdyn.mapexpr import parse_map_expression

G9 = extension_field(3, 2)
G7 = prime_field(7)
Q = rationals()

elem9 = st.integers(min_value=0, max_value=8).map(G9.decode)
elem7 = st.integers(min_value=0, max_value=6).map(G7.decode)


@given(elem9, elem9, elem9)
def test_gf9_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    if b:
        assert (a * b) / b == a


@given(elem7, elem7)
def test_gf7_frobenius_additivity(a, b):
    assert (a + b) ** 7 == a**7 + b**7


@given(st.integers(min_value=-(10**6), max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_product_formula_property(num, den):
    x = Fraction(num, den)
    if x:
        assert product_formula_check(Q, x)
        assert height_elem(Q, x) == height_elem(Q, 1 / x)


@settings(max_examples=300)
@given(st.text(alphabet="Xs0123456789+-/^() ", max_size=30))
def test_parser_total(text):
    # the parser either produces a result or raises ParseError with a
    # position; nothing else may escape
    try:
        parse_map_expression(text)
    except ParseError as e:
        assert 0 <= e.position <= len(text)
