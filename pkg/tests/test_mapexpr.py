import pytest
from fractions import Fraction

from perdyn.errors import ParseError
from perdyn.ffield import extension_field, prime_field
from perdyn.heights import function_field
from perdyn.mapexpr import build_map, parse_element, parse_map_expression, parse_point
from perdyn.polys import QQ

G5 = prime_field(5)
DOM3 = function_field(prime_field(3)).domain


def test_parse_basic_polys():
    assert build_map("X^2+1", G5) == build_map("1 + X^2", G5)
    assert build_map("X^2 - 2X + 1", G5) == build_map("X^2+3X+1", G5)
    assert build_map("2X", G5).degree == 1
    assert build_map("7", G5).degenerate


def test_parse_quotients():
    phi = build_map("1/X", G5)
    assert phi.degree == 1
    assert phi.num.degree == 0 and phi.den.degree == 1
    # the denominator is a full poly: it extends to the end of the text
    grabby = build_map("1/X+1", G5)
    assert grabby.den == build_map("X+1", G5).num
    phi2 = build_map("X^2+1/X", G5)
    assert phi2.num.degree == 2 and phi2.den.degree == 1


def test_parse_s_coefficients():
    fam = build_map("X^2+(s)", DOM3)
    assert fam.num.coeff(0) == DOM3.gen()
    fam2 = build_map("(s^2+1)X^2 + (2s)X + 1", DOM3)
    assert fam2.degree == 2
    g9 = extension_field(3, 2)
    assert build_map("X^2+(s)", g9).num.coeff(0) == g9.gen()


def test_parse_over_q():
    phi = build_map("X^2-1", QQ)
    assert phi.num.coeff(0) == Fraction(-1)
    with pytest.raises(ParseError):
        build_map("X+(s)", QQ)


def test_repeated_terms_accumulate():
    assert build_map("X+X", G5) == build_map("2X", G5)
    assert build_map("X^2+X^2+X^2", G5) == build_map("3X^2", G5)


def test_whitespace_insignificant():
    assert build_map(" X ^ 2 + 1 ", G5) == build_map("X^2+1", G5)


def test_points_and_elements():
    assert parse_point("inf", G5).is_infinity
    assert parse_point("3", G5) == parse_point(" 3 ", G5)
    assert parse_element("(s+1)/s", DOM3).num.degree == 1
    assert parse_element("-5/9", QQ) == Fraction(-5, 9)
    assert parse_element("s^2+1", DOM3).num.degree == 2
    with pytest.raises(ParseError):
        parse_element("1/0", QQ)


def test_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_map_expression("X^^2")
    assert exc.value.position == 2
    with pytest.raises(ParseError) as exc:
        parse_map_expression("2+*3")
    assert exc.value.position == 2
    with pytest.raises(ParseError) as exc:
        parse_map_expression("X^2+")
    assert exc.value.position == 4
    for bad in ["", "(s", "y", "X^2+()", "1//X"]:
        with pytest.raises(ParseError):
            parse_map_expression(bad)
