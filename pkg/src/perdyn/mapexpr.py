"""Recursive-descent parser for map expressions like "X^2+1", "1/X" or
"(s^2+1)X^2 + (2s)X + 1".

Grammar (whitespace insignificant)::

    expr  := poly ("/" poly)?
    poly  := ["+"|"-"] term (("+"|"-") term)*
    term  := coeff? ("X" ("^" int)?)?        -- at least one part present
    coeff := int | "(" spoly ")"
    spoly := ["+"|"-"] sterm (("+"|"-") sterm)*
    sterm := int? ("s" ("^" int)?)?          -- at least one part present

Coefficients are plain integers or polynomials in the family parameter s.
Over a finite field, s-coefficients evaluate at the field generator (the
class of s when the field was built from a place); over F_q(s) they stay
polynomials; over Q they are rejected.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .errors import ParseError
from .ffield import FieldCtx
from .padyn import P1Point, RationalMap
from .polys import Poly, QQ, RatFuncField, RationalDomain

SPoly = Dict[int, int]  # s-degree -> integer coefficient
Coeff = Union[int, SPoly]
ParsedPoly = Dict[int, Coeff]  # X-degree -> coefficient


class _Lexer:
    def __init__(self, text: str, var: str = "X", param: str = "s"):
        self.text = text
        self.pos = 0
        self.var = var
        self.param = param

    def peek(self) -> Tuple[str, Optional[int], int]:
        pos = self.pos
        text = self.text
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return ("end", None, pos)
        ch = text[pos]
        if ch.isdigit():
            end = pos
            while end < len(text) and text[end].isdigit():
                end += 1
            return ("int", int(text[pos:end]), pos)
        if ch == self.var:
            return ("X", None, pos)
        if ch == self.param:
            return ("s", None, pos)
        single = {"+": "plus", "-": "minus", "/": "slash", "^": "caret",
                  "(": "lparen", ")": "rparen"}
        if ch in single:
            return (single[ch], None, pos)
        raise ParseError(f"unexpected character {ch!r}", pos)

    def next(self):
        kind, value, pos = self.peek()
        if kind == "end":
            self.pos = pos
        elif kind == "int":
            self.pos = pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
        else:
            self.pos = pos + 1
        return kind, value, pos


class _Parser:
    def __init__(self, text: str):
        self.lex = _Lexer(text)

    def expect(self, kind: str):
        got, value, pos = self.lex.next()
        if got != kind:
            raise ParseError(f"expected {kind}, found {got}", pos)
        return value

    def parse_expr(self) -> Tuple[ParsedPoly, Optional[ParsedPoly]]:
        num = self.parse_poly(inner=False)
        kind, _, pos = self.lex.peek()
        den = None
        if kind == "slash":
            self.lex.next()
            den = self.parse_poly(inner=False)
            kind, _, pos = self.lex.peek()
        if kind != "end":
            raise ParseError(f"expected end of expression, found {kind}", pos)
        return num, den

    def parse_poly(self, inner: bool) -> ParsedPoly:
        out: ParsedPoly = {}
        sign = 1
        kind, _, _ = self.lex.peek()
        if kind in ("plus", "minus"):
            self.lex.next()
            sign = -1 if kind == "minus" else 1
        self._term_into(out, sign, inner)
        while True:
            kind, _, _ = self.lex.peek()
            if kind == "plus":
                self.lex.next()
                self._term_into(out, 1, inner)
            elif kind == "minus":
                self.lex.next()
                self._term_into(out, -1, inner)
            else:
                return out

    def _term_into(self, out: ParsedPoly, sign: int, inner: bool):
        var = "s" if inner else "X"
        kind, value, pos = self.lex.peek()
        coeff: Optional[Coeff] = None
        if kind == "int":
            self.lex.next()
            coeff = value
        elif kind == "lparen":
            if inner:
                raise ParseError("nested parentheses are not allowed", pos)
            self.lex.next()
            coeff = self.parse_poly(inner=True)
            self.expect("rparen")
        kind, _, pos = self.lex.peek()
        power = 0
        if kind == var:
            self.lex.next()
            power = 1
            kind, _, _ = self.lex.peek()
            if kind == "caret":
                self.lex.next()
                power = self.expect("int")
        elif coeff is None:
            raise ParseError(f"expected a coefficient or {var}", pos)
        if coeff is None:
            coeff = 1
        _accumulate(out, power, coeff, sign)


def _accumulate(out: ParsedPoly, power: int, coeff: Coeff, sign: int):
    cur = out.get(power, 0)
    if isinstance(coeff, int):
        add: Coeff = sign * coeff
    else:
        add = {k: sign * v for k, v in coeff.items()}
    if isinstance(cur, int) and isinstance(add, int):
        out[power] = cur + add
        return
    cur_d = {0: cur} if isinstance(cur, int) else dict(cur)
    add_d = {0: add} if isinstance(add, int) else add
    for k, v in add_d.items():
        cur_d[k] = cur_d.get(k, 0) + v
    out[power] = cur_d


def parse_map_expression(text: str) -> Tuple[ParsedPoly, Optional[ParsedPoly]]:
    """Parse to (numerator, denominator) coefficient dictionaries; the
    denominator is None when absent."""
    return _Parser(text).parse_expr()


def _coeff_to_field(coeff: Coeff, ctx: FieldCtx):
    if isinstance(coeff, int):
        return ctx.from_int(coeff)
    gen = ctx.gen()
    acc = ctx.zero()
    for k in sorted(coeff):
        acc = acc + ctx.from_int(coeff[k]) * gen**k
    return acc


def _coeff_to_ratfunc(coeff: Coeff, dom: RatFuncField):
    if isinstance(coeff, int):
        return dom.from_int(coeff)
    base = dom.coeff_field
    deg = max(coeff) if coeff else 0
    return dom.from_poly(
        Poly(tuple(base.from_int(coeff.get(i, 0)) for i in range(deg + 1)), base)
    )


def _coeff_to_fraction(coeff: Coeff):
    if isinstance(coeff, int):
        return Fraction(coeff)
    if any(k != 0 and v for k, v in coeff.items()):
        raise ParseError("the parameter s is not allowed over Q", 0)
    return Fraction(coeff.get(0, 0))


def _build_poly(parsed: ParsedPoly, domain, convert) -> Poly:
    if not parsed:
        return Poly((), domain)
    deg = max(parsed)
    return Poly(
        tuple(convert(parsed.get(i, 0)) for i in range(deg + 1)), domain
    )


def build_map(text: str, domain) -> RationalMap:
    """Parse and realize a map over a FieldCtx, a RatFuncField, or QQ."""
    num_p, den_p = parse_map_expression(text)
    if isinstance(domain, FieldCtx):
        convert = lambda c: _coeff_to_field(c, domain)
    elif isinstance(domain, RatFuncField):
        convert = lambda c: _coeff_to_ratfunc(c, domain)
    elif isinstance(domain, RationalDomain):
        convert = _coeff_to_fraction
    else:
        raise ParseError(f"unsupported coefficient domain {domain!r}", 0)
    num = _build_poly(num_p, domain, convert)
    if den_p is None:
        den = Poly((domain.one(),), domain)
    else:
        den = _build_poly(den_p, domain, convert)
    return RationalMap(num, den)


def _parse_element_sides(text: str) -> Tuple[SPoly, Optional[SPoly]]:
    parser = _Parser(text)

    def side() -> SPoly:
        kind, _, _ = parser.lex.peek()
        if kind == "lparen":
            parser.lex.next()
            p = parser.parse_poly(inner=True)
            parser.expect("rparen")
            return p
        return parser.parse_poly(inner=True)

    num = side()
    den = None
    kind, _, pos = parser.lex.peek()
    if kind == "slash":
        parser.lex.next()
        den = side()
        kind, _, pos = parser.lex.peek()
    if kind != "end":
        raise ParseError(f"expected end of expression, found {kind}", pos)
    return num, den


def parse_element(text: str, domain):
    """A global-field element: an s-polynomial or quotient of two over
    F_q(s) ('(s+1)/s'), a rational number over Q ('-5/9'), or a constant
    in a finite field (s-terms evaluate at the field generator)."""
    num_p, den_p = _parse_element_sides(text)
    if isinstance(domain, FieldCtx):
        num = _coeff_to_field(num_p, domain)
        den = _coeff_to_field(den_p, domain) if den_p is not None else domain.one()
    elif isinstance(domain, RatFuncField):
        num = _coeff_to_ratfunc(num_p, domain)
        den = _coeff_to_ratfunc(den_p, domain) if den_p is not None else domain.one()
    elif isinstance(domain, RationalDomain):
        num = _coeff_to_fraction(num_p)
        den = _coeff_to_fraction(den_p) if den_p is not None else Fraction(1)
    else:
        raise ParseError(f"unsupported coefficient domain {domain!r}", 0)
    if not den:
        raise ParseError("element denominator is zero", 0)
    return num / den


def parse_point(text: str, domain) -> P1Point:
    """A P^1 point: 'inf' or a field-element expression."""
    text = text.strip()
    if text.lower() in ("inf", "infinity", "oo"):
        return P1Point.infinity()
    return P1Point.affine(parse_element(text, domain))
