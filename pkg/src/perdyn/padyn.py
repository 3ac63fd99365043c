"""Rational maps on P^1 and exact functional-graph statistics over finite
fields: successor tables, periodic sets, cycle structure, iterate images.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .errors import Indeterminate, SingularMobius, ZeroDenominator
from .ffield import FieldCtx
from .polys import Poly, poly_gcd


class P1Point:
    """Point of the projective line: Affine(a) = [a : 1] or Infinity = [1 : 0]."""

    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value

    @classmethod
    def affine(cls, a) -> "P1Point":
        return cls(a)

    @classmethod
    def infinity(cls) -> "P1Point":
        return cls(None)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other):
        if isinstance(other, P1Point):
            return self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash(("P1", self.value))

    def __repr__(self):
        return "inf" if self.is_infinity else repr(self.value)


INFINITY = P1Point.infinity()


class RationalMap:
    """Normalized quotient f/g of coprime polynomials over a field domain.

    Degree is max(deg f, deg g) after cancellation; the separability flag
    records whether the formal derivative of f/g vanishes identically
    (inseparable maps are representable but rejected by theorem checkers).
    """

    __slots__ = ("num", "den", "domain", "degree", "separable", "degenerate")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroDenominator("rational map with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero and g.degree > 0:
            num = num // g
            den = den // g
        inv_lead = den.domain.one() / den.lead
        self.num = num.scale(inv_lead)
        self.den = den.scale(inv_lead)
        self.domain = den.domain
        self.degree = max(self.num.degree, self.den.degree)
        wronsk = self.num.derivative() * self.den - self.num * self.den.derivative()
        self.separable = not wronsk.is_zero
        self.degenerate = self.degree <= 0

    @classmethod
    def from_ints(cls, num_ints, den_ints, domain) -> "RationalMap":
        return cls(Poly.from_ints(num_ints, domain), Poly.from_ints(den_ints, domain))

    @classmethod
    def polynomial(cls, num: Poly) -> "RationalMap":
        return cls(num, Poly((num.domain.one(),), num.domain))

    def wronskian(self) -> Poly:
        """f'g - fg', whose roots are the finite critical points."""
        return self.num.derivative() * self.den - self.num * self.den.derivative()

    def __eq__(self, other):
        if isinstance(other, RationalMap):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        from .polys import format_poly

        if self.den.degree == 0:
            return format_poly(self.num, "X")
        return f"({format_poly(self.num, 'X')})/({format_poly(self.den, 'X')})"

    def __call__(self, pt: P1Point) -> P1Point:
        return evaluate(self, pt)


def evaluate(phi: RationalMap, pt: P1Point) -> P1Point:
    """phi(pt) via homogeneous coordinates, so Infinity needs no special
    caller-side handling."""
    if phi.degenerate:
        # Degree-0 maps are constant everywhere, including at Infinity.
        c = phi.num.coeff(0) / phi.den.coeff(0)
        return P1Point.affine(c)
    d = phi.degree
    if pt.is_infinity:
        fx = phi.num.coeff(d)
        gx = phi.den.coeff(d)
    else:
        fx = phi.num(pt.value)
        gx = phi.den(pt.value)
    if not gx:
        if not fx:
            raise Indeterminate("both homogeneous forms vanish")
        return INFINITY
    return P1Point.affine(fx / gx)


def conjugate(phi: RationalMap, mobius: Tuple) -> RationalMap:
    """mu o phi o mu^{-1} for mu(x) = (a x + b)/(c x + d), ad - bc != 0."""
    dom = phi.domain

    def coerce(v):
        return dom.from_int(v) if isinstance(v, int) else v

    a, b, c, d = (coerce(v) for v in mobius)
    det = a * d - b * c
    if not det:
        raise SingularMobius("Moebius transformation must have nonzero determinant")
    deg = max(phi.degree, 0)
    # mu^{-1}(x) = (d x - b)/(-c x + a); substitute as a homogeneous pair.
    u = Poly((-b, d), dom)
    v = Poly((a, -c), dom)
    u_pows = [Poly((dom.one(),), dom)]
    v_pows = [Poly((dom.one(),), dom)]
    for _ in range(deg):
        u_pows.append(u_pows[-1] * u)
        v_pows.append(v_pows[-1] * v)
    num_h = Poly((), dom)
    den_h = Poly((), dom)
    for i in range(deg + 1):
        basis = u_pows[i] * v_pows[deg - i]
        fi = phi.num.coeff(i)
        gi = phi.den.coeff(i)
        if fi:
            num_h = num_h + basis.scale(fi)
        if gi:
            den_h = den_h + basis.scale(gi)
    return RationalMap(num_h.scale(a) + den_h.scale(b), num_h.scale(c) + den_h.scale(d))


def compose(outer: RationalMap, inner: RationalMap) -> RationalMap:
    """outer o inner, by homogeneous substitution of inner's pair."""
    dom = outer.domain
    deg = max(outer.degree, 0)
    u, v = inner.num, inner.den
    u_pows = [Poly((dom.one(),), dom)]
    v_pows = [Poly((dom.one(),), dom)]
    for _ in range(deg):
        u_pows.append(u_pows[-1] * u)
        v_pows.append(v_pows[-1] * v)
    num_h = Poly((), dom)
    den_h = Poly((), dom)
    for i in range(deg + 1):
        basis = u_pows[i] * v_pows[deg - i]
        fi = outer.num.coeff(i)
        gi = outer.den.coeff(i)
        if fi:
            num_h = num_h + basis.scale(fi)
        if gi:
            den_h = den_h + basis.scale(gi)
    return RationalMap(num_h, den_h)


def p1_points(ctx: FieldCtx) -> List[P1Point]:
    """Canonical point order: field elements in enumeration order, then
    Infinity last.  Fixes all reports byte-for-byte."""
    pts = [P1Point.affine(a) for a in ctx.elements()]
    pts.append(INFINITY)
    return pts


def point_index(ctx: FieldCtx, pt: P1Point) -> int:
    if pt.is_infinity:
        return ctx.q
    return ctx.encode(pt.value)


def successor_table(phi: RationalMap, ctx: FieldCtx) -> List[int]:
    """Index i -> index of phi(point_i) in the canonical point order."""
    table = []
    for pt in p1_points(ctx):
        table.append(point_index(ctx, evaluate(phi, pt)))
    return table


@dataclass(frozen=True)
class GraphStats:
    """Whole-graph summary of (P^1(F_q), phi)."""

    n_points: int
    periodic_count: int
    cycle_lengths: Tuple[int, ...]
    image_sizes: Tuple[int, ...]

    @property
    def periodic_proportion(self) -> Fraction:
        return Fraction(self.periodic_count, self.n_points)


def graph_stats(table: Sequence[int]) -> GraphStats:
    """Exact statistics of the functional graph of a successor table.

    Periodic nodes survive iterated removal of in-degree-zero nodes; cycle
    lengths come from walking the surviving permutation; image sizes are
    iterated until two consecutive values agree.
    """
    n = len(table)
    indeg = [0] * n
    for t in table:
        indeg[t] += 1
    stack = [i for i in range(n) if indeg[i] == 0]
    while stack:
        i = stack.pop()
        j = table[i]
        indeg[j] -= 1
        if indeg[j] == 0:
            stack.append(j)
    periodic = [i for i in range(n) if indeg[i] > 0]
    periodic_count = len(periodic)

    on_cycle_seen = [False] * n
    cycle_lengths = []
    for start in periodic:
        if on_cycle_seen[start]:
            continue
        length = 0
        j = start
        while not on_cycle_seen[j]:
            on_cycle_seen[j] = True
            length += 1
            j = table[j]
        cycle_lengths.append(length)
    cycle_lengths.sort()

    image_sizes = []
    current = [True] * n
    for _ in range(n + 1):
        nxt = [False] * n
        for i in range(n):
            if current[i]:
                nxt[table[i]] = True
        size = sum(nxt)
        image_sizes.append(size)
        if len(image_sizes) >= 2 and image_sizes[-1] == image_sizes[-2]:
            break
        current = nxt

    return GraphStats(
        n_points=n,
        periodic_count=periodic_count,
        cycle_lengths=tuple(cycle_lengths),
        image_sizes=tuple(image_sizes),
    )


def image_size_from_table(table: Sequence[int], n: int) -> int:
    """|phi^n(P^1)| by n rounds of boolean image application."""
    if n < 1:
        raise ValueError("iterate must be >= 1")
    m = len(table)
    current = [True] * m
    size = m
    for _ in range(n):
        nxt = [False] * m
        for i in range(m):
            if current[i]:
                nxt[table[i]] = True
        current = nxt
        size = sum(nxt)
    return size


def image_size(phi: RationalMap, ctx: FieldCtx, n: int) -> int:
    return image_size_from_table(successor_table(phi, ctx), n)
