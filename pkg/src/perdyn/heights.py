"""Weil heights over the two supported global fields, Q and F_q(s): local
norms, the product formula, pair heights of map coefficients, and the
iterate-depth function derived from them.

Everything nonarchimedean is exact rational arithmetic; the archimedean
absolute value on Q is the exact Euclidean one on Fractions, so height
identities can be asserted with ==.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional

import mpmath

from .errors import (
    EmptyCritSet,
    NonpositiveLogArgument,
    OutOfDomain,
    ZeroDenominatorPoly,
    ZeroElement,
    ZeroPoint,
)
from .ffield import FieldCtx, irreducible_polys
from .padyn import P1Point
from .polys import Poly, QQ, RatFuncField

FLOOR_GUARD = 1e-9


@dataclass(frozen=True)
class HeightCtx:
    """Q (one real place, ar = 1) or F_q(s) (no archimedean places, ar = 0)."""

    kind: str  # "Q" or "FF"
    coeff_field: Optional[FieldCtx] = None

    @property
    def ar(self) -> int:
        return 1 if self.kind == "Q" else 0

    @property
    def q(self) -> int:
        return self.coeff_field.q

    @property
    def domain(self):
        if self.kind == "Q":
            return QQ
        return RatFuncField(self.coeff_field)

    def __repr__(self):
        return "Q" if self.kind == "Q" else f"F{self.q}(s)"


def rationals() -> HeightCtx:
    return HeightCtx("Q")


def function_field(coeff_field: FieldCtx) -> HeightCtx:
    return HeightCtx("FF", coeff_field)


@dataclass(frozen=True)
class Place:
    """A place of the global field.  kinds: 'prime' (p-adic on Q), 'arch'
    (real place of Q), 'poly' (pi-adic on F_q(s)), 'degree' (the place at
    infinity of F_q(s)), 'complex-arch' (square-of-modulus convention;
    unreachable from the two built-in contexts, kept for formula
    fidelity)."""

    kind: str
    prime: Optional[int] = None
    poly: Optional[Poly] = None
    q: Optional[int] = None

    @property
    def norm(self) -> int:
        if self.kind == "prime":
            return self.prime
        if self.kind == "poly":
            return self.q ** self.poly.degree
        if self.kind == "degree":
            return self.q
        raise OutOfDomain("archimedean places have no residue norm")

    def __repr__(self):
        if self.kind == "prime":
            return f"v_{self.prime}"
        if self.kind == "poly":
            from .polys import format_poly

            return f"v_({format_poly(self.poly, 's')})"
        if self.kind == "degree":
            return "v_inf"
        return self.kind


def place_prime(p: int) -> Place:
    return Place("prime", prime=p)


def arch_place() -> Place:
    return Place("arch")


def place_poly(ctx: FieldCtx, pi: Poly) -> Place:
    return Place("poly", poly=pi.monic(), q=ctx.q)


def degree_place(ctx: FieldCtx) -> Place:
    return Place("degree", q=ctx.q)


# -- valuations ------------------------------------------------------------


def _int_val(n: int, p: int) -> int:
    v = 0
    n = abs(n)
    while n % p == 0:
        n //= p
        v += 1
    return v


def _poly_val(f: Poly, pi: Poly) -> int:
    v = 0
    while True:
        quo, rem = divmod(f, pi)
        if not rem.is_zero:
            return v
        v += 1
        f = quo


def valuation(place: Place, x) -> int:
    """Normalized valuation v_v(x) for a nonzero element."""
    if place.kind == "prime":
        return _int_val(x.numerator, place.prime) - _int_val(x.denominator, place.prime)
    if place.kind == "poly":
        return _poly_val(x.num, place.poly) - _poly_val(x.den, place.poly)
    if place.kind == "degree":
        return x.den.degree - x.num.degree
    raise OutOfDomain("no valuation at an archimedean place")


def local_norm(ctx: HeightCtx, place: Place, x) -> Fraction:
    """The normalized absolute value ||x||_v, with ||0||_v = 0."""
    if not x:
        return Fraction(0)
    if place.kind == "arch":
        return abs(Fraction(x))
    if place.kind == "complex-arch":
        return abs(Fraction(x)) ** 2
    v = valuation(place, x)
    n = Fraction(place.norm)
    return n ** (-v)


# -- factorization of supports (desk scale) --------------------------------


def _factor_int(n: int) -> Dict[int, int]:
    n = abs(n)
    out: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _factor_poly(f: Poly) -> Dict[Poly, int]:
    """Monic irreducible factorization by trial division against the
    irreducible stream; fine for the small degrees this package handles."""
    out: Dict[Poly, int] = {}
    g = f.monic()
    ctx = f.domain
    d = 1
    while g.degree >= 1:
        if 2 * d > g.degree:
            # all factors of degree < d removed, so g cannot split further
            out[g] = out.get(g, 0) + 1
            break
        for pi in irreducible_polys(ctx, d):
            while True:
                quo, rem = divmod(g, pi)
                if not rem.is_zero:
                    break
                out[pi] = out.get(pi, 0) + 1
                g = quo
            if g.degree < 1:
                break
        d += 1
    return out


def contributing_places(ctx: HeightCtx, values: Iterable) -> List[Place]:
    """Nonarchimedean places where some value could have nonunit norm,
    plus the archimedean/degree place; deterministic order."""
    places: List[Place] = []
    seen = set()
    if ctx.kind == "Q":
        primes = set()
        for x in values:
            if not x:
                continue
            primes.update(_factor_int(x.numerator))
            primes.update(_factor_int(x.denominator))
        for p in sorted(primes):
            places.append(place_prime(p))
        places.append(arch_place())
        return places
    for x in values:
        if not x:
            continue
        for part in (x.num, x.den):
            if part.degree >= 1:
                for pi in _factor_poly(part):
                    if pi not in seen:
                        seen.add(pi)
                        places.append(place_poly(ctx.coeff_field, pi))
    places.sort(key=lambda pl: (pl.poly.degree, tuple(ctx.coeff_field.encode(c) for c in pl.poly.coeffs)))
    places.append(degree_place(ctx.coeff_field))
    return places


# -- heights ---------------------------------------------------------------


def height_elem(ctx: HeightCtx, x) -> Fraction:
    """H_k(x) by closed form: max(|num|, |den|) over Q and q^(max degree)
    over F_q(s).  Validated against the literal place product in tests."""
    if ctx.kind == "Q":
        x = Fraction(x)
        return Fraction(max(abs(x.numerator), x.denominator))
    if x.is_zero:
        return Fraction(1)
    return Fraction(ctx.q) ** max(x.num.degree, x.den.degree)


def height_elem_by_places(ctx: HeightCtx, x) -> Fraction:
    """The literal product over places of max(1, ||x||_v)."""
    if not x:
        return Fraction(1)
    h = Fraction(1)
    for pl in contributing_places(ctx, [x]):
        h *= max(Fraction(1), local_norm(ctx, pl, x))
    return h


def projective_point(ctx: HeightCtx, a, b) -> P1Point:
    if not b:
        if not a:
            raise ZeroPoint("(0 : 0) is not a point of P^1")
        return P1Point.infinity()
    return P1Point.affine(a / b)


def height_point(ctx: HeightCtx, pt: P1Point) -> Fraction:
    if pt.is_infinity:
        return Fraction(1)
    return height_elem(ctx, pt.value)


def pair_height(ctx: HeightCtx, f: Poly, g: Poly) -> Fraction:
    """H_k(f, g): product over places of the max coefficient norm of the
    pair.  Only places in the coefficient supports can contribute."""
    if g.is_zero:
        raise ZeroDenominatorPoly("pair height needs g != 0")
    values = [c for c in tuple(f.coeffs) + tuple(g.coeffs) if c]
    h = Fraction(1)
    for pl in contributing_places(ctx, values):
        h *= max(local_norm(ctx, pl, c) for c in values)
    return h


def b_const(ctx: HeightCtx, f: Poly, g: Poly) -> Fraction:
    """max(2, (deg(f/g) + 1)^ar(k) * H_k(f, g)); callers pass the
    normalized coprime pair."""
    d = max(f.degree, g.degree)
    return max(Fraction(2), Fraction(d + 1) ** ctx.ar * pair_height(ctx, f, g))


def c_const(ctx: HeightCtx, f: Poly, g: Poly, crit: Iterable[P1Point]) -> Fraction:
    crit = list(crit)
    if not crit:
        raise EmptyCritSet("c constant needs a nonempty point set")
    return b_const(ctx, f, g) * max(height_point(ctx, pt) for pt in crit)


def n_eps(
    ctx: HeightCtx,
    f: Poly,
    g: Poly,
    crit: Iterable[P1Point],
    eps: float,
    place: Place,
) -> int:
    """Iterate depth floor((log(log N(v) - ar log 2) - log max(2 log c,
    4 log(d!)/eps)) / (2 log d)), natural logs, with an integer-proximity
    guard that reruns near-ties in extended precision."""
    if eps <= 0:
        raise OutOfDomain("eps must be positive")
    n_v = place.norm
    ar = ctx.ar
    if n_v <= 2**ar:
        raise OutOfDomain(f"N(v) = {n_v} <= 2^ar(k) = {2 ** ar}")
    d = max(f.degree, g.degree)
    if d < 2:
        raise OutOfDomain("iterate depth needs deg(f/g) >= 2")
    inner = math.log(n_v) - ar * math.log(2)
    if inner <= 1:
        raise NonpositiveLogArgument(
            "log N(v) - ar(k) log 2 <= 1: the depth formula has no usable value"
        )
    c = c_const(ctx, f, g, crit)
    cap = max(2 * math.log(c), 4 * math.log(math.factorial(d)) / eps)
    value = (math.log(inner) - math.log(cap)) / (2 * math.log(d))
    if abs(value - round(value)) < FLOOR_GUARD:
        with mpmath.workdps(60):
            n_hp = mpmath.log(n_v) - ar * mpmath.log(2)
            c_hp = mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
            cap_hp = max(
                2 * mpmath.log(c_hp),
                4 * mpmath.log(mpmath.factorial(d)) / mpmath.mpf(eps),
            )
            value_hp = (mpmath.log(n_hp) - mpmath.log(cap_hp)) / (2 * mpmath.log(d))
            return int(mpmath.floor(value_hp))
    return math.floor(value)


def product_formula_check(ctx: HeightCtx, x) -> bool:
    """Exact check of prod_v ||x||_v = 1 over the finitely many
    contributing places."""
    if not x:
        raise ZeroElement("product formula is about nonzero elements")
    prod = Fraction(1)
    for pl in contributing_places(ctx, [x]):
        prod *= local_norm(ctx, pl, x)
    return prod == 1
