"""Parameterized families over F_q[s] and exact orbits over Q:
specialization at places, critical points, symbolic orbits and
orbit-disjointness of critical sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .errors import DegreeOverflow, InseparableMap, OutOfDomain
from .ffield import FieldCtx, field_with_modulus, irreducible_polys
from .heights import HeightCtx, Place, place_poly, place_prime
from .padyn import INFINITY, P1Point, RationalMap, evaluate
from .polys import Poly, RatFunc, RatFuncField, RationalDomain, poly_gcd

DEFAULT_ORBIT_CAP = 10**6


def unicritical_family(ff: HeightCtx, d: int, m: int = 1) -> RationalMap:
    """X^d + s^m as a map over F_q(s)."""
    dom = ff.domain
    s_pow = dom.from_poly(Poly.x(ff.coeff_field) ** m)
    coeffs = [s_pow] + [dom.zero()] * (d - 1) + [dom.one()]
    return RationalMap(Poly(tuple(coeffs), dom), Poly((dom.one(),), dom))


def places_of(
    ctx: HeightCtx, degree: Optional[int] = None, bound: Optional[int] = None
) -> List[Place]:
    """Function field: all places of the given degree (monic irreducibles);
    Q: all prime places up to the bound."""
    if ctx.kind == "FF":
        if degree is None or degree < 1:
            raise ValueError("function-field places need a degree >= 1")
        return [place_poly(ctx.coeff_field, pi) for pi in irreducible_polys(ctx.coeff_field, degree)]
    if bound is None or bound < 2:
        raise ValueError("rational places need a bound >= 2")
    from .ffield import is_prime

    return [place_prime(p) for p in range(2, bound + 1) if is_prime(p)]


@dataclass(frozen=True)
class SpecializeResult:
    map: RationalMap
    ctx: FieldCtx
    good_reduction: bool


def _coeff_polys(phi: RationalMap) -> Tuple[List[Poly], List[Poly], FieldCtx]:
    """Clear denominators and joint s-content, returning integral
    coefficient polynomials for numerator and denominator."""
    dom = phi.domain
    if not isinstance(dom, RatFuncField):
        raise OutOfDomain("specialization applies to maps over F_q(s)")
    base = dom.coeff_field
    lcm = Poly((base.one(),), base)
    for c in tuple(phi.num.coeffs) + tuple(phi.den.coeffs):
        g = poly_gcd(lcm, c.den)
        lcm = (lcm * c.den) // g if not g.is_zero else lcm * c.den
    nums = [(c.num * (lcm // c.den)) for c in phi.num.coeffs]
    dens = [(c.num * (lcm // c.den)) for c in phi.den.coeffs]
    content = Poly((), base)
    for c in nums + dens:
        content = poly_gcd(content, c)
    if content.degree > 0:
        nums = [c // content for c in nums]
        dens = [c // content for c in dens]
    return nums, dens, base


def specialize(phi: RationalMap, pi: Poly) -> SpecializeResult:
    """Reduce a family map mod a monic irreducible pi, landing in the
    residue field GF(q^deg pi) presented with pi itself as modulus.

    Good reduction holds iff the degree survives renormalization, which
    fails exactly at places dividing the resultant of the cleared
    numerator and denominator."""
    nums, dens, base = _coeff_polys(phi)
    pi = pi.monic()
    if pi.degree == 1:
        target = base
        root = -pi.coeff(0)

        def reduce_c(c: Poly):
            return c(root)

    else:
        if base.r != 1:
            raise OutOfDomain("custom-modulus residue fields need a prime base field")
        target = field_with_modulus(base, pi)

        def reduce_c(c: Poly):
            rem = c % pi
            return target.elem([x.coeffs[0] for x in rem.coeffs])

    num = Poly(tuple(reduce_c(c) for c in nums), target)
    den = Poly(tuple(reduce_c(c) for c in dens), target)
    if den.is_zero and num.is_zero:
        raise OutOfDomain("map vanishes identically at this place")
    if den.is_zero:
        # phi specializes to the constant Infinity; degenerate, bad reduction
        one = Poly((target.one(),), target)
        spec_map = RationalMap(one, one)
        return SpecializeResult(spec_map, target, False)
    spec_map = RationalMap(num, den)
    return SpecializeResult(spec_map, target, spec_map.degree == phi.degree)


def reduction_field(base: FieldCtx, pi: Poly) -> FieldCtx:
    """Residue field at the place pi: the base field itself for linear pi,
    else GF(q^deg pi) presented with pi as modulus."""
    if pi.degree == 1:
        return base
    return field_with_modulus(base, pi.monic())


def specialize_element(x: RatFunc, pi: Poly):
    """Image of x in the residue field at pi; the place must not divide
    the denominator."""
    base = x.den.domain
    pi = pi.monic()
    if pi.degree == 1:
        root = -pi.coeff(0)
        den = x.den(root)
        if not den:
            raise OutOfDomain("element has a pole at this place")
        return x.num(root) / den

    target = reduction_field(base, pi)

    def red(f: Poly):
        rem = f % pi
        return target.elem([c.coeffs[0] for c in rem.coeffs])

    den = red(x.den)
    if not den:
        raise OutOfDomain("element has a pole at this place")
    return red(x.num) / den


def specialize_point(pt: P1Point, pi: Poly) -> P1Point:
    """[x]_v for a point of P^1(F_q(s)), sending poles to Infinity."""
    if pt.is_infinity:
        return P1Point.infinity()
    x = pt.value
    try:
        return P1Point.affine(specialize_element(x, pi))
    except OutOfDomain:
        # x = num/den with pi | den; pi cannot divide both (reduced)
        return P1Point.infinity()


@dataclass(frozen=True)
class CritSet:
    """Critical points found over the coefficient field, with flags."""

    points: Tuple[P1Point, ...]
    all_rational: bool
    wild: bool
    total_ramification: int


def _local_index_affine(phi: RationalMap, gamma) -> int:
    """Ramification index at an affine point: order of vanishing of the
    numerator of phi(X) - phi(gamma) (or of the denominator if
    phi(gamma) = Infinity)."""
    value = evaluate(phi, P1Point.affine(gamma))
    if value.is_infinity:
        return phi.den.root_multiplicity(gamma)
    return (phi.num - phi.den.scale(value.value)).root_multiplicity(gamma)


def _flip(phi: RationalMap) -> RationalMap:
    """psi(X) = 1/phi(1/X); moves Infinity to 0."""
    d = phi.degree
    dom = phi.domain

    def rev(f: Poly) -> Poly:
        cs = [dom.zero()] * (d + 1)
        for i in range(f.degree + 1):
            cs[d - i] = f.coeff(i)
        return Poly(tuple(cs), dom)

    return RationalMap(rev(phi.den), rev(phi.num))


def _local_index_infinity(phi: RationalMap) -> int:
    return _local_index_affine(_flip(phi), phi.domain.zero())


def critical_points(phi: RationalMap) -> CritSet:
    """Critical points of phi over its coefficient field.

    Finite fields: exhaustive scan of P^1 with exact local indices (also
    catches wild ramification).  Q: rational roots of the Wronskian plus
    the flip test at Infinity.  F_q(s): supported when the Wronskian is a
    monomial in X (the unicritical shape), which covers the built-in
    families.
    """
    if not phi.separable:
        raise InseparableMap("critical points need phi' != 0")
    d = phi.degree
    dom = phi.domain
    pts: List[Tuple[P1Point, int]] = []

    if isinstance(dom, FieldCtx):
        p = dom.p
        for a in dom.elements():
            e = _local_index_affine(phi, a)
            if e >= 2:
                pts.append((P1Point.affine(a), e))
        e_inf = _local_index_infinity(phi)
        if e_inf >= 2:
            pts.append((INFINITY, e_inf))
        wild = any(e % p == 0 for _, e in pts)
    elif isinstance(dom, RationalDomain):
        wron = phi.wronskian()
        for root in _rational_roots(wron):
            e = _local_index_affine(phi, root)
            if e >= 2:
                pts.append((P1Point.affine(root), e))
        e_inf = _local_index_infinity(phi)
        if e_inf >= 2:
            pts.append((INFINITY, e_inf))
        wild = False
    elif isinstance(dom, RatFuncField):
        wron = phi.wronskian()
        nonzero = [i for i in range(wron.degree + 1) if wron.coeff(i)]
        if len(nonzero) > 1:
            raise OutOfDomain(
                "critical points over F_q(s) are wired for maps with monomial "
                "Wronskian (unicritical shape) only"
            )
        if nonzero and nonzero[0] >= 1:
            e = _local_index_affine(phi, dom.zero())
            if e >= 2:
                pts.append((P1Point.affine(dom.zero()), e))
        e_inf = _local_index_infinity(phi)
        if e_inf >= 2:
            pts.append((INFINITY, e_inf))
        p = dom.coeff_field.p
        wild = any(e % p == 0 for _, e in pts)
    else:
        raise OutOfDomain(f"unsupported coefficient domain {dom!r}")

    total = sum(e - 1 for _, e in pts)
    return CritSet(
        points=tuple(pt for pt, _ in pts),
        all_rational=(total == 2 * d - 2),
        wild=wild,
        total_ramification=total,
    )


def _rational_roots(f: Poly) -> List[Fraction]:
    """Rational roots of a polynomial over Q by the rational-root theorem."""
    if f.is_zero:
        raise ValueError("zero polynomial has every root")
    # scale to integer coefficients
    denlcm = 1
    for c in f.coeffs:
        denlcm = denlcm * c.denominator // _gcd(denlcm, c.denominator)
    ints = [int(c * denlcm) for c in f.coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)  # root at 0 handled below
    roots: List[Fraction] = []
    zero = Fraction(0)
    if not f.coeff(0):
        roots.append(zero)
    if not ints:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    for p in _divisors(a0):
        for q in _divisors(an):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and not f(cand):
                    roots.append(cand)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def _divisors(n: int) -> List[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _entry_size(pt: P1Point) -> int:
    if pt.is_infinity:
        return 0
    v = pt.value
    if isinstance(v, RatFunc):
        return max(v.num.degree, v.den.degree)
    if isinstance(v, Fraction):
        return max(v.numerator.bit_length(), v.denominator.bit_length())
    return 0


def orbit_symbolic(
    phi: RationalMap, gamma: P1Point, n: int, cap: int = DEFAULT_ORBIT_CAP
) -> List[P1Point]:
    """[gamma, phi(gamma), ..., phi^n(gamma)] in exact arithmetic; raises
    DegreeOverflow when an entry's degree/bit size exceeds the cap."""
    if n < 0:
        raise ValueError("orbit depth must be >= 0")
    orbit = [gamma]
    for _ in range(n):
        nxt = evaluate(phi, orbit[-1])
        if _entry_size(nxt) > cap:
            raise DegreeOverflow(f"orbit entry exceeds cap {cap}")
        orbit.append(nxt)
    return orbit


def phi_disjoint(
    phi: RationalMap,
    crit: Sequence[P1Point],
    n: int,
    cap: int = DEFAULT_ORBIT_CAP,
):
    """True iff (gamma, m) -> phi^m(gamma) is injective on crit x {0..n}.

    Returns (True, None) or (False, (gamma1, m1, gamma2, m2)) with the
    first collision in deterministic order.
    """
    seen: dict = {}
    for gi, gamma in enumerate(crit):
        orbit = orbit_symbolic(phi, gamma, n, cap=cap)
        for m, pt in enumerate(orbit):
            key = pt
            if key in seen:
                g2, m2 = seen[key]
                return False, (crit[g2], m2, gamma, m)
            seen[key] = (gi, m)
    return True, None
