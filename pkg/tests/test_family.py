from fractions import Fraction

import pytest

from perdyn.errors import DegreeOverflow, InseparableMap
from perdyn.ffield import field_from_order, irreducible_polys, prime_field
from perdyn.family import (
    specialize_point,
    critical_points,
    orbit_symbolic,
    phi_disjoint,
    places_of,
    specialize,
    unicritical_family,
)
from perdyn.heights import c_const, function_field, rationals
from perdyn.mapexpr import build_map
from perdyn.padyn import INFINITY, P1Point, RationalMap, compose
from perdyn.polys import Poly, QQ

G3 = prime_field(3)
F3S = function_field(G3)
DOM = F3S.domain


def test_places_of_examples():
    assert [pl.norm for pl in places_of(F3S, degree=2)] == [9, 9, 9]
    assert [pl.prime for pl in places_of(rationals(), bound=10)] == [2, 3, 5, 7]
    f2s = function_field(prime_field(2))
    assert [pl.norm for pl in places_of(f2s, degree=1)] == [2, 2]


def test_specialize_examples():
    fam = unicritical_family(F3S, 2, 1)
    res = specialize(fam, Poly.from_ints([2, 1], G3))  # s + 2
    assert res.ctx == G3
    assert res.good_reduction
    assert res.map == build_map("X^2+1", G3)

    res2 = specialize(fam, Poly.from_ints([1, 0, 1], G3))  # s^2 + 1
    assert res2.ctx.q == 9
    assert res2.ctx.modulus == (1, 0, 1)
    assert res2.ctx.canonical is False  # place-as-modulus construction
    assert res2.map.num.coeff(0) == res2.ctx.gen()
    assert res2.good_reduction

    s = DOM.gen()
    bad = RationalMap(Poly((DOM.one(), DOM.zero(), s), DOM), Poly((DOM.one(),), DOM))
    res3 = specialize(bad, Poly.x(G3))  # leading coefficient vanishes at s
    assert res3.map.degree == 0
    assert not res3.good_reduction


def test_specialization_commutes_with_iteration():
    fam = unicritical_family(F3S, 2, 1)
    iterates = [fam]
    for _ in range(2):
        iterates.append(compose(fam, iterates[-1]))
    for deg in (1, 2, 3):
        for pi in irreducible_polys(G3, deg):
            spec1 = specialize(fam, pi)
            assert spec1.good_reduction
            for n in (1, 2, 3):
                sym = specialize(iterates[n - 1], pi)
                assert sym.good_reduction
                lowered = spec1.map
                for _ in range(n - 1):
                    lowered = compose(spec1.map, lowered)
                assert sym.map == lowered


def test_critical_points_examples():
    g5 = prime_field(5)
    cs = critical_points(build_map("X^2+1", g5))
    assert cs.points == (P1Point.affine(g5.zero()), INFINITY)
    assert cs.all_rational and not cs.wild

    assert critical_points(build_map("1/X", g5)).points == ()

    f7s = function_field(prime_field(7))
    fam = unicritical_family(f7s, 3, 1)
    cs3 = critical_points(fam)
    assert cs3.points == (P1Point.affine(f7s.domain.zero()), INFINITY)
    assert cs3.all_rational and not cs3.wild


def test_critical_points_unicritical_exhaustive():
    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        ctx = field_from_order(q)
        for d in (2, 3):
            if ctx.p == d or (d == 2 and ctx.p == 2):
                continue  # inseparable
            for c in ctx.elements():
                phi = RationalMap(
                    Poly(tuple([c] + [ctx.zero()] * (d - 1) + [ctx.one()]), ctx),
                    Poly((ctx.one(),), ctx),
                )
                cs = critical_points(phi)
                assert cs.points == (P1Point.affine(ctx.zero()), INFINITY)


def test_critical_points_inseparable_and_wild():
    g2 = prime_field(2)
    with pytest.raises(InseparableMap):
        critical_points(build_map("X^2", g2))
    # X^3 + X over F_3(s): separable, but infinity ramifies with index 3
    cube = build_map("X^3+X", DOM)
    cs = critical_points(cube)
    assert cs.wild
    assert INFINITY in cs.points
    assert not cs.all_rational


def test_critical_points_rationals():
    phi = build_map("X^2", QQ)
    cs = critical_points(phi)
    assert cs.points == (P1Point.affine(Fraction(0)), INFINITY)
    assert cs.all_rational
    cs2 = critical_points(build_map("X^3-3X", QQ))  # crit at +-1 and infinity
    vals = {pt.value for pt in cs2.points if not pt.is_infinity}
    assert vals == {Fraction(1), Fraction(-1)}
    assert INFINITY in cs2.points
    assert cs2.all_rational


def test_orbit_symbolic_examples():
    fam = unicritical_family(F3S, 2, 1)
    zero_pt = P1Point.affine(DOM.zero())
    orbit = orbit_symbolic(fam, zero_pt, 3)
    s = DOM.gen()
    assert orbit == [
        zero_pt,
        P1Point.affine(s),
        P1Point.affine(s * s + s),
        P1Point.affine((s * s + s) ** 2 + s),
    ]
    phi_q = build_map("X^2-1", QQ)
    orb_q = orbit_symbolic(phi_q, P1Point.affine(Fraction(0)), 2)
    assert [p.value for p in orb_q] == [0, -1, 0]
    orb_inf = orbit_symbolic(fam, INFINITY, 4)
    assert all(p.is_infinity for p in orb_inf)


def test_orbit_degree_cap():
    fam = unicritical_family(F3S, 2, 1)
    with pytest.raises(DegreeOverflow):
        orbit_symbolic(fam, P1Point.affine(DOM.gen()), 25, cap=1000)


def test_phi_disjoint_examples():
    fam = unicritical_family(F3S, 2, 1)
    zero_pt = P1Point.affine(DOM.zero())
    ok, witness = phi_disjoint(fam, [zero_pt], 10)
    assert ok and witness is None
    phi_q = build_map("X^2-1", QQ)
    ok2, witness2 = phi_disjoint(phi_q, [P1Point.affine(Fraction(0))], 2)
    assert not ok2
    g1, m1, g2, m2 = witness2
    assert (g1.value, m1, g2.value, m2) == (0, 0, 0, 2)
    ok3, _ = phi_disjoint(fam, [], 5)
    assert ok3


def test_phi_disjoint_monotone():
    fam = unicritical_family(F3S, 2, 1)
    zero_pt = P1Point.affine(DOM.zero())
    assert phi_disjoint(fam, [zero_pt], 10)[0]
    for n in range(10):
        assert phi_disjoint(fam, [zero_pt], n)[0]


def test_orbit_collision_bound_contrapositive():
    # places of norm >= c^(2 d^n) keep specialized orbit points distinct
    fam = unicritical_family(F3S, 2, 1)
    zero_pt = P1Point.affine(DOM.zero())
    c = c_const(F3S, fam.num, fam.den, [zero_pt])
    assert c == 3
    for n in (0, 1, 2):
        threshold = int(c) ** (2 * 2**n)
        orbit = orbit_symbolic(fam, zero_pt, n)
        for deg in range(1, 6):
            if 3**deg < threshold:
                continue
            for pi in irreducible_polys(G3, deg):
                reduced = [specialize_point(pt, pi) for pt in orbit]
                assert len(set(reduced)) == len(orbit), (n, deg)
