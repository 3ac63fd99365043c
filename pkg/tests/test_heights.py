import random
from fractions import Fraction

import pytest

from perdyn.errors import (
    EmptyCritSet,
    NonpositiveLogArgument,
    OutOfDomain,
    ZeroDenominatorPoly,
    ZeroElement,
    ZeroPoint,
)
from perdyn.ffield import irreducible_polys, prime_field
from perdyn.heights import (
    Place,
    arch_place,
    b_const,
    c_const,
    degree_place,
    function_field,
    height_elem,
    height_elem_by_places,
    height_point,
    local_norm,
    n_eps,
    pair_height,
    place_poly,
    place_prime,
    product_formula_check,
    projective_point,
    rationals,
)
from perdyn.family import orbit_symbolic, unicritical_family
from perdyn.padyn import P1Point, RationalMap, evaluate
from perdyn.polys import Poly, QQ

Q = rationals()
G3 = prime_field(3)
F3S = function_field(G3)
DOM = F3S.domain
S = DOM.gen()


def rand_fraction(rng, bound=10**4):
    num = rng.randint(-bound, bound)
    den = rng.randint(1, bound)
    return Fraction(num, den)


def rand_ratfunc(rng, max_deg=4):
    def rand_poly(allow_zero):
        while True:
            coeffs = [G3.from_int(rng.randrange(3)) for _ in range(rng.randint(1, max_deg + 1))]
            f = Poly(tuple(coeffs), G3)
            if allow_zero or not f.is_zero:
                return f

    return DOM.from_poly(rand_poly(True)) / DOM.from_poly(rand_poly(False))


def test_local_norm_examples():
    assert local_norm(Q, place_prime(2), Fraction(6)) == Fraction(1, 2)
    assert local_norm(F3S, place_poly(G3, Poly.x(G3)), S) == Fraction(1, 3)
    assert local_norm(F3S, degree_place(G3), S) == 3
    assert local_norm(Q, arch_place(), Fraction(-7, 2)) == Fraction(7, 2)
    assert local_norm(Q, place_prime(5), Fraction(0)) == 0


def test_complex_place_square_convention():
    # unreachable from the built-in contexts; kept for formula fidelity
    assert local_norm(Q, Place("complex-arch"), Fraction(-3)) == 9


def test_height_examples():
    assert height_elem(Q, Fraction(3, 2)) == 3
    assert height_elem(F3S, S) == 3
    assert height_elem(Q, Fraction(1)) == 1
    assert height_elem(F3S, DOM.zero()) == 1


def test_height_point_examples():
    assert height_point(Q, P1Point.infinity()) == 1
    assert height_point(Q, projective_point(Q, Fraction(3), Fraction(2))) == 3
    assert height_point(F3S, projective_point(F3S, S, DOM.one())) == 3
    with pytest.raises(ZeroPoint):
        projective_point(Q, Fraction(0), Fraction(0))


def test_closed_form_equals_literal_product():
    rng = random.Random(20240809)
    for _ in range(300):
        x = rand_fraction(rng)
        if x:
            assert height_elem(Q, x) == height_elem_by_places(Q, x)
    for _ in range(300):
        x = rand_ratfunc(rng)
        assert height_elem(F3S, x) == height_elem_by_places(F3S, x)


def test_product_formula_1000_random():
    rng = random.Random(31415)
    count = 0
    while count < 1000:
        x = rand_fraction(rng)
        if not x:
            continue
        assert product_formula_check(Q, x)
        count += 1
    count = 0
    while count < 1000:
        x = rand_ratfunc(rng)
        if not x:
            continue
        assert product_formula_check(F3S, x)
        count += 1
    with pytest.raises(ZeroElement):
        product_formula_check(Q, Fraction(0))


def test_product_formula_examples():
    assert product_formula_check(Q, Fraction(6))
    assert product_formula_check(Q, Fraction(-5, 9))
    assert product_formula_check(F3S, DOM.from_poly(Poly.from_ints([1, 0, 1], G3)))


def test_sum_height_bound_fact():
    # H(a+b) <= 2^ar H(a) H(b), exact comparison
    rng = random.Random(2718)
    for _ in range(1000):
        a, b = rand_fraction(rng), rand_fraction(rng)
        assert height_elem(Q, a + b) <= 2 * height_elem(Q, a) * height_elem(Q, b)
    for _ in range(1000):
        a, b = rand_ratfunc(rng), rand_ratfunc(rng)
        assert height_elem(F3S, a + b) <= height_elem(F3S, a) * height_elem(F3S, b)


def test_pair_height_examples():
    f = Poly((S, DOM.zero(), DOM.one()), DOM)  # X^2 + s
    one = Poly((DOM.one(),), DOM)
    assert pair_height(F3S, f, one) == 3
    fq = Poly((Fraction(1), Fraction(0), Fraction(1)), QQ)
    oneq = Poly((Fraction(1),), QQ)
    assert pair_height(Q, fq, oneq) == 1
    assert pair_height(Q, Poly((Fraction(3), Fraction(2)), QQ), Poly((Fraction(5),), QQ)) == 5
    with pytest.raises(ZeroDenominatorPoly):
        pair_height(Q, fq, Poly((), QQ))


def test_b_and_c_constants():
    f = Poly((S, DOM.zero(), DOM.one()), DOM)
    one = Poly((DOM.one(),), DOM)
    assert b_const(F3S, f, one) == 3
    zero_pt = P1Point.affine(DOM.zero())
    assert c_const(F3S, f, one, [zero_pt]) == 3
    assert c_const(F3S, f, one, [P1Point.affine(S)]) == 9
    fq = Poly((Fraction(0), Fraction(0), Fraction(1)), QQ)
    oneq = Poly((Fraction(1),), QQ)
    assert b_const(Q, fq, oneq) == 3
    assert c_const(Q, fq, oneq, [P1Point.affine(Fraction(0)), P1Point.infinity()]) == 3
    with pytest.raises(EmptyCritSet):
        c_const(Q, fq, oneq, [])


@pytest.mark.parametrize("d,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_unicritical_family_constants(d, m):
    # b = c = q^m for X^d + s^m with C = {0}
    for q in (3, 5):
        ff = function_field(prime_field(q))
        phi = unicritical_family(ff, d, m)
        zero_pt = P1Point.affine(ff.domain.zero())
        assert b_const(ff, phi.num, phi.den) == q**m
        assert c_const(ff, phi.num, phi.den, [zero_pt]) == q**m


def test_heights_and_iterates_bound():
    # H(phi(gamma)) <= b * H(gamma)^d for random maps of degree <= 3
    rng = random.Random(1618)
    checked = 0
    while checked < 200:
        d = rng.randint(1, 3)
        num = [rand_fraction(rng, 100) for _ in range(d + 1)]
        den = [rand_fraction(rng, 100) for _ in range(rng.randint(1, d + 1))]
        if all(not c for c in num) or all(not c for c in den):
            continue
        phi = RationalMap(Poly(tuple(num), QQ), Poly(tuple(den), QQ))
        if phi.degree < 1:
            continue
        gamma = P1Point.infinity() if rng.random() < 0.1 else P1Point.affine(rand_fraction(rng, 100))
        b = b_const(Q, phi.num, phi.den)
        lhs = height_point(Q, evaluate(phi, gamma))
        assert lhs <= b * height_point(Q, gamma) ** phi.degree
        checked += 1
    checked = 0
    while checked < 200:
        d = rng.randint(1, 3)
        num = [rand_ratfunc(rng, 2) for _ in range(d + 1)]
        den = [rand_ratfunc(rng, 2) for _ in range(rng.randint(1, d + 1))]
        if all(not c for c in num) or all(not c for c in den):
            continue
        phi = RationalMap(Poly(tuple(num), DOM), Poly(tuple(den), DOM))
        if phi.degree < 1:
            continue
        gamma = P1Point.infinity() if rng.random() < 0.1 else P1Point.affine(rand_ratfunc(rng, 2))
        b = b_const(F3S, phi.num, phi.den)
        lhs = height_point(F3S, evaluate(phi, gamma))
        assert lhs <= b * height_point(F3S, gamma) ** phi.degree
        checked += 1


@pytest.mark.parametrize("d,m", [(2, 1), (2, 2), (3, 1)])
def test_orbit_height_lemma(d, m):
    # H(phi^j(0)) < c^(d^n) for j <= n <= 5, family X^d + s^m
    ff = F3S
    phi = unicritical_family(ff, d, m)
    zero_pt = P1Point.affine(ff.domain.zero())
    c = c_const(ff, phi.num, phi.den, [zero_pt])
    orbit = orbit_symbolic(phi, zero_pt, 5)
    for n in range(6):
        cap = c ** (d**n)
        for j in range(n + 1):
            assert height_point(ff, orbit[j]) < cap


def test_n_eps_examples():
    phi = unicritical_family(F3S, 2, 1)
    zero_pt = P1Point.affine(DOM.zero())
    pi11 = next(irreducible_polys(G3, 11))
    assert n_eps(F3S, phi.num, phi.den, [zero_pt], 1.0, place_poly(G3, pi11)) == 1
    # only the norm matters for the formula; degree-41 places are large
    fake41 = Place("poly", poly=Poly.from_ints([0] * 41 + [1], G3), q=3)
    assert n_eps(F3S, phi.num, phi.den, [zero_pt], 1.0, fake41) == 2
    fq = Poly((Fraction(0), Fraction(0), Fraction(1)), QQ)
    oneq = Poly((Fraction(1),), QQ)
    with pytest.raises(OutOfDomain):
        n_eps(Q, fq, oneq, [P1Point.affine(Fraction(0))], 1.0, place_prime(2))
    with pytest.raises(NonpositiveLogArgument):
        n_eps(Q, fq, oneq, [P1Point.affine(Fraction(0))], 1.0, place_prime(3))


def test_n_eps_monotone_in_degree():
    phi = unicritical_family(F3S, 2, 1)
    zero_pt = P1Point.affine(DOM.zero())
    values = []
    for deg in (5, 11, 20, 41, 80):
        fake = Place("poly", poly=Poly.from_ints([0] * deg + [1], G3), q=3)
        values.append(n_eps(F3S, phi.num, phi.den, [zero_pt], 1.0, fake))
    assert values == sorted(values)
