import random
from fractions import Fraction

import pytest

from perdyn.errors import SingularMobius, ZeroDenominator
from perdyn.ffield import field_from_order, prime_field
from perdyn.mapexpr import build_map
from perdyn.padyn import (
    INFINITY,
    P1Point,
    RationalMap,
    conjugate,
    evaluate,
    graph_stats,
    image_size,
    successor_table,
)
from perdyn.polys import Poly


def unicritical(ctx, d, c):
    return RationalMap(
        Poly(tuple([c] + [ctx.zero()] * (d - 1) + [ctx.one()]), ctx),
        Poly((ctx.one(),), ctx),
    )


def test_rational_map_normalization():
    g5 = prime_field(5)
    phi = RationalMap.from_ints([0, 1, 1], [0, 1], g5)  # (X^2+X)/X
    assert phi.degree == 1
    assert phi.num == Poly.from_ints([1, 1], g5)
    assert phi.den == Poly.from_ints([1], g5)
    assert RationalMap.from_ints([0, 0, 1], [1], g5).separable
    with pytest.raises(ZeroDenominator):
        RationalMap.from_ints([1], [0], g5)


def test_inseparable_flag_char2():
    g2 = prime_field(2)
    phi = RationalMap.from_ints([0, 0, 1], [1], g2)  # X^2, phi' = 2X = 0
    assert not phi.separable


def test_evaluate_examples():
    g5 = prime_field(5)
    sq = RationalMap.from_ints([0, 0, 1], [1], g5)
    assert evaluate(sq, INFINITY).is_infinity
    assert evaluate(sq, P1Point.affine(g5.from_int(2))) == P1Point.affine(g5.from_int(4))
    inv = RationalMap.from_ints([1], [0, 1], g5)
    assert evaluate(inv, P1Point.affine(g5.zero())).is_infinity


def test_successor_table_examples():
    g5 = prime_field(5)
    assert successor_table(build_map("X^2+1", g5), g5) == [1, 2, 0, 0, 2, 5]
    assert successor_table(build_map("X", g5), g5) == [0, 1, 2, 3, 4, 5]
    const = RationalMap.from_ints([3], [1], g5)
    assert const.degenerate
    assert successor_table(const, g5) == [3] * 6


def test_graph_stats_examples():
    g5 = prime_field(5)
    gs = graph_stats(successor_table(build_map("X^2+1", g5), g5))
    assert gs.periodic_count == 4
    assert gs.cycle_lengths == (1, 3)
    assert gs.image_sizes == (4, 4)
    assert gs.periodic_proportion == Fraction(4, 6)

    gs2 = graph_stats(successor_table(build_map("X^2", g5), g5))
    assert gs2.periodic_count == 3
    assert gs2.image_sizes == (4, 3, 3)
    assert gs2.periodic_proportion == Fraction(1, 2)

    ident = graph_stats(list(range(7)))
    assert ident.periodic_count == 7
    assert ident.cycle_lengths == (1,) * 7


def test_image_size_examples():
    g5 = prime_field(5)
    sq = build_map("X^2", g5)
    assert image_size(sq, g5, 1) == 4
    assert image_size(sq, g5, 2) == 3


@pytest.mark.parametrize("q", [5, 7, 9, 11, 13])
def test_quadratic_image_identity(q):
    ctx = field_from_order(q)
    for c in ctx.elements():
        assert image_size(unicritical(ctx, 2, c), ctx, 1) == (q + 3) // 2


def test_conjugation_examples():
    g5 = prime_field(5)
    f = build_map("2X^2+2X+1", g5)
    assert conjugate(f, (2, 1, 0, 1)) == build_map("X^2+2", g5)
    sq = build_map("X^2", g5)
    assert conjugate(sq, (1, 0, 0, 1)) == sq
    assert conjugate(sq, (1, 1, 0, 1)).degree == 2
    with pytest.raises(SingularMobius):
        conjugate(sq, (1, 2, 2, 4))


def test_conjugation_invariance_random():
    rng = random.Random(96217)
    for _ in range(100):
        q = rng.choice([5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 49])
        ctx = field_from_order(q)
        els = list(ctx.elements())
        num = [rng.choice(els) for _ in range(rng.randint(2, 4))]
        den = [rng.choice(els) for _ in range(rng.randint(1, 3))]
        if all(not c for c in num) or all(not c for c in den):
            continue
        phi = RationalMap(Poly(tuple(num), ctx), Poly(tuple(den), ctx))
        if phi.degree < 1:
            continue
        while True:
            a, b, c, d = (rng.choice(els) for _ in range(4))
            if a * d - b * c:
                break
        psi = conjugate(phi, (a, b, c, d))
        assert psi.degree == phi.degree
        gs_phi = graph_stats(successor_table(phi, ctx))
        gs_psi = graph_stats(successor_table(psi, ctx))
        assert gs_phi.periodic_count == gs_psi.periodic_count
        assert gs_phi.cycle_lengths == gs_psi.cycle_lengths


def test_degree_one_maps_are_permutations():
    for q in (5, 9, 13):
        ctx = field_from_order(q)
        phi = build_map("X+1", ctx)
        gs = graph_stats(successor_table(phi, ctx))
        assert gs.periodic_count == q + 1
        assert set(gs.image_sizes) == {q + 1}


def test_graph_invariants_sampled():
    rng = random.Random(777)
    for q in (5, 9, 27, 81, 243, 729):
        ctx = field_from_order(q)
        els = list(ctx.elements())
        c = rng.choice(els)
        gs = graph_stats(successor_table(unicritical(ctx, 2, c), ctx))
        assert all(a >= b for a, b in zip(gs.image_sizes, gs.image_sizes[1:]))
        assert gs.image_sizes[-1] == gs.periodic_count
        assert sum(gs.cycle_lengths) == gs.periodic_count
        assert gs.periodic_count >= 1  # infinity is fixed


def test_fiber_bound_image_size():
    # |phi(P^1)| >= (q+1)/d
    rng = random.Random(555)
    for q in (3, 5, 7, 9, 11, 13, 25, 27):
        ctx = field_from_order(q)
        els = list(ctx.elements())
        maps = []
        for d in (2, 3, 4):
            maps += [unicritical(ctx, d, c) for c in els]
        for _ in range(20):
            num = [rng.choice(els) for _ in range(rng.randint(1, 5))]
            den = [rng.choice(els) for _ in range(rng.randint(1, 5))]
            if all(not c for c in den):
                continue
            phi = RationalMap(Poly(tuple(num), ctx), Poly(tuple(den), ctx))
            if 1 <= phi.degree <= 4:
                maps.append(phi)
        for phi in maps:
            d = phi.degree
            if d < 1:
                continue
            assert image_size(phi, ctx, 1) * d >= q + 1
