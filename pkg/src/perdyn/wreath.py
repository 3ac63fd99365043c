"""Fixed-point proportions fix_n of iterated wreath products [G]^n acting
on S^n, for the standard actions of S_d, A_d, D_d and Z/dZ.

fix_n is computed by a recursion over the fixed-point-count distribution
of G: an element ((w_t)_t, h) of [G]^n fixes some (s', t) iff h fixes t
and w_t has a fixed point, so with F_1 = fix(rho),

    F_n = (1/|G|) * sum_j fpc[j] * (1 - (1 - F_{n-1})^j).

The recursion is validated against a literal enumeration oracle
(fix_n_oracle) in the test suite before anything downstream trusts it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Context, Decimal, ROUND_CEILING, ROUND_FLOOR
from fractions import Fraction
from itertools import permutations, product
from typing import Dict, Optional, Tuple

from .errors import ExactOverflow, OutOfHypothesis, TooLarge, UnsupportedDegree

ENUMERATION_CAP = 8
ORACLE_ORDER_CAP = 10**7
DEFAULT_EXACT_BITS = 10**6

_CEIL = Context(prec=40, rounding=ROUND_CEILING)
_FLOOR = Context(prec=40, rounding=ROUND_FLOOR)


@dataclass(frozen=True)
class ActionSpec:
    """A finite group action on {0..d-1}, described by its fixed-point-count
    distribution.  perms holds the concrete elements when the group was
    built by enumeration (needed by the oracle)."""

    family: str
    d: int
    group_order: int
    fpc: Tuple[Tuple[int, int], ...]  # sorted (fixed_points, count) pairs
    perms: Optional[Tuple[Tuple[int, ...], ...]] = None

    def fpc_dict(self) -> Dict[int, int]:
        return dict(self.fpc)

    @property
    def fix1(self) -> Fraction:
        return Fraction(sum(c for j, c in self.fpc if j >= 1), self.group_order)


def _derangements(m: int) -> int:
    # D_k = (k-1)(D_{k-1} + D_{k-2})
    if m == 0:
        return 1
    d = [1, 0]
    for k in range(2, m + 1):
        d.append((k - 1) * (d[k - 1] + d[k - 2]))
    return d[m]


def _fpc_from_perms(perms) -> Dict[int, int]:
    fpc: Dict[int, int] = {}
    for g in perms:
        j = sum(1 for i, gi in enumerate(g) if gi == i)
        fpc[j] = fpc.get(j, 0) + 1
    return fpc


def _perm_sign(g) -> int:
    seen = [False] * len(g)
    sign = 1
    for i in range(len(g)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = g[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def action_spec(family: str, d: int) -> ActionSpec:
    """Standard action of S_d, A_d, D_d or C_d on {0..d-1}.

    For d <= 8 the distribution comes from literal enumeration of the
    group; the S and C closed forms are cross-checked against it.  D_d is
    the dihedral group of order 2d and needs d >= 3.
    """
    if d < 2:
        raise UnsupportedDegree("degree must be >= 2")
    if family == "D" and d < 3:
        raise UnsupportedDegree("dihedral family needs d >= 3")
    if family not in ("S", "A", "D", "C"):
        raise UnsupportedDegree(f"unknown family {family!r}")

    if family in ("A", "D") and d > ENUMERATION_CAP:
        raise UnsupportedDegree(
            f"family {family} beyond enumeration cap d={ENUMERATION_CAP}"
        )

    perms: Optional[Tuple[Tuple[int, ...], ...]] = None
    if d <= ENUMERATION_CAP:
        if family == "S":
            perms = tuple(permutations(range(d)))
        elif family == "A":
            perms = tuple(g for g in permutations(range(d)) if _perm_sign(g) == 1)
        elif family == "C":
            perms = tuple(tuple((i + k) % d for i in range(d)) for k in range(d))
        elif family == "D":
            rots = [tuple((i + k) % d for i in range(d)) for k in range(d)]
            refl = [tuple((k - i) % d for i in range(d)) for k in range(d)]
            perms = tuple(rots + refl)
        fpc = _fpc_from_perms(perms)
        order = len(perms)
    else:
        if family == "S":
            order = math.factorial(d)
            fpc = {j: math.comb(d, j) * _derangements(d - j) for j in range(d + 1)}
            fpc = {j: c for j, c in fpc.items() if c}
        else:  # family == "C"
            order = d
            fpc = {d: 1, 0: d - 1}

    if d <= ENUMERATION_CAP:
        if family == "S":
            closed = {j: math.comb(d, j) * _derangements(d - j) for j in range(d + 1)}
            closed = {j: c for j, c in closed.items() if c}
            if closed != fpc:
                raise AssertionError("S_d closed form disagrees with enumeration")
        elif family == "C":
            if {j: c for j, c in fpc.items()} != {d: 1, 0: d - 1}:
                raise AssertionError("C_d closed form disagrees with enumeration")

    return ActionSpec(
        family=family,
        d=d,
        group_order=order,
        fpc=tuple(sorted(fpc.items())),
        perms=perms,
    )


def custom_spec(d: int, fpc: Dict[int, int]) -> ActionSpec:
    order = sum(fpc.values())
    if fpc.get(d, 0) < 1:
        raise ValueError("distribution must include the identity (j = d)")
    return ActionSpec("custom", d, order, tuple(sorted(fpc.items())))


def _wreath_exponent(spec: ActionSpec, n: int) -> int:
    return (spec.d**n - 1) // (spec.d - 1)


def predicted_order_bits(spec: ActionSpec, n: int) -> float:
    return _wreath_exponent(spec, n) * math.log2(spec.group_order)


def wreath_order(spec: ActionSpec, n: int):
    """|[G]^n| = |G|^(1 + d + ... + d^(n-1))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if predicted_order_bits(spec, n) > 10**8:
        raise TooLarge("wreath order would not fit in memory")
    return spec.group_order ** _wreath_exponent(spec, n)


def fix_n(
    spec: ActionSpec,
    n: int,
    mode: str = "exact",
    max_denominator_bits: int = DEFAULT_EXACT_BITS,
):
    """Proportion of elements of [G]^n with at least one fixed point on S^n.

    exact mode returns the true Fraction and refuses (ExactOverflow) when
    the predicted denominator exceeds the bit cap; upper_float /
    lower_float modes round outward at every step, so their float results
    are certified bounds (the recursion is monotone in F).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if mode == "exact":
        if predicted_order_bits(spec, n) > max_denominator_bits:
            raise ExactOverflow(
                "predicted denominator exceeds "
                f"{max_denominator_bits} bits; use mode='upper_float'"
            )
        order = spec.group_order
        f = spec.fix1
        for _ in range(n - 1):
            acc = Fraction(0)
            miss = 1 - f
            for j, cnt in spec.fpc:
                if j == 0:
                    continue
                acc += cnt * (1 - miss**j)
            f = acc / order
        return f
    if mode == "upper_float":
        return _fix_n_directed(spec, n, up=True)
    if mode == "lower_float":
        return _fix_n_directed(spec, n, up=False)
    raise ValueError(f"unknown mode {mode!r}")


def _pow_directed(x: Decimal, j: int, ctx: Context) -> Decimal:
    out = Decimal(1)
    for _ in range(j):
        out = ctx.multiply(out, x)
    return out


def _fix_n_directed(spec: ActionSpec, n: int, up: bool) -> float:
    # To push the result up, the inner (1-F)^j must be pushed down, and
    # conversely; "main" rounds toward the result, "anti" away from it.
    main, anti = (_CEIL, _FLOOR) if up else (_FLOOR, _CEIL)
    order = Decimal(spec.group_order)
    one = Decimal(1)
    u = main.divide(Decimal(sum(c for j, c in spec.fpc if j >= 1)), order)
    u = min(max(u, Decimal(0)), one)
    for _ in range(n - 1):
        miss = anti.subtract(one, u)
        miss = min(max(miss, Decimal(0)), one)
        total = Decimal(0)
        for j, cnt in spec.fpc:
            if j == 0:
                continue
            tj = _pow_directed(miss, j, anti)
            term = main.subtract(one, tj)
            total = main.add(total, main.multiply(Decimal(cnt), term))
        u = main.divide(total, order)
        u = min(max(u, Decimal(0)), one)
    f = float(u)
    if up and Decimal(f) < u:
        f = math.nextafter(f, math.inf)
    elif not up and Decimal(f) > u:
        f = math.nextafter(f, -math.inf)
    return f


def _wreath_elements(spec: ActionSpec, n: int):
    if n == 1:
        return list(spec.perms)
    lower = _wreath_elements(spec, n - 1)
    return [
        (tup, h) for tup in product(lower, repeat=spec.d) for h in spec.perms
    ]


def _wreath_points(d: int, n: int):
    if n == 1:
        return list(range(d))
    lower = _wreath_points(d, n - 1)
    return [(sp, t) for sp in lower for t in range(d)]


def _act(elem, point, n: int):
    if n == 1:
        return elem[point]
    w, h = elem
    sp, t = point
    return (_act(w[t], sp, n - 1), h[t])


def fix_n_oracle(spec: ActionSpec, n: int) -> Fraction:
    """Literal enumeration: build every element of [G]^n, act on all of
    S^n, count elements with a fixed point.  Validation oracle for the
    fix_n recursion; infeasible sizes raise TooLarge."""
    if spec.perms is None:
        raise TooLarge("oracle needs concrete group elements")
    if predicted_order_bits(spec, n) > math.log2(ORACLE_ORDER_CAP) + 1:
        raise TooLarge("wreath order exceeds the enumeration cap")
    order = wreath_order(spec, n)
    if order > ORACLE_ORDER_CAP:
        raise TooLarge("wreath order exceeds the enumeration cap")
    elements = _wreath_elements(spec, n)
    points = _wreath_points(spec.d, n)
    assert len(elements) == order
    hits = 0
    for e in elements:
        for pt in points:
            if _act(e, pt, n) == pt:
                hits += 1
                break
    return Fraction(hits, order)


def juul_bound(family: str, d: int, n: int):
    """Published upper bounds for fix_n of the standard actions: 2/(n+2)
    for S_d, A_d (d>=5) and D_d (d>=3); 2/(n+1-log n) for A_4 (natural
    log); 2/((d-1)(n+1)) for C_d.  Exact bounds come back as Fractions,
    the A_4 bound as a float."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if family == "S":
        if d < 2:
            raise OutOfHypothesis("S_d bound needs d >= 2")
        return Fraction(2, n + 2)
    if family == "A":
        if d >= 5:
            return Fraction(2, n + 2)
        if d == 4:
            return 2.0 / (n + 1 - math.log(n))
        raise OutOfHypothesis("A_d bound needs d >= 4")
    if family == "D":
        if d < 3:
            raise OutOfHypothesis("D_d bound needs d >= 3")
        return Fraction(2, n + 2)
    if family == "C":
        if d < 2:
            raise OutOfHypothesis("C_d bound needs d >= 2")
        return Fraction(2, (d - 1) * (n + 1))
    raise OutOfHypothesis(f"no published bound for family {family!r}")
