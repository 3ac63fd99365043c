"""Theorem-level checkers with machine-readable reports.

Each checker computes an exact left-hand side where possible, evaluates
the published right-hand side, and reports pass / fail / vacuous-pass
(the bound exceeds the trivial value 1, so only formula plumbing is being
confirmed) / out-of-hypothesis.  Sweeps run in deterministic parameter
order; every stochastic piece records its seed.
"""

from __future__ import annotations

import csv
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import tables
from .errors import OutOfDomain, OutOfHypothesis
from .ffield import FieldCtx, extension_field, is_prime, prime_field
from .heights import HeightCtx, c_const
from .padyn import P1Point, RationalMap
from .polys import Poly
from .wreath import action_spec, fix_n, juul_bound, wreath_order

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_VACUOUS = "vacuous-pass"
STATUS_OUT = "out-of-hypothesis"


@dataclass
class Report:
    """One checker outcome.  lhs is exact where the checker can afford it;
    rhs is the bound value; status follows the outward-rounded comparison
    rule (fail iff lhs > rhs)."""

    check: str
    params: Dict[str, object]
    lhs: Optional[Fraction]
    rhs: Optional[float]
    status: str
    runtime_ms: int
    seed: Optional[int] = None
    notes: Dict[str, object] = field(default_factory=dict)

    def to_json_dict(self) -> Dict[str, object]:
        return {
            "check": self.check,
            "params": {k: str(v) for k, v in self.params.items()},
            "lhs": None if self.lhs is None else [self.lhs.numerator, self.lhs.denominator],
            "lhs_approx": None if self.lhs is None else float(self.lhs),
            "rhs": None if self.rhs is None else float(self.rhs),
            "status": self.status,
            "runtime_ms": self.runtime_ms,
            "seed": self.seed,
            "notes": {k: str(v) for k, v in self.notes.items()},
        }


def _status(lhs: Fraction, rhs) -> str:
    rhs_f = Fraction(rhs) if not isinstance(rhs, Fraction) else rhs
    if lhs > rhs_f:
        return STATUS_FAIL
    if rhs_f >= 1:
        return STATUS_VACUOUS
    return STATUS_PASS


def _params_str(params: Dict[str, object]) -> str:
    return ";".join(f"{k}={v}" for k, v in params.items())


CSV_HEADER = ["check", "params", "lhs_num", "lhs_den", "rhs", "status", "runtime_ms", "seed"]


def write_csv(path: str, rows: Iterable[Report]) -> None:
    """CSV schema: check,params,lhs_num,lhs_den,rhs,status,runtime_ms,seed
    (UTF-8, LF line endings, header mandatory)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            writer.writerow(
                [
                    r.check,
                    _params_str(r.params),
                    "" if r.lhs is None else r.lhs.numerator,
                    "" if r.lhs is None else r.lhs.denominator,
                    "" if r.rhs is None else repr(float(r.rhs)),
                    r.status,
                    r.runtime_ms,
                    "" if r.seed is None else r.seed,
                ]
            )


def _ms(t0: float) -> int:
    return int((time.perf_counter() - t0) * 1000)


# -- field / sweep plumbing --------------------------------------------------


def _prime_power(q: int) -> Tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            while q % p == 0:
                q //= p
                r += 1
            if q != 1:
                raise OutOfHypothesis(f"{q} is not a prime power")
            return p, r
    raise OutOfHypothesis("q must be >= 2")


def _field_for(q: int, r: int) -> FieldCtx:
    """GF(q^r) with the q-Frobenius recorded as the base (q may itself be
    a prime power)."""
    p, e = _prime_power(q)
    if e * r == 1:
        return prime_field(p)
    return extension_field(p, e * r, base_degree=e)


_SWEEP_CACHE: Dict[Tuple[FieldCtx, int], np.ndarray] = {}


def unicritical_periodic_table(ctx: FieldCtx, d: int) -> np.ndarray:
    """P^1 periodic counts of x -> x^d + c for every c code, cached.
    Computed with the vectorized kernels (validated against
    padyn.graph_stats in the test suite)."""
    key = (ctx, d)
    t = _SWEEP_CACHE.get(key)
    if t is None:
        affine = tables.unicritical_periodic_counts(ctx, d, range(ctx.q))
        t = np.asarray(affine, dtype=np.int64) + 1  # Infinity is fixed
        t.setflags(write=False)
        _SWEEP_CACHE[key] = t
    return t


def _unicritical_map(ctx: FieldCtx, d: int, c) -> RationalMap:
    coeffs = [c] + [ctx.zero()] * (d - 1) + [ctx.one()]
    return RationalMap(Poly(tuple(coeffs), ctx), Poly((ctx.one(),), ctx))


# -- Effective Image Size checker --------------------------------------------


def check_image_size(ctx: FieldCtx, phi: RationalMap, n: int) -> Report:
    """Effective image-size inequality for the cyclic wreath model, in the
    form normalized by |P^1| = q+1:

        | image/(q+1) - fix_n | < 7 n d |[G]^n| / (sqrt(q) (q+1)),

    with G = C_d, which is the Galois model of X^d + c when q = 1 mod d.
    """
    t0 = time.perf_counter()
    q = ctx.q
    d = phi.degree
    params = {"q": q, "map": str(phi), "n": n}

    def out(reason: str) -> Report:
        return Report("image-size", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": reason})

    if d < 2:
        return out("degree must be >= 2")
    if not phi.separable:
        return out("inseparable map (phi' = 0)")
    if phi.den.degree != 0 or any(phi.num.coeff(i) for i in range(1, d)):
        return out("wreath model wired for unicritical maps X^d + c only")
    if q % d != 1:
        return out(f"cyclic model needs q = 1 (mod {d})")
    spec = action_spec("C", d)
    if math.gcd(q, wreath_order(spec, n)) != 1:
        return out("wild: char divides the wreath order")

    c_code = ctx.encode(phi.num.coeff(0))
    succ = tables.unicritical_affine_successors(ctx, d, c_code)
    image = tables.image_count_affine(succ, n) + 1
    fixn = fix_n(spec, n)
    lhs = abs(Fraction(image, q + 1) - fixn)
    rhs = 7 * n * d * wreath_order(spec, n) / (math.sqrt(q) * (q + 1))
    status = _status(lhs, rhs)
    return Report(
        "image-size",
        params,
        lhs,
        rhs,
        status,
        _ms(t0),
        notes={"image": image, "fix_n": fixn, "residual": lhs},
    )


# -- Theorem 1.2 --------------------------------------------------------------


def thm12_rhs(q: int, r: int, d: int, m: int) -> float:
    inner = r * math.log(q) - math.log(2)
    cap = max(2 * m * math.log(q), 4 * math.log(math.factorial(d)))
    return 4 * math.log(d) / ((d - 1) * (math.log(inner) - math.log(cap))) + 7 * d / q ** (r / 2)


def _thm12_hypothesis(q: int, r: int, d: int, m: int) -> Optional[str]:
    if d < 2:
        return "degree must be >= 2"
    if q % d != 1:
        return f"q = 1 (mod {d}) fails"
    threshold = max(2 * m * d * d, 4 * d * math.log(math.factorial(d)) / math.log(q))
    if not r > threshold:
        return f"r > max(2md^2, 4d log_q(d!)) = {threshold:.3f} fails"
    return None


@dataclass
class SweepResult:
    """Aggregate report plus the per-parameter exact data of a sweep."""

    aggregate: Report
    codes: List[int]
    periodic_counts: List[int]

    def rows(self) -> Iterable[Report]:
        agg = self.aggregate
        n_points = agg.notes["n_points"]
        rhs = agg.rhs
        for code, cnt in zip(self.codes, self.periodic_counts):
            lhs = Fraction(cnt, n_points)
            params = dict(agg.params)
            params["alpha"] = code
            yield Report(agg.check + "[alpha]", params, lhs, rhs,
                         _status(lhs, rhs), 0, agg.seed)
        yield agg


def check_thm12(q: int, r: int, d: int, m: int) -> SweepResult:
    """Periodic proportion of X^d + alpha^m over GF(q^r) for every field
    generator alpha, against the effective bound."""
    t0 = time.perf_counter()
    params = {"q": q, "r": r, "d": d, "m": m}
    bad = _thm12_hypothesis(q, r, d, m)
    if bad is not None:
        rep = Report("thm12", params, None, None, STATUS_OUT, _ms(t0), notes={"reason": bad})
        return SweepResult(rep, [], [])
    ctx = _field_for(q, r)
    n_points = ctx.q + 1
    mask = tables.generator_mask(ctx)
    codes = np.nonzero(mask)[0]
    counts_all = unicritical_periodic_table(ctx, d)
    if m == 1:
        c_codes = codes
    else:
        c_codes = tables.power_table(ctx, m)[codes]
    counts = counts_all[c_codes]
    rhs = thm12_rhs(q, r, d, m)
    worst = int(counts.max())
    lhs = Fraction(worst, n_points)
    status = _status(lhs, rhs)
    mean = Fraction(int(counts.sum()), len(counts) * n_points)
    rep = Report(
        "thm12",
        params,
        lhs,
        rhs,
        status,
        _ms(t0),
        notes={
            "generators": len(codes),
            "n_points": n_points,
            "max_proportion": lhs,
            "mean_proportion": mean,
        },
    )
    return SweepResult(rep, codes.tolist(), counts.tolist())


# -- Theorem 1.3 / Corollary 1.1 ----------------------------------------------


def quadratic_mean_proportion(ctx: FieldCtx) -> Fraction:
    """Mean periodic proportion of X^2 + delta over all delta.

    This equals the mean over all degree-2 polynomials: the conjugation
    X^2+delta = mu o f o mu^{-1} has constant fiber size q^2 - q over
    delta (validated exactly by census_quadratic_average at small q)."""
    counts = unicritical_periodic_table(ctx, 2)
    return Fraction(int(counts.sum()), ctx.q * (ctx.q + 1))


def thm13_rhs(q: int, r: int) -> float:
    qr = q**r
    inner = r * math.log(q) - math.log(2)
    cap = max(2 * math.log(q), math.log(16))
    kappa = math.log(16) / (math.log(inner) - math.log(cap)) + 16 / q ** (r / 2)
    return (qr + 1) / (qr - 1) * kappa


def check_thm13(q: int, r: int) -> Report:
    """Average periodic proportion over all degree-2 polynomials
    over GF(q^r), via the weighted unicritical reduction."""
    t0 = time.perf_counter()
    params = {"q": q, "r": r}
    if q % 2 == 0:
        return Report("thm13", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": "q must be odd"})
    try:
        _prime_power(q)
    except OutOfHypothesis as e:
        return Report("thm13", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": str(e)})
    if not r > 8:
        return Report("thm13", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": "needs r > 8"})
    ctx = _field_for(q, r)
    lhs = quadratic_mean_proportion(ctx)
    rhs = thm13_rhs(q, r)
    return Report("thm13", params, lhs, rhs, _status(lhs, rhs), _ms(t0),
                  notes={"weights": "constant fibers q^2r - q^r (censused)"})


def check_cor11(p: int, r: int) -> Report:
    """22 / log log p^r bound on the quadratic average, for r > 6 log p."""
    t0 = time.perf_counter()
    params = {"p": p, "r": r}
    if not is_prime(p) or p == 2:
        return Report("cor11", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": "p must be an odd prime"})
    if not r > 6 * math.log(p):
        return Report("cor11", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": f"needs r > 6 log p = {6 * math.log(p):.3f}"})
    ctx = _field_for(p, r)
    lhs = quadratic_mean_proportion(ctx)
    rhs = 22 / math.log(r * math.log(p))
    return Report("cor11", params, lhs, rhs, _status(lhs, rhs), _ms(t0))


# -- Theorem 6.4 --------------------------------------------------------------


def thm64_rhs(q: int, r: int, d: int, m: int) -> float:
    g = math.gcd(q**r - 1, m)
    inner = r * math.log(q) - math.log(2)
    cap = max(2 * m * math.log(q), 4 * math.log(math.factorial(d)))
    first = 4 * math.log(d) * g / ((d - 1) * (math.log(inner) - math.log(cap)))
    return first + (7 * d + 2) * g / q ** (r / 2)


def check_thm64(q: int, r: int, d: int, m: int) -> Report:
    """Average periodic proportion of X^d + beta over the m-th-power image
    set (F_{q^r})^m."""
    t0 = time.perf_counter()
    params = {"q": q, "r": r, "d": d, "m": m}
    bad = _thm12_hypothesis(q, r, d, m)
    if bad is not None:
        return Report("thm64", params, None, None, STATUS_OUT, _ms(t0),
                      notes={"reason": bad})
    ctx = _field_for(q, r)
    counts = unicritical_periodic_table(ctx, d)
    image = np.unique(tables.power_table(ctx, m))
    lhs = Fraction(int(counts[image].sum()), len(image) * (ctx.q + 1))
    rhs = thm64_rhs(q, r, d, m)
    return Report("thm64", params, lhs, rhs, _status(lhs, rhs), _ms(t0),
                  notes={"image_size": len(image)})


# -- quadratic census ----------------------------------------------------------


@dataclass
class CensusResult:
    direct_average: Fraction
    weighted_average: Fraction
    fiber_sizes: Dict[int, int]
    constant_fibers: bool

    @property
    def equal(self) -> bool:
        return self.direct_average == self.weighted_average


def census_quadratic_average(ctx: FieldCtx) -> CensusResult:
    """Exhaustive census over all (q-1) q^2 degree-2 polynomials: tally the
    conjugation fibers over the unicritical representatives X^2 + delta and
    compare the direct average of periodic proportions with the weighted
    unicritical average.  Exact rational equality is the acceptance gate
    for the reduction used by check_thm13."""
    q = ctx.q
    n_points = q + 1
    add = tables.small_add_table(ctx)
    mul = tables.small_mul_table(ctx)
    codes = np.arange(q, dtype=np.int64)
    sq = tables.power_table(ctx, 2)
    inv4 = ctx.encode(ctx.from_int(4).inverse())
    two = ctx.encode(ctx.from_int(2))
    four = ctx.encode(ctx.from_int(4))

    counts_u = unicritical_periodic_table(ctx, 2)

    n_maps = (q - 1) * q * q
    succ = np.empty((q, n_maps), dtype=np.int32)
    fibers: Dict[int, int] = {c: 0 for c in range(q)}
    deltas = np.empty(n_maps, dtype=np.int64)
    k = 0
    for a in range(1, q):
        ax2 = mul[a, sq]  # a x^2 for all x
        for b in range(q):
            abx = add[ax2, mul[b, codes]]
            b2 = mul[b, b]
            tb = mul[two, b]
            for c in range(q):
                succ[:, k] = add[abx, c]
                # delta = (2b + 4ac - b^2)/4
                num = add[add[tb, mul[four, mul[a, c]]], _neg_code(ctx, b2)]
                delta = mul[inv4, num]
                deltas[k] = delta
                fibers[int(delta)] += 1
                k += 1
    per_counts = tables.batch_periodic_counts(succ) + 1
    direct = Fraction(int(per_counts.sum()), n_maps * n_points)
    weighted_num = sum(fibers[c] * int(counts_u[c]) for c in range(q))
    weighted = Fraction(weighted_num, n_maps * n_points)
    constant = len(set(fibers.values())) == 1 and next(iter(fibers.values())) == q * q - q
    return CensusResult(direct, weighted, fibers, constant)


_NEG_CACHE: Dict[FieldCtx, np.ndarray] = {}


def _neg_code(ctx: FieldCtx, code: int) -> int:
    t = _NEG_CACHE.get(ctx)
    if t is None:
        t = np.array([ctx.encode(-e) for e in ctx.elements()], dtype=np.int64)
        _NEG_CACHE[ctx] = t
    return int(t[code])


# -- Porism threshold ----------------------------------------------------------


def porism_threshold(ctx: HeightCtx, f: Poly, g: Poly, crit: Sequence[P1Point], n1: int) -> int:
    """max(N1, c^(2 d^2), (d!)^(4d)) in exact integers; the norm threshold
    above which the effective image-size conclusion applies with eps = 1."""
    if ctx.kind != "FF":
        raise OutOfDomain("the explicit threshold is for positive characteristic")
    c = c_const(ctx, f, g, crit)
    if c.denominator != 1:
        raise OutOfDomain("c constant is not an integer")  # impossible over F_q(s)
    d = max(f.degree, g.degree)
    return max(int(n1), int(c) ** (2 * d * d), math.factorial(d) ** (4 * d))


# -- random-map baseline -------------------------------------------------------


def expected_cyclic_points(n: int) -> Fraction:
    """E[#cyclic] of a uniform random self-map of an n-set:
    sum_{k=1}^{n} n!/((n-k)! n^k), exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    total = 0
    falling = 1
    power = n ** (n - 1)
    for k in range(1, n + 1):
        falling *= n - k + 1
        total += falling * power
        if k < n:
            power //= n
    return Fraction(total, n**n)


def random_map_baseline(n_points: int, trials: int, seed: int) -> Report:
    """Monte Carlo mean cyclic-point proportion of uniform random self-maps
    versus the exact expectation, flagged above 4 estimated standard
    errors.  Uses a counter-based generator, so results are reproducible
    from the seed alone."""
    t0 = time.perf_counter()
    params = {"points": n_points, "trials": trials}
    exact = expected_cyclic_points(n_points) / n_points
    rng = np.random.Generator(np.random.Philox(seed))
    props: List[Fraction] = []
    for _ in range(trials):
        t = rng.integers(0, n_points, size=n_points, dtype=np.int64)
        props.append(Fraction(tables.periodic_count(t), n_points))
    mean = sum(props, Fraction(0)) / trials
    if trials > 1:
        var = sum((p - mean) ** 2 for p in props) / (trials - 1)
        se = math.sqrt(float(var) / trials)
    else:
        se = 0.0
    lhs = abs(mean - exact)
    rhs = 4 * se
    status = STATUS_FAIL if lhs > Fraction(rhs) else STATUS_PASS
    return Report(
        "baseline",
        params,
        lhs,
        rhs,
        status,
        _ms(t0),
        seed=seed,
        notes={"exact_mean": exact, "sample_mean": mean, "standard_error": se},
    )


# -- Theorem 6.3 bound evaluator -----------------------------------------------


def check_thm63_bound(family: str, d: int, eps: float, place_norm: float) -> float:
    """4 log d / log log N(v) + 7 d / N(v)^(3/2 - eps), with numerator
    1 + 4 log d in the A_4 case."""
    juul_bound(family, d, 1)  # validates the (family, d) hypothesis
    if math.log(place_norm) <= 1:
        raise OutOfDomain("log log N(v) must be positive")
    numerator = 1 + 4 * math.log(d) if (family == "A" and d == 4) else 4 * math.log(d)
    return numerator / math.log(math.log(place_norm)) + 7 * d / place_norm ** (1.5 - eps)
