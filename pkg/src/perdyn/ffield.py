"""Exact arithmetic in GF(p^r): canonical field construction, element
enumeration, generator tests and irreducible-polynomial streams.

Elements are dense coefficient vectors in the power basis, reduced mod p
and mod a monic irreducible modulus.  The canonical modulus for (p, r) is
the first monic irreducible of degree r in ascending coefficient order,
so field constructions are reproducible across runs.
"""

from __future__ import annotations

from typing import Iterator, Optional

from .errors import BadBase, DivisionByZero, NotPrime
from .polys import Poly

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond desk scale."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n: int) -> list:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FieldElem:
    """Element of a FieldCtx: a length-r vector of residues mod p."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: "FieldCtx", coeffs):
        self.ctx = ctx
        self.coeffs = coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx._add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx._sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx._neg(self.coeffs))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx._mul(self.coeffs, other.coeffs))

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx._inv(self.coeffs))

    def __int__(self):
        return self.ctx.encode(self)

    def __repr__(self):
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if c == 1 else f"{c}{xs}")
        return " + ".join(parts) if parts else "0"


class FieldCtx:
    """Immutable descriptor of GF(p^r) with a fixed monic irreducible
    modulus; also serves as the coefficient domain for Poly."""

    __slots__ = ("p", "r", "modulus", "q", "base_degree", "canonical", "_red", "_hash")

    def __init__(self, p: int, r: int, modulus, base_degree: int = 1, canonical: bool = True):
        self.p = p
        self.r = r
        self.modulus = tuple(int(c) % p for c in modulus)
        self.q = p**r
        self.base_degree = base_degree
        self.canonical = canonical
        # x^e mod modulus for e in [r, 2r-2], used to fold products back.
        red = {}
        cur = list(self.modulus[:r])  # x^r = -(low part) since modulus monic
        cur = [(-c) % p for c in cur]
        for e in range(r, 2 * r - 1):
            red[e] = tuple(cur)
            top = cur[r - 1]
            cur = [0] + cur[: r - 1]
            if top:
                for i in range(r):
                    cur[i] = (cur[i] + top * red[r][i]) % p
        self._red = red
        self._hash = hash((self.p, self.r, self.modulus, self.base_degree))

    def __eq__(self, other):
        if isinstance(other, FieldCtx):
            return (
                self.p == other.p
                and self.r == other.r
                and self.modulus == other.modulus
                and self.base_degree == other.base_degree
            )
        return NotImplemented

    def __hash__(self):
        return self._hash

    def __repr__(self):
        if self.r == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.r})"

    # -- tuple-level arithmetic ------------------------------------------

    def _add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a, b):
        p, r = self.p, self.r
        if r == 1:
            return (a[0] * b[0] % p,)
        prod = [0] * (2 * r - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                prod[i + j] += x * y
        out = [c % p for c in prod[:r]]
        for e in range(r, 2 * r - 1):
            c = prod[e] % p
            if c:
                row = self._red[e]
                for i in range(r):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def _inv(self, a):
        if not any(a):
            raise DivisionByZero("inverse of zero")
        # Extended Euclid in GF(p)[x] against the modulus.
        p = self.p
        r0 = list(self.modulus)
        r1 = list(a) + [0]
        s0, s1 = [0] * (self.r + 1), [1] + [0] * self.r

        def deg(v):
            for i in range(len(v) - 1, -1, -1):
                if v[i]:
                    return i
            return -1

        while deg(r1) > 0:
            d0, d1 = deg(r0), deg(r1)
            inv_lead = pow(r1[d1], p - 2, p)
            while d0 >= d1:
                c = r0[d0] * inv_lead % p
                if c:
                    shift = d0 - d1
                    for i in range(d1 + 1):
                        r0[i + shift] = (r0[i + shift] - c * r1[i]) % p
                    for i in range(len(s1) - shift):
                        s0[i + shift] = (s0[i + shift] - c * s1[i]) % p
                d0 = deg(r0)
            r0, r1 = r1, r0
            s0, s1 = s1, s0
        d1 = deg(r1)
        if d1 < 0:
            raise DivisionByZero("element not invertible (modulus not irreducible?)")
        c = pow(r1[0], p - 2, p)
        return tuple(s1[i] * c % p for i in range(self.r))

    # -- constructors and views ------------------------------------------

    def elem(self, coeffs) -> FieldElem:
        cs = [int(c) % self.p for c in coeffs]
        if len(cs) > self.r:
            raise ValueError(f"coefficient vector longer than r={self.r}")
        cs += [0] * (self.r - len(cs))
        return FieldElem(self, tuple(cs))

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.r)

    def one(self) -> FieldElem:
        return FieldElem(self, (1,) + (0,) * (self.r - 1))

    def from_int(self, n: int) -> FieldElem:
        """Image of the integer n under Z -> GF(p^r)."""
        return FieldElem(self, (n % self.p,) + (0,) * (self.r - 1))

    def gen(self) -> FieldElem:
        """The class of x (zero when r = 1, where the modulus is x)."""
        if self.r == 1:
            return self.zero()
        return FieldElem(self, (0, 1) + (0,) * (self.r - 2))

    def encode(self, e: FieldElem) -> int:
        """Order-preserving integer code: sum c_i p^i, c_{r-1} most
        significant, matching ascending coefficient-tuple order."""
        n = 0
        for c in reversed(e.coeffs):
            n = n * self.p + c
        return n

    def decode(self, n: int) -> FieldElem:
        cs = []
        for _ in range(self.r):
            cs.append(n % self.p)
            n //= self.p
        return FieldElem(self, tuple(cs))

    def elements(self) -> Iterator[FieldElem]:
        """All q elements exactly once, in ascending coefficient-tuple
        order (0 first)."""
        for n in range(self.q):
            yield self.decode(n)


def prime_field(p: int) -> FieldCtx:
    """GF(p) with modulus x."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return FieldCtx(p, 1, (0, 1))


def extension_field(p: int, r: int, base_degree: int = 1) -> FieldCtx:
    """GF(p^r) with the canonical modulus: the first monic irreducible of
    degree r in ascending coefficient order over GF(p)."""
    if r < 1:
        raise ValueError("extension degree must be >= 1")
    base = prime_field(p)
    if r % base_degree != 0:
        raise BadBase(f"base degree {base_degree} does not divide {r}")
    modulus = next(irreducible_polys(base, r))
    return FieldCtx(p, r, tuple(c.coeffs[0] for c in modulus.coeffs), base_degree=base_degree)


def field_with_modulus(base: FieldCtx, modulus: Poly) -> FieldCtx:
    """GF(p^deg) presented with a caller-supplied irreducible modulus over
    a prime field (used when specializing families at a place, where the
    place itself is the natural modulus)."""
    if base.r != 1:
        raise ValueError("custom-modulus fields are supported over prime bases only")
    if not is_irreducible(modulus):
        raise ValueError("modulus is not irreducible")
    coeffs = tuple(c.coeffs[0] for c in modulus.monic().coeffs)
    return FieldCtx(base.p, modulus.degree, coeffs, canonical=False)


def field_from_order(q: int) -> FieldCtx:
    """Canonical GF(q) for a prime power q."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1:
                raise NotPrime(f"{q} is not a prime power")
            return prime_field(p) if r == 1 else extension_field(p, r)
    raise NotPrime(f"{q} is not a prime power")


def generates(ctx: FieldCtx, a: FieldElem, base_degree: Optional[int] = None) -> bool:
    """True iff the orbit of a under x -> x^(p^s) has size exactly r/s,
    i.e. GF(p^s)(a) is the whole field.  s defaults to the base degree
    recorded in the context."""
    s = ctx.base_degree if base_degree is None else base_degree
    if ctx.r % s != 0:
        raise BadBase(f"base degree {s} does not divide {ctx.r}")
    q0 = ctx.p**s
    target = ctx.r // s
    b = a**q0
    size = 1
    while b != a:
        b = b**q0
        size += 1
        if size > target:
            break
    return size == target


def frobenius_orbit_size(ctx: FieldCtx, a: FieldElem, base_degree: Optional[int] = None) -> int:
    """Size of the orbit of a under the base-field Frobenius."""
    s = ctx.base_degree if base_degree is None else base_degree
    if ctx.r % s != 0:
        raise BadBase(f"base degree {s} does not divide {ctx.r}")
    q0 = ctx.p**s
    b = a**q0
    size = 1
    while b != a:
        b = b**q0
        size += 1
    return size


def is_irreducible(f: Poly) -> bool:
    """Rabin test over the coefficient field of f: x^(q^n) = x mod f and
    gcd(x^(q^(n/l)) - x, f) = 1 for every prime l | n."""
    ctx = f.domain
    n = f.degree
    if n < 1:
        return False
    f = f.monic()
    if n == 1:
        return True
    q = ctx.q
    x = Poly.x(ctx)

    def frob(g: Poly) -> Poly:
        # g^q mod f by square-and-multiply
        result = Poly((ctx.one(),), ctx)
        base = g
        e = q
        while e:
            if e & 1:
                result = (result * base) % f
            base = (base * base) % f
            e >>= 1
        return result

    powers = [x]
    for _ in range(n):
        powers.append(frob(powers[-1]))
    if powers[n] != x:
        return False
    from .polys import poly_gcd

    for ell in _prime_factors(n):
        g = poly_gcd(powers[n // ell] - x, f)
        if g.degree != 0:
            return False
    return True


def irreducible_polys(ctx: FieldCtx, r: int) -> Iterator[Poly]:
    """All monic irreducibles of degree r over ctx, in ascending
    coefficient order (tail coefficients enumerated like field elements)."""
    if r < 1:
        raise ValueError("degree must be >= 1")
    q = ctx.q
    one = ctx.one()
    for tail in range(q**r):
        coeffs = []
        t = tail
        for _ in range(r):
            coeffs.append(ctx.decode(t % q))
            t //= q
        f = Poly(tuple(coeffs) + (one,), ctx)
        if is_irreducible(f):
            yield f


_EMBED_CACHE: dict = {}


def embedding(src: FieldCtx, dst: FieldCtx):
    """Field isomorphism src -> dst between two presentations of the same
    GF(p^r), found by locating the first root of src's modulus in dst.
    Cached per context pair."""
    if (src.p, src.r) != (dst.p, dst.r):
        raise ValueError("contexts present different fields")
    key = (src, dst)
    fn = _EMBED_CACHE.get(key)
    if fn is not None:
        return fn
    mod = Poly.from_ints(src.modulus, dst)
    root = None
    for cand in dst.elements():
        if not mod(cand):
            root = cand
            break
    if root is None:
        raise ValueError("modulus has no root in target (not isomorphic?)")

    powers = [dst.one()]
    for _ in range(src.r - 1):
        powers.append(powers[-1] * root)

    def embed(e: FieldElem) -> FieldElem:
        acc = dst.zero()
        for c, pw in zip(e.coeffs, powers):
            if c:
                acc = acc + pw * dst.from_int(c)
        return acc

    _EMBED_CACHE[key] = embed
    return embed
