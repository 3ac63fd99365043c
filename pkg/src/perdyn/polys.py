"""Dense univariate polynomials and rational functions over an arbitrary
coefficient field.

A *domain* is any object with ``zero()``, ``one()`` and ``from_int(n)``
methods whose elements support ``+ - * /``, equality and hashing.  Finite
fields (``ffield.FieldCtx``), the rationals (``QQ``) and rational-function
fields (``RatFuncField``) all qualify, so the same polynomial code serves
map normalization, height computations and symbolic orbits.
"""

from __future__ import annotations

from fractions import Fraction


class Poly:
    """Polynomial with dense coefficient storage, constant term first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs", "domain")

    def __init__(self, coeffs, domain):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)
        self.domain = domain

    @classmethod
    def zero(cls, domain) -> "Poly":
        return cls((), domain)

    @classmethod
    def constant(cls, c, domain) -> "Poly":
        return cls((c,), domain)

    @classmethod
    def x(cls, domain) -> "Poly":
        return cls((domain.zero(), domain.one()), domain)

    @classmethod
    def from_ints(cls, ints, domain) -> "Poly":
        return cls(tuple(domain.from_int(n) for n in ints), domain)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, i: int):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.domain.zero()

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return Poly((self.domain.from_int(other),), self.domain)
        return Poly((other,), self.domain)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(
            tuple(self.coeff(i) + other.coeff(i) for i in range(n)), self.domain
        )

    __radd__ = __add__

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs), self.domain)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero or other.is_zero:
            return Poly((), self.domain)
        zero = self.domain.zero()
        out = [zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(tuple(out), self.domain)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        return Poly(tuple(a * c for a in self.coeffs), self.domain)

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly((), self.domain), self
        inv_lead = self.domain.one() / other.lead
        rem = list(self.coeffs)
        qdeg = self.degree - other.degree
        quot = [self.domain.zero()] * (qdeg + 1)
        for k in range(qdeg, -1, -1):
            c = rem[other.degree + k] * inv_lead
            quot[k] = c
            if not c:
                continue
            for j, b in enumerate(other.coeffs):
                rem[j + k] = rem[j + k] - c * b
        return Poly(tuple(quot), self.domain), Poly(tuple(rem), self.domain)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly((self.domain.one(),), self.domain)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(self.domain.one() / self.lead)

    def derivative(self) -> "Poly":
        if self.degree < 1:
            return Poly((), self.domain)
        return Poly(
            tuple(
                self.coeffs[i] * self.domain.from_int(i)
                for i in range(1, len(self.coeffs))
            ),
            self.domain,
        )

    def __call__(self, x):
        """Horner evaluation; also composes when x is itself a Poly."""
        if not self.coeffs:
            if isinstance(x, Poly):
                return Poly((), x.domain)
            return self.domain.zero()
        acc = self.coeffs[-1]
        if isinstance(x, Poly):
            acc = Poly((acc,), x.domain)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def root_multiplicity(self, a) -> int:
        """Order of vanishing at a domain element."""
        m = 0
        f = self
        x_minus_a = Poly((-a, self.domain.one()), self.domain)
        while not f.is_zero:
            q, rem = divmod(f, x_minus_a)
            if not rem.is_zero:
                break
            m += 1
            f = q
        return m

    def __repr__(self):
        return f"Poly({format_poly(self)})"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
    if a.is_zero:
        return a
    return a.monic()


def format_poly(f: Poly, var: str = "x") -> str:
    if f.is_zero:
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeff(i)
        if not c:
            continue
        cs = str(c)
        if i == 0:
            parts.append(cs)
        else:
            xs = var if i == 1 else f"{var}^{i}"
            if cs == "1":
                parts.append(xs)
            elif any(ch in cs for ch in "+-/ "):
                parts.append(f"({cs})*{xs}")
            else:
                parts.append(f"{cs}*{xs}")
    return " + ".join(parts)


class RationalDomain:
    """The field of rational numbers, with Fraction elements."""

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n: int):
        return Fraction(n)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalDomain)

    def __hash__(self):
        return hash("RationalDomain")


QQ = RationalDomain()


class RatFunc:
    """Reduced quotient of polynomials over a finite field, with monic
    denominator: the element type of F_q(s)."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_zero and g.degree > 0:
            num = num // g
            den = den // g
        inv_lead = den.domain.one() / den.lead
        self.num = num.scale(inv_lead)
        self.den = den.scale(inv_lead)

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return not self.num.is_zero

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, Poly):
            return RatFunc(other, Poly((other.domain.one(),), other.domain))
        if isinstance(other, int):
            dom = self.num.domain if self.num.coeffs else self.den.domain
            one = Poly((dom.one(),), dom)
            return RatFunc(Poly((dom.from_int(other),), dom), one)
        return NotImplemented

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __pow__(self, n: int):
        if n < 0:
            if self.is_zero:
                raise ZeroDivisionError("negative power of zero")
            return RatFunc(self.den**-n, self.num**-n)
        return RatFunc(self.num**n, self.den**n)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __repr__(self):
        num = format_poly(self.num, "s")
        if self.is_polynomial:
            return num
        return f"({num})/({format_poly(self.den, 's')})"


class RatFuncField:
    """Domain adapter for F_q(s): RatFunc elements with coefficients in
    the given finite field."""

    def __init__(self, coeff_field):
        self.coeff_field = coeff_field

    def _one_poly(self):
        return Poly((self.coeff_field.one(),), self.coeff_field)

    def zero(self):
        return RatFunc(Poly((), self.coeff_field), self._one_poly())

    def one(self):
        return RatFunc(self._one_poly(), self._one_poly())

    def from_int(self, n: int):
        return RatFunc(
            Poly((self.coeff_field.from_int(n),), self.coeff_field), self._one_poly()
        )

    def from_poly(self, f: Poly):
        return RatFunc(f, self._one_poly())

    def gen(self):
        """The element s."""
        return self.from_poly(Poly.x(self.coeff_field))

    def __eq__(self, other):
        return isinstance(other, RatFuncField) and self.coeff_field == other.coeff_field

    def __hash__(self):
        return hash(("RatFuncField", self.coeff_field))

    def __repr__(self):
        return f"F{self.coeff_field.q}(s)"
