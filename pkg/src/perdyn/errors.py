"""Exception types shared across the package."""


class PerdynError(Exception):
    """Base class for all package-specific errors."""


class NotPrime(PerdynError):
    """Characteristic is not a prime number."""


class DivisionByZero(PerdynError):
    """Multiplicative inverse of zero requested."""


class BadBase(PerdynError):
    """Base-subfield degree does not divide the extension degree."""


class ZeroDenominator(PerdynError):
    """Rational map constructed with denominator zero."""


class InseparableMap(PerdynError):
    """Operation requires a map with nonzero formal derivative."""


class Indeterminate(PerdynError):
    """Both homogeneous forms vanished at a point (should be impossible
    for a normalized map over a field)."""


class SingularMobius(PerdynError):
    """Moebius transformation with vanishing determinant."""


class UnsupportedDegree(PerdynError):
    """Group family has no wired construction at this degree."""


class ExactOverflow(PerdynError):
    """Exact rational computation would exceed the configured size cap."""


class TooLarge(PerdynError):
    """Explicit enumeration is infeasible at this size."""


class ZeroElement(PerdynError):
    """Operation undefined at zero."""


class ZeroPoint(PerdynError):
    """(0 : 0) is not a projective point."""


class ZeroDenominatorPoly(PerdynError):
    """Pair height requires a nonzero denominator polynomial."""


class EmptyCritSet(PerdynError):
    """Constant c_{k,f,g,C} needs a nonempty point set."""


class OutOfDomain(PerdynError):
    """Argument outside the stated domain of a formula."""


class NonpositiveLogArgument(PerdynError):
    """Iterate-depth formula would take the log of a nonpositive number."""


class OutOfHypothesis(PerdynError):
    """Theorem hypotheses are not satisfied by these parameters."""


class DegreeOverflow(PerdynError):
    """Symbolic orbit entry exceeded the degree/size cap."""


class WildRamification(PerdynError):
    """Residue characteristic divides a local ramification index."""


class ParseError(PerdynError):
    """Map-expression syntax error; carries position and expectation."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
