"""Exception hierarchy for the kernel.

Mathematical negatives (an answer of "no" that the caller may want to
branch on, like a derivation not being inner) get their own classes so the
CLI can map them to a distinct exit code.
"""


class TwistcalcError(Exception):
    """Base class for every error raised by this package."""


class HandleMismatch(TwistcalcError):
    """Operands belong to different algebras."""


class DivisionByZero(TwistcalcError, ZeroDivisionError):
    pass


class NotDivisible(TwistcalcError):
    """Exact polynomial division requested but a nonzero remainder exists."""

    def __init__(self, msg, remainder=None):
        super().__init__(msg)
        self.remainder = remainder


class NotInvertible(TwistcalcError):
    pass


class NotInner(TwistcalcError):
    """The derivation admits no inner decomposition."""


class SigmaEqualsTau(TwistcalcError):
    """Operation requires a nontrivial twist pair."""


class NotSymmetric(TwistcalcError):
    """Operation requires a symmetric twisted derivation."""

    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample


class NotADerivation(TwistcalcError):
    """A candidate linear map fails the twisted Leibniz rule."""

    def __init__(self, msg, counterexample=None):
        super().__init__(msg)
        self.counterexample = counterexample


class NotIdempotent(TwistcalcError):
    pass


class DimensionBudgetExceeded(TwistcalcError):
    pass


class DegreeBoundExceeded(TwistcalcError):
    """A monomial-table linear map was applied beyond its stored degree."""


class NotStronglyRegular(TwistcalcError):
    pass


class NotSymmetricAlgebra(TwistcalcError):
    pass


class HypothesesFail(TwistcalcError):
    """Commutation hypotheses of the twisted-linearity statement fail."""

    def __init__(self, which, witness=None):
        super().__init__(f"hypothesis failed: {which}")
        self.which = which
        self.witness = witness


class IndexOutOfRange(TwistcalcError):
    pass


class ExprSyntaxError(TwistcalcError):
    """Expression parse failure; carries a 0-based offset and what was expected."""

    def __init__(self, position, expected, found=None):
        at = f" at position {position}" if position is not None else ""
        got = f", found {found!r}" if found is not None else ""
        super().__init__(f"expected {expected}{at}{got}")
        self.position = position
        self.expected = expected
        self.found = found
