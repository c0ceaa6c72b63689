"""Exception types shared across the package."""


class NotDivisible(ArithmeticError):
    """Exact division in the Eisenstein integers has a nonzero remainder."""


class NotUnit(ValueError):
    """A vector expected to have unit norm does not."""


class RingOverflow(OverflowError):
    """A ring component left the supported 128-bit signed range."""


class InvariantBreach(RuntimeError):
    """An internal mathematical invariant was violated."""


class NoReduction(InvariantBreach):
    """No normal-form syllable lowers the sde of the matrix being decomposed."""
