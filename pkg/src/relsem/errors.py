"""Exception types shared across the package."""


class GroundMismatchError(ValueError):
    """Raised when an operation mixes relations over different ground sets."""


class FormatError(ValueError):
    """Raised when a .rel, .part or .cay file cannot be parsed."""


class NotEquivalenceError(ValueError):
    """Raised when a relation expected to be an equivalence is not one.

    The message names the first violated law (reflexive, symmetric or
    transitive) together with a witness pair.
    """


class RefinementError(ValueError):
    """Raised when a partition pair expected to be a refinement is not."""


class AssociativityError(ValueError):
    """Raised by table validation; carries the first failing triple."""

    def __init__(self, i, j, k, message=None):
        self.triple = (i, j, k)
        super().__init__(message or f"associativity fails at triple ({i}, {j}, {k})")


class NotCommutativeBandError(ValueError):
    """Raised when a subset expected to be a commutative band is not."""


class NotInClassError(ValueError):
    """Raised when a canonical model is requested for a non-member."""


class ClosureOverflowError(RuntimeError):
    """Raised when a closure exceeds its configured element cap."""


class GuardExceededError(RuntimeError):
    """Raised when a requested computation exceeds a configured guard."""
