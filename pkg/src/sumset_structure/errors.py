"""Exception hierarchy.

Input problems subclass ``ValueError``; ``TheoremViolation`` and friends
signal that an exact computation disagreed with a proven statement, which
can only mean a bug in this package.
"""


class InvalidSet(ValueError):
    pass


class CapacityError(ValueError):
    pass


class EmptySet(ValueError):
    pass


class InvalidArgs(ValueError):
    pass


class NotDivisible(InvalidArgs):
    pass


class DegenerateFamily(InvalidArgs):
    pass


class ConstraintViolation(InvalidArgs):
    pass


class PreconditionUnmet(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """An exact check contradicted a theorem; ``counterexample`` says where."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class ConsistencyError(RuntimeError):
    pass


class MismatchError(RuntimeError):
    pass
