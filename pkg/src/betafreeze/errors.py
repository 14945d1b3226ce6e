"""Exception hierarchy for betafreeze.

Every library-raised error derives from :class:`BetafreezeError` so callers
(and the CLI) can distinguish configuration mistakes from numerical failures.
"""


class BetafreezeError(Exception):
    """Base class for all betafreeze errors."""


class InvalidConfig(BetafreezeError):
    """A parameter or configuration violates a documented precondition."""


class ConvergenceFailure(BetafreezeError):
    """An iterative numerical procedure exhausted its budget.

    Raised by the zero finder when the requested tolerance is tighter than the
    working precision can deliver, and by the tridiagonal eigensolver when the
    shift iteration exceeds its sweep budget.
    """


class DegenerateInput(BetafreezeError):
    """An input vector has coincident entries where distinct ones are required."""


class FactorizationFailure(BetafreezeError):
    """A matrix factorization failed (input not numerically positive definite)."""


class ConditionViolated(BetafreezeError):
    """A bound was requested outside its validity window."""


__all__ = [
    "BetafreezeError",
    "InvalidConfig",
    "ConvergenceFailure",
    "DegenerateInput",
    "FactorizationFailure",
    "ConditionViolated",
]
