"""Exception types shared across the package."""


class QgrassError(Exception):
    """Base class for all package errors."""


class PreconditionError(QgrassError):
    """An operation was called outside its contract (bad modulus, level,
    ambient mismatch, non-prime-power q, ...).  Maps to CLI exit code 2."""


class BudgetError(QgrassError):
    """An exhaustive path would exceed the configured budget.  The message
    carries the size estimate.  Maps to CLI exit code 2."""


class InternalCheckError(QgrassError):
    """A mathematical identity that must hold was violated; this signals an
    implementation bug, not a user error."""


class SupportCollisionError(QgrassError):
    """Two index tuples of the explicit middle-cycle formula produced the
    same subspace.  Reported as a finding rather than silently merged."""
