"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the domain an operation is defined on."""


class NumericalError(RuntimeError):
    """A computation failed at working precision (non-convergence, indefinite
    matrix where a PSD one was required, and similar)."""
