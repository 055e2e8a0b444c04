"""Exception types raised across the package."""


class MinorSignError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MinorSignError, ValueError):
    """Malformed matrix, polynomial, index set or document."""


class CapacityError(MinorSignError):
    """Principal-minor enumeration was requested above the configured cap."""

    def __init__(self, n: int, cap: int):
        self.n = n
        self.cap = cap
        super().__init__(
            f"dimension {n} exceeds the principal-minor enumeration cap {cap} "
            f"(raise it with --cap or MINORSIGN_CAP)"
        )


class ContractViolation(MinorSignError, AssertionError):
    """A caller broke a documented precondition (e.g. an interval endpoint is a root)."""
