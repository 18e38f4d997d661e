"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: DomainError -> 2, CapabilityError -> 3,
InternalError -> 1.
"""


class GaloisKitError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GaloisKitError):
    """Invalid input or violated precondition (bad modulus, zero divisor, ...)."""


class CapabilityError(GaloisKitError):
    """Input is valid but exceeds a configured computational bound.

    Raised explicitly instead of silently degrading; the message names the
    bound that was hit.
    """


class InternalError(GaloisKitError):
    """A self-audit failed: an invariant that should hold by theory does not."""
