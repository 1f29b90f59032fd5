"""Exception hierarchy.

Two families matter to callers: :class:`InputError` means the request itself
was bad (wrong shape, violated precondition), while :class:`VerificationError`
means a mathematical check failed on otherwise well-formed input.
"""


class K3PolError(Exception):
    """Base class for all errors raised by this package."""


class InputError(K3PolError, ValueError):
    """Malformed input or a violated precondition."""


class LatticeMismatchError(InputError):
    """Vectors from different lattices were combined."""


class PreconditionError(InputError):
    pass


class UndefinedDivisibilityError(InputError):
    """The vector lies in the radical of the form, so it pairs to zero with everything."""


class DependentVectorsError(InputError):
    pass


class NotAlternatingError(InputError):
    pass


class OddDimensionError(InputError):
    pass


class SingularFormError(InputError):
    pass


class VerificationError(K3PolError):
    """A computed object failed one of its defining checks."""


class InternalMismatchError(VerificationError):
    """Two independent computations of the same quantity disagree."""


class CertificateError(VerificationError):
    """A certificate step failed; ``certificate`` holds the partial report."""

    def __init__(self, message, step=None, certificate=None):
        super().__init__(message)
        self.step = step
        self.certificate = certificate
