"""Exception hierarchy shared by every module.

The CLI maps :class:`InputError` and :class:`CapExceeded` to exit code 2 and
:class:`VerificationError` to exit code 1.
"""


class BigraphicalError(Exception):
    """Base class for all errors raised by this package."""


class InputError(BigraphicalError, ValueError):
    """Malformed or invalid user input."""


class LoopError(InputError):
    pass


class DuplicateEdgeError(InputError):
    pass


class VertexRangeError(InputError):
    pass


class InvalidParameters(InputError):
    """A parameter list whose arrangement has no central region.

    ``witness`` holds the offending cycle as a list of steps.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionError(InputError):
    """An operation was called outside its documented domain."""


class CapExceeded(BigraphicalError, RuntimeError):
    """A size cap was hit. Raised instead of returning a truncated answer."""


class VerificationError(BigraphicalError, AssertionError):
    """Two independent computations of the same quantity disagreed."""
