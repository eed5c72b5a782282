"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: parameter, pole, resource and numerical
failures exit with 4; I/O failures (``SequenceFormatError`` and ``OSError``)
exit with 3.
"""


class HilbertGroupsError(Exception):
    """Base class for all library errors."""


class InvalidParameterError(HilbertGroupsError, ValueError):
    """A precondition on a scalar parameter was violated."""


class PoleError(InvalidParameterError):
    """An identity or kernel was evaluated at (or within 1e-9 of) a pole."""


class ResourceLimitError(HilbertGroupsError):
    """A requested window, matrix or FFT length exceeds the configured maximum."""


class NumericalError(HilbertGroupsError):
    """A solver did not reach its residual target.

    The achieved residual is kept on ``residual``.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SequenceFormatError(HilbertGroupsError):
    """A sequence CSV file is malformed."""
