"""Exception hierarchy.

Every error carries an ``exit_code`` so the command line front end can map
failures onto its stable contract (2 input, 3 numerical, 4 resource).
"""


class OpdiscError(Exception):
    """Base class for all library errors."""

    exit_code = 3


class InputError(OpdiscError, ValueError):
    """Invalid arguments: wrong shapes, out-of-range values, bad operators."""

    exit_code = 2


class DomainError(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NotUnitary(InputError):
    pass


class NotHermitian(InputError):
    pass


class NotNormalized(InputError):
    pass


class NotOrthogonal(InputError):
    pass


class PartitionMismatch(InputError):
    pass


class ConfigError(InputError):
    """A problem configuration could not be parsed.

    ``location`` names the offending line/column or field path.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location:
            message = f"{location}: {message}"
        super().__init__(message)


class NumericalError(OpdiscError):
    exit_code = 3


class NoConvergence(NumericalError):
    pass


class PartitionInequalityViolation(NumericalError, AssertionError):
    """A partition beat full entanglement inside the small-angle regime.

    This can only signal a bug, so it is also an ``AssertionError``.
    """

    def __init__(self, message, partition=None):
        self.partition = partition
        super().__init__(message)


class ResourceLimit(OpdiscError):
    exit_code = 4
