"""Exception hierarchy.

Every error carries an ``exit_code`` so the command-line front end can map
library failures onto distinct process exit statuses.
"""


class QCBError(ValueError):
    """Base class for all library errors."""

    exit_code = 10


class ParseError(QCBError):
    exit_code = 3


class NotHermitianError(QCBError):
    exit_code = 4


class NotPositiveError(QCBError):
    exit_code = 5


class TraceError(QCBError):
    exit_code = 6


class DimensionError(QCBError):
    exit_code = 7


class SizeCapError(QCBError):
    exit_code = 8


class NumericalConsistencyError(QCBError):
    exit_code = 9


class UnsupportedInputError(QCBError):
    """Input is valid as a state but outside the domain of the operation."""

    exit_code = 11


class SingularMetricError(UnsupportedInputError):
    exit_code = 12


class EigensolverError(QCBError):
    exit_code = 13


class NotTracePreservingError(QCBError):
    exit_code = 14
