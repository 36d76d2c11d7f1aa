"""
Errors raised by the period-finding pipeline
"""


class QpfError(Exception):
    pass


class DomainArgumentError(QpfError, ValueError):
    """Qubit index, period, offset or bit string outside its allowed range"""


class CapacityError(QpfError):
    """The requested problem size does not fit the simulator"""


class InvalidOracleError(QpfError, ValueError):
    pass


class PostSelectionError(QpfError):
    pass


class DegenerateProfileError(QpfError):
    """No qubit of the profile carries a_z above the zero threshold"""


class RefineError(QpfError):
    pass


class NoConvergenceError(QpfError):
    pass


class ConfigurationError(QpfError, ValueError):
    pass


class PatternMismatchError(QpfError):
    pass
