"""Exception hierarchy shared across the package."""


class QFBenchError(Exception):
    """Base class for all package errors."""


class InvalidGateError(QFBenchError, ValueError):
    pass


class DimensionMismatchError(QFBenchError, ValueError):
    pass


class InvalidStateError(QFBenchError, ValueError):
    pass


class InvalidDistributionError(QFBenchError, ValueError):
    pass


class InvalidParameterError(QFBenchError, ValueError):
    pass


class UnsupportedError(QFBenchError, NotImplementedError):
    pass


class DegenerateStateError(QFBenchError, ArithmeticError):
    """A statistic's denominator is too small to be estimated reliably."""


class UnstableStatisticError(QFBenchError, ArithmeticError):
    """Too many bootstrap resamples left the statistic undefined."""


class InvalidIntervalError(QFBenchError, ValueError):
    pass


class ConfigError(QFBenchError, ValueError):
    pass


class CampaignAbortedError(QFBenchError, RuntimeError):
    pass
