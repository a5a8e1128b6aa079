"""Exception hierarchy. Every error raised on purpose derives from PrimeFreqError."""


class PrimeFreqError(Exception):
    pass


class InvalidDimensionError(PrimeFreqError, ValueError):
    pass


class DimensionMismatchError(PrimeFreqError, ValueError):
    pass


class ResourceExhaustedError(PrimeFreqError, MemoryError):
    pass


class NumericalFailureError(PrimeFreqError, ArithmeticError):
    pass


class DegenerateRowError(PrimeFreqError, ValueError):
    pass


class NotNormalizedError(PrimeFreqError, ValueError):
    pass


class EmptyInputError(PrimeFreqError, ValueError):
    pass


class InjectivityError(PrimeFreqError, ValueError):
    """Data claimed to be in the manifold regime exceeds the injectivity radius."""


class EmptyPopulationError(PrimeFreqError, ValueError):
    pass
