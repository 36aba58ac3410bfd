"""Exception types shared across the toolkit."""


class QitkError(Exception):
    """Base class for all library errors."""


class DimensionError(QitkError, ValueError):
    pass


class NotPositiveError(QitkError, ValueError):
    """A matrix that should be positive semidefinite is not."""

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class ParameterError(QitkError, ValueError):
    pass


class SingularMarginalError(QitkError, ValueError):
    def __init__(self, message, eigenvalue):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class NotIsometricError(QitkError):
    def __init__(self, message, gram):
        super().__init__(message)
        self.gram = gram


class Unavailable(QitkError):
    """Quantity has no known closed form."""


class Unsupported(QitkError):
    """Input lies in a region the method does not cover."""


class ConvergenceError(QitkError):
    pass


class SizeGuardError(QitkError, MemoryError):
    pass
