"""qitk: numerics for finite-dimensional and Gaussian quantum information."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    DensityMatrix,
    partial_trace,
    partial_transpose,
    purify,
    relative_entropy,
    schmidt_decompose,
    shannon_entropy,
    tensor,
    von_neumann_entropy,
)
from .errors import (  # noqa: E402
    ConvergenceError,
    DimensionError,
    NotIsometricError,
    NotPositiveError,
    ParameterError,
    QitkError,
    SingularMarginalError,
    SizeGuardError,
    Unavailable,
    Unsupported,
)

__all__ = [
    "DensityMatrix",
    "partial_trace",
    "partial_transpose",
    "purify",
    "relative_entropy",
    "schmidt_decompose",
    "shannon_entropy",
    "tensor",
    "von_neumann_entropy",
    "ConvergenceError",
    "DimensionError",
    "NotIsometricError",
    "NotPositiveError",
    "ParameterError",
    "QitkError",
    "SingularMarginalError",
    "SizeGuardError",
    "Unavailable",
    "Unsupported",
]
