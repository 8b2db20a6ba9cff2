"""Exception hierarchy shared by all modules."""


class MinorBranchError(Exception):
    """Base class for every error raised by this package."""


class InvalidWeightError(MinorBranchError, ValueError):
    """A weight or label violates its invariants (ordering, sign, length)."""


class DimensionMismatchError(MinorBranchError, ValueError):
    """Two arguments have incompatible ranks."""


class InvalidArgsError(MinorBranchError, ValueError):
    """Kernel arguments break the normalization alpha_n = 0, gamma_{n-1} = 0."""


class DegenerateSpectrumError(MinorBranchError, ValueError):
    """A spectrum that must have distinct entries has a repeated one."""


class DegenerateArgumentError(MinorBranchError, ValueError):
    """An orbital-integral or torus argument lies on the singular set."""


class NonGenericInputError(MinorBranchError, ValueError):
    """A sign function would be evaluated exactly at zero."""


class ConvergenceError(MinorBranchError, RuntimeError):
    """An iterative solver exhausted its iteration budget."""


class InternalConsistencyError(MinorBranchError, RuntimeError):
    """A value that is integral by theory came out non-integral."""
