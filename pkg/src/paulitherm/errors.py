"""Exception types shared across the package.

Kept free of intra-package imports so both kernel backends can raise them.
"""


class NumericalError(ArithmeticError):
    """A numerical routine failed to produce a trustworthy result."""


class QuadratureError(NumericalError):
    """Adaptive quadrature hit its depth limit without converging."""


class ConvergenceError(NumericalError):
    """An iterative solver exhausted its iteration budget."""


class SingularChannelError(NumericalError):
    """Channel map is not invertible at the requested time."""


class ConfigError(ValueError):
    """A scenario configuration file or flag set is invalid."""
