class WSSpectraError(Exception):
    """Generic exception for when a computation cannot be carried out"""


class ParameterError(WSSpectraError, ValueError):
    pass


class DomainError(WSSpectraError, ValueError):
    """Raised when a function is evaluated outside of its domain."""


class NoExtremum(WSSpectraError):
    """The effective potential has no interior minimum to expand around."""


class FormulaInvalid(WSSpectraError):
    pass


class ConsistencyError(WSSpectraError):
    """Two equivalent evaluation paths disagree beyond tolerance."""


class DivergentIntegral(WSSpectraError):
    pass


class NoEigenvalueInBracket(WSSpectraError):
    pass


class NotConverged(WSSpectraError):
    pass


class ConfigError(WSSpectraError):
    pass


class WSSpectraWarning(UserWarning):
    """Advisory raised for inputs outside the regime the approximations assume."""
