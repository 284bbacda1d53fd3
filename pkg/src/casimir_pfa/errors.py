"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class CasimirError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CasimirError, ValueError):
    """An argument lies outside the domain where the quantity is defined."""


class ConfigurationError(CasimirError, ValueError):
    """A model, table or run configuration is unusable as given."""


class MaterialParseError(ConfigurationError):
    """A material table line could not be parsed."""

    def __init__(self, message: str, path=None, lineno: int | None = None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where += f"{path}"
        if lineno is not None:
            where += f":{lineno}"
        super().__init__(f"{where}: {message}" if where else message)


class ValidationError(CasimirError, ValueError):
    """Input data violates an invariant (monotonicity, sign, range)."""

    def __init__(self, message: str, path=None):
        self.path = path
        super().__init__(f"{path}: {message}" if path is not None else message)


class NumericalError(CasimirError, ArithmeticError):
    """Quadrature or differentiation failed to reach the requested accuracy.

    Carries the best estimate obtained and its error bound so callers can
    decide whether the result is still usable.
    """

    def __init__(self, message: str, estimate: float = float("nan"), bound: float = float("nan")):
        self.estimate = estimate
        self.bound = bound
        super().__init__(f"{message} (estimate={estimate!r}, bound={bound!r})")


class UnsupportedVariantError(CasimirError, NotImplementedError):
    """The requested operation has no closed form for this geometry."""
