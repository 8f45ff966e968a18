"""Exception hierarchy shared by the library and the CLI exit codes."""


class ParkingError(Exception):
    """Base class for all parklab errors."""


class ParameterError(ParkingError, ValueError):
    """An input violates a domain constraint (m > n, p outside [0, 1], ...)."""


class BudgetExceededError(ParkingError):
    """An exhaustive enumeration would exceed its configured size cap."""


class SelfCheckError(ParkingError, ArithmeticError):
    """A numerical self-check (normalization, clamp, sandwich) failed."""
