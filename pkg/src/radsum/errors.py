"""Exception hierarchy for the radsum package."""


class RadsumError(Exception):
    """Base class for all radsum errors."""


class DomainError(RadsumError, ValueError):
    """An argument is outside the operation's domain (bad j/k, negative cap, ...)."""


class ConditioningError(RadsumError, ArithmeticError):
    """A computation sits too close to a pole or a zero of a denominator."""


class PrecisionError(RadsumError, ArithmeticError):
    """A certified comparison or series evaluation could not reach the target accuracy."""


class IdentityError(RadsumError, AssertionError):
    """An exact identity the library guarantees was violated (internal bug or bad data)."""


class BudgetError(RadsumError, ValueError):
    """A requested computation would exceed the configured memory/size budget."""


class HeightCapError(RadsumError, ValueError):
    """A zeta evaluation was requested above the configured Im-height cap."""


class ZeroTableParseError(RadsumError, ValueError):
    """A zeros file could not be parsed; carries the offending line number."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ZeroTableDataError(RadsumError, ValueError):
    """A parsed ordinate failed validation against the zeta engine."""
