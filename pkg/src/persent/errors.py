"""Exception classes shared across the package."""


class PersentError(Exception):
    """Base class for all persent errors."""


class InputFormatError(PersentError):
    """A point or barcode file could not be parsed.

    Carries the 1-based line number of the offending line when known.
    """

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class BudgetExceededError(PersentError):
    """The complex would exceed the simplex budget.

    Raised instead of silently truncating; lower the threshold or the
    dimension cap, or raise the budget.
    """


class DegenerateBarcodeError(PersentError):
    """No positive-length intervals are available for classification."""
