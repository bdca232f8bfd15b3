"""Exception types shared across the package.

The CLI maps these onto exit codes: usage problems exit 1, data problems
exit 2, anything unexpected exits 3.
"""


class DataError(Exception):
    """Input data cannot be used (missing file, bad content, degenerate dataset)."""


class ParseError(DataError):
    """An edge-list line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        self.line_number = line_number
        super().__init__(f"line {line_number}: {message}")


class ParameterError(ValueError):
    """A generator or run parameter is outside its documented range."""
