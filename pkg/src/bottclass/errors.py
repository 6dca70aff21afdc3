"""Exceptions shared across modules."""


class ParseError(ValueError):
    """Malformed text input; carries a 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
        self.message = message
