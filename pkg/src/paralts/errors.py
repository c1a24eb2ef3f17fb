class DomainError(ValueError):
    """Raised when an input violates a structural invariant (unknown state, bad weight, ...)."""


class ParseError(ValueError):
    """A syntax error in a circuit file or a PLTS document, with 1-based position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
