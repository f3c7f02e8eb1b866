"""Exception hierarchy shared by every module."""


class PolyrealError(Exception):
    """Base class for library errors."""


class ResourceError(PolyrealError):
    """A configured bound (exponent range, precision budget, rounds) was hit."""


class DyadicOverflow(ResourceError):
    pass


class BudgetExceeded(ResourceError):
    pass


class DomainError(PolyrealError, ValueError):
    """An argument lies outside the domain where a function is defined."""


class NeedsRefinement(PolyrealError):
    """Raised inside evaluation when the input boxes are too coarse to proceed."""


class ParseError(PolyrealError, ValueError):
    def __init__(self, message, line=None, col=None):
        self.line = line
        self.col = col
        where = f" at {line}:{col}" if line is not None else ""
        super().__init__(f"{message}{where}")

    def to_json(self):
        return {"type": "ParseError", "message": str(self), "line": self.line, "col": self.col}
