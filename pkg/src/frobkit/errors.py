"""Exception hierarchy.  The CLI maps these onto exit codes."""


class FrobkitError(Exception):
    exit_code = 1


class ValidationError(FrobkitError, ValueError):
    pass


class NotPointed(ValidationError):
    pass


class NotFullDimensional(ValidationError):
    pass


class RedundantFacet(ValidationError):
    pass


class PseudoReflection(ValidationError):
    pass


class ParseError(FrobkitError, ValueError):
    def __init__(self, msg: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(msg + where)


class CapExceeded(FrobkitError):
    exit_code = 2


class BoundTooSmall(FrobkitError):
    exit_code = 2


class InsufficientData(FrobkitError, ValueError):
    pass


class HypothesisViolated(FrobkitError):
    exit_code = 4
