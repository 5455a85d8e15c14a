"""Exception types shared by all modules."""


class SepfolError(Exception):
    """Base class for every error raised by the package."""


class ParseError(SepfolError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class ArityConflict(SepfolError):
    pass


class CaptureError(SepfolError):
    pass


class SchemaError(SepfolError):
    pass


class OverlapError(SepfolError):
    pass


class SeparationError(SepfolError):
    pass


class NotSF(SepfolError):
    pass


class NonSentence(SepfolError):
    pass


class NotPrenex(SepfolError):
    pass


class BudgetExceeded(SepfolError):
    pass


class IneligibleOccurrence(SepfolError):
    pass


class NotRelationalMonadic(SepfolError):
    pass


class MissingInterpretation(SepfolError):
    pass
