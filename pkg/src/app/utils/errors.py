from typing import Any, List, Optional


class LogDerivError(Exception):
    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class DomainError(LogDerivError, ValueError):
    """Operation applied outside its domain (zero denominator, gcd(0, 0), ...)."""


class SingularPointError(DomainError):
    def __init__(self, message: str, coefficient: str = '', point: Any = None):
        self.coefficient = coefficient
        self.point = point
        super().__init__(message)


class ReducibilityEvidence(DomainError):
    """A non-invertible element of K[T]/(f) was met; `factor` is a proper factor of f."""

    def __init__(self, message: str, factor: Any = None):
        self.factor = factor
        super().__init__(message)


class HypothesisError(LogDerivError):
    def __init__(self, message: str, violations: Optional[List[Any]] = None):
        self.violations = violations or []
        super().__init__(message)


class UnitIdealSignal(LogDerivError):
    """The ideal is the whole ring: the two operators have no common solution."""


class ParseError(LogDerivError):
    def __init__(self, message: str, source: str = '', offset: Optional[int] = None):
        self.source = source
        self.offset = offset
        self.line, self.column = self._locate(source, offset)
        super().__init__(message)

    @staticmethod
    def _locate(source: str, offset: Optional[int]) -> tuple:
        if offset is None:
            return None, None
        head = source[:offset]
        line = head.count('\n') + 1
        column = offset - (head.rfind('\n') + 1) + 1
        return line, column

    def display(self) -> str:
        if self.line is None:
            return self.message
        text_line = self.source.splitlines()[self.line - 1] if self.source else ''
        highlight = ' ' * (self.column - 1) + '^'
        return f"{self.message} (line {self.line}, column {self.column}):\n  {text_line}\n  {highlight}"
