"""Shared exception types."""


class TraceLogicError(Exception):
    """Base class for all library errors."""


class ParseError(TraceLogicError):
    """Syntax error with a 1-based source position."""

    def __init__(self, line: int, column: int, expected: str, found: str):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        super().__init__(f"{line}:{column}: expected {expected}, found {found}")


class UnsupportedOperatorError(TraceLogicError):
    """Formula uses a connective the chosen backend cannot handle."""


class UntimedTraceError(TraceLogicError):
    """Metric connective evaluated over a trace without timestamps."""


class AlphabetMismatchError(TraceLogicError):
    """Trace letters mention atoms outside the automaton alphabet."""


class BudgetError(TraceLogicError):
    """Automaton construction exceeded its state budget."""


class SizeLimitError(TraceLogicError):
    """Requested enumeration exceeds the configured size bound."""
