"""Exceptions raised by the elam pipeline."""

from typing import Iterable, Optional


class ElamError(Exception):
    """Base class for every error the pipeline reports to users."""


class ParseError(ElamError):
    """Source text does not match the grammar (or the requested dialect)."""

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
        expected: Iterable[str] = (),
    ):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        location = f"{line}:{column}: " if line is not None else ""
        hint = ""
        if self.expected:
            hint = " (expected one of: " + ", ".join(sorted(self.expected)) + ")"
        super().__init__(f"{location}{message}{hint}")


class DialectError(ElamError):
    """A term uses constructs of the other calculus."""


class StuckTerm(ElamError):
    """A term is neither a value nor reducible; signals ill-typed input."""

    def __init__(self, term, reason: str = "no reduction rule applies"):
        self.term = term
        self.reason = reason
        super().__init__(f"stuck term ({reason})")


class OutOfFuel(ElamError):
    """The step budget ran out before a result was reached."""


class InferFailure(ElamError):
    """Type inference rejected a term."""

    def __init__(self, term, reason: str, line: Optional[int] = None):
        self.term = term
        self.reason = reason
        self.line = line
        super().__init__(f"line {line}: {reason}" if line is not None else reason)

    def at(self, line: Optional[int]) -> "InferFailure":
        """The same failure, located at a source line."""
        return InferFailure(self.term, self.reason, line)


class PrefixClash(ElamError):
    """Two logged choice sites overlap, which the lowering never produces."""


class ChooserExhausted(ElamError):
    """A scripted or enumerating chooser has no value left to offer."""


class NotEnumerable(ElamError):
    """The oracle cannot enumerate the members of a type (function types)."""


class Undecided(ElamError):
    """The oracle cannot decide membership within its budget."""
