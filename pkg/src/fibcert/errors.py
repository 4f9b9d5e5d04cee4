"""Exception hierarchy shared across the package.

Parse errors carry source positions, engine errors cover rejected or
non-terminating rewriting, validation errors cover malformed input data,
and the three algebraic errors (StrictGapViolation, HypothesisViolation,
InconclusiveAtCutoff) report failures of the preconditions that make
truncated Novikov arithmetic sound.
"""

from __future__ import annotations


class FibcertError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(FibcertError):
    """Malformed presentation, word, or input file."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"line {line}, col {col}: {message}"
        super().__init__(message)


class EngineError(FibcertError):
    """Normal-form engine rejected its input or exceeded its step budget."""


class ValidationError(FibcertError):
    """Structurally invalid data: bad quotient table, character, or element."""


class StrictGapViolation(FibcertError):
    """The phi-minimal part of an element is not a single monomial, so
    leading-term inversion is not available at any cutoff."""


class HypothesisViolation(FibcertError):
    """The Q-value margin hypothesis of the perturbation lemma fails."""


class InconclusiveAtCutoff(FibcertError):
    """Truncated computation can neither certify nor refute at this cutoff."""

    def __init__(self, message: str, cutoff=None):
        self.cutoff = cutoff
        super().__init__(message)
