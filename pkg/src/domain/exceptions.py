"""
Domain Exceptions - Errors raised by the word and language machinery.

Custom exceptions that represent invalid inputs or unmet preconditions of the
combinatorial operations. They are caught and translated by the CLI layer.
"""

from typing import Iterable, Optional


class DomainError(Exception):
    """Base exception for all domain errors."""

    pass


class ValidationError(DomainError):
    """Raised when an input fails a basic validation rule."""

    pass


class WordError(DomainError):
    """Base exception for word and alphabet errors."""

    pass


class EmptyWordError(WordError):
    """Raised when an operation requires a nonempty word."""

    def __init__(self, operation: Optional[str] = None):
        message = "empty input" if operation is None else f"empty input to {operation}"
        super().__init__(message)
        self.operation = operation


class InvalidAlphabetError(WordError):
    """Raised when an alphabet is empty or repeats a letter."""

    def __init__(self, letters: Iterable[str], reason: str):
        self.letters = tuple(letters)
        super().__init__(f"Invalid alphabet {''.join(self.letters)!r}: {reason}")
        self.reason = reason


class AlphabetMismatchError(WordError):
    """Raised when a word uses symbols outside the alphabet it is read over."""

    def __init__(self, symbols: Iterable[str], alphabet: Iterable[str]):
        self.symbols = tuple(symbols)
        self.alphabet = tuple(alphabet)
        super().__init__(
            f"Symbols {sorted(set(self.symbols))} are not all in alphabet {list(self.alphabet)}"
        )


class OversizedAlphabetError(WordError):
    """Raised when an exhaustive sweep over orders would be too large."""

    def __init__(self, size: int, limit: int):
        super().__init__(f"Alphabet of size {size} exceeds the permutation limit {limit}")
        self.size = size
        self.limit = limit


class NonPrimitiveWordError(WordError):
    """Raised when a primitive word is required; use primitive_root first."""

    def __init__(self, word: str, root: str, multiplicity: int):
        super().__init__(
            f"Word {word!r} is not primitive: it is ({root})^{multiplicity}; "
            "apply primitive_root first"
        )
        self.word = word
        self.root = root
        self.multiplicity = multiplicity


class LanguageError(DomainError):
    """Base exception for language queries."""

    pass


class NotAFactorError(LanguageError):
    """Raised when a word is not a factor of the language queried."""

    def __init__(self, word: str):
        super().__init__(f"Word {word!r} is not a factor of the language")
        self.word = word


class NotBispecialError(LanguageError):
    """Raised when the order condition is requested for a non-bispecial word."""

    def __init__(self, word: str):
        super().__init__(f"Word {word!r} is not bispecial in the language")
        self.word = word


class InsufficientSampleError(LanguageError):
    """Raised when a sample holds too few occurrences to measure return times."""

    def __init__(self, word: str, occurrences: int):
        super().__init__(
            f"insufficient sample: {word!r} occurs {occurrences} time(s), at least 3 needed"
        )
        self.word = word
        self.occurrences = occurrences


class PreconditionError(DomainError):
    """Raised when an operation precondition does not hold."""

    def __init__(self, operation: str, reason: str):
        super().__init__(f"Precondition of {operation} failed: {reason}")
        self.operation = operation
        self.reason = reason


class DirectiveError(DomainError):
    """Base exception for directive word errors."""

    pass


class InvalidDirectiveError(DirectiveError):
    """Raised when a directive word cannot be parsed or is not valid for its use."""

    def __init__(self, text: str, reason: str):
        super().__init__(f"Invalid directive word {text!r}: {reason}")
        self.text = text
        self.reason = reason


class NoFiniteBoundError(DirectiveError):
    """Raised when a language contains infinitely many clustering words."""

    def __init__(self, directive: str):
        super().__init__(
            f"no finite bound applies: {directive} generates infinitely many clustering words"
        )
        self.directive = directive


class ConstructionError(DomainError):
    """Raised when a word construction receives an unsuitable input."""

    def __init__(self, construction: str, reason: str):
        super().__init__(f"{construction}: {reason}")
        self.construction = construction
        self.reason = reason
