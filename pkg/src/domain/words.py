"""
Words - Ordered alphabets, letter permutations and finite words.

Immutable value objects shared by every other module, plus the elementary
word operations: conjugates, primitivity, reversal, lexicographic comparison
under a chosen order and the separating letter of a word.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union, overload

from src.domain.exceptions import (
    AlphabetMismatchError,
    EmptyWordError,
    InvalidAlphabetError,
    OversizedAlphabetError,
    ValidationError,
)

PERMUTATION_LIMIT = 8


class Comparison(str, Enum):
    """Result of a lexicographic comparison."""

    LT = "lt"
    EQ = "eq"
    GT = "gt"


@dataclass(frozen=True)
class OrderedAlphabet:
    """
    Finite alphabet with a total order.

    The position of a letter in ``letters`` is its rank: ``letters[0]`` is the
    smallest letter.
    """

    letters: tuple[str, ...]

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        object.__setattr__(self, "letters", letters)
        if not letters:
            raise InvalidAlphabetError(letters, "an alphabet needs at least one letter")
        if len(set(letters)) != len(letters):
            raise InvalidAlphabetError(letters, "letters must be pairwise distinct")

    @classmethod
    def parse(cls, text: str) -> OrderedAlphabet:
        """Build an order from a letter string: ``"acb"`` means a<c<b."""
        return cls(tuple(text))

    @classmethod
    def of(cls, letters: Iterable[str]) -> OrderedAlphabet:
        """Alphabet of the distinct given letters in their natural order."""
        return cls(tuple(sorted(set(letters))))

    @property
    def size(self) -> int:
        return len(self.letters)

    @cached_property
    def ranks(self) -> dict[str, int]:
        """Letter to rank mapping."""
        return {letter: index for index, letter in enumerate(self.letters)}

    def rank(self, letter: str) -> int:
        return self.ranks[letter]

    def key(self, symbols: Sequence[str]) -> tuple[int, ...]:
        """Sort key of a symbol sequence under this order."""
        ranks = self.ranks
        return tuple(ranks[symbol] for symbol in symbols)

    def less(self, x: str, y: str) -> bool:
        return self.ranks[x] < self.ranks[y]

    def orders(self, limit: int = PERMUTATION_LIMIT) -> list[OrderedAlphabet]:
        """
        All total orders on these letters.

        Orders are listed in lexicographic order of their letter sequences.

        Raises:
            OversizedAlphabetError: If the alphabet is larger than ``limit``
        """
        if self.size > limit:
            raise OversizedAlphabetError(self.size, limit)
        return [OrderedAlphabet(order) for order in permutations(sorted(self.letters))]

    def restrict(self, letters: Iterable[str]) -> OrderedAlphabet:
        """Sub-alphabet on the given letters, keeping this order."""
        keep = set(letters)
        return OrderedAlphabet(tuple(letter for letter in self.letters if letter in keep))

    def reversed(self) -> OrderedAlphabet:
        return OrderedAlphabet(tuple(reversed(self.letters)))

    def same_letters(self, other: OrderedAlphabet) -> bool:
        return set(self.letters) == set(other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[str]:
        return iter(self.letters)

    def __contains__(self, letter: object) -> bool:
        return letter in self.ranks

    def __str__(self) -> str:
        return "<".join(self.letters)


@dataclass(frozen=True)
class LetterPermutation:
    """
    Bijection on a set of letters.

    Stored as ``(letter, image)`` pairs sorted by letter so that equal
    permutations compare and hash equal.
    """

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self) -> None:
        pairs = tuple(sorted((str(x), str(y)) for x, y in self.pairs))
        object.__setattr__(self, "pairs", pairs)
        sources = [x for x, _ in pairs]
        targets = [y for _, y in pairs]
        if len(set(sources)) != len(sources):
            raise ValidationError(f"Permutation maps a letter twice: {pairs}")
        if set(sources) != set(targets):
            raise ValidationError(f"Mapping {dict(pairs)} is not a bijection of its letters")

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str]) -> LetterPermutation:
        return cls(tuple(mapping.items()))

    @classmethod
    def from_images(cls, letters: Sequence[str], images: Sequence[str]) -> LetterPermutation:
        """Permutation sending ``letters[i]`` to ``images[i]``."""
        if len(letters) != len(images):
            raise ValidationError(
                f"Expected {len(letters)} images for letters {''.join(letters)}, got {len(images)}"
            )
        return cls(tuple(zip(letters, images)))

    @classmethod
    def parse(cls, images: str, alphabet: OrderedAlphabet) -> LetterPermutation:
        """
        Parse an image string given in alphabetical letter order.

        ``"cab"`` over {a,b,c} means a->c, b->a, c->b.
        """
        return cls.from_images(sorted(alphabet.letters), tuple(images))

    @classmethod
    def identity(cls, alphabet: Iterable[str]) -> LetterPermutation:
        return cls(tuple((letter, letter) for letter in alphabet))

    @classmethod
    def symmetric(cls, order: OrderedAlphabet) -> LetterPermutation:
        """The order-reversing permutation a_i -> a_{r+1-i}."""
        return cls.from_images(order.letters, tuple(reversed(order.letters)))

    @classmethod
    def all(cls, alphabet: Iterable[str]) -> list[LetterPermutation]:
        """Every permutation of the letters, identity first."""
        letters = sorted(alphabet)
        return [cls.from_images(letters, images) for images in permutations(letters)]

    @cached_property
    def mapping(self) -> dict[str, str]:
        return dict(self.pairs)

    @property
    def letters(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.pairs)

    @property
    def images(self) -> str:
        """Images in alphabetical letter order, the format accepted by ``parse``."""
        return "".join(y for _, y in self.pairs)

    @property
    def is_identity(self) -> bool:
        return all(x == y for x, y in self.pairs)

    def __call__(self, letter: str) -> str:
        return self.mapping.get(letter, letter)

    def inverse(self) -> LetterPermutation:
        return LetterPermutation(tuple((y, x) for x, y in self.pairs))

    def compose(self, other: LetterPermutation) -> LetterPermutation:
        """The permutation ``self o other`` (apply ``other`` first)."""
        letters = set(self.letters) | set(other.letters)
        return LetterPermutation(tuple((x, self(other(x))) for x in letters))

    def __str__(self) -> str:
        return ",".join(f"{x}->{y}" for x, y in self.pairs)


@dataclass(frozen=True)
class Word:
    """Finite word over an ordered alphabet."""

    symbols: tuple[str, ...]
    alphabet: OrderedAlphabet

    def __post_init__(self) -> None:
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        ranks = self.alphabet.ranks
        if any(symbol not in ranks for symbol in symbols):
            raise AlphabetMismatchError(symbols, self.alphabet.letters)

    @classmethod
    def parse(
        cls,
        text: str,
        alphabet: Union[OrderedAlphabet, str, None] = None,
    ) -> Word:
        """
        Read a word of single-character letters.

        Args:
            text: The letters of the word
            alphabet: Alphabet (or letter string); defaults to the sorted
                distinct letters of ``text``

        Raises:
            ValidationError: If ``text`` is empty and no alphabet is given
        """
        if isinstance(alphabet, str):
            alphabet = OrderedAlphabet.parse(alphabet)
        if alphabet is None:
            if not text:
                raise ValidationError("An empty word needs an explicit alphabet")
            alphabet = OrderedAlphabet.of(text)
        return cls(tuple(text), alphabet)

    @classmethod
    def empty(cls, alphabet: OrderedAlphabet) -> Word:
        return cls((), alphabet)

    @property
    def is_empty(self) -> bool:
        return not self.symbols

    @property
    def letters_present(self) -> tuple[str, ...]:
        """Letters occurring in the word, in alphabet order."""
        present = set(self.symbols)
        return tuple(letter for letter in self.alphabet.letters if letter in present)

    def count(self, letter: str) -> int:
        return self.symbols.count(letter)

    def rotate(self, shift: int) -> Word:
        """The conjugate starting at index ``shift``."""
        if not self.symbols:
            return self
        shift %= len(self.symbols)
        return Word(self.symbols[shift:] + self.symbols[:shift], self.alphabet)

    def relabel(self, permutation: LetterPermutation) -> Word:
        return Word(tuple(permutation(symbol) for symbol in self.symbols), self.alphabet)

    def with_alphabet(self, alphabet: OrderedAlphabet) -> Word:
        return Word(self.symbols, alphabet)

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)

    @overload
    def __getitem__(self, index: int) -> str: ...

    @overload
    def __getitem__(self, index: slice) -> Word: ...

    def __getitem__(self, index: Union[int, slice]) -> Union[str, Word]:
        if isinstance(index, slice):
            return Word(self.symbols[index], self.alphabet)
        return self.symbols[index]

    def __add__(self, other: Word) -> Word:
        return Word(self.symbols + other.symbols, self.alphabet)

    def __mul__(self, power: int) -> Word:
        return Word(self.symbols * power, self.alphabet)

    def __str__(self) -> str:
        return "".join(self.symbols)


def _require_nonempty(word: Word, operation: str) -> None:
    if word.is_empty:
        raise EmptyWordError(operation)


def conjugates(word: Word) -> list[Word]:
    """
    All cyclic rotations of a word, starting with the word itself.

    Duplicates are kept, so a non-primitive word yields repeated entries.

    Raises:
        EmptyWordError: If the word is empty
    """
    _require_nonempty(word, "conjugates")
    return [word.rotate(index) for index in range(len(word))]


def primitive_root(word: Word) -> tuple[Word, int]:
    """
    Decompose a word as ``root ** multiplicity`` with a primitive root.

    Raises:
        EmptyWordError: If the word is empty
    """
    _require_nonempty(word, "primitive_root")
    symbols = word.symbols
    n = len(symbols)
    for period in range(1, n + 1):
        if n % period == 0 and symbols[:period] * (n // period) == symbols:
            return word[:period], n // period
    raise AssertionError("unreachable: the full length is always a period")


def is_primitive(word: Word) -> bool:
    """True if the word is not a proper power of a shorter word."""
    return primitive_root(word)[1] == 1


def reverse(word: Word) -> Word:
    return Word(word.symbols[::-1], word.alphabet)


def is_palindrome(word: Word) -> bool:
    return word.symbols == word.symbols[::-1]


def lex_compare(u: Word, v: Word, order: OrderedAlphabet) -> Comparison:
    """
    Compare two words lexicographically under ``order``.

    A proper prefix compares smaller than the longer word.

    Raises:
        AlphabetMismatchError: If a symbol of either word is not in ``order``
    """
    ranks = order.ranks
    for word in (u, v):
        if any(symbol not in ranks for symbol in word.symbols):
            raise AlphabetMismatchError(word.symbols, order.letters)
    left, right = order.key(u.symbols), order.key(v.symbols)
    if left < right:
        return Comparison.LT
    if left > right:
        return Comparison.GT
    return Comparison.EQ


def separating_letter(word: Word) -> Optional[str]:
    """
    The letter that flanks every other letter of the word, if unique.

    Every letter other than the separating letter x is preceded by x (unless
    it is the first letter) and followed by x (unless it is the last). A
    power of a single letter returns that letter.

    Raises:
        EmptyWordError: If the word is empty
    """
    _require_nonempty(word, "separating_letter")
    symbols = word.symbols
    last = len(symbols) - 1
    candidates = []
    for x in word.letters_present:
        if all(
            (i == 0 or symbols[i - 1] == x) and (i == last or symbols[i + 1] == x)
            for i, symbol in enumerate(symbols)
            if symbol != x
        ):
            candidates.append(x)
    return candidates[0] if len(candidates) == 1 else None


def occurrences(pattern: Sequence[str], text: Sequence[str]) -> list[int]:
    """Start indices (0-based, overlapping) of ``pattern`` in ``text``."""
    pattern, text = tuple(pattern), tuple(text)
    m = len(pattern)
    if m == 0:
        return list(range(len(text) + 1))
    first = pattern[0]
    return [
        i
        for i in range(len(text) - m + 1)
        if text[i] == first and text[i : i + m] == pattern
    ]


def is_factor(pattern: Sequence[str], text: Sequence[str]) -> bool:
    """True if ``pattern`` occurs contiguously in ``text``."""
    pattern, text = tuple(pattern), tuple(text)
    m = len(pattern)
    return any(text[i : i + m] == pattern for i in range(len(text) - m + 1))


def lyndon_words(alphabet: OrderedAlphabet, max_length: int) -> Iterator[Word]:
    """
    Lyndon words of length 1 to ``max_length``, in lexicographic order.

    One representative per conjugacy class of primitive words, generated
    with Duval's successor rule.
    """
    if max_length < 1:
        return
    size = alphabet.size
    letters = alphabet.letters
    digits = [-1]
    while digits:
        digits[-1] += 1
        yield Word(tuple(letters[d] for d in digits), alphabet)
        period = len(digits)
        while len(digits) < max_length:
            digits.append(digits[len(digits) - period])
        while digits and digits[-1] == size - 1:
            digits.pop()
