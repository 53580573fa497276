"""
Directive Words - Rule sequences, AR morphisms and generated languages.

A directive word D = prefix . period^omega is a sequence of rules, one letter
per stage. Rule (x) at stage k keeps X fixed and appends X to every other
standard word (Y_{k+1} = Y_k X_k), while the bispecial grows as
w_{k+1} = w_k X_k. The same engine serves Sturmian (two letters),
Arnoux-Rauzy and episturmian (three letters) and r-Bonacci languages.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

import structlog

from src.domain.exceptions import InvalidDirectiveError
from src.domain.models import MorphismKind
from src.domain.words import LetterPermutation, OrderedAlphabet, Word

logger = structlog.get_logger(__name__)

Symbols = tuple[str, ...]


@dataclass(frozen=True)
class DirectiveWord:
    """Eventually periodic directive word ``prefix . period^omega``."""

    prefix: Symbols
    period: Symbols
    alphabet: OrderedAlphabet

    def __post_init__(self) -> None:
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise InvalidDirectiveError(str(self), "the period must be nonempty")
        unknown = set(self.prefix + self.period) - set(self.alphabet.letters)
        if unknown:
            raise InvalidDirectiveError(
                str(self), f"rules {sorted(unknown)} are not letters of {self.alphabet}"
            )

    @classmethod
    def parse(
        cls,
        text: str,
        letters: Union[OrderedAlphabet, str, None] = None,
    ) -> DirectiveWord:
        """
        Parse ``"PREFIX:PERIOD"``; ``":abc"`` is the Tribonacci directive word.

        Args:
            text: Directive syntax with an optional empty prefix
            letters: Rule alphabet; defaults to the sorted letters of ``text``

        Raises:
            InvalidDirectiveError: If the text is malformed
        """
        if text.count(":") != 1:
            raise InvalidDirectiveError(text, "expected exactly one ':' as in PREFIX:PERIOD")
        prefix, period = text.split(":")
        if not all(symbol.isalpha() and symbol.islower() for symbol in prefix + period):
            raise InvalidDirectiveError(text, "rules must be lowercase letters a-z")
        if isinstance(letters, str):
            letters = OrderedAlphabet.parse(letters)
        if letters is None:
            if not period:
                raise InvalidDirectiveError(text, "the period must be nonempty")
            letters = OrderedAlphabet.of(prefix + period)
        return cls(tuple(prefix), tuple(period), letters)

    @property
    def size(self) -> int:
        return self.alphabet.size

    def rule(self, stage: int) -> str:
        """The rule letter applied at ``stage``."""
        if stage < len(self.prefix):
            return self.prefix[stage]
        return self.period[(stage - len(self.prefix)) % len(self.period)]

    def rules(self, count: int) -> Symbols:
        return tuple(self.rule(stage) for stage in range(count))

    def prefix_word(self, length: int) -> Word:
        """D_k, the first ``length`` rules as a word."""
        return Word(self.rules(length), self.alphabet)

    def occurs_from(self, letter: str, stage: int) -> bool:
        """True if rule ``letter`` is applied at some stage >= ``stage``."""
        return letter in self.period or letter in self.prefix[stage:]

    def first_stage(self, letter: str, start: int = 0) -> Optional[int]:
        """First stage >= ``start`` using rule ``letter``, or None."""
        if not self.occurs_from(letter, start):
            return None
        stage = start
        while self.rule(stage) != letter:
            stage += 1
        return stage

    @property
    def is_ar_valid(self) -> bool:
        """Every rule is used infinitely often."""
        return set(self.period) == set(self.alphabet.letters)

    @property
    def is_episturmian_valid(self) -> bool:
        """Every rule is used at least once."""
        return set(self.prefix + self.period) == set(self.alphabet.letters)

    def require_ar(self) -> None:
        if not self.is_ar_valid:
            raise InvalidDirectiveError(str(self), "every rule letter must occur in the period")

    def require_episturmian(self) -> None:
        if not self.is_episturmian_valid:
            raise InvalidDirectiveError(str(self), "every rule letter must occur at least once")

    def relabel(self, permutation: LetterPermutation) -> DirectiveWord:
        return DirectiveWord(
            tuple(permutation(rule) for rule in self.prefix),
            tuple(permutation(rule) for rule in self.period),
            self.alphabet,
        )

    def __str__(self) -> str:
        return f"{''.join(self.prefix)}:{''.join(self.period)}"


def normalize(directive: DirectiveWord) -> tuple[DirectiveWord, LetterPermutation]:
    """
    Relabel rules so the first three distinct rules read a, b, c.

    The first rule becomes the first alphabet letter, the first different
    rule the second and the next new rule the third; any further letters
    keep their relative order. With three letters this is the (Rabc) form.

    Returns:
        The relabelled directive word and the raw-to-normalized permutation
    """
    letters = directive.alphabet.letters
    appearance: list[str] = []
    for rule in directive.prefix + directive.period:
        if rule not in appearance:
            appearance.append(rule)
        if len(appearance) == 3:
            break
    rest = [letter for letter in letters if letter not in appearance]
    permutation = LetterPermutation.from_images(appearance + rest, letters)
    return directive.relabel(permutation), permutation


def _elementary_image(kind: MorphismKind, x: str, symbols: Symbols) -> Symbols:
    image: list[str] = []
    for symbol in symbols:
        if symbol == x:
            image.append(x)
        elif kind is MorphismKind.SIGMA:
            image.extend((symbol, x))
        else:
            image.extend((x, symbol))
    return tuple(image)


@dataclass(frozen=True)
class Morphism:
    """
    Composition of elementary AR morphisms.

    sigma_x keeps x and sends y to yx; tau_x keeps x and sends y to xy.
    ``steps`` reads left to right as a composition, so the last step is
    applied first.
    """

    steps: tuple[tuple[MorphismKind, str], ...] = ()

    @classmethod
    def sigma(cls, letter: str) -> Morphism:
        return cls(((MorphismKind.SIGMA, letter),))

    @classmethod
    def tau(cls, letter: str) -> Morphism:
        return cls(((MorphismKind.TAU, letter),))

    @classmethod
    def sigma_word(cls, letters: Iterable[str]) -> Morphism:
        """sigma_{w_1} o ... o sigma_{w_n}."""
        return cls(tuple((MorphismKind.SIGMA, letter) for letter in letters))

    @classmethod
    def tau_word(cls, letters: Iterable[str]) -> Morphism:
        """tau_{w_1} o ... o tau_{w_n}."""
        return cls(tuple((MorphismKind.TAU, letter) for letter in letters))

    def __mul__(self, other: Morphism) -> Morphism:
        return Morphism(self.steps + other.steps)

    def image(self, symbols: Sequence[str]) -> Symbols:
        result = tuple(symbols)
        for kind, letter in reversed(self.steps):
            result = _elementary_image(kind, letter, result)
        return result

    def apply(self, word: Word) -> Word:
        return Word(self.image(word.symbols), word.alphabet)

    def __str__(self) -> str:
        if not self.steps:
            return "id"
        names = {MorphismKind.SIGMA: "sigma", MorphismKind.TAU: "tau"}
        return " o ".join(f"{names[kind]}_{letter}" for kind, letter in self.steps)


@dataclass(frozen=True)
class ARState:
    """Standard words (one per letter) and bispecial at a stage."""

    stage: int
    alphabet: OrderedAlphabet
    words: tuple[Word, ...]
    bispecial: Word

    def __getitem__(self, letter: str) -> Word:
        return self.words[self.alphabet.rank(letter)]

    def as_dict(self) -> dict[str, str]:
        return {letter: str(word) for letter, word in zip(self.alphabet.letters, self.words)}

    @property
    def longest(self) -> Word:
        return max(self.words, key=len)


class _Evolution:
    """Incrementally computed stages of a directive word."""

    def __init__(self, directive: DirectiveWord):
        self.directive = directive
        letters = directive.alphabet.letters
        self._words: list[tuple[Symbols, ...]] = [tuple((letter,) for letter in letters)]
        self._bispecials: list[Symbols] = [()]

    def state(self, stage: int) -> tuple[tuple[Symbols, ...], Symbols]:
        ranks = self.directive.alphabet.ranks
        while len(self._words) <= stage:
            current = len(self._words) - 1
            words = self._words[current]
            fixed = ranks[self.directive.rule(current)]
            applied = words[fixed]
            self._words.append(
                tuple(
                    word if index == fixed else word + applied
                    for index, word in enumerate(words)
                )
            )
            self._bispecials.append(self._bispecials[current] + applied)
        return self._words[stage], self._bispecials[stage]

    def first_stage_reaching(self, length: int) -> int:
        """Smallest k with |w_k| >= length."""
        stage = 0
        while len(self.state(stage)[1]) < length:
            stage += 1
        return stage


@lru_cache(maxsize=1024)
def _evolution(directive: DirectiveWord) -> _Evolution:
    return _Evolution(directive)


def evolve(directive: DirectiveWord, stage: int) -> ARState:
    """
    Standard words and bispecial at ``stage``.

    Raises:
        InvalidDirectiveError: If ``stage`` is negative
    """
    if stage < 0:
        raise InvalidDirectiveError(str(directive), f"stage must be nonnegative, got {stage}")
    words, bispecial = _evolution(directive).state(stage)
    alphabet = directive.alphabet
    return ARState(
        stage=stage,
        alphabet=alphabet,
        words=tuple(Word(word, alphabet) for word in words),
        bispecial=Word(bispecial, alphabet),
    )


class DirectiveLanguage:
    """
    Factorial language generated by a directive word.

    Length-n factors are the length-n windows of w_k Z_k, k minimal with
    |w_k| >= n, over the letters z whose rule is applied at or after stage k.
    """

    def __init__(self, directive: DirectiveWord):
        self.directive = directive
        self._evolution = _evolution(directive)
        self._factors: dict[int, frozenset[Symbols]] = {}

    @property
    def alphabet(self) -> OrderedAlphabet:
        return self.directive.alphabet

    def state(self, stage: int) -> tuple[tuple[Symbols, ...], Symbols]:
        return self._evolution.state(stage)

    def first_stage_reaching(self, length: int) -> int:
        return self._evolution.first_stage_reaching(length)

    def factor_set(self, n: int) -> frozenset[Symbols]:
        if n not in self._factors:
            self._factors[n] = self._compute(n)
        return self._factors[n]

    def _compute(self, n: int) -> frozenset[Symbols]:
        if n == 0:
            return frozenset({()})
        stage = self.first_stage_reaching(n)
        words, bispecial = self.state(stage)
        found: set[Symbols] = set()
        for letter, word in zip(self.alphabet.letters, words):
            if not self.directive.occurs_from(letter, stage):
                continue
            text = bispecial + word
            found.update(text[start : start + n] for start in range(len(text) - n + 1))
        logger.debug("directive_factors", directive=str(self.directive), n=n, count=len(found))
        return frozenset(found)
