"""
Domain Models - Reports and verdicts produced by the clustering machinery.

Immutable pydantic models with primitive-typed fields. They are what the
library hands back to callers and what the CLI serializes, so every model
round-trips through ``model_dump_json`` / ``model_validate_json`` unchanged.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.domain.words import LetterPermutation, OrderedAlphabet


class StepKind(str, Enum):
    """Which of the short, middle or long word extends the bispecial at a stage."""

    SHORT = "S"
    MIDDLE = "M"
    LONG = "L"


class ClusterCount(str, Enum):
    """Whether a language holds finitely or infinitely many clustering words."""

    FINITELY_MANY = "finitely_many"
    INFINITELY_MANY = "infinitely_many"


class MorphismKind(str, Enum):
    """Elementary Arnoux-Rauzy morphism family."""

    SIGMA = "sigma"
    TAU = "tau"


class _Report(BaseModel):
    model_config = ConfigDict(frozen=True)


class ClusteringCertificate(_Report):
    """
    Witness that a word clusters for an order and a permutation.

    ``runs`` lists ``(pi(a_i), n_{pi(a_i)})`` in the order's sequence, zero
    counts included; ``transform`` is their concatenation.
    """

    word: str
    order: tuple[str, ...]
    permutation: tuple[tuple[str, str], ...]
    transform: str
    runs: tuple[tuple[str, int], ...]

    @property
    def ordered_alphabet(self) -> OrderedAlphabet:
        return OrderedAlphabet(self.order)

    @property
    def letter_permutation(self) -> LetterPermutation:
        return LetterPermutation(self.permutation)

    @property
    def is_perfect(self) -> bool:
        return self.letter_permutation == LetterPermutation.symmetric(self.ordered_alphabet)

    def describe(self) -> str:
        order = "<".join(self.order)
        return f"order {order} pi {self.letter_permutation} transform {self.transform}"


class OrderConditionViolation(_Report):
    """First failing extension pair of a bispecial and how many pairs fail."""

    bispecial: str
    x: str
    x_prime: str
    y: str
    y_prime: str
    count: int = Field(ge=1)


class OrderConditionReport(_Report):
    """Outcome of the bispecial order condition for a word, order and permutation."""

    word: str
    order: tuple[str, ...]
    permutation: tuple[tuple[str, str], ...]
    bispecials: tuple[str, ...]
    violations: tuple[OrderConditionViolation, ...]
    verdict: bool

    @model_validator(mode="after")
    def verdict_matches_violations(self) -> "OrderConditionReport":
        """Verdict is true exactly when nothing is violated."""
        if self.verdict != (not self.violations):
            raise ValueError("verdict must be true if and only if there are no violations")
        return self


class DesubstitutionStep(_Report):
    """One inverse morphism application."""

    kind: MorphismKind
    letter: str
    result: str


class DesubstitutionChain(_Report):
    """Sequence of inverse morphisms reducing a word to a single letter."""

    word: str
    steps: tuple[DesubstitutionStep, ...]
    letter: str

    @property
    def morphisms(self) -> tuple[tuple[MorphismKind, str], ...]:
        return tuple((step.kind, step.letter) for step in self.steps)


class LMSTriple(_Report):
    """Short, middle and long standard words at a stage, with the step kind there."""

    stage: int
    short: str
    middle: str
    long: str
    short_letter: str
    middle_letter: str
    long_letter: str
    step: StepKind


class Landmarks(_Report):
    """
    Landmark stages of a directive word.

    Letters ``x`` and ``y`` are given in normalized letters; ``normalization``
    maps the raw rule letters onto them.
    """

    lambda1: int
    lambda2: int
    lambda_a: int
    lambda_b: int
    mu_a: int
    mu_b: int
    x: str
    y: str
    mu_x: int
    mu_y: int
    lambda_y: int
    mu: int
    normalization: tuple[tuple[str, str], ...]

    @model_validator(mode="after")
    def stages_are_ordered(self) -> "Landmarks":
        """First rule (b) precedes first rule (c), which precedes mu_x and mu_y."""
        if not (self.lambda1 < self.lambda2 < self.mu_x < self.mu_y):
            raise ValueError("landmarks must satisfy lambda1 < lambda2 < mu_x < mu_y")
        return self


class ClistVerdict(_Report):
    """Subsequence-avoidance verdict on D_p z for the standard word Z_p."""

    word: str
    clusters: bool
    middles: tuple[str, ...]
    orders: tuple[str, ...]


class MultiBound(_Report):
    """Non-clustering length bounds of an r-letter AR language."""

    general: int
    refined: int
    landmarks: Landmarks


class LengthRelations(_Report):
    """Suffix and length facts about the standard words at one stage."""

    stage: int
    suffix_of_bispecial: tuple[tuple[str, bool], ...]
    sum_exceeds_long: Optional[bool] = None
    long_below_next_middle: Optional[bool] = None


class ThepiVerdict(_Report):
    """Finitely or infinitely many clustering words in a three-letter language."""

    kind: ClusterCount
    split: Optional[int] = None
    head: str = ""
    tail_letters: tuple[str, ...] = ()
    normalization: tuple[tuple[str, str], ...] = ()


class ChainBlock(_Report):
    """Block of a directive word running on a two-letter alphabet."""

    letters: tuple[str, ...]
    segment: str


class MultiThepiVerdict(_Report):
    """Chain decomposition verdict for an r-letter episturmian language."""

    kind: ClusterCount
    blocks: tuple[ChainBlock, ...] = ()


class CensusEntry(_Report):
    """Clustering factor found by a census, with all its certificates."""

    word: str
    certificates: tuple[ClusteringCertificate, ...]


class CensusReport(_Report):
    """All clustering factors of a generated language up to a length."""

    directive: str
    max_length: int
    entries: tuple[CensusEntry, ...]

    @property
    def longest(self) -> Optional[int]:
        return max((len(entry.word) for entry in self.entries), default=None)

    def of_length(self, length: int) -> list[CensusEntry]:
        return [entry for entry in self.entries if len(entry.word) == length]


class SuiteReport(_Report):
    """Result of one verification suite."""

    suite: str
    max_n: int
    cases_checked: int
    failures: tuple[str, ...]
    passed: bool
    elapsed_seconds: float = 0.0


class Suite(str, Enum):
    """Verification suites runnable from the CLI."""

    CAR = "car"
    REL = "rel"
    SQ = "sq"
    LIST_CLIST = "list-clist"
    REV = "rev"
    THEPI = "thepi"
