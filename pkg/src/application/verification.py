"""
Verification Use Case - Exhaustive property suites over small cases.

Each suite cross-checks two independent computations of the same fact
(direct transform against the order condition, landmark thresholds against
subsequence avoidance, listed square roots against brute-force squares, and
so on) over every case up to a size, and reports the failing cases.
"""

import time
from itertools import product
from typing import Callable, Iterator, Optional

from src.config import LimitsConfig
from src.domain.arnoux_rauzy import (
    arc_bound,
    clist_criterion,
    is_ar_factor,
    landmarks,
    length_relations,
    square_roots,
    standard_clusters,
)
from src.domain.bwt import (
    clustering_certificates,
    clusters,
    is_perfectly_clustering,
    reverse_certificate,
)
from src.domain.criterion import clustering_by_criterion, resolve_bispecials, rev_condition3
from src.domain.directive import DirectiveLanguage, DirectiveWord, evolve
from src.domain.episturmian import (
    clustering_witnesses,
    epi_bound,
    multi_thepi_check,
    thepi_check,
)
from src.domain.interfaces import IObservabilityService
from src.domain.language import CircularLanguage, factors, is_closed_under_reversal
from src.domain.models import ClusterCount, SuiteReport, Suite
from src.domain.words import (
    LetterPermutation,
    OrderedAlphabet,
    Word,
    is_primitive,
    lyndon_words,
)

Case = tuple[str, bool]

TERNARY = OrderedAlphabet.parse("abc")
BINARY = OrderedAlphabet.parse("ab")
AR_PERIOD = ("a", "b", "c")
MAX_STAGE_CHECKED = 12
DIRECT_CHECK_LENGTH = 40
SQUARE_SUITE_PREFIX = 3
WITNESS_COUNT = 5


def _ar_directives(prefix_length: int) -> Iterator[DirectiveWord]:
    """Every prefix of the given length over a, b, c followed by (abc)^omega."""
    for prefix in product(TERNARY.letters, repeat=prefix_length):
        yield DirectiveWord(prefix, AR_PERIOD, TERNARY)


def _car_cases(max_n: int) -> Iterator[Case]:
    """Order condition verdict equals direct clustering for every order and pi != Id."""
    for alphabet in (TERNARY, BINARY):
        permutations = [p for p in LetterPermutation.all(alphabet.letters) if not p.is_identity]
        for word in lyndon_words(alphabet, max_n):
            graphs = resolve_bispecials(word)
            for order in alphabet.orders():
                direct = {
                    certificate.permutation
                    for certificate in clustering_certificates(word, order, allow_identity=True)
                }
                for permutation in permutations:
                    verdict = clustering_by_criterion(word, order, permutation, graphs).verdict
                    yield f"car {word} {order} {permutation}", verdict == (
                        permutation.pairs in direct
                    )


def _rel_cases(max_n: int) -> Iterator[Case]:
    """Suffix equivalences and length inequalities of the standard words."""
    for directive in _ar_directives(max_n):
        marks = landmarks(directive)
        starts = {"a": 1, "b": marks.lambda1 + 1, "c": marks.lambda2 + 1}
        for stage in range(MAX_STAGE_CHECKED + 1):
            relations = length_relations(directive, stage)
            suffixes_ok = all(
                is_suffix == (stage >= starts[letter])
                for letter, is_suffix in relations.suffix_of_bispecial
            )
            lengths_ok = stage == 0 or bool(
                relations.sum_exceeds_long and relations.long_below_next_middle
            )
            yield f"rel {directive} stage {stage}", suffixes_ok and lengths_ok


def _conjugacy_class(word: Word) -> frozenset[tuple[str, ...]]:
    symbols = word.symbols
    return frozenset(symbols[i:] + symbols[:i] for i in range(len(symbols)))


def _sq_cases(max_n: int) -> Iterator[Case]:
    """Listed square roots have their square in the language, and nothing else does."""
    for directive in _ar_directives(SQUARE_SUITE_PREFIX):
        roots = square_roots(directive, max_n)
        for root in roots:
            yield f"sq {directive} {root} squared", is_ar_factor(root + root, directive)
        classes = set().union(*(_conjugacy_class(root) for root in roots))
        language = DirectiveLanguage(directive)
        for n in range(1, max_n + 1):
            for square in language.factor_set(2 * n):
                half = Word(square[:n], directive.alphabet)
                if square[:n] != square[n:] or not is_primitive(half):
                    continue
                yield f"sq {directive} root {half}", half.symbols in classes


def _list_clist_cases(max_n: int) -> Iterator[Case]:
    """Landmark thresholds, subsequence avoidance and the direct transform agree."""
    for directive in _ar_directives(max_n):
        for stage in range(MAX_STAGE_CHECKED + 1):
            state = evolve(directive, stage)
            for letter in TERNARY.letters:
                by_landmarks = standard_clusters(directive, letter, stage)
                by_rules = clist_criterion(directive, letter, stage).clusters
                agree = by_landmarks == by_rules
                if len(state[letter]) <= DIRECT_CHECK_LENGTH:
                    agree = agree and clusters(state[letter]) == by_rules
                yield f"list-clist {directive} {letter}_{stage}", agree


def _rev_cases(max_n: int) -> Iterator[Case]:
    """Clustering and the reversal condition coincide on reversal-closed words."""
    for word in lyndon_words(TERNARY, max_n):
        closed = is_closed_under_reversal(CircularLanguage(word))
        for order in TERNARY.orders():
            certificates = clustering_certificates(word, order)
            duality = all(reverse_certificate(word, c) is not None for c in certificates)
            yield f"rev duality {word} {order}", duality
            perfect = is_perfectly_clustering(word, order)
            if not closed:
                yield f"rev closure {word} {order}", not perfect
                continue
            clustering = bool(clustering_certificates(word, order, allow_identity=True))
            condition = rev_condition3(word, order)
            yield f"rev {word} {order}", clustering == perfect == condition


def _episturmian_directives() -> Iterator[DirectiveWord]:
    seen: set[str] = set()
    for prefix_length in range(3):
        for period_length in range(1, 4):
            for prefix in product(TERNARY.letters, repeat=prefix_length):
                for period in product(TERNARY.letters, repeat=period_length):
                    directive = DirectiveWord(prefix, period, TERNARY)
                    if directive.is_episturmian_valid and str(directive) not in seen:
                        seen.add(str(directive))
                        yield directive


def _thepi_cases(max_n: int) -> Iterator[Case]:
    """Finiteness verdicts, episturmian bounds and clustering witnesses."""
    for directive in _episturmian_directives():
        verdict = thepi_check(directive)
        yield f"thepi {directive} chain", verdict.kind == multi_thepi_check(directive).kind
        if verdict.kind is ClusterCount.FINITELY_MANY:
            bound = epi_bound(directive)
            if directive.is_ar_valid:
                yield f"thepi {directive} bound vs AR bound", bound >= arc_bound(directive)
            if bound <= max_n:
                language = DirectiveLanguage(directive)
                yield f"thepi {directive} length {bound}", not any(
                    clusters(factor) for factor in factors(language, bound)
                )
            continue
        back = LetterPermutation(verdict.normalization).inverse()
        a, b, c = TERNARY.letters
        order = OrderedAlphabet((back(a), back(c), back(b)))
        witnesses = clustering_witnesses(directive, WITNESS_COUNT)
        lengths = [len(word) for word in witnesses]
        yield f"thepi {directive} witnesses", (
            len(witnesses) == WITNESS_COUNT
            and lengths == sorted(set(lengths))
            and all(is_perfectly_clustering(w, order, restrict_to_present=True) for w in witnesses)
        )


SUITES: dict[Suite, Callable[[int], Iterator[Case]]] = {
    Suite.CAR: _car_cases,
    Suite.REL: _rel_cases,
    Suite.SQ: _sq_cases,
    Suite.LIST_CLIST: _list_clist_cases,
    Suite.REV: _rev_cases,
    Suite.THEPI: _thepi_cases,
}


class VerificationService:
    """
    Run one verification suite and summarise it.

    ``max_n`` is the word length for car and rev, the directive prefix
    length for rel and list-clist, the root length for sq and the
    exhaustive length cap for thepi.
    """

    def __init__(
        self,
        observability: IObservabilityService,
        limits: Optional[LimitsConfig] = None,
    ):
        self.observability = observability
        self.limits = limits or LimitsConfig()  # type: ignore[call-arg]

    def execute(self, suite: Suite, max_n: int) -> SuiteReport:
        """
        Run ``suite`` over every case up to ``max_n``.

        Returns:
            Report with the number of cases, the first failing cases and the verdict
        """
        started = time.perf_counter()
        checked = 0
        failed = 0
        failures: list[str] = []
        attributes = {"suite": suite.value, "max_n": max_n}
        with self.observability.start_span("verify", attributes) as span:
            for label, ok in SUITES[suite](max_n):
                checked += 1
                if ok:
                    continue
                failed += 1
                if len(failures) < self.limits.max_reported_failures:
                    failures.append(label)
                    self.observability.log("warning", "verify.failure", {"case": label})
            span["cases_checked"] = checked
            span["failures"] = failed
        return SuiteReport(
            suite=suite.value,
            max_n=max_n,
            cases_checked=checked,
            failures=tuple(failures),
            passed=failed == 0,
            elapsed_seconds=round(time.perf_counter() - started, 3),
        )
