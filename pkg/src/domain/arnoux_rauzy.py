"""
Arnoux-Rauzy Languages - Landmarks, bounds and extremal clustering words.

Three-letter machinery on top of ``src.domain.directive``: (Rabc)
normalization, short/middle/long renaming of the standard words, landmark
stages around the first rule (c), the length beyond which no factor
clusters, clustering of standard words, the longest clustering word
construction, the occurrence obstruction and the clustering census.

Results computed on the normalized directive word are translated back to
the caller's letters, except landmark letters, which stay normalized and
come with the normalization permutation.
"""

import concurrent.futures
from typing import Optional

import structlog

from src.domain.bwt import clusters, clusters_any
from src.domain.directive import (
    ARState,
    DirectiveLanguage,
    DirectiveWord,
    evolve,
    normalize,
)
from src.domain.exceptions import InvalidDirectiveError, ValidationError
from src.domain.language import factors
from src.domain.models import (
    CensusEntry,
    CensusReport,
    ClistVerdict,
    Landmarks,
    LengthRelations,
    LMSTriple,
    StepKind,
)
from src.domain.words import LetterPermutation, Word, is_factor

logger = structlog.get_logger(__name__)

CENSUS_CAP = 60


def _require_three_letters(directive: DirectiveWord) -> None:
    if directive.size != 3:
        raise InvalidDirectiveError(
            str(directive), f"expected three rule letters, got {directive.size}"
        )


def normalize_rabc(directive: DirectiveWord) -> tuple[DirectiveWord, LetterPermutation]:
    """
    Relabel a directive word into (Rabc) form.

    The rule at stage 0 becomes (a) and the first different rule becomes (b).

    Returns:
        The relabelled directive word and the raw-to-normalized permutation
    """
    return normalize(directive)


def ar_evolve(directive: DirectiveWord, stage: int) -> ARState:
    """Standard words A_k, B_k, C_k and bispecial w_k of a three-letter directive word."""
    _require_three_letters(directive)
    return evolve(directive, stage)


def _last_before(directive: DirectiveWord, letter: str, stage: int) -> Optional[int]:
    for earlier in range(stage - 1, -1, -1):
        if directive.rule(earlier) == letter:
            return earlier
    return None


def compute_landmarks(
    normalized: DirectiveWord, permutation: LetterPermutation
) -> Optional[Landmarks]:
    """
    Landmark stages of a normalized directive word.

    Returns None when a rule (b) or (c) is missing, or when (a) or (b) is
    never applied after the first (c).
    """
    a, b, c = normalized.alphabet.letters[:3]
    lambda1 = normalized.first_stage(b)
    lambda2 = normalized.first_stage(c)
    if lambda1 is None or lambda2 is None:
        return None
    mu_a = normalized.first_stage(a, lambda2 + 1)
    mu_b = normalized.first_stage(b, lambda2 + 1)
    if mu_a is None or mu_b is None:
        return None
    lambda_a = _last_before(normalized, a, lambda2)
    lambda_b = _last_before(normalized, b, lambda2)
    assert lambda_a is not None and lambda_b is not None
    if mu_a < mu_b:
        x, y, mu_x, mu_y, lambda_y = a, b, mu_a, mu_b, lambda_b
    else:
        x, y, mu_x, mu_y, lambda_y = b, a, mu_b, mu_a, lambda_a
    run_letter = normalized.rule(mu_y - 1)
    mu = mu_y - 1
    while mu > 0 and normalized.rule(mu - 1) == run_letter:
        mu -= 1
    return Landmarks(
        lambda1=lambda1,
        lambda2=lambda2,
        lambda_a=lambda_a,
        lambda_b=lambda_b,
        mu_a=mu_a,
        mu_b=mu_b,
        x=x,
        y=y,
        mu_x=mu_x,
        mu_y=mu_y,
        lambda_y=lambda_y,
        mu=mu,
        normalization=permutation.pairs,
    )


def _normalized_landmarks(
    directive: DirectiveWord,
) -> tuple[DirectiveWord, LetterPermutation, Landmarks]:
    directive.require_ar()
    _require_three_letters(directive)
    normalized, permutation = normalize_rabc(directive)
    found = compute_landmarks(normalized, permutation)
    assert found is not None, "every rule recurs in an AR-valid directive word"
    return normalized, permutation, found


def landmarks(directive: DirectiveWord) -> Landmarks:
    """
    Landmark stages lambda1, lambda2, lambda_a, lambda_b, mu_a, mu_b, mu and letters x, y.

    Raises:
        InvalidDirectiveError: If the directive word is not a three-letter AR one
    """
    return _normalized_landmarks(directive)[2]


def arc_bound(directive: DirectiveWord) -> int:
    """
    Length from which no factor of the AR language clusters.

    |w_{lambda_y}| + max(|C_{mu_y+1}|, |X_{mu_y+1}|) + 1, in normalized letters.
    """
    normalized, _, marks = _normalized_landmarks(directive)
    c = normalized.alphabet.letters[2]
    after = evolve(normalized, marks.mu_y + 1)
    before = evolve(normalized, marks.lambda_y)
    return len(before.bispecial) + max(len(after[c]), len(after[marks.x])) + 1


def _lms_letters(
    state: ARState, lambda1: int, letters: tuple[str, ...]
) -> tuple[str, str, str]:
    a, b, c = letters
    if state.stage == 0:
        return c, b, a
    if state.stage <= lambda1:
        return a, c, b
    ordered = sorted(letters, key=lambda letter: len(state[letter]))
    return ordered[0], ordered[1], ordered[2]


def lms_rename(directive: DirectiveWord, stage: int) -> LMSTriple:
    """
    Short, middle and long standard words at ``stage`` and the step kind there.

    For 1 <= k <= lambda1 the assignment is S=A, M=C, L=B, and at stage 0 it
    is S=c, M=b, L=a; later stages sort the three words by length.
    """
    directive.require_ar()
    _require_three_letters(directive)
    normalized, permutation = normalize_rabc(directive)
    lambda1 = normalized.first_stage(normalized.alphabet.letters[1])
    assert lambda1 is not None
    state = evolve(normalized, stage)
    short, middle, long = _lms_letters(state, lambda1, normalized.alphabet.letters[:3])
    rule = normalized.rule(stage)
    step = {short: StepKind.SHORT, middle: StepKind.MIDDLE, long: StepKind.LONG}[rule]
    back = permutation.inverse()
    return LMSTriple(
        stage=stage,
        short=str(state[short].relabel(back)),
        middle=str(state[middle].relabel(back)),
        long=str(state[long].relabel(back)),
        short_letter=back(short),
        middle_letter=back(middle),
        long_letter=back(long),
        step=step,
    )


def standard_clusters(directive: DirectiveWord, letter: str, stage: int) -> bool:
    """
    Whether the standard word Z_p clusters, from the landmark thresholds.

    Y_p clusters iff p <= mu_x; C_p and X_p cluster iff p <= mu_y.
    """
    _, permutation, marks = _normalized_landmarks(directive)
    if permutation(letter) == marks.y:
        return stage <= marks.mu_x
    return stage <= marks.mu_y


def _has_subsequence(symbols: tuple[str, ...], pattern: tuple[str, ...]) -> bool:
    remaining = iter(symbols)
    return all(any(symbol == wanted for symbol in remaining) for wanted in pattern)


def clist_criterion(directive: DirectiveWord, letter: str, stage: int) -> ClistVerdict:
    """
    Clustering of Z_p read off the word D_p z.

    A letter z' is a valid middle when neither z', u, v nor z', v, u occur as
    a subsequence of D_p z, u and v being the two other letters. Z_p clusters
    iff some middle is valid, and then clusters perfectly for every order
    with a valid middle in the middle position.
    """
    _require_three_letters(directive)
    symbols = directive.rules(stage) + (letter,)
    letters = directive.alphabet.letters
    middles = []
    orders = []
    for middle in letters:
        u, v = (other for other in letters if other != middle)
        if _has_subsequence(symbols, (middle, u, v)) or _has_subsequence(symbols, (middle, v, u)):
            continue
        middles.append(middle)
        orders.extend([u + middle + v, v + middle + u])
    return ClistVerdict(
        word="".join(symbols),
        clusters=bool(middles),
        middles=tuple(middles),
        orders=tuple(orders),
    )


def long_word(directive: DirectiveWord) -> Word:
    """
    Longest known clustering factor: S_{mu_y}^(mu_y - mu + 1) M_{mu_y}.

    The word is primitive, lies in the language, is conjugate to a standard
    word and clusters perfectly for a<c<b in normalized letters.
    """
    normalized, permutation, marks = _normalized_landmarks(directive)
    state = evolve(normalized, marks.mu_y)
    short, middle, _ = _lms_letters(state, marks.lambda1, normalized.alphabet.letters[:3])
    word = state[short] * (marks.mu_y - marks.mu + 1) + state[middle]
    return word.relabel(permutation.inverse())


def caro_obstructed(word: Word, directive: DirectiveWord, circular: bool = False) -> bool:
    """
    True if at least three of a w c, b w c, c w a, c w b occur, w = w_{lambda2}.

    A factor containing three of these flanked copies of w_{lambda2} cannot
    cluster. With ``circular`` the occurrences are searched in ``word word``,
    which decides the circular word.
    """
    normalized, permutation, marks = _normalized_landmarks(directive)
    a, b, c = normalized.alphabet.letters[:3]
    back = permutation.inverse()
    center = evolve(normalized, marks.lambda2).bispecial.relabel(back).symbols
    text = word.symbols * 2 if circular else word.symbols
    flanks = [(a, c), (b, c), (c, a), (c, b)]
    found = sum(
        1 for x, y in flanks if is_factor((back(x),) + center + (back(y),), text)
    )
    return found >= 3


def is_ar_factor(word: Word, directive: DirectiveWord) -> bool:
    """
    Membership in the language by search in a long enough standard prefix w_K.

    With k minimal such that |w_k| >= |w|, the sample satisfies
    |w_K| >= |w| - 1 + 2 |L_k|, |L_k| bounding the return time of w.
    """
    if any(symbol not in directive.alphabet for symbol in word.symbols):
        return False
    if word.is_empty:
        return True
    language = DirectiveLanguage(directive)
    stage = language.first_stage_reaching(len(word))
    longest = max(len(standard) for standard in language.state(stage)[0])
    sample_stage = language.first_stage_reaching(len(word) - 1 + 2 * longest)
    return is_factor(word.symbols, language.state(sample_stage)[1])


def _is_suffix(suffix: tuple[str, ...], word: tuple[str, ...]) -> bool:
    return len(suffix) <= len(word) and word[len(word) - len(suffix) :] == suffix


def length_relations(directive: DirectiveWord, stage: int) -> LengthRelations:
    """
    Suffix and length facts at ``stage`` in normalized letters.

    Which standard words are suffixes of w_p, whether |M_p| + |S_p| > |L_p|
    and whether |L_p| < |M_{p+1}| (the last two for p > 0).
    """
    directive.require_ar()
    _require_three_letters(directive)
    normalized, _ = normalize_rabc(directive)
    state = evolve(normalized, stage)
    suffixes = tuple(
        (letter, _is_suffix(state[letter].symbols, state.bispecial.symbols))
        for letter in normalized.alphabet.letters
    )
    if stage == 0:
        return LengthRelations(stage=stage, suffix_of_bispecial=suffixes)
    current = lms_rename(normalized, stage)
    following = lms_rename(normalized, stage + 1)
    return LengthRelations(
        stage=stage,
        suffix_of_bispecial=suffixes,
        sum_exceeds_long=len(current.middle) + len(current.short) > len(current.long),
        long_below_next_middle=len(current.long) < len(following.middle),
    )


def square_roots(directive: DirectiveWord, max_length: int) -> list[Word]:
    """
    Standard words whose squares are factors: A_p (p >= 0), B_p (p >= lambda1), C_p (p >= lambda2).

    Returns:
        Distinct such words of length at most ``max_length`` in the caller's
        letters, by length then lexicographically
    """
    normalized, permutation, marks = _normalized_landmarks(directive)
    a, b, c = normalized.alphabet.letters
    starts = {a: 0, b: marks.lambda1, c: marks.lambda2}
    back = permutation.inverse()
    found: set[tuple[str, ...]] = set()
    stage = 0
    while True:
        state = evolve(normalized, stage)
        if min(len(word) for word in state.words) > max_length:
            break
        for letter, first in starts.items():
            if stage >= first and len(state[letter]) <= max_length:
                found.add(state[letter].relabel(back).symbols)
        stage += 1
    alphabet = directive.alphabet
    return [
        Word(symbols, alphabet)
        for symbols in sorted(found, key=lambda symbols: (len(symbols), alphabet.key(symbols)))
    ]


def census_layer(directive: DirectiveWord, length: int) -> list[CensusEntry]:
    """Clustering factors of one length with their certificates."""
    language = DirectiveLanguage(directive)
    return [
        CensusEntry(word=str(factor), certificates=tuple(clusters_any(factor)))
        for factor in factors(language, length)
        if clusters(factor)
    ]


def clustering_census(
    directive: DirectiveWord,
    max_length: int,
    workers: int = 1,
    cap: int = CENSUS_CAP,
) -> CensusReport:
    """
    Every clustering factor of the language with length at most ``max_length``.

    Lengths are fanned out to a process pool when ``workers`` > 1; entries
    come back ordered by length, then lexicographically, either way.

    Raises:
        ValidationError: If ``max_length`` is not between 1 and ``cap``
    """
    if not 1 <= max_length <= cap:
        raise ValidationError(f"max_length must be between 1 and {cap}, got {max_length}")
    lengths = range(1, max_length + 1)
    if workers > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
            layers = list(executor.map(census_layer, [directive] * len(lengths), lengths))
    else:
        layers = [census_layer(directive, length) for length in lengths]
    entries = tuple(entry for layer in layers for entry in layer)
    logger.debug("clustering_census", directive=str(directive), entries=len(entries))
    return CensusReport(directive=str(directive), max_length=max_length, entries=entries)
