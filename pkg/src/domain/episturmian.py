"""
Episturmian and Multi-letter Languages - Finiteness of clustering words and bounds.

Episturmian directive words only need every rule once. Whether their
languages hold infinitely many clustering words is decided by splitting the
directive word into a two-letter head and a tail avoiding a letter; when
they do not, a landmark bound caps the length of clustering words. The
same engine covers Sturmian (two letters) and r-letter AR languages such
as r-Bonacci.
"""

from typing import Optional

import structlog

from src.domain.arnoux_rauzy import compute_landmarks
from src.domain.bwt import clusters, is_perfectly_clustering
from src.domain.directive import (
    ARState,
    DirectiveLanguage,
    DirectiveWord,
    evolve,
    normalize,
)
from src.domain.exceptions import (
    InvalidAlphabetError,
    InvalidDirectiveError,
    NoFiniteBoundError,
)
from src.domain.language import contains
from src.domain.models import (
    ChainBlock,
    ClusterCount,
    Landmarks,
    MultiBound,
    MultiThepiVerdict,
    ThepiVerdict,
)
from src.domain.words import LetterPermutation, OrderedAlphabet, Word, is_primitive, primitive_root

logger = structlog.get_logger(__name__)

STURMIAN_ALPHABET = OrderedAlphabet.parse("ab")
WITNESS_STAGE_LIMIT = 64


def _require_size(directive: DirectiveWord, size: int) -> None:
    if directive.size != size:
        raise InvalidDirectiveError(
            str(directive), f"expected {size} rule letters, got {directive.size}"
        )


def multi_normalize(directive: DirectiveWord) -> tuple[DirectiveWord, LetterPermutation]:
    """First three distinct rules become a, b, c; later letters keep their order."""
    return normalize(directive)


def thepi_check(directive: DirectiveWord) -> ThepiVerdict:
    """
    Finitely or infinitely many clustering words in a three-letter episturmian language.

    Infinitely many exactly when the normalized directive word splits as a
    finite head over {a, b} followed by a tail over {a, c} or {b, c}. The
    smallest such split is reported.

    Raises:
        InvalidDirectiveError: If some rule is never used or there are not three letters
    """
    _require_size(directive, 3)
    directive.require_episturmian()
    normalized, permutation = normalize(directive)
    a, b, c = normalized.alphabet.letters
    period = set(normalized.period)
    for split in range(len(normalized.prefix) + 1):
        head = normalized.prefix[:split]
        if not set(head) <= {a, b}:
            break
        tail = set(normalized.prefix[split:]) | period
        for kept in (a, b):
            if tail <= {kept, c}:
                return ThepiVerdict(
                    kind=ClusterCount.INFINITELY_MANY,
                    split=split,
                    head="".join(head),
                    tail_letters=(kept, c),
                    normalization=permutation.pairs,
                )
    return ThepiVerdict(kind=ClusterCount.FINITELY_MANY, normalization=permutation.pairs)


def epi_landmarks(directive: DirectiveWord) -> Optional[Landmarks]:
    """
    Landmarks of a three-letter episturmian directive word.

    None when (a) or (b) is never applied after the first (c), which is the
    case of infinitely many clustering words.
    """
    _require_size(directive, 3)
    directive.require_episturmian()
    normalized, permutation = normalize(directive)
    return compute_landmarks(normalized, permutation)


def ebs_check(directive: DirectiveWord, stage: int, letter: str) -> bool:
    """True if w_p Z_p is in the language, that is some rule (z) is applied at or after stage p."""
    return directive.occurs_from(letter, stage)


def epi_bound(directive: DirectiveWord) -> int:
    """
    Length from which no factor of an episturmian language clusters.

    |w_{lambda2}| + max |Z_{mu_y+1}| + 1, the maximum over the letters z with
    w_{mu_y+1} Z_{mu_y+1} in the language.

    Raises:
        NoFiniteBoundError: If the language holds infinitely many clustering words
    """
    if thepi_check(directive).kind is ClusterCount.INFINITELY_MANY:
        raise NoFiniteBoundError(str(directive))
    normalized, permutation = normalize(directive)
    marks = compute_landmarks(normalized, permutation)
    assert marks is not None, "finitely many clustering words implies all landmarks"
    stage = marks.mu_y + 1
    after = evolve(normalized, stage)
    longest = max(
        len(after[letter])
        for letter in normalized.alphabet.letters
        if ebs_check(normalized, stage, letter)
    )
    return len(evolve(normalized, marks.lambda2).bispecial) + longest + 1


def clustering_witnesses(
    directive: DirectiveWord,
    count: int = 5,
    max_stage: int = WITNESS_STAGE_LIMIT,
) -> list[Word]:
    """
    Perfectly clustering words of strictly increasing length.

    Scans the standard words Z_p whose square is a factor; these cluster
    perfectly for a<c<b in normalized letters. When the standard words stop
    growing, powers of the last witness fill in. Words are returned in the
    caller's letters, and the list is empty when the language holds only
    finitely many clustering words.
    """
    if thepi_check(directive).kind is ClusterCount.FINITELY_MANY:
        return []
    normalized, permutation = normalize(directive)
    a, b, c = normalized.alphabet.letters
    order = OrderedAlphabet((a, c, b))
    language = DirectiveLanguage(normalized)
    found: list[Word] = []
    for stage in range(max_stage):
        if len(found) == count:
            break
        state = evolve(normalized, stage)
        for word in sorted(state.words, key=len):
            if len(found) == count or (found and len(word) <= len(found[-1])):
                continue
            if not is_primitive(word) or not contains(language, word + word):
                continue
            if is_perfectly_clustering(word, order, restrict_to_present=True):
                found.append(word)
    if found and len(found) < count:
        root = primitive_root(found[-1])[0]
        power = len(found[-1]) // len(root) + 1
        while len(found) < count and contains(language, root * power):
            found.append(root * power)
            power += 1
    back = permutation.inverse()
    logger.debug("clustering_witnesses", directive=str(directive), found=len(found))
    return [word.relabel(back) for word in found]


def sturmian_words(directive: DirectiveWord, stage: int) -> tuple[Word, Word, Word]:
    """
    Standard Sturmian words A_k, B_k and bispecial w_k.

    Raises:
        InvalidDirectiveError: If the directive word is not a two-letter AR one
    """
    _require_size(directive, 2)
    directive.require_ar()
    state = evolve(directive, stage)
    a, b = directive.alphabet.letters
    return state[a], state[b], state.bispecial


def tstu_check(word: Word) -> bool:
    """
    True if a word over {a, b} clusters, through its primitive root.

    On two letters these are exactly the conjugates of standard Sturmian words.

    Raises:
        InvalidAlphabetError: If the word uses a letter other than a and b
    """
    if not set(word.symbols) <= set(STURMIAN_ALPHABET.letters):
        raise InvalidAlphabetError(word.letters_present, "Sturmian words use only a and b")
    root = primitive_root(word.with_alphabet(STURMIAN_ALPHABET))[0]
    return clusters(root)


def multi_ar_evolve(directive: DirectiveWord, stage: int) -> ARState:
    """
    Standard words A^(i)_k of an r-letter AR directive word.

    Raises:
        InvalidDirectiveError: If there are fewer than two letters or a rule is not recurrent
    """
    if directive.size < 2:
        raise InvalidDirectiveError(str(directive), "at least two rule letters are needed")
    directive.require_ar()
    return evolve(directive, stage)


def multi_arc_bound(directive: DirectiveWord) -> MultiBound:
    """
    Non-clustering bounds of an r-letter AR language.

    The general bound is |w_{lambda2}| + max_i |A^(i)_{mu_y+1}| + 1 and the
    refined one replaces w_{lambda2} by w_{lambda_y}. Landmarks are taken on
    the first three rules by order of appearance.
    """
    if directive.size < 3:
        raise InvalidDirectiveError(str(directive), "at least three rule letters are needed")
    directive.require_ar()
    normalized, permutation = normalize(directive)
    marks = compute_landmarks(normalized, permutation)
    assert marks is not None, "every rule recurs in an AR-valid directive word"
    longest = len(evolve(normalized, marks.mu_y + 1).longest)
    return MultiBound(
        general=len(evolve(normalized, marks.lambda2).bispecial) + longest + 1,
        refined=len(evolve(normalized, marks.lambda_y).bispecial) + longest + 1,
        landmarks=marks,
    )


def multi_thepi_check(directive: DirectiveWord) -> MultiThepiVerdict:
    """
    Chain decomposition of an r-letter episturmian directive word.

    Infinitely many clustering words exactly when the directive word reads
    D1 D2 ... D(r-1): D1 runs over the first two letters, and each new letter
    opens a block over itself and one letter of the previous block, the
    other letter of that block never being used again. Block segments are
    read in prefix.period; the last block continues with period^omega.
    """
    if directive.size < 2:
        raise InvalidDirectiveError(str(directive), "at least two rule letters are needed")
    directive.require_episturmian()
    rules = directive.prefix + directive.period
    finite = MultiThepiVerdict(kind=ClusterCount.FINITELY_MANY)
    first_two: list[str] = []
    for rule in rules:
        if rule not in first_two:
            first_two.append(rule)
        if len(first_two) == 2:
            break
    pair = tuple(first_two)
    blocks: list[ChainBlock] = []
    dropped: set[str] = set()
    start = 0
    for stage, rule in enumerate(rules):
        if rule in pair:
            continue
        if rule in dropped:
            return finite
        later = [letter for letter in pair if directive.occurs_from(letter, stage)]
        if len(later) == 2:
            return finite
        kept = later[0] if later else pair[0]
        blocks.append(ChainBlock(letters=pair, segment="".join(rules[start:stage])))
        dropped.update(letter for letter in pair if letter != kept)
        pair = (kept, rule)
        start = stage
    blocks.append(ChainBlock(letters=pair, segment="".join(rules[start:])))
    return MultiThepiVerdict(kind=ClusterCount.INFINITELY_MANY, blocks=tuple(blocks))
