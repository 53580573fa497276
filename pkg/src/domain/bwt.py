"""
Burrows-Wheeler Transform - Direct clustering detection.

The transform sorts the cyclic rotations of a word under a chosen order and
reads the last column. A word clusters for a permutation pi when the
transform is the run form (pi a_1)^n (pi a_2)^n ... (pi a_r)^n, each letter
forming a single run. Perfect clustering uses the order-reversing
permutation.
"""

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations
from typing import Optional, Sequence

import structlog

from src.domain.exceptions import AlphabetMismatchError, EmptyWordError
from src.domain.models import ClusteringCertificate
from src.domain.words import (
    PERMUTATION_LIMIT,
    LetterPermutation,
    OrderedAlphabet,
    Word,
    reverse,
)

logger = structlog.get_logger(__name__)


@lru_cache(maxsize=131072)
def _transform(symbols: tuple[str, ...], letters: tuple[str, ...]) -> tuple[str, ...]:
    ranks = {letter: index for index, letter in enumerate(letters)}
    keys = [ranks[symbol] for symbol in symbols]
    n = len(keys)
    doubled = keys + keys
    rotations = sorted(range(n), key=lambda start: doubled[start : start + n])
    return tuple(symbols[start - 1] for start in rotations)


def _check_input(word: Word, order: OrderedAlphabet) -> None:
    if word.is_empty:
        raise EmptyWordError("bwt")
    ranks = order.ranks
    if any(symbol not in ranks for symbol in word.symbols):
        raise AlphabetMismatchError(word.symbols, order.letters)


def bwt(word: Word, order: OrderedAlphabet) -> Word:
    """
    Burrows-Wheeler transform of a word under an order.

    Equal rotations of a non-primitive word sort next to each other, so the
    last column is well defined.

    Raises:
        EmptyWordError: If the word is empty
        AlphabetMismatchError: If the word uses a letter missing from ``order``
    """
    _check_input(word, order)
    return Word(_transform(word.symbols, order.letters), word.alphabet)


def _run_letters(transform: Sequence[str]) -> Optional[tuple[str, ...]]:
    """Letters of the runs in order, or None if some letter has two runs."""
    runs: list[str] = []
    for symbol in transform:
        if not runs or runs[-1] != symbol:
            if symbol in runs:
                return None
            runs.append(symbol)
    return tuple(runs)


def _clustering_images(
    word: Word, order: OrderedAlphabet, allow_identity: bool
) -> list[tuple[str, ...]]:
    """Image sequences (pi a_1, ..., pi a_r) realising the run form."""
    runs = _run_letters(_transform(word.symbols, order.letters))
    if runs is None:
        return []
    letters = order.letters
    absent = [letter for letter in letters if letter not in set(runs)]
    found = []
    for slots in combinations(range(len(letters)), len(runs)):
        free = [index for index in range(len(letters)) if index not in slots]
        for filling in permutations(absent):
            images = [""] * len(letters)
            for slot, letter in zip(slots, runs):
                images[slot] = letter
            for slot, letter in zip(free, filling):
                images[slot] = letter
            found.append(tuple(images))
    if not allow_identity:
        found = [images for images in found if images != letters]
    return sorted(found, key=order.key)


def _certificate(
    word: Word, order: OrderedAlphabet, images: tuple[str, ...]
) -> ClusteringCertificate:
    counts = Counter(word.symbols)
    runs = tuple((image, counts[image]) for image in images)
    return ClusteringCertificate(
        word=str(word),
        order=order.letters,
        permutation=LetterPermutation.from_images(order.letters, images).pairs,
        transform="".join(image * count for image, count in runs),
        runs=runs,
    )


def clustering_certificates(
    word: Word,
    order: OrderedAlphabet,
    allow_identity: bool = False,
) -> list[ClusteringCertificate]:
    """
    Every permutation for which the word clusters under ``order``.

    Letters absent from the word have empty runs and may sit anywhere, so
    one transform can be certified by several permutations. The identity is
    excluded unless ``allow_identity`` is set.

    Returns:
        Certificates sorted by their image sequence; empty if the word does
        not cluster for this order
    """
    _check_input(word, order)
    return [
        _certificate(word, order, images)
        for images in _clustering_images(word, order, allow_identity)
    ]


def is_perfectly_clustering(
    word: Word,
    order: OrderedAlphabet,
    restrict_to_present: bool = False,
) -> bool:
    """
    True if the word clusters for the order-reversing permutation.

    By default the symmetric permutation of the whole of ``order`` is used.
    With ``restrict_to_present`` the check is made on the sub-alphabet of
    letters that occur, where a one-letter word counts as perfectly
    clustering.
    """
    _check_input(word, order)
    runs = _run_letters(_transform(word.symbols, order.letters))
    if runs is None:
        return False
    present = set(word.symbols)
    if not restrict_to_present and order.size < 2:
        return False
    expected = tuple(letter for letter in reversed(order.letters) if letter in present)
    return runs == expected


def clusters_any(word: Word, limit: int = PERMUTATION_LIMIT) -> list[ClusteringCertificate]:
    """
    Certificates across every order of the word's alphabet.

    Orders are swept in lexicographic order of their letter sequences.

    Raises:
        OversizedAlphabetError: If the alphabet has more than ``limit`` letters
    """
    certificates: list[ClusteringCertificate] = []
    for order in word.alphabet.orders(limit):
        certificates.extend(clustering_certificates(word, order))
    logger.debug("clusters_any", word=str(word), certificates=len(certificates))
    return certificates


def clusters(word: Word, limit: int = PERMUTATION_LIMIT) -> bool:
    """True if the word clusters for some order and some permutation."""
    if word.is_empty:
        raise EmptyWordError("clusters")
    return any(
        _clustering_images(word, order, allow_identity=False)
        for order in word.alphabet.orders(limit)
    )


def pi_order(order: OrderedAlphabet, permutation: LetterPermutation) -> OrderedAlphabet:
    """
    The pi-order: x comes before y when pi^-1 x comes before pi^-1 y.

    Its letter sequence is (pi a_1, ..., pi a_r).
    """
    return OrderedAlphabet(tuple(permutation(letter) for letter in order.letters))


def reverse_certificate(
    word: Word, certificate: ClusteringCertificate
) -> Optional[ClusteringCertificate]:
    """
    Certificate of the reversed word for the pi-order and pi^-1.

    A word clustering for (order, pi) has a reverse clustering for
    (pi-order, pi^-1); None means that duality failed.
    """
    permutation = certificate.letter_permutation
    dual_order = pi_order(certificate.ordered_alphabet, permutation)
    inverse = permutation.inverse()
    for candidate in clustering_certificates(reverse(word), dual_order):
        if candidate.letter_permutation == inverse:
            return candidate
    return None
