"""
Clustering Criterion - The bispecial order condition.

A word w clusters for a permutation pi exactly when every bispecial factor v
of its circular language satisfies the order condition: for extensions
x v y and x' v y' with x != x' and y != y', pi^-1 x < pi^-1 x' holds if and
only if y < y'. Drawing the extension graph of v with right letters on top
(in the order) and left letters below (in the pi-order), the condition says
no two edges cross.
"""

from itertools import combinations
from typing import Iterable, Optional

from src.domain.exceptions import (
    EmptyWordError,
    NotAFactorError,
    NotBispecialError,
    PreconditionError,
)
from src.domain.language import (
    CircularLanguage,
    ExtensionGraph,
    FactorialLanguage,
    bispecials,
    extension_graph,
    is_closed_under_reversal,
)
from src.domain.models import OrderConditionReport, OrderConditionViolation
from src.domain.words import LetterPermutation, OrderedAlphabet, Word, conjugates


def _violation(
    graph: ExtensionGraph,
    order: OrderedAlphabet,
    permutation: LetterPermutation,
) -> Optional[OrderConditionViolation]:
    """First failing pair of extensions and the number of failing pairs."""
    ranks = order.ranks
    inverse = permutation.inverse()
    first: Optional[tuple[str, str, str, str]] = None
    count = 0
    for (x, y), (x_prime, y_prime) in combinations(graph.sorted_pairs(), 2):
        if x == x_prime or y == y_prime:
            continue
        left_less = ranks[inverse(x)] < ranks[inverse(x_prime)]
        right_less = ranks[y] < ranks[y_prime]
        if left_less != right_less:
            count += 1
            if first is None:
                first = (x, x_prime, y, y_prime)
    if first is None:
        return None
    return OrderConditionViolation(
        bispecial=str(graph.center),
        x=first[0],
        x_prime=first[1],
        y=first[2],
        y_prime=first[3],
        count=count,
    )


def satisfies_order_condition(
    language: FactorialLanguage,
    bispecial: Word,
    order: OrderedAlphabet,
    permutation: LetterPermutation,
) -> tuple[bool, Optional[OrderConditionViolation]]:
    """
    Check the order condition on one bispecial factor.

    Returns:
        The verdict and, when it fails, the first witness with a count

    Raises:
        NotBispecialError: If ``bispecial`` is not bispecial in the language
    """
    try:
        graph = extension_graph(language, bispecial)
    except NotAFactorError as exc:
        raise NotBispecialError(str(bispecial)) from exc
    if not graph.is_bispecial:
        raise NotBispecialError(str(bispecial))
    violation = _violation(graph, order, permutation)
    return violation is None, violation


def resolve_bispecials(word: Word) -> list[ExtensionGraph]:
    """
    Extension graphs of every bispecial of the word's circular language.

    Non-primitive words are handled through their primitive root.
    """
    if word.is_empty:
        raise EmptyWordError("resolve_bispecials")
    language = CircularLanguage(word).root()
    return [extension_graph(language, center) for center in bispecials(language)]


def clustering_by_criterion(
    word: Word,
    order: OrderedAlphabet,
    permutation: LetterPermutation,
    resolution: Optional[Iterable[ExtensionGraph]] = None,
) -> OrderConditionReport:
    """
    Decide clustering for (order, pi) through the order condition.

    Args:
        word: Nonempty word
        order: Total order on the letters
        permutation: The permutation pi
        resolution: Precomputed ``resolve_bispecials(word)``, reused across calls

    Returns:
        Report with the bispecials checked and the violations found
    """
    graphs = list(resolution) if resolution is not None else resolve_bispecials(word)
    violations = [
        violation
        for violation in (_violation(graph, order, permutation) for graph in graphs)
        if violation is not None
    ]
    return OrderConditionReport(
        word=str(word),
        order=order.letters,
        permutation=permutation.pairs,
        bispecials=tuple(str(graph.center) for graph in graphs),
        violations=tuple(violations),
        verdict=not violations,
    )


def criterion_certificates(word: Word, order: OrderedAlphabet) -> list[LetterPermutation]:
    """Every non-identity permutation satisfying the order condition, sorted by images."""
    graphs = resolve_bispecials(word)
    found = [
        permutation
        for permutation in LetterPermutation.all(order.letters)
        if not permutation.is_identity
        and all(_violation(graph, order, permutation) is None for graph in graphs)
    ]
    return sorted(found, key=lambda p: order.key(tuple(p(letter) for letter in order.letters)))


def crossing_free(
    graph: ExtensionGraph,
    top: OrderedAlphabet,
    bottom: OrderedAlphabet,
) -> bool:
    """
    True if the extension graph draws without proper crossings.

    Right letters sit on the top line in ``top`` order, left letters on the
    bottom line in ``bottom`` order; edges sharing an endpoint do not cross.
    """
    for (x, y), (x_prime, y_prime) in combinations(graph.pairs, 2):
        if x == x_prime or y == y_prime:
            continue
        if bottom.less(x, x_prime) != top.less(y, y_prime):
            return False
    return True


def rev_condition3(word: Word, order: OrderedAlphabet) -> bool:
    """
    Reversal comparison condition on factorizations of conjugates.

    For every conjugate uv of the word with u and v not palindromes,
    u < reverse(u) must hold exactly when v < reverse(v).

    Raises:
        PreconditionError: If the circular language is not closed under reversal
    """
    language = CircularLanguage(word)
    if not is_closed_under_reversal(language):
        raise PreconditionError(
            "rev_condition3", f"language of {word} is not closed under reversal"
        )
    key = order.key
    for conjugate in {c.symbols for c in conjugates(word)}:
        for split in range(1, len(conjugate)):
            u, v = conjugate[:split], conjugate[split:]
            if u == u[::-1] or v == v[::-1]:
                continue
            if (key(u) < key(u[::-1])) != (key(v) < key(v[::-1])):
                return False
    return True
