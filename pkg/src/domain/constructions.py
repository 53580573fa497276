"""
Constructions - De-substitution and perfectly clustering AR words.

Inverse elementary morphisms decide whether a word is conjugate to a
standard Arnoux-Rauzy word. The b-insertion construction builds the
palindromic perfectly clustering words outside the range of every AR
morphism, and tau images of them give the remaining perfectly clustering
words that are not conjugate to standard ones.
"""

from collections import deque
from typing import Optional

import structlog

from src.domain.bwt import is_perfectly_clustering
from src.domain.directive import Morphism
from src.domain.exceptions import ConstructionError, EmptyWordError, NonPrimitiveWordError
from src.domain.models import DesubstitutionChain, DesubstitutionStep, MorphismKind
from src.domain.words import (
    OrderedAlphabet,
    Word,
    conjugates,
    is_palindrome,
    is_primitive,
    primitive_root,
)

logger = structlog.get_logger(__name__)

Symbols = tuple[str, ...]

CONSTRUCTION_ORDER = OrderedAlphabet.parse("abc")


def _inverse(kind: MorphismKind, x: str, symbols: Symbols) -> Optional[Symbols]:
    """
    Preimage of ``symbols`` under sigma_x or tau_x, or None.

    sigma_x needs every non-x letter to be followed by x; tau_x needs every
    non-x letter to be preceded by an x not already used by another letter.
    """
    preimage: list[str] = []
    i = 0
    n = len(symbols)
    while i < n:
        symbol = symbols[i]
        if kind is MorphismKind.SIGMA:
            if symbol == x:
                preimage.append(x)
                i += 1
            elif i + 1 < n and symbols[i + 1] == x:
                preimage.append(symbol)
                i += 2
            else:
                return None
        else:
            if symbol != x:
                return None
            if i + 1 < n and symbols[i + 1] != x:
                preimage.append(symbols[i + 1])
                i += 2
            else:
                preimage.append(x)
                i += 1
    return tuple(preimage)


def _inverse_steps(symbols: Symbols, letters: Symbols) -> list[tuple[MorphismKind, str, Symbols]]:
    found = []
    for x in letters:
        for kind in (MorphismKind.SIGMA, MorphismKind.TAU):
            preimage = _inverse(kind, x, symbols)
            if preimage is not None:
                found.append((kind, x, preimage))
    return found


def desubstitute(word: Word) -> Optional[DesubstitutionChain]:
    """
    Shortest chain of inverse sigma/tau applications reducing ``word`` to a letter.

    Only steps that shorten the word are followed, so a power of a single
    letter longer than one fails.

    Returns:
        The chain, empty for a single letter, or None when no chain exists

    Raises:
        EmptyWordError: If the word is empty
    """
    if word.is_empty:
        raise EmptyWordError("desubstitute")
    letters = word.alphabet.letters
    start = word.symbols
    parents: dict[Symbols, Optional[tuple[Symbols, MorphismKind, str]]] = {start: None}
    queue = deque([start])
    target: Optional[Symbols] = None
    while queue:
        current = queue.popleft()
        if len(current) == 1:
            target = current
            break
        for kind, x, preimage in _inverse_steps(current, letters):
            if len(preimage) < len(current) and preimage not in parents:
                parents[preimage] = (current, kind, x)
                queue.append(preimage)
    if target is None:
        logger.debug("desubstitute_failed", word=str(word))
        return None
    steps: list[DesubstitutionStep] = []
    node = target
    while parents[node] is not None:
        parent, kind, x = parents[node]  # type: ignore[misc]
        steps.append(DesubstitutionStep(kind=kind, letter=x, result="".join(node)))
        node = parent
    steps.reverse()
    return DesubstitutionChain(word=str(word), steps=tuple(steps), letter=target[0])


def recompose(chain: DesubstitutionChain, alphabet: OrderedAlphabet) -> Word:
    """Apply the chain's morphisms to its final letter, giving back the original word."""
    return Morphism(chain.morphisms).apply(Word((chain.letter,), alphabet))


def is_conjugate_to_standard(word: Word) -> bool:
    """
    True if some conjugate of the primitive word de-substitutes to a letter.

    Raises:
        NonPrimitiveWordError: If the word is a proper power
    """
    root, multiplicity = primitive_root(word)
    if multiplicity > 1:
        raise NonPrimitiveWordError(str(word), str(root), multiplicity)
    seen: set[Symbols] = set()
    for conjugate in conjugates(word):
        if conjugate.symbols in seen:
            continue
        seen.add(conjugate.symbols)
        if desubstitute(conjugate) is not None:
            return True
    return False


def in_morphism_range(word: Word) -> bool:
    """True if the word is the image of some word under one of the six elementary morphisms."""
    return bool(_inverse_steps(word.symbols, word.alphabet.letters))


def psi_insert(word: Word, lead: str = "a", insert: str = "b") -> Word:
    """
    Insert ``insert`` in the middle of each occurrence of ``lead lead`` and ``lead insert``.

    With the default letters this puts a single b inside every aa and ab.
    """
    symbols = word.symbols
    result: list[str] = []
    for i, symbol in enumerate(symbols):
        result.append(symbol)
        if symbol == lead and i + 1 < len(symbols) and symbols[i + 1] in (lead, insert):
            result.append(insert)
    return Word(tuple(result), word.alphabet)


def _construction_word(word: Word, construction: str, allowed: str) -> Symbols:
    unknown = set(word.symbols) - set(allowed)
    if unknown:
        raise ConstructionError(
            construction, f"letters {sorted(unknown)} are not allowed, use only {allowed}"
        )
    return word.symbols


def _require(condition: bool, construction: str, reason: str) -> None:
    if not condition:
        raise ConstructionError(construction, reason)


def ptb1_construct(v: Word, verify: bool = True) -> Word:
    """
    Palindromic perfectly clustering word built from tau_v(b).

    w' is psi applied to tau_v(b) with the first letter of v as lead, and
    w = b w' with the final b of w' removed. The result is a palindrome
    starting and ending with b, primitive, perfectly clustering for a<b<c
    and outside the range of every elementary AR morphism.

    Raises:
        ConstructionError: If v is not a word over {a, c} using both letters,
            or if a checked property fails
    """
    symbols = _construction_word(v, "ptb1", "ac")
    _require({"a", "c"} <= set(symbols), "ptb1", "v must contain both a and c")
    image = Morphism.tau_word(symbols).image(("b",))
    inserted = psi_insert(Word(image, CONSTRUCTION_ORDER), lead=symbols[0])
    assert inserted.symbols[-1] == "b"
    result = Word(("b",) + inserted.symbols[:-1], CONSTRUCTION_ORDER)
    if verify:
        text = str(result)
        _require(is_palindrome(result), "ptb1", f"{text} is not a palindrome")
        _require(text[0] == "b" and text[-1] == "b", "ptb1", f"{text} must start and end with b")
        _require(not ("aa" in text and "cc" in text), "ptb1", f"{text} has both aa and cc")
        _require(is_primitive(result), "ptb1", f"{text} is not primitive")
        _require(
            is_perfectly_clustering(result, CONSTRUCTION_ORDER),
            "ptb1",
            f"{text} does not cluster perfectly for a<b<c",
        )
        _require(not in_morphism_range(result), "ptb1", f"{text} is an AR morphism image")
    logger.debug("ptb1_construct", v=str(v), result=str(result))
    return result


def ptb2_construct(u: Word, w: Word, verify: bool = True) -> Word:
    """
    tau_u(w) for u over {a, c}, possibly empty.

    Raises:
        ConstructionError: If u contains b, or if the image does not cluster
            perfectly for a<b<c
    """
    symbols = _construction_word(u, "ptb2", "ac")
    result = Word(Morphism.tau_word(symbols).image(w.symbols), CONSTRUCTION_ORDER)
    if verify:
        _require(
            is_perfectly_clustering(result, CONSTRUCTION_ORDER),
            "ptb2",
            f"{result} does not cluster perfectly for a<b<c",
        )
    return result
