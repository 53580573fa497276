"""
Unit tests for de-substitution and the perfectly clustering constructions.
"""

from itertools import product

import pytest

from src.domain.arnoux_rauzy import is_ar_factor
from src.domain.bwt import is_perfectly_clustering
from src.domain.constructions import (
    desubstitute,
    in_morphism_range,
    is_conjugate_to_standard,
    psi_insert,
    ptb1_construct,
    ptb2_construct,
    recompose,
)
from src.domain.directive import DirectiveWord, evolve
from src.domain.exceptions import ConstructionError, EmptyWordError, NonPrimitiveWordError
from src.domain.models import MorphismKind
from src.domain.words import OrderedAlphabet, Word, conjugates, is_palindrome

ABC = OrderedAlphabet.parse("abc")


def w(text: str) -> Word:
    return Word.parse(text, ABC)


@pytest.mark.unit
class TestDesubstitute:
    """Test inverse morphism chains."""

    def test_abac(self):
        """Test a two-step chain ending in c."""
        chain = desubstitute(w("abac"))

        assert chain is not None
        assert chain.morphisms == ((MorphismKind.TAU, "a"), (MorphismKind.TAU, "b"))
        assert [step.result for step in chain.steps] == ["bc", "c"]
        assert chain.letter == "c"

    def test_recompose_gives_back_the_word(self):
        """Test that the chain's morphisms rebuild the input."""
        for text in ["abac", "abacaba", "bacabaabacaba", "cabaabacaba"]:
            chain = desubstitute(w(text))
            assert chain is not None
            assert recompose(chain, ABC) == w(text)

    def test_single_letter(self):
        """Test the empty chain."""
        chain = desubstitute(w("a"))

        assert chain is not None
        assert chain.steps == ()
        assert chain.letter == "a"

    def test_failures(self):
        """Test words with no chain."""
        assert desubstitute(w("abc")) is None
        assert desubstitute(w("aa")) is None

    def test_empty_rejected(self):
        """Test empty input."""
        with pytest.raises(EmptyWordError):
            desubstitute(Word.empty(ABC))

    def test_standard_words_desubstitute(self):
        """Test every Tribonacci standard word up to stage 6."""
        directive = DirectiveWord.parse(":abc")
        for stage in range(7):
            for word in evolve(directive, stage).words:
                assert desubstitute(word) is not None


# ============================================================================
# Conjugacy to standard words
# ============================================================================


@pytest.mark.parametrize(
    "text,expected",
    [("aba", True), ("baa", True), ("bacab", False), ("abaca", False), ("abc", False)],
)
def test_is_conjugate_to_standard(text, expected):
    """Test conjugacy classes of standard words."""
    assert is_conjugate_to_standard(w(text)) is expected


def test_is_conjugate_to_standard_rejects_powers():
    """Test the primitivity requirement."""
    with pytest.raises(NonPrimitiveWordError):
        is_conjugate_to_standard(w("abab"))


def test_in_morphism_range():
    """Test images of elementary morphisms."""
    assert in_morphism_range(w("abaca"))
    assert in_morphism_range(w("abac"))
    assert not in_morphism_range(w("bacab"))


def test_psi_insert():
    """Test b insertion in aa and ab."""
    assert str(psi_insert(w("aab"))) == "ababb"
    assert str(psi_insert(w("ac"))) == "ac"
    assert str(psi_insert(w("cca"), lead="c")) == "cbca"


# ============================================================================
# Constructions
# ============================================================================


@pytest.mark.parametrize(
    "v,expected", [("ac", "bacab"), ("ca", "bcacb"), ("acc", "bacacab")]
)
def test_ptb1_construct(v, expected):
    """Test the palindromic construction on small inputs."""
    assert str(ptb1_construct(w(v))) == expected


def test_ptb1_postconditions_hold():
    """Test every v over {a, c} with both letters up to length 6."""
    for length in range(2, 7):
        for letters in product("ac", repeat=length):
            if len(set(letters)) < 2:
                continue
            result = ptb1_construct(w("".join(letters)))
            assert is_palindrome(result)
            assert is_perfectly_clustering(result, ABC)
            assert not in_morphism_range(result)


def test_ptb1_input_validation():
    """Test v must use exactly the letters a and c."""
    with pytest.raises(ConstructionError, match="both a and c"):
        ptb1_construct(w("aa"))
    with pytest.raises(ConstructionError, match="not allowed"):
        ptb1_construct(w("ab"))


def test_ptb2_construct():
    """Test tau images of palindromic clustering words."""
    assert str(ptb2_construct(w("a"), w("bacab"))) == "abaacaab"
    assert ptb2_construct(Word.empty(ABC), w("bacab")) == w("bacab")


def test_ptb2_rejects_b():
    """Test u must avoid b."""
    with pytest.raises(ConstructionError, match="not allowed"):
        ptb2_construct(w("ab"), w("bacab"))


def test_ptb2_result_is_checked():
    """Test that a non-clustering image is reported."""
    with pytest.raises(ConstructionError, match="does not cluster"):
        ptb2_construct(w("a"), w("baab"))


def _ptb2_outputs():
    """tau_u(w) for u over {a, c} up to length 3, w built from v = ac, aac, aca, acc."""
    ptb1_words = [ptb1_construct(w(v)) for v in ("ac", "aac", "aca", "acc")]
    for length in range(4):
        for u in product("ac", repeat=length):
            for base in ptb1_words:
                yield ptb2_construct(w("".join(u)), base)


def test_ptb2_outputs_cluster_and_are_not_standard():
    """Test every tau_u image is perfectly clustering and outside standard classes."""
    for result in _ptb2_outputs():
        assert is_perfectly_clustering(result, ABC)
        assert not is_conjugate_to_standard(result)


@pytest.mark.slow
def test_ptb2_proper_conjugates_are_not_ar_words():
    """Test that no proper conjugate of a tau_u image is an AR factor."""
    directives = [
        DirectiveWord(prefix, ("a", "b", "c"), ABC)
        for length in range(3)
        for prefix in product("abc", repeat=length)
    ]
    for result in _ptb2_outputs():
        for conjugate in conjugates(result)[1:]:
            assert not any(is_ar_factor(conjugate, directive) for directive in directives)
