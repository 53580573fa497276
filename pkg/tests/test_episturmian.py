"""
Unit tests for episturmian, Sturmian and r-letter AR languages.
"""

import pytest

from src.domain.arnoux_rauzy import arc_bound, census_layer
from src.domain.bwt import is_perfectly_clustering
from src.domain.directive import DirectiveLanguage, DirectiveWord, evolve
from src.domain.episturmian import (
    clustering_witnesses,
    ebs_check,
    epi_bound,
    epi_landmarks,
    multi_ar_evolve,
    multi_arc_bound,
    multi_thepi_check,
    sturmian_words,
    thepi_check,
    tstu_check,
)
from src.domain.exceptions import InvalidAlphabetError, InvalidDirectiveError, NoFiniteBoundError
from src.domain.language import CircularLanguage, contains
from src.domain.models import ClusterCount
from src.domain.words import OrderedAlphabet, Word


@pytest.mark.unit
class TestThepi:
    """Test finiteness of clustering words on three letters."""

    def test_finitely_many(self):
        """Test abc(ab)^omega."""
        verdict = thepi_check(DirectiveWord.parse("abc:ab"))

        assert verdict.kind is ClusterCount.FINITELY_MANY
        assert verdict.split is None

    def test_infinitely_many(self):
        """Test ab(ac)^omega splits after ab."""
        verdict = thepi_check(DirectiveWord.parse("ab:ac"))

        assert verdict.kind is ClusterCount.INFINITELY_MANY
        assert verdict.split == 2
        assert verdict.head == "ab"
        assert verdict.tail_letters == ("a", "c")

    def test_ar_words_are_finite(self, tribonacci, abacba):
        """Test that every rule recurring forces finitely many."""
        assert thepi_check(tribonacci).kind is ClusterCount.FINITELY_MANY
        assert thepi_check(abacba).kind is ClusterCount.FINITELY_MANY

    def test_rules_must_all_occur(self):
        """Test episturmian validity."""
        with pytest.raises(InvalidDirectiveError, match="at least once"):
            thepi_check(DirectiveWord.parse(":ab", "abc"))
        with pytest.raises(InvalidDirectiveError, match="expected 3 rule letters"):
            thepi_check(DirectiveWord.parse(":abcd"))


@pytest.mark.unit
class TestEpiBound:
    """Test the episturmian non-clustering bound."""

    def test_abc_ab(self):
        """Test the bound of abc(ab)^omega."""
        directive = DirectiveWord.parse("abc:ab")

        assert epi_bound(directive) == 24
        assert epi_landmarks(directive).mu_y == 4

    def test_tribonacci_bound_is_weaker(self, tribonacci):
        """Test that the episturmian bound does not beat the AR bound."""
        assert epi_bound(tribonacci) == 28
        assert epi_bound(tribonacci) >= arc_bound(tribonacci)

    def test_infinite_case_has_no_bound(self):
        """Test the error for infinitely many clustering words."""
        with pytest.raises(NoFiniteBoundError, match="no finite bound"):
            epi_bound(DirectiveWord.parse("ab:ac"))

    def test_ebs(self):
        """Test which standard words extend the bispecial in the language."""
        directive = DirectiveWord.parse("abc:ab")

        assert not ebs_check(directive, 4, "c")
        assert ebs_check(directive, 4, "a")
        assert ebs_check(directive, 2, "c")

    def test_no_landmarks_without_recurrence(self):
        """Test landmarks of an infinite case."""
        assert epi_landmarks(DirectiveWord.parse("ab:ac")) is None


# ============================================================================
# Witnesses
# ============================================================================


def test_witnesses_grow_and_cluster():
    """Test perfectly clustering factors of increasing length."""
    directive = DirectiveWord.parse("ab:ac")
    language = DirectiveLanguage(directive)
    order = OrderedAlphabet.parse("acb")

    witnesses = clustering_witnesses(directive, count=5)

    assert len(witnesses) == 5
    lengths = [len(word) for word in witnesses]
    assert lengths == sorted(set(lengths))
    for word in witnesses:
        assert contains(language, word)
        assert is_perfectly_clustering(word, order, restrict_to_present=True)


def test_no_witnesses_when_finite(tribonacci):
    """Test the empty list for finitely many clustering words."""
    assert clustering_witnesses(tribonacci) == []


# ============================================================================
# Sturmian words
# ============================================================================


def test_sturmian_words():
    """Test the Fibonacci standard words at stage 3."""
    a_word, b_word, bispecial = sturmian_words(DirectiveWord.parse(":ab"), 3)

    assert (str(a_word), str(b_word), str(bispecial)) == ("aba", "baaba", "abaaba")


def test_sturmian_words_validation(tribonacci):
    """Test the two-letter AR requirement."""
    with pytest.raises(InvalidDirectiveError, match="expected 2 rule letters"):
        sturmian_words(tribonacci, 2)
    with pytest.raises(InvalidDirectiveError):
        sturmian_words(DirectiveWord.parse("ab:a"), 2)


@pytest.mark.parametrize(
    "text,expected", [("abaa", True), ("baab", False), ("a", True), ("abab", True)]
)
def test_tstu_check(text, expected):
    """Test binary clustering through the primitive root."""
    assert tstu_check(Word.parse(text)) is expected


def test_tstu_rejects_other_letters():
    """Test the two-letter alphabet requirement."""
    with pytest.raises(InvalidAlphabetError, match="only a and b"):
        tstu_check(Word.parse("c"))


def test_sturmian_standard_words_cluster():
    """Test that Fibonacci standard words all cluster."""
    directive = DirectiveWord.parse(":ab")
    for stage in range(8):
        a_word, b_word, _ = sturmian_words(directive, stage)
        assert tstu_check(a_word)
        assert tstu_check(b_word)


# ============================================================================
# r-letter AR languages
# ============================================================================


def test_multi_ar_evolve(four_bonacci):
    """Test 4-Bonacci standard words."""
    assert str(multi_ar_evolve(four_bonacci, 3).bispecial) == "abacaba"
    state = multi_ar_evolve(four_bonacci, 5)
    assert [len(state[letter]) for letter in "abcd"] == [15, 29, 27, 23]


def test_multi_ar_evolve_validation():
    """Test directive requirements."""
    with pytest.raises(InvalidDirectiveError, match="at least two"):
        multi_ar_evolve(DirectiveWord.parse(":a"), 1)


def test_multi_arc_bound(four_bonacci):
    """Test the general and refined 4-Bonacci bounds."""
    bound = multi_arc_bound(four_bonacci)

    assert bound.general == 60
    assert bound.refined == 58
    assert bound.landmarks.mu_y == 5


def test_multi_arc_bound_on_three_letters_is_the_ar_bound(tribonacci, abacba):
    """Test that the refined bound agrees with the AR bound."""
    assert multi_arc_bound(tribonacci).refined == arc_bound(tribonacci)
    assert multi_arc_bound(abacba).refined == arc_bound(abacba)


def test_four_bonacci_candidate_has_all_a_extensions(four_bonacci):
    """Test that a B5 C5 sees every letter pair through a."""
    state = evolve(four_bonacci, 5)
    candidate = Word(("a",), four_bonacci.alphabet) + state["b"] + state["c"]

    pairs = {"".join(pair) for pair in CircularLanguage(candidate).factor_set(2)}

    assert len(candidate) == 57
    assert pairs == {"aa", "ab", "ac", "ad", "ba", "ca", "da"}


@pytest.mark.slow
def test_four_bonacci_has_no_clustering_factor_of_length_57(four_bonacci):
    """Test the layer just below the refined bound."""
    assert census_layer(four_bonacci, 57) == []


# ============================================================================
# Chain decompositions
# ============================================================================


def test_multi_thepi_binary_is_infinite():
    """Test that two letters always give infinitely many."""
    verdict = multi_thepi_check(DirectiveWord.parse(":ab"))

    assert verdict.kind is ClusterCount.INFINITELY_MANY
    assert len(verdict.blocks) == 1


def test_multi_thepi_four_bonacci_is_finite(four_bonacci):
    """Test that every rule recurring forces finitely many."""
    assert multi_thepi_check(four_bonacci).kind is ClusterCount.FINITELY_MANY


def test_multi_thepi_agrees_with_three_letters():
    """Test the chain reading against the three-letter decision."""
    for text in ["ab:ac", "abc:ab", ":abc", "aab:bc", "abba:cb"]:
        directive = DirectiveWord.parse(text)
        assert multi_thepi_check(directive).kind is thepi_check(directive).kind


def test_multi_thepi_chain():
    """Test a four-letter chain (ab)(ac)(cd)."""
    verdict = multi_thepi_check(DirectiveWord.parse("abac:cd"))

    assert verdict.kind is ClusterCount.INFINITELY_MANY
    assert [block.letters for block in verdict.blocks] == [("a", "b"), ("a", "c"), ("c", "d")]
    assert verdict.blocks[0].segment == "aba"

