"""
Unit tests for circular languages and generic language queries.
"""

import pytest

from src.domain.directive import DirectiveLanguage, DirectiveWord
from src.domain.exceptions import EmptyWordError, InsufficientSampleError, NotAFactorError
from src.domain.language import (
    CircularLanguage,
    bispecials,
    complexity,
    contains,
    extension_graph,
    factors,
    is_closed_under_reversal,
    left_specials,
    max_return_time,
    rauzy_graph,
    return_words,
    right_specials,
    singular_words,
)
from src.domain.words import OrderedAlphabet, Word


def strings(words):
    return [str(word) for word in words]


@pytest.mark.unit
class TestCircularLanguage:
    """Test factors of w^omega."""

    def test_factors(self):
        """Test factor sets of small circular languages."""
        assert strings(factors(CircularLanguage.of("ab"), 2)) == ["ab", "ba"]
        assert strings(factors(CircularLanguage.of("ab"), 3)) == ["aba", "bab"]
        assert strings(factors(CircularLanguage.of("abaa"), 2)) == ["aa", "ab", "ba"]
        assert strings(factors(CircularLanguage.of("abaa"), 0)) == [""]

    def test_empty_base_rejected(self):
        """Test that the base must be nonempty."""
        with pytest.raises(EmptyWordError):
            CircularLanguage(Word.empty(OrderedAlphabet.parse("ab")))

    def test_factorial_and_extendable(self):
        """Test that length n+1 factors project onto length n factors."""
        language = CircularLanguage.of("abacabaab")
        for n in range(1, 12):
            shorter = language.factor_set(n)
            longer = language.factor_set(n + 1)
            assert {f[:-1] for f in longer} == shorter
            assert {f[1:] for f in longer} == shorter

    def test_complexity_plateaus_at_length(self):
        """Test that a primitive base has |w| factors of every long length."""
        language = CircularLanguage.of("abacabaab")
        assert complexity(language, 1) == 3
        assert all(complexity(language, n) == 9 for n in range(9, 20))
        assert all(complexity(CircularLanguage.of("ab"), n) == 2 for n in range(1, 6))


@pytest.mark.unit
class TestExtensions:
    """Test extension graphs and special factors."""

    def test_extension_graph_of_empty_word(self):
        """Test that baab has all four letter pairs around the empty word."""
        language = CircularLanguage.of("baab")
        graph = extension_graph(language, Word.empty(language.alphabet))

        assert graph.pairs == {("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")}
        assert graph.is_bispecial

    def test_extension_graph_of_letter(self):
        """Test extensions of a single letter."""
        assert extension_graph(CircularLanguage.of("ab"), Word.parse("a", "ab")).pairs == {
            ("b", "b")
        }
        graph = extension_graph(CircularLanguage.of("abaa"), Word.parse("a", "ab"))
        assert graph.pairs == {("b", "a"), ("a", "b"), ("a", "a")}

    def test_extension_graph_of_non_factor(self):
        """Test that the center must be a factor."""
        with pytest.raises(NotAFactorError):
            extension_graph(CircularLanguage.of("ab"), Word.parse("aa", "ab"))

    def test_bispecials(self):
        """Test bispecial enumeration, empty word first."""
        assert strings(bispecials(CircularLanguage.of("ab"))) == [""]
        assert strings(bispecials(CircularLanguage.of("abaa"))) == ["", "a", "aa"]
        assert bispecials(CircularLanguage.of("a")) == []

    def test_bispecials_of_power_use_root(self):
        """Test that a power has the bispecials of its root."""
        assert strings(bispecials(CircularLanguage.of("abaaabaa"))) == ["", "a", "aa"]

    def test_special_factors(self):
        """Test left and right special factors of abaa."""
        language = CircularLanguage.of("abaa")
        assert strings(left_specials(language, 1)) == ["a"]
        assert strings(right_specials(language, 1)) == ["a"]
        assert strings(left_specials(language, 2)) == ["aa"]
        assert strings(right_specials(language, 2)) == ["aa"]

    def test_singular_words(self):
        """Test singular words of the Tribonacci language."""
        tribonacci = DirectiveLanguage(DirectiveWord.parse(":abc"))
        assert singular_words(CircularLanguage.of("ab"), 6) == []
        found = strings(singular_words(tribonacci, 3))
        assert "aa" in found
        assert "bab" in found
        assert "aba" not in found


@pytest.mark.unit
class TestReversal:
    """Test reversal closure."""

    @pytest.mark.parametrize(
        "text,expected", [("bacab", True), ("abc", False), ("aa", True), ("abaca", False)]
    )
    def test_closed_under_reversal(self, text, expected):
        """Test closure on the conjugates of the base."""
        assert is_closed_under_reversal(CircularLanguage.of(text)) is expected

    def test_closure_agrees_with_deeper_check(self):
        """Test that checking length |w| matches checking length 2|w|."""
        for text in ["abc", "abacb", "bacab", "abaab", "aabbc", "abcacb"]:
            language = CircularLanguage.of(text)
            deep = language.factor_set(2 * len(text))
            assert is_closed_under_reversal(language) == all(f[::-1] in deep for f in deep)


# ============================================================================
# Rauzy graphs and return times
# ============================================================================


def test_rauzy_graph_of_ab():
    """Test the two-vertex cycle."""
    graph = rauzy_graph(CircularLanguage.of("ab"), 1)

    assert strings(graph.vertices) == ["a", "b"]
    assert [(str(e.source), str(e.target), e.label) for e in graph.edges] == [
        ("a", "b", "b"),
        ("b", "a", "a"),
    ]


def test_rauzy_graph_edges_of_abaa():
    """Test edges from the length-2 factors."""
    graph = rauzy_graph(CircularLanguage.of("abaa"), 1)

    assert [(str(e.source), str(e.target)) for e in graph.edges] == [
        ("a", "a"),
        ("a", "b"),
        ("b", "a"),
    ]


def test_tribonacci_rauzy_graph_has_three_circuits():
    """Test the three elementary circuits of an AR Rauzy graph."""
    tribonacci = DirectiveLanguage(DirectiveWord.parse(":abc"))
    graph = rauzy_graph(tribonacci, 1)

    assert strings(graph.elementary_circuits()) == ["a", "ba", "ca"]
    assert all(graph.successors(vertex) for vertex in graph.vertices)


def test_rauzy_graph_of_length_zero_has_parallel_loops():
    """Test one circuit per letter on the empty vertex."""
    tribonacci = DirectiveLanguage(DirectiveWord.parse(":abc"))
    graph = rauzy_graph(tribonacci, 0)

    multigraph = graph.to_networkx()

    assert multigraph.number_of_nodes() == 1
    assert multigraph.number_of_edges() == 3
    assert strings(graph.elementary_circuits()) == ["a", "b", "c"]


def test_circular_rauzy_graph_circuits():
    """Test circuits of the circular language of aab."""
    graph = rauzy_graph(CircularLanguage.of("aab"), 1)

    assert strings(graph.elementary_circuits()) == ["a", "ba"]
    edges = {(str(u), str(v), key) for u, v, key in graph.to_networkx().edges(keys=True)}
    assert edges == {("a", "a", "a"), ("a", "b", "b"), ("b", "a", "a")}


def test_max_return_time():
    """Test gaps between consecutive occurrences."""
    assert max_return_time(Word.parse("a", "ab"), Word.parse("abaaab")) == 2
    assert max_return_time(Word.parse("ab"), Word.parse("ab" * 5)) == 2


def test_max_return_time_needs_three_occurrences():
    """Test the insufficient sample error."""
    with pytest.raises(InsufficientSampleError, match="insufficient sample"):
        max_return_time(Word.parse("b", "ab"), Word.parse("abaab"))


def test_return_words():
    """Test the words read between occurrences."""
    sample = Word.parse("abaaab")
    assert strings(return_words(Word.parse("a", "ab"), sample)) == ["a", "ab"]


def test_contains_accepts_symbols():
    """Test membership by word or symbol tuple."""
    language = CircularLanguage.of("abaa")
    assert contains(language, Word.parse("aab", "ab"))
    assert contains(language, ("b", "a", "a"))
    assert not contains(language, ("b", "b"))
