"""
Languages - Circular languages and generic factorial-language queries.

A circular language holds the factors of the periodic infinite word w w w ...
The queries here (factors, extensions, special and singular words, Rauzy
graphs, complexity, return times) work on any language exposing its factor
sets, including the directive-generated languages of ``src.domain.directive``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Protocol, Sequence

import networkx as nx

from src.domain.exceptions import (
    EmptyWordError,
    InsufficientSampleError,
    NotAFactorError,
)
from src.domain.words import OrderedAlphabet, Word, occurrences, primitive_root

Factor = tuple[str, ...]


class FactorialLanguage(Protocol):
    """A factorial, extendable language given by its factor sets."""

    @property
    def alphabet(self) -> OrderedAlphabet: ...

    def factor_set(self, n: int) -> frozenset[Factor]: ...


@lru_cache(maxsize=8192)
def _circular_factors(symbols: Factor, n: int) -> frozenset[Factor]:
    period = len(symbols)
    stream = symbols * (n // period + 2)
    return frozenset(stream[start : start + n] for start in range(period))


@dataclass(frozen=True)
class CircularLanguage:
    """The factors of base^omega."""

    base: Word

    def __post_init__(self) -> None:
        if self.base.is_empty:
            raise EmptyWordError("CircularLanguage")

    @property
    def alphabet(self) -> OrderedAlphabet:
        return self.base.alphabet

    @classmethod
    def of(cls, text: str, alphabet: OrderedAlphabet | str | None = None) -> CircularLanguage:
        return cls(Word.parse(text, alphabet))

    def factor_set(self, n: int) -> frozenset[Factor]:
        return _circular_factors(self.base.symbols, n)

    def root(self) -> CircularLanguage:
        """Same language over the primitive root of the base."""
        return CircularLanguage(primitive_root(self.base)[0])


@dataclass(frozen=True)
class ExtensionGraph:
    """Left/right letter pairs (x, y) with x v y in the language."""

    center: Word
    pairs: frozenset[tuple[str, str]]

    @property
    def left_letters(self) -> frozenset[str]:
        return frozenset(x for x, _ in self.pairs)

    @property
    def right_letters(self) -> frozenset[str]:
        return frozenset(y for _, y in self.pairs)

    @property
    def is_bispecial(self) -> bool:
        return len(self.left_letters) >= 2 and len(self.right_letters) >= 2

    def sorted_pairs(self) -> list[tuple[str, str]]:
        key = self.center.alphabet.key
        return sorted(self.pairs, key=lambda pair: key(pair))


@dataclass(frozen=True)
class RauzyEdge:
    source: Word
    target: Word
    label: str


@dataclass(frozen=True)
class RauzyGraph:
    """Rauzy graph of length n: an edge av -> vb labelled b for each factor avb."""

    length: int
    vertices: tuple[Word, ...]
    edges: tuple[RauzyEdge, ...]

    def successors(self, vertex: Word) -> list[RauzyEdge]:
        return [edge for edge in self.edges if edge.source == vertex]

    def to_networkx(self) -> nx.MultiDiGraph:
        """The graph as a networkx multigraph keyed by edge label."""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for edge in self.edges:
            graph.add_edge(edge.source, edge.target, key=edge.label)
        return graph

    def elementary_circuits(self) -> list[Word]:
        """
        Labels of all simple cycles.

        Each cycle is read from its smallest vertex; parallel edges give one
        circuit per label.
        """
        graph = self.to_networkx()
        index = {vertex: i for i, vertex in enumerate(self.vertices)}
        alphabet = self.vertices[0].alphabet if self.vertices else None
        cycles: set[tuple[Word, ...]] = set()
        for cycle in nx.simple_cycles(graph):
            start = cycle.index(min(cycle, key=index.__getitem__))
            cycles.add(tuple(cycle[start:] + cycle[:start]))
        circuits: list[Word] = []
        for nodes in cycles:
            hops = zip(nodes, nodes[1:] + nodes[:1])
            for labels in product(*(sorted(graph[u][v]) for u, v in hops)):
                circuits.append(Word(labels, alphabet))  # type: ignore[arg-type]
        return sorted(circuits, key=lambda word: (len(word), word.alphabet.key(word.symbols)))


def _words(language: FactorialLanguage, factor_set: frozenset[Factor]) -> list[Word]:
    alphabet = language.alphabet
    return [
        Word(symbols, alphabet)
        for symbols in sorted(factor_set, key=lambda symbols: alphabet.key(symbols))
    ]


def factors(language: FactorialLanguage, n: int) -> list[Word]:
    """Distinct length-n factors, sorted lexicographically under the alphabet order."""
    return _words(language, language.factor_set(n))


def contains(language: FactorialLanguage, word: Word | Sequence[str]) -> bool:
    symbols = tuple(word.symbols if isinstance(word, Word) else word)
    return symbols in language.factor_set(len(symbols))


def complexity(language: FactorialLanguage, n: int) -> int:
    """Number of distinct factors of length n."""
    return len(language.factor_set(n))


def extension_graph(language: FactorialLanguage, center: Word) -> ExtensionGraph:
    """
    Extension pairs of a factor.

    Raises:
        NotAFactorError: If ``center`` is not in the language
    """
    if not contains(language, center):
        raise NotAFactorError(str(center))
    symbols = center.symbols
    pairs = frozenset(
        (factor[0], factor[-1])
        for factor in language.factor_set(len(symbols) + 2)
        if factor[1:-1] == symbols
    )
    return ExtensionGraph(Word(symbols, language.alphabet), pairs)


def _extension_maps(
    language: FactorialLanguage, n: int
) -> tuple[dict[Factor, set[str]], dict[Factor, set[str]]]:
    left: dict[Factor, set[str]] = defaultdict(set)
    right: dict[Factor, set[str]] = defaultdict(set)
    for factor in language.factor_set(n + 1):
        left[factor[1:]].add(factor[0])
        right[factor[:-1]].add(factor[-1])
    return left, right


def left_specials(language: FactorialLanguage, n: int) -> list[Word]:
    """Length-n factors with at least two left extensions."""
    left, _ = _extension_maps(language, n)
    return _words(language, frozenset(v for v, letters in left.items() if len(letters) >= 2))


def right_specials(language: FactorialLanguage, n: int) -> list[Word]:
    """Length-n factors with at least two right extensions."""
    _, right = _extension_maps(language, n)
    return _words(language, frozenset(v for v, letters in right.items() if len(letters) >= 2))


def bispecials(language: CircularLanguage) -> list[Word]:
    """
    All bispecial factors of a circular language.

    Bispecials of the circular language of w have length at most |w| - 2 and
    occur in ww, w the primitive root of the base, so the search stops there.
    """
    root = language.root()
    found: list[Word] = []
    for n in range(len(root.base) - 1):
        left, right = _extension_maps(root, n)
        centers = frozenset(
            v for v in root.factor_set(n) if len(left[v]) >= 2 and len(right[v]) >= 2
        )
        found.extend(_words(language, centers))
    return found


def is_closed_under_reversal(language: CircularLanguage) -> bool:
    """
    True if the reverse of every factor is a factor.

    Length-|base| factors are the conjugates of the base and every longer
    factor is determined by them, so checking that length is enough.
    """
    conjugates = language.factor_set(len(language.base))
    return all(factor[::-1] in conjugates for factor in conjugates)


def rauzy_graph(language: FactorialLanguage, n: int) -> RauzyGraph:
    """Rauzy graph of length n with vertices in lexicographic order."""
    alphabet = language.alphabet
    vertices = tuple(factors(language, n))
    edges = tuple(
        RauzyEdge(Word(factor[:-1], alphabet), Word(factor[1:], alphabet), factor[-1])
        for factor in sorted(language.factor_set(n + 1), key=alphabet.key)
    )
    return RauzyGraph(n, vertices, edges)


def singular_words(language: FactorialLanguage, up_to_length: int) -> list[Word]:
    """
    Singular words of length at most ``up_to_length``.

    x v y is singular when some x' v y (x' != x) and some x v y' (y' != y)
    are also in the language.
    """
    found: list[Word] = []
    for n in range(2, up_to_length + 1):
        lefts: dict[Factor, set[str]] = defaultdict(set)
        rights: dict[Factor, set[str]] = defaultdict(set)
        layer = language.factor_set(n)
        for factor in layer:
            lefts[factor[1:]].add(factor[0])
            rights[factor[:-1]].add(factor[-1])
        singular = frozenset(
            factor
            for factor in layer
            if len(lefts[factor[1:]]) >= 2 and len(rights[factor[:-1]]) >= 2
        )
        found.extend(_words(language, singular))
    return found


def max_return_time(word: Word, sample: Word) -> int:
    """
    Largest gap between consecutive occurrences of ``word`` in ``sample``.

    Raises:
        InsufficientSampleError: If ``word`` occurs fewer than three times
    """
    starts = occurrences(word.symbols, sample.symbols)
    if len(starts) < 3:
        raise InsufficientSampleError(str(word), len(starts))
    return max(later - earlier for earlier, later in zip(starts, starts[1:]))


def return_words(word: Word, sample: Word) -> list[Word]:
    """Distinct words read between consecutive occurrences of ``word`` in ``sample``."""
    starts = occurrences(word.symbols, sample.symbols)
    found = {sample.symbols[earlier:later] for earlier, later in zip(starts, starts[1:])}
    alphabet = sample.alphabet
    return [
        Word(symbols, alphabet)
        for symbols in sorted(found, key=lambda symbols: (len(symbols), alphabet.key(symbols)))
    ]
