"""Generator sets of variable-length words: verification, counting, rate."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .graphs import BudgetExceededError, ChannelGraph, Word, distinguishable, graph_by_name
from .numerics import IntPolynomial, unique_positive_root


class NonUniquelyDecodableError(Exception):
    """Concatenation counts by recurrence disagree with distinct-word counts."""


@dataclass(frozen=True)
class GeneratorSet:
    """A finite set of non-empty variable-length words over a channel graph."""

    graph: ChannelGraph
    words: tuple[Word, ...]

    def __init__(self, graph: ChannelGraph, words: Sequence[Sequence[int]]):
        normalized = tuple(tuple(int(x) for x in w) for w in words)
        if any(not w for w in normalized):
            raise ValueError("generator words must be non-empty")
        if len(set(normalized)) != len(normalized):
            raise ValueError("generator words must be pairwise distinct")
        for w in normalized:
            if not graph.word_in_range(w):
                raise ValueError(f"word {w} uses out-of-range vertex index")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "words", normalized)

    @property
    def min_length(self) -> int:
        return min((len(w) for w in self.words), default=0)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self.words), default=0)

    @property
    def length_gcd(self) -> int:
        """gcd of word lengths; Fekete applies directly exactly when it is 1."""
        return math.gcd(*(len(w) for w in self.words)) if self.words else 1

    def length_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for w in self.words:
            hist[len(w)] = hist.get(len(w), 0) + 1
        return hist

    def characteristic_polynomial(self) -> IntPolynomial:
        """X^lmax - sum #C_[l] X^(lmax - l)."""
        if not self.words:
            raise ValueError("empty generator set has no characteristic polynomial")
        lmax = self.max_length
        coeffs = [0] * (lmax + 1)
        coeffs[lmax] = 1
        for l, cnt in self.length_histogram().items():
            coeffs[lmax - l] -= cnt
        return IntPolynomial(coeffs)

    def to_json(self, graph_name: Optional[str] = None) -> str:
        graph_field = graph_name if graph_name is not None else json.loads(self.graph.to_json())
        return json.dumps({"graph": graph_field, "words": [list(w) for w in self.words]})

    @staticmethod
    def from_json(text: str) -> "GeneratorSet":
        data = json.loads(text)
        spec = data["graph"]
        if isinstance(spec, str):
            graph = graph_by_name(spec)
        else:
            graph = ChannelGraph.from_edges(spec["labels"], [tuple(e) for e in spec["edges"]])
        return GeneratorSet(graph, [tuple(w) for w in data["words"]])

    @staticmethod
    def from_strings(graph: ChannelGraph, words: Sequence[str]) -> "GeneratorSet":
        """Build from label strings, e.g. ["0", "11", "23"] on C5+1."""
        return GeneratorSet(graph, [tuple(graph.index_of(ch) for ch in w) for w in words])


def verify_zero_error(gs: GeneratorSet) -> tuple[bool, Optional[tuple[Word, Word]]]:
    """Check every pair of distinct words is distinguishable on its shorter length."""
    words = sorted(gs.words, key=len)
    for i, c in enumerate(words):
        for cp in words[i + 1:]:
            if not distinguishable(gs.graph, c, cp):
                return False, (c, cp)
    return True, None


def count_concatenations(gs: GeneratorSet, up_to: int,
                         check_unique: bool = True) -> list[int]:
    """#C*_[L] for L = 0..up_to by the length-histogram linear recurrence.

    The recurrence counts factorization paths; for a zero-error generator set
    these coincide with distinct words.  We cross-check against deduplicated
    enumeration up to L = 8 and reject silently overcounting sets.
    """
    hist = gs.length_histogram()
    counts = [1]
    for L in range(1, up_to + 1):
        counts.append(sum(cnt * counts[L - l] for l, cnt in hist.items() if l <= L))
    if check_unique and gs.words:
        limit = min(up_to, 8)
        for L in range(1, limit + 1):
            if counts[L] != len(_distinct_concatenations(gs, L)):
                raise NonUniquelyDecodableError(
                    f"generator set is not uniquely decodable at length {L}")
    return counts


def _distinct_concatenations(gs: GeneratorSet, length: int) -> list[Word]:
    by_length: list[set[Word]] = [set() for _ in range(length + 1)]
    by_length[0].add(())
    for L in range(1, length + 1):
        for w in gs.words:
            if len(w) <= L:
                for prefix in by_length[L - len(w)]:
                    by_length[L].add(prefix + w)
    return sorted(by_length[length])


def enumerate_codewords(gs: GeneratorSet, length: int, cap: int = 10 ** 6) -> list[Word]:
    """All distinct concatenations of exactly the given length, sorted."""
    expected = count_concatenations(gs, length, check_unique=False)[length]
    if expected > cap:
        raise BudgetExceededError(f"{expected} codewords exceed enumeration cap {cap}")
    return _distinct_concatenations(gs, length)


@dataclass(frozen=True)
class RateResult:
    nu: float
    r_bits: float
    char_poly: IntPolynomial


def rate(gs: GeneratorSet) -> RateResult:
    """Average symbols per channel use as the characteristic polynomial root.

    When the word-length gcd d is not 1 the value is read along multiples of
    d; the root of the polynomial is unchanged.
    """
    poly = gs.characteristic_polynomial()
    nu = unique_positive_root(poly)
    return RateResult(nu, math.log2(nu), poly)
