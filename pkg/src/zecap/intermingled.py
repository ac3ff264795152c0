"""Intermingled codes: succession rules, transition graphs, spectral rates.

A transmission state is one counter per generator word, giving the position
reached inside that word (0 = closed).  The succession rule picks which words
may emit their next letter; advancing a word wraps its counter modulo the word
length, so returning to all-zeros closes every word.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graphs import BudgetExceededError, Word
from .numerics import spectral_radius
from .varlen import GeneratorSet

State = tuple[int, ...]


@dataclass(frozen=True)
class SuccessionRule:
    """Maps a transmission state to the indices of transmittable words."""

    family: str
    choose: Callable[[State, GeneratorSet], tuple[int, ...]] = field(compare=False)
    params: dict = field(default_factory=dict)

    def __call__(self, state: State, gs: GeneratorSet) -> tuple[int, ...]:
        choices = self.choose(state, gs)
        if not choices:
            raise ValueError(f"succession rule returned no choice for state {state}")
        return choices


def varlen_rule() -> SuccessionRule:
    """Plain concatenation: everything from a closed state, else the open word."""
    def choose(state: State, gs: GeneratorSet) -> tuple[int, ...]:
        if all(z == 0 for z in state):
            return tuple(range(len(gs.words)))
        return tuple(i for i, z in enumerate(state) if z != 0)
    return SuccessionRule("varlen", choose)


def single_open_rule(hub: int = 0) -> SuccessionRule:
    """One designated hub word stays always available next to the open word."""
    def choose(state: State, gs: GeneratorSet) -> tuple[int, ...]:
        if all(z == 0 for i, z in enumerate(state) if i != hub):
            return tuple(range(len(gs.words)))
        return tuple(sorted({hub} | {i for i, z in enumerate(state) if z != 0}))
    return SuccessionRule("single-open", choose, {"hub": hub})


def table_rule(table: dict[State, Sequence[int]]) -> SuccessionRule:
    def choose(state: State, gs: GeneratorSet) -> tuple[int, ...]:
        try:
            return tuple(table[state])
        except KeyError:
            raise ValueError(f"succession table has no entry for state {state}") from None
    return SuccessionRule("table", choose,
                          {"table": {k: tuple(v) for k, v in table.items()}})


def full_rule() -> SuccessionRule:
    """Every word is always transmittable; generally not zero-error."""
    def choose(state: State, gs: GeneratorSet) -> tuple[int, ...]:
        return tuple(range(len(gs.words)))
    return SuccessionRule("full", choose)


def rule_from_json(data: dict) -> SuccessionRule:
    family = data["family"]
    if family == "varlen":
        return varlen_rule()
    if family == "single-open":
        return single_open_rule(int(data.get("hub", 0)))
    if family == "full":
        return full_rule()
    if family == "table":
        table = {tuple(json.loads(k) if isinstance(k, str) else k): v
                 for k, v in data["table"].items()}
        return table_rule(table)
    raise ValueError(f"unknown succession rule family {family!r}")


@dataclass(frozen=True)
class TransitionGraph:
    """Directed multigraph over reachable transmission states.

    Matrix entries count letter-labelled edges: two rule choices reaching the
    same successor with different letters both count, since walk counts must
    count emitted sequences rather than state paths.
    """

    states: tuple[State, ...]
    matrix: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, int, int], ...]  # (from, to, letter, word index)

    @property
    def zero_state_index(self) -> int:
        return 0

    def state_count(self) -> int:
        return len(self.states)


def _advance(state: State, word_index: int, gs: GeneratorSet) -> tuple[State, int]:
    w = gs.words[word_index]
    z = state[word_index]
    letter = w[z]
    nxt = list(state)
    nxt[word_index] = (z + 1) % len(w)
    return tuple(nxt), letter


def build_transition_graph(gs: GeneratorSet, rule: SuccessionRule,
                           reachable_only: bool = True,
                           state_budget: int = 10 ** 6) -> TransitionGraph:
    """Explore states from the all-zeros vector and record labelled edges."""
    if not gs.words:
        raise ValueError("need a non-empty generator set")
    zero: State = tuple(0 for _ in gs.words)
    if not reachable_only:
        total = math.prod(len(w) for w in gs.words)
        if total > state_budget:
            raise BudgetExceededError(f"{total} states exceed budget {state_budget}")
    index = {zero: 0}
    states = [zero]
    edges = []
    queue = deque([zero])
    while queue:
        s = queue.popleft()
        for wi in rule(s, gs):
            nxt, letter = _advance(s, wi, gs)
            if nxt not in index:
                if len(states) >= state_budget:
                    raise BudgetExceededError(f"state budget {state_budget} exceeded")
                index[nxt] = len(states)
                states.append(nxt)
                queue.append(nxt)
            edges.append((index[s], index[nxt], letter, wi))
    if not reachable_only:
        from itertools import product
        for combo in product(*(range(len(w)) for w in gs.words)):
            s = tuple(combo)
            if s not in index:
                index[s] = len(states)
                states.append(s)
                for wi in rule(s, gs):
                    nxt, letter = _advance(s, wi, gs)
                    if nxt not in index:
                        index[nxt] = len(states)
                        states.append(nxt)
                    edges.append((index[s], index[nxt], letter, wi))
    n = len(states)
    matrix = [[0] * n for _ in range(n)]
    for i, j, _letter, _wi in edges:
        matrix[i][j] += 1
    return TransitionGraph(tuple(states),
                           tuple(tuple(row) for row in matrix),
                           tuple(edges))


def count_sequences(tg: TransitionGraph, up_to: int) -> list[int]:
    """Closed-walk counts from the zero state, exact big integers."""
    n = tg.state_count()
    vec = [0] * n
    vec[tg.zero_state_index] = 1
    out = [1]
    for _ in range(up_to):
        nxt = [0] * n
        for i, v in enumerate(vec):
            if v:
                row = tg.matrix[i]
                for j, m in enumerate(row):
                    if m:
                        nxt[j] += v * m
        vec = nxt
        out.append(vec[tg.zero_state_index])
    return out


@dataclass(frozen=True)
class IntermingledRate:
    nu: float
    r_bits: float


def rate(tg: TransitionGraph) -> IntermingledRate:
    nu = spectral_radius([list(row) for row in tg.matrix])
    return IntermingledRate(nu, math.log2(nu) if nu > 0 else float("-inf"))


@dataclass(frozen=True)
class IntermingledVerifyResult:
    ok: bool
    violation: Optional[tuple[Word, Word]]
    exact: bool  # False when only a bounded-horizon check ran


def verify_zero_error(gs: GeneratorSet, rule: SuccessionRule, horizon: int = 12,
                      product_state_budget: int = 250_000) -> IntermingledVerifyResult:
    """Search for two confusable distinct emitted sequences of equal length.

    The pairwise product machine tracks both encoders' states plus a flag for
    "the emitted strings differ somewhere"; a step needs the two letters to be
    equal or adjacent in the channel graph.  Reaching both-closed with the
    flag set is a violation, and exhausting the finite product space proves
    correctness for all lengths.  If the product space exceeds the budget, a
    brute-force enumeration bounded by the horizon is used instead.
    """
    tg = build_transition_graph(gs, rule)
    n = tg.state_count()
    if 2 * n * n > product_state_budget:
        return _verify_bounded(gs, tg, horizon)
    g = gs.graph
    succ: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, j, letter, _wi in tg.edges:
        succ[i].append((j, letter))
    start = (tg.zero_state_index, tg.zero_state_index, False)
    parent: dict[tuple[int, int, bool], tuple[tuple[int, int, bool], int, int]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        a, b, differ = queue.popleft()
        for na, la in succ[a]:
            for nb, lb in succ[b]:
                if la != lb and not g.has_edge(la, lb):
                    continue  # distinguishable step; pair cannot stay confusable
                nxt = (na, nb, differ or la != lb)
                if nxt == (tg.zero_state_index, tg.zero_state_index, True):
                    parent[nxt] = ((a, b, differ), la, lb)
                    return IntermingledVerifyResult(
                        False, _reconstruct(parent, start, nxt), True)
                if nxt not in seen:
                    seen.add(nxt)
                    parent[nxt] = ((a, b, differ), la, lb)
                    queue.append(nxt)
    return IntermingledVerifyResult(True, None, True)


def _reconstruct(parent, start, end) -> tuple[Word, Word]:
    sa: list[int] = []
    sb: list[int] = []
    node = end
    while node != start:
        prev, la, lb = parent[node]
        sa.append(la)
        sb.append(lb)
        node = prev
    return tuple(reversed(sa)), tuple(reversed(sb))


def _verify_bounded(gs: GeneratorSet, tg: TransitionGraph,
                    horizon: int) -> IntermingledVerifyResult:
    g = gs.graph
    succ: list[list[tuple[int, int]]] = [[] for _ in range(tg.state_count())]
    for i, j, letter, _wi in tg.edges:
        succ[i].append((j, letter))
    frontier: dict[int, set[Word]] = {tg.zero_state_index: {()}}
    for _ in range(horizon):
        nxt: dict[int, set[Word]] = {}
        for state, seqs in frontier.items():
            for j, letter in succ[state]:
                bucket = nxt.setdefault(j, set())
                for s in seqs:
                    bucket.add(s + (letter,))
        frontier = nxt
        closed = sorted(frontier.get(tg.zero_state_index, ()))
        for i, x in enumerate(closed):
            for y in closed[i + 1:]:
                if all(a == b or g.has_edge(a, b) for a, b in zip(x, y)):
                    return IntermingledVerifyResult(False, (x, y), False)
    return IntermingledVerifyResult(True, None, False)
