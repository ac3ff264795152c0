"""Regular expressions, DFAs, generator series and pole-based rates."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union as TyUnion

from .graphs import ChannelGraph, independence_number, strong_power
from .numerics import (IntPolynomial, RationalFraction, series_coefficients,
                       smallest_modulus_root, spectral_radius)


class AmbiguousExpressionError(Exception):
    """The series composition rules do not apply to this expression."""

    def __init__(self, message: str, subexpression: "Regex"):
        super().__init__(f"{message}: {subexpression}")
        self.subexpression = subexpression


# ---------------------------------------------------------------------------
# Regular expression trees


@dataclass(frozen=True)
class Empty:
    def __str__(self) -> str:
        return "#"


@dataclass(frozen=True)
class Epsilon:
    def __str__(self) -> str:
        return "@"


@dataclass(frozen=True)
class Letter:
    symbol: int

    def __str__(self) -> str:
        return str(self.symbol)


@dataclass(frozen=True)
class Union:
    left: "Regex"
    right: "Regex"

    def __str__(self) -> str:
        return f"({self.left}+{self.right})"


@dataclass(frozen=True)
class Concat:
    left: "Regex"
    right: "Regex"

    def __str__(self) -> str:
        return f"{self.left}{self.right}"


@dataclass(frozen=True)
class Star:
    inner: "Regex"

    def __str__(self) -> str:
        return f"({self.inner})*"


Regex = TyUnion[Empty, Epsilon, Letter, Union, Concat, Star]


def letters_of(e: Regex) -> set[int]:
    if isinstance(e, Letter):
        return {e.symbol}
    if isinstance(e, (Union, Concat)):
        return letters_of(e.left) | letters_of(e.right)
    if isinstance(e, Star):
        return letters_of(e.inner)
    return set()


def parse_regex(text: str) -> Regex:
    """CLI regex syntax: digits as letters, + union, . or juxtaposition for
    concatenation, * star, parentheses, @ for epsilon, # for the empty set."""
    pos = 0

    def peek() -> Optional[str]:
        return text[pos] if pos < len(text) else None

    def parse_union() -> Regex:
        nonlocal pos
        node = parse_concat()
        while peek() == "+":
            pos += 1
            node = Union(node, parse_concat())
        return node

    def parse_concat() -> Regex:
        nonlocal pos
        node = parse_postfix()
        while True:
            c = peek()
            if c == ".":
                pos += 1
                node = Concat(node, parse_postfix())
            elif c is not None and (c.isdigit() or c in "(@#"):
                node = Concat(node, parse_postfix())
            else:
                return node

    def parse_postfix() -> Regex:
        nonlocal pos
        node = parse_atom()
        while peek() == "*":
            pos += 1
            node = Star(node)
        return node

    def parse_atom() -> Regex:
        nonlocal pos
        c = peek()
        if c is None:
            raise ValueError(f"unexpected end of regex {text!r}")
        if c == "(":
            pos += 1
            node = parse_union()
            if peek() != ")":
                raise ValueError(f"missing ')' at position {pos} in {text!r}")
            pos += 1
            return node
        if c == "@":
            pos += 1
            return Epsilon()
        if c == "#":
            pos += 1
            return Empty()
        if c.isdigit():
            pos += 1
            return Letter(int(c))
        raise ValueError(f"unexpected character {c!r} at position {pos} in {text!r}")

    node = parse_union()
    if pos != len(text):
        raise ValueError(f"trailing input at position {pos} in {text!r}")
    return node


# ---------------------------------------------------------------------------
# DFA construction


@dataclass(frozen=True)
class Dfa:
    """Total deterministic automaton with an explicit sink state."""

    alphabet: tuple[int, ...]
    transitions: tuple[tuple[int, ...], ...]  # transitions[state][letter index]
    start: int
    accepting: frozenset[int]
    sink: int

    def state_count(self) -> int:
        return len(self.transitions)

    def step(self, state: int, symbol: int) -> int:
        return self.transitions[state][self.alphabet.index(symbol)]

    def accepts(self, word: Sequence[int]) -> bool:
        s = self.start
        for x in word:
            if x not in self.alphabet:
                return False
            s = self.step(s, x)
        return s in self.accepting

    def to_json(self) -> str:
        return json.dumps({
            "alphabet": list(self.alphabet),
            "transitions": [list(row) for row in self.transitions],
            "start": self.start,
            "accepting": sorted(self.accepting),
            "sink": self.sink,
        })


def _thompson_nfa(e: Regex, alphabet: tuple[int, ...]):
    # fragments: (start, accept) over states with eps / letter moves
    eps: list[set[int]] = []
    moves: list[dict[int, set[int]]] = []

    def new_state() -> int:
        eps.append(set())
        moves.append({})
        return len(eps) - 1

    def build(node: Regex) -> tuple[int, int]:
        s, t = new_state(), new_state()
        if isinstance(node, Empty):
            pass
        elif isinstance(node, Epsilon):
            eps[s].add(t)
        elif isinstance(node, Letter):
            moves[s].setdefault(node.symbol, set()).add(t)
        elif isinstance(node, Union):
            ls, lt = build(node.left)
            rs, rt = build(node.right)
            eps[s] |= {ls, rs}
            eps[lt].add(t)
            eps[rt].add(t)
        elif isinstance(node, Concat):
            ls, lt = build(node.left)
            rs, rt = build(node.right)
            eps[s].add(ls)
            eps[lt].add(rs)
            eps[rt].add(t)
        elif isinstance(node, Star):
            is_, it = build(node.inner)
            eps[s] |= {is_, t}
            eps[it] |= {is_, t}
        else:
            raise TypeError(f"not a regex node: {node!r}")
        return s, t

    start, accept = build(e)
    return eps, moves, start, accept


def regex_to_dfa(e: Regex, alphabet: Optional[Sequence[int]] = None) -> Dfa:
    """Thompson construction, subset determinization, Moore minimization."""
    if alphabet is None:
        alphabet = sorted(letters_of(e))
    else:
        alphabet = sorted(int(a) for a in alphabet)
        missing = letters_of(e) - set(alphabet)
        if missing:
            raise ValueError(f"expression letters {sorted(missing)} not in alphabet")
    alphabet = tuple(alphabet)
    eps, moves, nstart, naccept = _thompson_nfa(e, alphabet)

    def closure(states: frozenset[int]) -> frozenset[int]:
        stack = list(states)
        out = set(states)
        while stack:
            s = stack.pop()
            for t in eps[s]:
                if t not in out:
                    out.add(t)
                    stack.append(t)
        return frozenset(out)

    start_set = closure(frozenset([nstart]))
    index = {start_set: 0}
    subsets = [start_set]
    table: list[list[int]] = []
    pos = 0
    while pos < len(subsets):
        cur = subsets[pos]
        pos += 1
        row = []
        for a in alphabet:
            nxt = set()
            for s in cur:
                nxt |= moves[s].get(a, set())
            nxt = closure(frozenset(nxt))
            if nxt not in index:
                index[nxt] = len(subsets)
                subsets.append(nxt)
            row.append(index[nxt])
        table.append(row)
    accepting = {i for i, sub in enumerate(subsets) if naccept in sub}
    return _minimize(alphabet, table, 0, accepting)


def _minimize(alphabet: tuple[int, ...], table: list[list[int]], start: int,
              accepting: set[int]) -> Dfa:
    n = len(table)
    # Moore partition refinement
    block = [1 if s in accepting else 0 for s in range(n)]
    while True:
        signatures = {}
        new_block = [0] * n
        for s in range(n):
            sig = (block[s], tuple(block[t] for t in table[s]))
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_block[s] = signatures[sig]
        if new_block == block:
            break
        block = new_block
    # keep only blocks reachable from the start block
    repr_table: dict[int, list[int]] = {}
    accept_blocks = set()
    for s in range(n):
        repr_table.setdefault(block[s], [block[t] for t in table[s]])
        if s in accepting:
            accept_blocks.add(block[s])
    reachable = {block[start]}
    queue = deque([block[start]])
    while queue:
        b = queue.popleft()
        for t in repr_table[b]:
            if t not in reachable:
                reachable.add(t)
                queue.append(t)
    order = sorted(reachable)
    remap = {b: i for i, b in enumerate(order)}
    final_table = [tuple(remap[t] for t in repr_table[b]) for b in order]
    final_accepting = frozenset(remap[b] for b in order if b in accept_blocks)
    # identify (or add) the explicit sink: non-accepting all-self-loop state
    sink = None
    for i, row in enumerate(final_table):
        if i not in final_accepting and all(t == i for t in row):
            sink = i
            break
    if sink is None:
        sink = len(final_table)
        final_table = list(final_table) + [tuple(sink for _ in alphabet)]
    return Dfa(alphabet, tuple(tuple(r) for r in final_table),
               remap[block[start]], final_accepting, sink)


# ---------------------------------------------------------------------------
# Counting and series


def count_language(dfa: Dfa, up_to: int) -> list[int]:
    """Words accepted per length, exact, by dynamic programming on states."""
    n = dfa.state_count()
    vec = [0] * n
    vec[dfa.start] = 1
    out = [sum(vec[s] for s in dfa.accepting)]
    for _ in range(up_to):
        nxt = [0] * n
        for s, v in enumerate(vec):
            if v:
                for t in dfa.transitions[s]:
                    nxt[t] += v
        vec = nxt
        out.append(sum(vec[s] for s in dfa.accepting))
    return out


def adjacency_matrix(dfa: Dfa, trim: bool = True) -> list[list[int]]:
    """Letter-multiplicity adjacency matrix of the DFA transition graph.

    With ``trim`` the matrix is restricted to useful states (reachable from
    the start and co-reachable to an accepting state); the sink then drops
    out, so the spectral radius reflects language growth.
    """
    n = dfa.state_count()
    keep = list(range(n))
    if trim:
        co = set(dfa.accepting)
        changed = True
        while changed:
            changed = False
            for s in range(n):
                if s not in co and any(t in co for t in dfa.transitions[s]):
                    co.add(s)
                    changed = True
        reach = {dfa.start}
        queue = deque([dfa.start])
        while queue:
            s = queue.popleft()
            for t in dfa.transitions[s]:
                if t not in reach:
                    reach.add(t)
                    queue.append(t)
        keep = sorted(reach & co)
    idx = {s: i for i, s in enumerate(keep)}
    m = [[0] * len(keep) for _ in keep]
    for s in keep:
        for t in dfa.transitions[s]:
            if t in idx:
                m[idx[s]][idx[t]] += 1
    return m


def generator_series(e: Regex, alphabet: Optional[Sequence[int]] = None,
                     validate: bool = True) -> RationalFraction:
    """Counting series of L(e) by the recursive composition rules.

    The disjointness hypotheses behind union, concatenation and star are
    checked empirically: the composed series must match the DFA word counts
    through 2*|states| + 5 terms, at every composite subexpression.
    """
    if alphabet is None:
        alphabet = sorted(letters_of(e))

    def compose(node: Regex) -> RationalFraction:
        if isinstance(node, Empty):
            return RationalFraction.from_int(0)
        if isinstance(node, Epsilon):
            return RationalFraction.from_int(1)
        if isinstance(node, Letter):
            return RationalFraction.z()
        if isinstance(node, Union):
            f = compose(node.left) + compose(node.right)
        elif isinstance(node, Concat):
            f = compose(node.left) * compose(node.right)
        elif isinstance(node, Star):
            inner = compose(node.inner)
            if inner.value_at_zero() != 0:
                raise AmbiguousExpressionError(
                    "starred language contains the empty word", node)
            f = inner.star()
        else:
            raise TypeError(f"not a regex node: {node!r}")
        if validate:
            _check_against_dfa(node, f, alphabet)
        return f

    return compose(e)


def _check_against_dfa(node: Regex, f: RationalFraction,
                       alphabet: Sequence[int]) -> None:
    dfa = regex_to_dfa(node, alphabet)
    window = 2 * dfa.state_count() + 5
    expected = count_language(dfa, window)
    got = series_coefficients(f, window)
    if got != expected:
        raise AmbiguousExpressionError(
            "series composition disagrees with word counts", node)


@dataclass(frozen=True)
class RationalCode:
    """A starred regular expression used as a fixed-length codebook family."""

    inner: Regex

    @property
    def expression(self) -> Star:
        return Star(self.inner)

    @staticmethod
    def from_expression(e: Regex) -> "RationalCode":
        if not isinstance(e, Star):
            raise ValueError("a rational code must be a starred expression")
        return RationalCode(e.inner)

    def length_gcd(self, window: Optional[int] = None) -> int:
        """gcd of inner-language word lengths over a finite window."""
        dfa = regex_to_dfa(self.inner)
        if window is None:
            window = 2 * dfa.state_count()
        counts = count_language(dfa, window)
        lengths = [l for l, c in enumerate(counts) if c and l > 0]
        return math.gcd(*lengths) if lengths else 1


@dataclass(frozen=True)
class RationalRate:
    nu: float
    r_bits: float
    pole: Optional[complex]
    series: RationalFraction
    polynomial_growth: bool = False


def rational_code_rate(code: RationalCode, cross_check_tol: float = 1e-8) -> RationalRate:
    """Rate from the smallest-modulus pole, cross-checked on the DFA spectrum."""
    expr = code.expression
    f = generator_series(expr)
    dfa = regex_to_dfa(expr)
    rho = spectral_radius(adjacency_matrix(dfa))
    if f.denominator.degree == 0:
        # finite series: language growth is polynomial, no pole to invert
        return RationalRate(rho, math.log2(rho) if rho > 0 else float("-inf"),
                            None, f, polynomial_growth=True)
    pole = smallest_modulus_root(f.denominator)
    nu = 1.0 / abs(pole)
    if abs(nu - rho) > cross_check_tol * max(1.0, nu):
        raise ArithmeticError(
            f"pole-based rate {nu} disagrees with spectral radius {rho}")
    return RationalRate(nu, math.log2(nu), pole, f)


@dataclass(frozen=True)
class ChannelSeriesPrefix:
    terms: tuple[int, ...]
    exact: tuple[bool, ...]

    def running_rate_lower_bound(self) -> float:
        """max over computed l of alpha(G^boxtimes l)^(1/l)."""
        best = 0.0
        for l, a in enumerate(self.terms[1:], start=1):
            best = max(best, a ** (1.0 / l))
        return best


def channel_series_prefix(g: ChannelGraph, up_to: int,
                          node_budget: int = 10 ** 8,
                          max_vertices: int = 1_000_000) -> ChannelSeriesPrefix:
    """alpha(G^boxtimes l) for l = 0..up_to; term 0 is 1 by the empty product."""
    terms = [1]
    exact = [True]
    for l in range(1, up_to + 1):
        power = strong_power(g, l, max_vertices=max_vertices)
        res = independence_number(power, node_budget=node_budget)
        terms.append(res.alpha)
        exact.append(res.exact)
    return ChannelSeriesPrefix(tuple(terms), tuple(exact))
