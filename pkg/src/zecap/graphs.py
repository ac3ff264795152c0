"""Channel confusability graphs: products, unions and exact independence search.

Vertices are dense integer indices; labels are presentation-only.  Adjacency is
stored as one bitmask per vertex, with no self-loops.  The auto-adjacency
convention needed by word distinguishability tests is applied at the operation
level, never stored.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class BudgetExceededError(Exception):
    """A configured search or size budget was exhausted."""


Word = tuple[int, ...]


def _normalize_word(word: Sequence[int]) -> Word:
    return tuple(int(x) for x in word)


@dataclass(frozen=True)
class ChannelGraph:
    """Undirected graph over channel inputs; an edge joins confusable inputs."""

    labels: tuple[str, ...]
    neighbor_masks: tuple[int, ...]

    @staticmethod
    def from_edges(labels: Sequence[str], edges: Iterable[tuple[int, int]]) -> "ChannelGraph":
        labels = tuple(str(l) for l in labels)
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be unique")
        n = len(labels)
        masks = [0] * n
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i},{j}) out of range for {n} vertices")
            if i == j:
                raise ValueError("self-loops are not stored in channel graphs")
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return ChannelGraph(labels, tuple(masks))

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.neighbor_masks[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u in range(self.vertex_count):
            m = self.neighbor_masks[u] >> (u + 1) << (u + 1)
            while m:
                lsb = m & -m
                out.append((u, lsb.bit_length() - 1))
                m ^= lsb
        return out

    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.neighbor_masks) // 2

    def degree(self, v: int) -> int:
        return self.neighbor_masks[v].bit_count()

    def index_of(self, label: str) -> int:
        return self.labels.index(label)

    def to_json(self) -> str:
        return json.dumps({"labels": list(self.labels), "edges": self.edges()})

    @staticmethod
    def from_json(text: str) -> "ChannelGraph":
        data = json.loads(text)
        return ChannelGraph.from_edges(data["labels"], [tuple(e) for e in data["edges"]])

    def word_in_range(self, word: Sequence[int]) -> bool:
        return all(0 <= x < self.vertex_count for x in word)


def zero_graph() -> ChannelGraph:
    return ChannelGraph.from_edges([], [])


def one_vertex(label: str = "0") -> ChannelGraph:
    return ChannelGraph.from_edges([label], [])


def cycle(n: int) -> ChannelGraph:
    """Cycle graph: vertices 0..n-1, edges i -- (i+1 mod n)."""
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return ChannelGraph.from_edges([str(i) for i in range(n)],
                                   [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> ChannelGraph:
    if n < 1:
        raise ValueError("a path needs at least 1 vertex")
    return ChannelGraph.from_edges([str(i) for i in range(n)],
                                   [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> ChannelGraph:
    if n < 1:
        raise ValueError("a complete graph needs at least 1 vertex")
    return ChannelGraph.from_edges([str(i) for i in range(n)],
                                   [(i, j) for i in range(n) for j in range(i + 1, n)])


def disjoint_union(g: ChannelGraph, h: ChannelGraph) -> ChannelGraph:
    """Tagged union of vertex sets; edges are those internal to either graph.

    Labels of ``h`` that clash with labels of ``g`` get a prime suffix.
    """
    taken = set(g.labels)
    h_labels = []
    for lab in h.labels:
        while lab in taken:
            lab = lab + "'"
        taken.add(lab)
        h_labels.append(lab)
    off = g.vertex_count
    edges = g.edges() + [(u + off, v + off) for u, v in h.edges()]
    return ChannelGraph.from_edges(list(g.labels) + h_labels, edges)


def strong_product(g: ChannelGraph, h: ChannelGraph) -> ChannelGraph:
    """AND product: coordinates pairwise adjacent-or-equal, pairs distinct.

    Vertex (v, w) gets index v * |V(h)| + w (row-major), so witnesses are
    reproducible.
    """
    nh = h.vertex_count
    labels = [f"{a},{b}" for a in g.labels for b in h.labels]
    edges = []
    for v1 in range(g.vertex_count):
        g_close = g.neighbor_masks[v1] | (1 << v1)
        for w1 in range(nh):
            i = v1 * nh + w1
            h_close = h.neighbor_masks[w1] | (1 << w1)
            m = g_close
            while m:
                lsb = m & -m
                v2 = lsb.bit_length() - 1
                m ^= lsb
                mh = h_close
                while mh:
                    lsb2 = mh & -mh
                    w2 = lsb2.bit_length() - 1
                    mh ^= lsb2
                    j = v2 * nh + w2
                    if j > i:
                        edges.append((i, j))
    return ChannelGraph.from_edges(labels, edges)


def strong_power(g: ChannelGraph, l: int, max_vertices: int = 1_000_000) -> ChannelGraph:
    """l-fold iterated strong product of g with itself."""
    if l < 1:
        raise ValueError("strong power exponent must be >= 1")
    if g.vertex_count ** l > max_vertices:
        raise BudgetExceededError(
            f"strong power has {g.vertex_count ** l} vertices, budget is {max_vertices}")
    out = g
    for _ in range(l - 1):
        out = strong_product(out, g)
    return out


def induced_subgraph(g: ChannelGraph, keep: Sequence[int]) -> tuple[ChannelGraph, list[int]]:
    """Subgraph on the given vertices; returns it with the old-index list."""
    keep = sorted(set(int(v) for v in keep))
    idx = {v: i for i, v in enumerate(keep)}
    edges = [(idx[u], idx[v]) for u, v in g.edges() if u in idx and v in idx]
    labels = [g.labels[v] for v in keep]
    return ChannelGraph.from_edges(labels, edges), keep


def is_automorphism(g: ChannelGraph, perm: Sequence[int]) -> bool:
    n = g.vertex_count
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(n)):
        return False
    for u in range(n):
        mapped = 0
        m = g.neighbor_masks[u]
        while m:
            lsb = m & -m
            m ^= lsb
            mapped |= 1 << perm[lsb.bit_length() - 1]
        if mapped != g.neighbor_masks[perm[u]]:
            return False
    return True


def cycle_power_symmetries(n: int, l: int) -> list[tuple[int, ...]]:
    """Coordinate-rotation automorphisms of strong_power(cycle(n), l).

    One permutation per coordinate; together they act transitively on the
    vertex set (every digit tuple reaches every other), which licenses the
    symmetry reduction in independence_number.
    """
    total = n ** l
    out = []
    for coord in range(l):
        stride = n ** (l - 1 - coord)
        perm = []
        for v in range(total):
            digit = (v // stride) % n
            perm.append(v + stride * (((digit + 1) % n) - digit))
        out.append(tuple(perm))
    return out


def distinguishable(g: ChannelGraph, a: Sequence[int], b: Sequence[int]) -> bool:
    """Whether two words can never be confused over any channel with graph g.

    Only the length of the shorter word matters; positions are compared under
    the auto-adjacency convention (equal letters are always confusable).
    """
    a = _normalize_word(a)
    b = _normalize_word(b)
    if not a or not b:
        raise ValueError("words must be non-empty")
    if len(a) > len(b):
        raise ValueError("expected |a| <= |b|")
    if not (g.word_in_range(a) and g.word_in_range(b)):
        raise ValueError("word contains out-of-range vertex index")
    return any(x != y and not g.has_edge(x, y) for x, y in zip(a, b))


@dataclass
class IndependenceResult:
    alpha: int
    witness: tuple[int, ...]
    exact: bool
    nodes: int = 0

    def __iter__(self):
        return iter((self.alpha, self.witness))


def _greedy_independent_set(masks: Sequence[int], n: int) -> list[int]:
    order = sorted(range(n), key=lambda v: (masks[v].bit_count(), v))
    chosen = []
    blocked = 0
    for v in order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= masks[v] | (1 << v)
    return sorted(chosen)


def _clique_cover(masks: Sequence[int], cand: int) -> list[tuple[int, int]]:
    """Greedy partition of the candidate set into cliques.

    Returns (vertex, class_number) in processing order; a vertex in class k
    certifies that once only classes 1..k remain, at most k independent
    vertices can still be picked.
    """
    classes: list[int] = []
    members: list[list[int]] = []
    m = cand
    while m:
        lsb = m & -m
        v = lsb.bit_length() - 1
        m ^= lsb
        placed = False
        for idx, cmask in enumerate(classes):
            if cmask & ~masks[v] == 0:  # v adjacent to the whole clique
                classes[idx] |= lsb
                members[idx].append(v)
                placed = True
                break
        if not placed:
            classes.append(lsb)
            members.append([v])
    order = []
    for k, verts in enumerate(members, start=1):
        for v in verts:
            order.append((v, k))
    return order


class _Budget(Exception):
    pass


def _compiled_available() -> bool:
    try:
        from . import _fastmis
    except ImportError:
        return False
    return _fastmis.HAVE_NUMBA


def independence_number(g: ChannelGraph,
                        node_budget: int = 10 ** 8,
                        seed_witness: Optional[Sequence[int]] = None,
                        lexmin_max_vertices: int = 100,
                        use_compiled: Optional[bool] = None,
                        transitive_symmetries: Optional[Sequence[Sequence[int]]] = None) -> IndependenceResult:
    """Exact maximum independent set by branch-and-bound with bitset masks.

    The bound is a greedy clique cover of the candidate set.  On budget
    exhaustion the best incumbent is returned with ``exact=False``.  For small
    graphs (``lexmin_max_vertices``) the witness is refined to the
    lexicographically least maximum independent set.  Large searches run on a
    compiled kernel when numba is installed; ``use_compiled`` forces the
    choice either way.

    ``transitive_symmetries`` takes permutations that are verified to be
    automorphisms acting transitively on the vertices; then some maximum
    independent set contains vertex 0, so the search is restricted to its
    non-neighbors, typically shrinking the tree by the orbit factor.
    """
    n = g.vertex_count
    masks = g.neighbor_masks
    if n == 0:
        return IndependenceResult(0, (), True, 0)

    if transitive_symmetries is not None:
        return _alpha_by_transitivity(g, transitive_symmetries, node_budget,
                                      seed_witness, use_compiled)

    best_set = _greedy_independent_set(masks, n)
    if seed_witness is not None:
        seed = sorted(int(v) for v in seed_witness)
        blocked = 0
        for v in seed:
            if blocked >> v & 1:
                raise ValueError("seed witness is not an independent set")
            blocked |= masks[v] | (1 << v)
        if len(seed) > len(best_set):
            best_set = seed
    best = len(best_set)
    nodes = 0

    if use_compiled is None:
        use_compiled = n > 64 and _compiled_available()
    if use_compiled:
        from . import _fastmis
        alpha, witness, nodes, exact = _fastmis.solve(
            masks, n, best, best_set, node_budget)
        if exact and n <= lexmin_max_vertices:
            witness = _lexmin_refine(masks, n, alpha, witness)
        return IndependenceResult(alpha, tuple(witness), exact, nodes)

    def expand(cand: int, chosen: list[int]) -> None:
        nonlocal best, best_set, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Budget
        order = _clique_cover(masks, cand)
        size = len(chosen)
        for v, k in reversed(order):
            if size + k <= best:
                return
            cand &= ~(1 << v)
            chosen.append(v)
            if size + 1 > best:
                best = size + 1
                best_set = sorted(chosen)
            sub = cand & ~masks[v]
            if sub:
                expand(sub, chosen)
            chosen.pop()

    exact = True
    try:
        expand((1 << n) - 1, [])
    except _Budget:
        exact = False

    if exact and n <= lexmin_max_vertices:
        best_set = _lexmin_refine(masks, n, best, best_set)

    return IndependenceResult(best, tuple(best_set), exact, nodes)


def cycle_product_independence(n: int, h: ChannelGraph,
                               node_budget: int = 10 ** 8,
                               seed_witness: Optional[Sequence[int]] = None,
                               use_compiled: Optional[bool] = None) -> IndependenceResult:
    """alpha of cycle(n) boxtimes h, using the cycle's edge structure.

    For an independent set S of the product with sections S_u over cycle
    positions, every cyclic edge (u, u+1) forces S_u and S_{u+1} to be
    disjoint and jointly independent in h, so |S_u| + |S_{u+1}| <= alpha(h).
    Summing over the n edges counts each section twice, giving
    2|S| <= n * alpha(h).  When a witness of size floor(n * alpha(h) / 2)
    is known, the value is exact without searching the product graph; the
    only branch-and-bound run is the one proving alpha(h).

    Falls back to a direct search of the product when the ceiling is not
    attained, returning whatever that search can certify.
    """
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    product = strong_product(cycle(n), h)
    rh = independence_number(h, node_budget=node_budget,
                             use_compiled=use_compiled)
    incumbent: list[int] = []
    if seed_witness is not None:
        incumbent = sorted(int(v) for v in seed_witness)
        blocked = 0
        for v in incumbent:
            if blocked >> v & 1:
                raise ValueError("seed witness is not an independent set")
            blocked |= product.neighbor_masks[v] | (1 << v)
    if rh.exact:
        bound = n * rh.alpha // 2
        if len(incumbent) == bound:
            return IndependenceResult(bound, tuple(incumbent), True, rh.nodes)
    res = independence_number(product, node_budget=node_budget,
                              seed_witness=incumbent or None,
                              use_compiled=use_compiled)
    if rh.exact:
        bound = n * rh.alpha // 2
        if res.alpha == bound:
            return IndependenceResult(bound, res.witness, True,
                                      res.nodes + rh.nodes)
    return res


def _alpha_by_transitivity(g: ChannelGraph, generators, node_budget: int,
                           seed_witness, use_compiled) -> IndependenceResult:
    """Fix vertex 0 in the solution, justified by verified transitivity."""
    n = g.vertex_count
    perms = [tuple(int(x) for x in p) for p in generators]
    for p in perms:
        if not is_automorphism(g, p):
            raise ValueError("symmetry is not a graph automorphism")
    # orbit of 0, keeping a group element mapping 0 to each reached vertex
    reach = {0: tuple(range(n))}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for p in perms:
            w = p[v]
            if w not in reach:
                reach[w] = tuple(p[x] for x in reach[v])
                queue.append(w)
    if len(reach) != n:
        raise ValueError("symmetries do not act transitively on the vertices")

    seed = sorted(int(v) for v in seed_witness) if seed_witness else None
    if seed and 0 not in seed:
        # translate the seed so it contains vertex 0
        q = reach[seed[0]]
        inv = [0] * n
        for i, x in enumerate(q):
            inv[x] = i
        seed = sorted(inv[v] for v in seed)

    closed = g.neighbor_masks[0] | 1
    sub, old = induced_subgraph(
        g, [v for v in range(n) if not closed >> v & 1])
    sub_seed = None
    if seed:
        pos = {v: i for i, v in enumerate(old)}
        sub_seed = [pos[v] for v in seed if v != 0]
    res = independence_number(sub, node_budget=node_budget,
                              seed_witness=sub_seed, lexmin_max_vertices=0,
                              use_compiled=use_compiled)
    witness = tuple(sorted([0] + [old[i] for i in res.witness]))
    return IndependenceResult(res.alpha + 1, witness, res.exact, res.nodes)


def _lexmin_refine(masks: Sequence[int], n: int, alpha: int,
                   incumbent: list[int]) -> list[int]:
    """Lexicographically least maximum independent set, given exact alpha."""
    prefix: list[int] = []
    cand = (1 << n) - 1
    while len(prefix) < alpha:
        m = cand
        while m:
            lsb = m & -m
            v = lsb.bit_length() - 1
            m ^= lsb
            trial_cand = cand & ~masks[v] & ~(1 << v)
            if _exists_independent(masks, trial_cand, alpha - len(prefix) - 1):
                prefix.append(v)
                cand = trial_cand
                break
        else:
            raise AssertionError("lexmin refinement lost the optimum")
    return prefix


def _exists_independent(masks: Sequence[int], cand: int, need: int) -> bool:
    if need == 0:
        return True
    if cand.bit_count() < need:
        return False
    order = _clique_cover(masks, cand)
    for v, k in reversed(order):
        if k < need:
            return False
        cand &= ~(1 << v)
        if _exists_independent(masks, cand & ~masks[v], need - 1):
            return True
    return False


_NAMED = re.compile(r"^(C(?P<cyc>\d+)(?P<plus>\+1)?|K(?P<comp>\d+)|P(?P<pth>\d+))$")


def graph_by_name(name: str) -> ChannelGraph:
    """Built-in graphs addressable from the CLI: C<n>, C<n>+1, K<n>, P<n>."""
    m = _NAMED.match(name.strip())
    if not m:
        raise ValueError(f"unknown graph name {name!r}")
    if m.group("cyc"):
        g = cycle(int(m.group("cyc")))
        if m.group("plus"):
            # isolated vertex labelled 0, cycle relabelled 1..n
            n = int(m.group("cyc"))
            g = ChannelGraph.from_edges(
                [str(i) for i in range(n + 1)],
                [(1 + i, 1 + (i + 1) % n) for i in range(n)])
        return g
    if m.group("comp"):
        return complete(int(m.group("comp")))
    return path(int(m.group("pth")))
