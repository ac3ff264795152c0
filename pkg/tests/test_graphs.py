import itertools
import json
import random

import networkx as nx
import pytest

from zecap.graphs import (BudgetExceededError, ChannelGraph, complete, cycle,
                          cycle_power_symmetries, cycle_product_independence,
                          disjoint_union, distinguishable, graph_by_name,
                          independence_number, induced_subgraph,
                          is_automorphism, one_vertex, path, strong_power,
                          strong_product, zero_graph)


def to_networkx(g: ChannelGraph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(range(g.vertex_count))
    out.add_edges_from(g.edges())
    return out


def oracle_alpha(g: ChannelGraph) -> int:
    # independent sets of g are cliques of the complement
    comp = nx.complement(to_networkx(g))
    comp.add_nodes_from(range(g.vertex_count))
    return max((len(c) for c in nx.find_cliques(comp)), default=0)


def random_graph(rng: random.Random, n: int, p: float) -> ChannelGraph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < p]
    return ChannelGraph.from_edges([str(i) for i in range(n)], edges)


def test_cycle_basics():
    c7 = cycle(7)
    assert c7.vertex_count == 7
    assert c7.edge_count() == 7
    assert c7.has_edge(0, 6) and c7.has_edge(0, 1)
    assert not c7.has_edge(0, 2)
    c3 = cycle(3)
    assert c3.edges() == complete(3).edges()
    with pytest.raises(ValueError):
        cycle(2)


def test_path_and_complete():
    p4 = path(4)
    assert p4.edge_count() == 3
    k5 = complete(5)
    assert k5.edge_count() == 10
    assert one_vertex().vertex_count == 1
    assert zero_graph().vertex_count == 0


def test_labels_must_be_unique():
    with pytest.raises(ValueError):
        ChannelGraph.from_edges(["a", "a"], [])


def test_no_self_loops():
    with pytest.raises(ValueError):
        ChannelGraph.from_edges(["a", "b"], [(0, 0)])


def test_json_round_trip():
    g = cycle(5)
    again = ChannelGraph.from_json(g.to_json())
    assert again == g
    data = json.loads(g.to_json())
    assert set(data) == {"labels", "edges"}


def test_graph_by_name():
    assert graph_by_name("C5").vertex_count == 5
    assert graph_by_name("K3").edge_count() == 3
    assert graph_by_name("P2").edge_count() == 1
    g = graph_by_name("C5+1")
    assert g.vertex_count == 6
    assert g.degree(0) == 0
    assert g.has_edge(1, 5)
    with pytest.raises(ValueError):
        graph_by_name("Q8")


def test_disjoint_union_counts():
    g = disjoint_union(cycle(5), one_vertex())
    assert g.vertex_count == 6
    assert g.edge_count() == 5
    assert g.degree(5) == 0


def test_disjoint_union_label_clash():
    g = disjoint_union(one_vertex("0"), one_vertex("0"))
    assert g.labels == ("0", "0'")


def test_strong_product_pentagon_degree():
    g = strong_product(cycle(5), cycle(5))
    assert g.vertex_count == 25
    # every vertex of C5 x C5 has 3*3 - 1 = 8 neighbors
    assert all(g.degree(v) == 8 for v in range(25))


def test_strong_product_matches_networkx():
    rng = random.Random(7)
    for _ in range(5):
        a = random_graph(rng, rng.randint(2, 5), 0.5)
        b = random_graph(rng, rng.randint(2, 5), 0.5)
        mine = to_networkx(strong_product(a, b))
        theirs = nx.strong_product(to_networkx(a), to_networkx(b))
        relabel = {(u, v): u * b.vertex_count + v for u, v in theirs.nodes}
        assert nx.utils.graphs_equal(mine, nx.relabel_nodes(theirs, relabel))


def test_strong_product_commutes_up_to_relabel():
    rng = random.Random(11)
    a = random_graph(rng, 4, 0.5)
    b = random_graph(rng, 3, 0.5)
    ab = strong_product(a, b)
    ba = strong_product(b, a)
    swap = {v * b.vertex_count + w: w * a.vertex_count + v
            for v in range(a.vertex_count) for w in range(b.vertex_count)}
    assert nx.utils.graphs_equal(
        nx.relabel_nodes(to_networkx(ab), swap), to_networkx(ba))


def test_strong_power_budget():
    with pytest.raises(BudgetExceededError):
        strong_power(cycle(5), 10, max_vertices=10 ** 6)


def test_distinguishable_examples():
    g = graph_by_name("C5+1")
    # 0 is isolated: distinguishable from everything else
    assert distinguishable(g, (0,), (1, 1))
    # 1 and 2 are adjacent on the pentagon
    assert not distinguishable(g, (1, 1), (1, 2))
    assert distinguishable(g, (1, 1), (1, 3))
    with pytest.raises(ValueError):
        distinguishable(g, (1, 1), (1,))
    with pytest.raises(ValueError):
        distinguishable(g, (), (1,))


def test_distinguishable_ignores_suffix():
    g = graph_by_name("C5+1")
    assert not distinguishable(g, (1, 1), (1, 2, 3, 4))


def test_alpha_small_known():
    assert independence_number(cycle(5)).alpha == 2
    assert independence_number(cycle(7)).alpha == 3
    assert independence_number(complete(6)).alpha == 1
    assert independence_number(path(4)).alpha == 2
    assert independence_number(zero_graph()).alpha == 0


def test_alpha_pentagon_plus_isolated():
    res = independence_number(graph_by_name("C5+1"))
    assert res.alpha == 3
    assert res.witness == (0, 1, 3)
    assert res.exact


def test_alpha_pentagon_squared():
    res = independence_number(strong_power(cycle(5), 2))
    assert res.alpha == 5
    assert res.exact
    w = res.witness
    g = strong_power(cycle(5), 2)
    assert all(not g.has_edge(u, v) for u, v in itertools.combinations(w, 2))


def test_alpha_against_networkx_oracle():
    rng = random.Random(42)
    for _ in range(30):
        g = random_graph(rng, rng.randint(1, 12), rng.choice([0.2, 0.5, 0.8]))
        assert independence_number(g).alpha == oracle_alpha(g)


def test_alpha_compiled_matches_python():
    pytest.importorskip("numba")
    rng = random.Random(3)
    for _ in range(5):
        g = random_graph(rng, 14, 0.4)
        a = independence_number(g, use_compiled=False)
        b = independence_number(g, use_compiled=True)
        assert a.alpha == b.alpha
        assert a.witness == b.witness


def test_alpha_budget_gives_lower_bound():
    g = strong_power(cycle(5), 3)
    res = independence_number(g, node_budget=10, use_compiled=False)
    assert not res.exact
    assert res.alpha <= 10
    full = independence_number(g)
    assert full.exact
    assert full.alpha == 10
    assert res.alpha <= full.alpha


def test_alpha_seed_witness_checked():
    g = cycle(5)
    with pytest.raises(ValueError):
        independence_number(g, seed_witness=[0, 1])


def test_induced_subgraph():
    g = cycle(5)
    sub, old = induced_subgraph(g, [0, 1, 3])
    assert old == [0, 1, 3]
    assert sub.edge_count() == 1
    assert sub.has_edge(0, 1)


def test_cycle_power_symmetries_are_automorphisms():
    for l in (1, 2, 3):
        g = strong_power(cycle(5), l)
        for p in cycle_power_symmetries(5, l):
            assert is_automorphism(g, p)
    # a non-automorphism is rejected
    g = path(3)
    assert not is_automorphism(g, [1, 0, 2])
    assert not is_automorphism(g, [0, 0, 1])


def test_alpha_with_symmetry_matches_plain():
    for l in (1, 2, 3):
        g = strong_power(cycle(5), l)
        plain = independence_number(g)
        sym = independence_number(
            g, transitive_symmetries=cycle_power_symmetries(5, l))
        assert sym.alpha == plain.alpha
        assert sym.exact
        assert 0 in sym.witness
        masks = g.neighbor_masks
        assert all(not masks[u] >> v & 1
                   for u in sym.witness for v in sym.witness)


def test_alpha_symmetry_rejects_bad_permutations():
    g = cycle(5)
    with pytest.raises(ValueError):
        independence_number(g, transitive_symmetries=[[1, 0, 2, 3, 4]])
    # valid automorphism but not transitive: identity only
    with pytest.raises(ValueError):
        independence_number(g, transitive_symmetries=[[0, 1, 2, 3, 4]])


def test_cycle_product_independence_matches_plain_search():
    # the edge-sum bound never disagrees with exhaustive search
    c5 = cycle(5)
    for h in (c5, strong_power(c5, 2), path(4), complete(3)):
        shortcut = cycle_product_independence(5, h)
        plain = independence_number(strong_product(c5, h))
        assert shortcut.alpha == plain.alpha
        assert shortcut.exact
    # bound tight for the pentagon squared: floor(5 * 2 / 2) = 5
    assert cycle_product_independence(5, c5).alpha == 5


def test_cycle_product_independence_witness_is_independent():
    c5 = cycle(5)
    h = strong_power(c5, 2)
    w2 = independence_number(h).witness
    seed = [a * 25 + b for a in w2 for b in w2]
    res = cycle_product_independence(5, strong_power(c5, 3), seed_witness=seed)
    assert res.alpha == 25 and res.exact
    g4 = strong_power(c5, 4)
    assert all(not g4.has_edge(u, v)
               for u, v in itertools.combinations(res.witness, 2))


def test_cycle_product_independence_rejects_bad_seed():
    c5 = cycle(5)
    with pytest.raises(ValueError):
        cycle_product_independence(5, c5, seed_witness=[0, 1])
    with pytest.raises(ValueError):
        cycle_product_independence(2, c5)


def test_alpha_superadditive_under_product():
    rng = random.Random(5)
    for _ in range(10):
        a = random_graph(rng, rng.randint(2, 5), 0.5)
        b = random_graph(rng, rng.randint(2, 5), 0.5)
        aa = independence_number(a).alpha
        ab = independence_number(b).alpha
        prod = independence_number(strong_product(a, b)).alpha
        assert prod >= aa * ab
