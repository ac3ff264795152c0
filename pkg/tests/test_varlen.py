import itertools
import math

import pytest

from zecap.graphs import cycle, distinguishable, graph_by_name
from zecap.varlen import (GeneratorSet, NonUniquelyDecodableError,
                          count_concatenations, enumerate_codewords, rate,
                          verify_zero_error)

C5P1 = graph_by_name("C5+1")


def gen(words):
    return GeneratorSet.from_strings(C5P1, words)


PENTAGON_SET = gen(["0", "11", "23", "35", "42", "54"])
PRUNED_SET = gen(["11", "23", "35", "42", "54", "001", "003"])


def test_construction_validates():
    with pytest.raises(ValueError):
        GeneratorSet(C5P1, [[]])
    with pytest.raises(ValueError):
        GeneratorSet(C5P1, [[1], [1]])
    with pytest.raises(ValueError):
        GeneratorSet(C5P1, [[9]])


def test_length_stats():
    assert PENTAGON_SET.min_length == 1
    assert PENTAGON_SET.max_length == 2
    assert PENTAGON_SET.length_gcd == 1
    assert PENTAGON_SET.length_histogram() == {1: 1, 2: 5}
    assert PRUNED_SET.length_histogram() == {2: 5, 3: 2}
    assert PRUNED_SET.length_gcd == 1
    d2 = gen(["11", "23", "35", "42", "54"])
    assert d2.length_gcd == 2


def test_characteristic_polynomial():
    assert PENTAGON_SET.characteristic_polynomial().coefficients == (-5, -1, 1)
    assert PRUNED_SET.characteristic_polynomial().coefficients == (-2, -5, 0, 1)


def test_json_round_trip():
    again = GeneratorSet.from_json(PENTAGON_SET.to_json())
    assert again.words == PENTAGON_SET.words
    named = GeneratorSet.from_json(PENTAGON_SET.to_json(graph_name="C5+1"))
    assert named.words == PENTAGON_SET.words
    assert named.graph == C5P1


def test_verify_golden_sets():
    ok, violation = verify_zero_error(PENTAGON_SET)
    assert ok and violation is None
    ok, _ = verify_zero_error(PRUNED_SET)
    assert ok


def test_verify_catches_confusable_pair():
    bad = gen(["11", "12"])
    ok, violation = verify_zero_error(bad)
    assert not ok
    assert violation == ((1, 1), (1, 2))


def test_verify_prefix_rule():
    # 11 is confusable with 112: only the first two letters matter
    bad = gen(["11", "112"])
    ok, violation = verify_zero_error(bad)
    assert not ok
    assert violation == ((1, 1), (1, 1, 2))


def test_verify_heptagon_code():
    c7 = cycle(7)
    gs = GeneratorSet.from_strings(c7, ["0", "20", "22", "24", "40", "42", "44"])
    ok, _ = verify_zero_error(gs)
    assert ok


def test_count_golden_pentagon():
    assert count_concatenations(PENTAGON_SET, 5) == [1, 1, 6, 11, 41, 96]


def test_count_golden_pruned():
    assert count_concatenations(PRUNED_SET, 5) == [1, 0, 5, 2, 25, 20]


def test_count_matches_enumeration():
    for gs in (PENTAGON_SET, PRUNED_SET):
        counts = count_concatenations(gs, 6)
        for L in range(7):
            assert counts[L] == len(enumerate_codewords(gs, L))


def test_count_rejects_ambiguous_set():
    # 1 and 11 give two factorizations of 11
    bad = gen(["1", "11"])
    with pytest.raises(NonUniquelyDecodableError):
        count_concatenations(bad, 4)


def test_enumerated_codewords_pairwise_distinguishable():
    for gs in (PENTAGON_SET, PRUNED_SET):
        for L in range(1, 7):
            words = enumerate_codewords(gs, L)
            for a, b in itertools.combinations(words, 2):
                assert distinguishable(gs.graph, a, b)


def test_rate_golden():
    assert rate(PENTAGON_SET).nu == pytest.approx((1 + math.sqrt(21)) / 2, abs=1e-9)
    assert rate(PRUNED_SET).nu == pytest.approx(1 + math.sqrt(2), abs=1e-9)
    c7 = cycle(7)
    hat = GeneratorSet.from_strings(c7, ["0", "20", "22", "24", "40", "42", "44"])
    assert rate(hat).nu == pytest.approx(3, abs=1e-9)
    assert rate(hat).r_bits == pytest.approx(math.log2(3), abs=1e-9)


def test_rate_even_length_set():
    d2 = gen(["11", "23", "35", "42", "54"])
    assert rate(d2).nu == pytest.approx(math.sqrt(5), abs=1e-9)
    counts = count_concatenations(d2, 8)
    assert counts[::2] == [1, 5, 25, 125, 625]
    assert all(c == 0 for c in counts[1::2])


def test_superadditivity_of_log_counts():
    # log #C*_[L] is superadditive: #C*_[a+b] >= #C*_[a] * #C*_[b]
    for gs in (PENTAGON_SET, PRUNED_SET):
        counts = count_concatenations(gs, 40)
        for a in range(1, 20):
            for b in range(1, 21):
                assert counts[a + b] >= counts[a] * counts[b]


def test_root_convergence_to_rate():
    # L-th roots approach nu with O(1/L) error along the full-support tail
    nu = rate(PENTAGON_SET).nu
    counts = count_concatenations(PENTAGON_SET, 60)
    errs = [abs(counts[L] ** (1 / L) - nu) for L in range(20, 61)]
    assert errs[-1] < errs[0]
    assert errs[-1] < 0.05
