from itertools import combinations
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings

from fascount.counting import (
    CapExceededError,
    MinimumCount,
    Spectrum,
    binomial_row,
    fas_spectrum_bruteforce,
    fas_spectrum_dp,
    fas_table,
    fvs_spectrum,
    minimal_fas_count,
    minimum_of_spectrum,
    vc_spectrum,
)
from fascount.gadgets import karp_gadget, line_digraph
from fascount.graphs import (
    Digraph,
    UGraph,
    directed_cycle,
    is_acyclic,
    is_fas,
    path_ugraph,
    random_digraph,
    undirected_cycle,
)

from conftest import digraphs, naive_fas_spectrum, naive_fvs_spectrum, naive_vc_spectrum, ugraphs

TWO_2_CYCLES = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
PATH_4 = Digraph(4, [(0, 1), (1, 2), (2, 3)])


@pytest.mark.parametrize("count", [fas_spectrum_bruteforce, fas_spectrum_dp])
def test_fas_spectrum_examples(count):
    assert count(directed_cycle(2)).coeffs == (0, 2, 1)
    assert count(directed_cycle(3)).coeffs == (0, 3, 3, 1)
    assert count(directed_cycle(4)).coeffs == (0, 4, 6, 4, 1)
    assert count(PATH_4).coeffs == (1, 3, 3, 1)
    assert count(Digraph(0)).coeffs == (1,)


def test_fas_table_matches_scalar_predicate():
    d = Digraph(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 1), (1, 0)])
    table = fas_table(d)
    for mask in range(1 << d.m):
        assert table[mask] == is_fas(d, d.arcs_of_mask(mask))


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=5, max_arcs=9))
def test_bruteforce_matches_naive_enumeration(d):
    assert list(fas_spectrum_bruteforce(d)) == naive_fas_spectrum(d)


def test_dp_matches_bruteforce_on_random_digraphs():
    for seed in range(40):
        d = random_digraph(1 + seed % 8, (0.3, 0.5, 0.8)[seed % 3], seed)
        if d.m <= 20:
            assert fas_spectrum_dp(d) == fas_spectrum_bruteforce(d), seed


@settings(max_examples=60, deadline=None)
@given(digraphs(max_n=6, max_arcs=14))
def test_fas_spectrum_invariants(d):
    s = fas_spectrum_bruteforce(d)
    assert s.degree == d.m
    assert s[d.m] == 1
    assert s[0] == (1 if is_acyclic(d) else 0)
    for k in range(d.m):
        if s[k]:
            assert s[k + 1]


def test_spectrum_counts_kept_acyclic_subsets():
    d = Digraph(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2), (0, 3)])
    s = fas_spectrum_bruteforce(d)
    for kept in range(d.m + 1):
        acyclic = sum(is_acyclic(Digraph(d.n, c)) for c in combinations(d.arcs, kept))
        assert s[d.m - kept] == acyclic


def test_caps():
    with pytest.raises(CapExceededError, match="cap of 3"):
        fas_spectrum_bruteforce(directed_cycle(4), cap=3)
    with pytest.raises(ValueError):
        fas_spectrum_bruteforce(directed_cycle(4), cap=31)
    with pytest.raises(CapExceededError):
        fas_spectrum_dp(directed_cycle(5), cap=4)
    with pytest.raises(CapExceededError):
        vc_spectrum(UGraph(5), cap=4)


# labeled DAGs on n vertices (Robinson; OEIS A003024) = FAS count of the complete digraph
LABELED_DAGS = [1, 1, 3, 25, 543, 29281, 3781503, 1138779265, 783702329343,
                1213442454842881, 4175098976430598143, 31603459396418917607425]


def complete_digraph(n):
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def test_small_complete_digraphs_count_labeled_dags():
    for n in range(5):
        assert fas_spectrum_bruteforce(complete_digraph(n)).total == LABELED_DAGS[n]


def test_dp_exact_beyond_64_bits():
    d = complete_digraph(11)
    s = fas_spectrum_dp(d)
    assert s.total == LABELED_DAGS[11] > 2**64
    assert s[d.m] == 1 and s[d.m - 1] == d.m and s[1] == 0
    # keeping one arc of every 2-cycle acyclically = a transitive tournament
    assert minimum_of_spectrum(s) == MinimumCount(55, 39916800)


def test_vc_spectrum_examples():
    assert vc_spectrum(path_ugraph(3)).coeffs == (0, 1, 3, 1)
    assert vc_spectrum(undirected_cycle(3)).coeffs == (0, 0, 3, 1)
    assert vc_spectrum(UGraph(4)) == binomial_row(4)


@settings(max_examples=40, deadline=None)
@given(ugraphs(max_n=6))
def test_vc_spectrum_matches_naive(g):
    assert list(vc_spectrum(g)) == naive_vc_spectrum(g)


def test_fvs_spectrum_examples():
    assert fvs_spectrum(directed_cycle(2)).coeffs == (0, 2, 1)
    assert fvs_spectrum(PATH_4) == binomial_row(4)
    line, _ = line_digraph(directed_cycle(3))
    assert fvs_spectrum(line).coeffs == (0, 3, 3, 1)


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=6))
def test_fvs_spectrum_matches_naive(d):
    assert list(fvs_spectrum(d)) == naive_fvs_spectrum(d)


def test_minimal_fas_examples():
    assert minimal_fas_count(directed_cycle(3)) == 3
    assert minimal_fas_count(PATH_4) == 1
    assert minimal_fas_count(TWO_2_CYCLES) == 4


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=5, max_arcs=10))
def test_minimal_fas_bounds(d):
    count = minimal_fas_count(d)
    assert 1 <= count <= fas_spectrum_bruteforce(d).total
    if is_acyclic(d):
        assert count == 1


def test_minimum_of_spectrum():
    assert minimum_of_spectrum(Spectrum((0, 3, 3, 1))) == (1, 3)
    assert minimum_of_spectrum([1, 4, 6, 4, 1]) == (0, 1)
    gadget, _ = karp_gadget(path_ugraph(3), 2)
    assert minimum_of_spectrum(fas_spectrum_bruteforce(gadget)) == (1, 1)
    with pytest.raises(ValueError):
        minimum_of_spectrum([0, 0])


def test_spectrum_helpers():
    s = Spectrum([np.int64(1), 2, 1])
    assert s.coeffs == (1, 2, 1) and type(s.coeffs[0]) is int
    assert s.total == 4 and s.evaluate(3) == 16 and s.to_strings() == ["1", "2", "1"]
    assert binomial_row(5).coeffs == tuple(comb(5, k) for k in range(6))
