from fractions import Fraction
from itertools import combinations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fascount.counting import fas_spectrum_bruteforce, minimum_of_spectrum, vc_spectrum
from fascount.gadgets import karp_gadget
from fascount.graphs import Digraph, UGraph, directed_cycle, is_fas, path_ugraph, undirected_cycle
from fascount.reductions import (
    InconsistentOracleError,
    SpectrumOracle,
    card_vc_via_card_fas,
    corrupted,
    fas_spectrum_via_fas,
    interpolate,
    minimum_fas_via_card_fas,
    verify_card_vc_driver,
    verify_fvs_correspondence,
    verify_parsimonious_min,
    verify_partition_identity,
)

from conftest import digraphs, naive_fas_spectrum, ugraphs

TRIANGLE = undirected_cycle(3)
TWO_2_CYCLES = Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])


def brute_card_fas(d, k):
    return sum(is_fas(d, c) for c in combinations(d.arcs, k))


# ---- cover counts from #Card-FAS on the Karp gadget ----------------------------


def test_card_vc_k0():
    for g, expected in [(UGraph(3), 1), (path_ugraph(3), 0)]:
        count, transcript = card_vc_via_card_fas(g, 0)
        assert count == expected and transcript.calls == 1
        assert transcript.records[0].params == {"k": 0, "ell": 1}


def test_card_vc_triangle():
    assert card_vc_via_card_fas(TRIANGLE, 1)[0] == 0


def test_card_vc_path_worked_example():
    count, transcript = card_vc_via_card_fas(path_ugraph(3), 2, brute_card_fas)
    assert count == 3
    assert transcript.answers == [0, 1, 27]
    assert 27 - comb(24, 1) * 1 == 3
    assert {(r.vertices, r.arcs) for r in transcript.records} == {(18, 27)}


@settings(max_examples=25, deadline=None)
@given(ugraphs(max_n=5), st.data())
def test_card_vc_matches_vc_spectrum(g, data):
    k = data.draw(st.integers(0, g.n))
    count, transcript = card_vc_via_card_fas(g, k)
    assert count == vc_spectrum(g)[k]
    assert transcript.calls == k + 1


def test_card_vc_rejects_large_k():
    with pytest.raises(ValueError):
        card_vc_via_card_fas(path_ugraph(3), 4)


def test_card_vc_split_system_with_direct_minimum():
    report = verify_card_vc_driver(undirected_cycle(4))
    assert report.passed
    assert report.instances[0].params == {"min_vc": 2}


def test_card_vc_corrupted_oracle_is_caught():
    oracle = corrupted(SpectrumOracle().card_fas, delta=-1)
    with pytest.raises(InconsistentOracleError):
        card_vc_via_card_fas(path_ugraph(3), 2, oracle)
    assert not verify_card_vc_driver(path_ugraph(3), corrupted(SpectrumOracle().card_fas)).passed


# ---- spectrum from #FAS on subdivisions ----------------------------------------


def test_interpolate_exact():
    # 1 + 2y + 3y^2
    assert interpolate([1, 3, 7], [6, 34, 162]) == [1, 2, 3]
    assert interpolate([0, 1], [Fraction(1, 2), 1]) == [Fraction(1, 2), Fraction(1, 2)]
    with pytest.raises(ValueError):
        interpolate([1, 1], [0, 0])


def test_fas_spectrum_via_fas_two_cycle():
    brute_total = lambda d: sum(naive_fas_spectrum(d))  # noqa: E731
    spectrum, transcript = fas_spectrum_via_fas(directed_cycle(2), brute_total)
    assert transcript.answers == [3, 15, 63]
    assert [r.params["ell"] for r in transcript.records] == [1, 2, 3]
    assert spectrum.coeffs == (0, 2, 1)


def test_fas_spectrum_via_fas_small_cases():
    spectrum, transcript = fas_spectrum_via_fas(Digraph(2, [(0, 1)]))
    assert transcript.answers == [2, 4] and spectrum.coeffs == (1, 1)
    assert fas_spectrum_via_fas(directed_cycle(3))[0].coeffs == (0, 3, 3, 1)
    spectrum, transcript = fas_spectrum_via_fas(Digraph(3))
    assert spectrum.coeffs == (1,) and transcript.calls == 1


@settings(max_examples=30, deadline=None)
@given(digraphs(max_n=4, max_arcs=6))
def test_fas_spectrum_via_fas_matches_bruteforce(d):
    spectrum, transcript = fas_spectrum_via_fas(d)
    assert spectrum == fas_spectrum_bruteforce(d)
    assert transcript.calls == d.m + 1


def test_corrupted_fas_oracle_fails_integrality():
    exact = SpectrumOracle().fas

    def off_on_second_subdivision(h):
        return exact(h) + (h.m == 6)

    with pytest.raises(InconsistentOracleError, match="not a nonnegative integer"):
        fas_spectrum_via_fas(directed_cycle(3), off_on_second_subdivision)


@pytest.mark.parametrize("delta", [1, -1])
def test_uniformly_corrupted_fas_oracle_is_caught(delta):
    # a constant shift only moves the constant coefficient, so integrality alone misses it
    with pytest.raises(InconsistentOracleError):
        fas_spectrum_via_fas(directed_cycle(3), corrupted(SpectrumOracle().fas, delta))
    with pytest.raises(InconsistentOracleError):
        fas_spectrum_via_fas(Digraph(3, [(0, 1), (1, 2)]), corrupted(SpectrumOracle().fas, delta))


def test_non_integer_oracle_answer_rejected():
    with pytest.raises(InconsistentOracleError):
        fas_spectrum_via_fas(directed_cycle(2), lambda d: 1.5)


# ---- minimum search -------------------------------------------------------------


def test_minimum_search_examples():
    best, transcript = minimum_fas_via_card_fas(Digraph(3, [(0, 1), (1, 2)]))
    assert best == (0, 1) and transcript.calls == 1
    best, transcript = minimum_fas_via_card_fas(directed_cycle(3))
    assert best == (1, 3) and transcript.calls == 2
    gadget, _ = karp_gadget(TRIANGLE, 2)
    best, transcript = minimum_fas_via_card_fas(gadget)
    assert best == (2, 3) and transcript.calls == 3


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=5, max_arcs=12))
def test_minimum_search_matches_spectrum(d):
    best, transcript = minimum_fas_via_card_fas(d, SpectrumOracle("brute").card_fas)
    assert best == minimum_of_spectrum(fas_spectrum_bruteforce(d))
    assert transcript.calls == best.m + 1


def test_minimum_search_with_silent_oracle():
    with pytest.raises(InconsistentOracleError):
        minimum_fas_via_card_fas(directed_cycle(2), lambda d, k: 0)


# ---- verifiers -----------------------------------------------------------------


def test_parsimonious_examples():
    for g, size, count in [(path_ugraph(3), 1, 1), (TRIANGLE, 2, 3), (UGraph(4), 0, 1)]:
        report = verify_parsimonious_min(g)
        assert report.passed
        checks = {c.name: c for c in report.instances[0].checks}
        assert checks["minimum-size"].left == size
        assert checks["minimum-count"].left == checks["minimum-count"].right == count


def test_parsimonious_enumerates_small_gadgets():
    report = verify_parsimonious_min(UGraph(2, [(0, 1)]))
    names = [c.name for c in report.instances[0].checks]
    assert "enumerated-minimum-fas-with-edge-arcs" in names and report.passed


def test_partition_two_cycle():
    report = verify_partition_identity(directed_cycle(2), 2)
    assert report.passed
    checks = {c.name: (c.left, c.right) for c in report.instances[0].checks}
    assert checks["aggregate"] == (15, 2 * 3 + 1 * 9)
    assert checks["fibers-over-size-1"] == (6, 6)
    assert checks["fibers-over-size-2"] == (9, 9)


def test_partition_three_cycle_and_acyclic():
    report = verify_partition_identity(directed_cycle(3), 2)
    assert report.passed
    assert report.instances[0].checks[0].left == 3 * 3 + 3 * 9 + 27 == 63
    path = Digraph(3, [(0, 1), (1, 2)])
    ell = 3
    agg = verify_partition_identity(path, ell).instances[0].checks[0]
    assert agg.left == 2 ** (ell * path.m) == sum(comb(path.m, i) * (2**ell - 1) ** i for i in range(path.m + 1))


@settings(max_examples=25, deadline=None)
@given(digraphs(max_n=4, max_arcs=6), st.integers(1, 3))
def test_partition_identity_property(d, ell):
    assert verify_partition_identity(d, ell).passed


def test_fvs_correspondence_examples():
    for d in [directed_cycle(3), Digraph(2, [(0, 1)]), TWO_2_CYCLES]:
        report = verify_fvs_correspondence(d)
        assert report.passed
    spectra = verify_fvs_correspondence(Digraph(2, [(0, 1)])).instances[0].checks[0]
    assert spectra.left.coeffs == spectra.right.coeffs == (1, 1)


def test_report_serialization_uses_decimal_strings():
    doc = verify_partition_identity(directed_cycle(2), 2).to_dict()
    assert doc["passed"] is True and doc["instances_tested"] == 1
    agg = doc["instances"][0]["checks"][0]
    assert agg == {"name": "aggregate", "left": "15", "right": "15", "passed": True}
    assert doc["instances"][0]["graph"] == "digraph 2 2\n0 1\n1 0\n"


def test_spectrum_oracle_caches_and_extends():
    oracle = SpectrumOracle()
    gadget, _ = karp_gadget(path_ugraph(4), 5)
    assert [oracle.card_fas(gadget, k) for k in range(3)] == [0, 0, 3]
    assert oracle.card_fas(gadget, 40) > 0
    assert oracle.card_fas(gadget, gadget.m + 1) == 0
    with pytest.raises(ValueError):
        SpectrumOracle("guess")
