"""Seeded verification campaigns: corpora, suites and the independent minimal-FAS count.

A corpus is drawn from ``random.Random(seed)``: for every trial the master
stream picks a vertex count, an edge probability and a 32-bit instance seed.
Draws violating a suite's size bound are discarded and redrawn from the same
stream, so a corpus depends only on ``(seed, trials, n, p)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .contraction import fas_spectrum_contracted
from .counting import BRUTE_FORCE_CAP, fas_spectrum_bruteforce, fas_spectrum_dp, minimal_fas_count
from .graphs import (
    Digraph,
    UGraph,
    directed_cycle,
    is_fas,
    path_ugraph,
    random_digraph,
    random_ugraph,
    serialize,
    undirected_cycle,
)
from .reductions import (
    Check,
    InstanceResult,
    ReductionReport,
    SpectrumOracle,
    corrupted,
    verify_card_vc_driver,
    verify_fvs_correspondence,
    verify_interpolation,
    verify_minimum_search,
    verify_parsimonious_min,
    verify_partition_identity,
)

PROBABILITIES = (0.3, 0.5, 0.8)


def random_digraphs(
    seed: int, trials: int, n_max: int, p: float | None = None,
    accept: Callable[[Digraph], bool] = lambda d: True,
) -> Iterator[Digraph]:
    rng = random.Random(seed)
    for i in range(trials):
        while True:
            n = rng.randint(min(2, n_max), n_max)
            prob = PROBABILITIES[i % len(PROBABILITIES)] if p is None else p
            d = random_digraph(n, prob, rng.getrandbits(32))
            if accept(d):
                yield d
                break


def random_ugraphs(seed: int, trials: int, n_max: int, p: float | None = None) -> Iterator[UGraph]:
    rng = random.Random(seed)
    for i in range(trials):
        n = rng.randint(min(2, n_max), n_max)
        prob = PROBABILITIES[i % len(PROBABILITIES)] if p is None else p
        yield random_ugraph(n, prob, rng.getrandbits(32))


def all_digraphs(n: int) -> Iterator[Digraph]:
    """Every loopless digraph on ``n`` labeled vertices (``2^(n(n-1))`` of them)."""
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(pairs)):
        yield Digraph(n, [a for i, a in enumerate(pairs) if mask >> i & 1])


FIXED_DIGRAPHS = (
    Digraph(0),
    Digraph(2, [(0, 1)]),
    directed_cycle(2),
    directed_cycle(3),
    directed_cycle(4),
    Digraph(4, [(0, 1), (1, 0), (2, 3), (3, 2)]),
)
FIXED_UGRAPHS = (UGraph(3), path_ugraph(3), undirected_cycle(3), undirected_cycle(4))


def minimal_fas_count_exhaustive(d: Digraph) -> int:
    """Minimal FAS by definition: an FAS none of whose proper subsets is an FAS."""
    fas = {mask for mask in range(1 << d.m) if is_fas(d, d.arcs_of_mask(mask))}
    count = 0
    for f in fas:
        sub = (f - 1) & f
        minimal = True
        while True:
            if sub != f and sub in fas:
                minimal = False
                break
            if sub == 0:
                break
            sub = (sub - 1) & f
        count += minimal
    return count


def _single(identity: str, graph, params: dict, checks: list[Check]) -> ReductionReport:
    report = ReductionReport(identity)
    report.instances.append(InstanceResult(serialize(graph), params, checks))
    return report


def _counters_agree(d: Digraph) -> ReductionReport:
    brute = fas_spectrum_bruteforce(d)
    return _single("dp-vs-brute", d, {}, [
        Check("dp", fas_spectrum_dp(d), brute),
        Check("contracted", fas_spectrum_contracted(d), brute),
    ])


@dataclass
class SuiteConfig:
    seed: int = 0
    trials: int | None = None
    n: int | None = None
    p: float | None = None
    exhaustive_n: int | None = None
    corrupt_oracle: bool = False


def suite_dp_vs_brute(cfg: SuiteConfig, arc_limit: int = BRUTE_FORCE_CAP) -> ReductionReport:
    report = ReductionReport("dp-vs-brute")
    for d in all_digraphs(4 if cfg.exhaustive_n is None else cfg.exhaustive_n):
        report.extend(_counters_agree(d))
    trials = 200 if cfg.trials is None else cfg.trials
    for d in random_digraphs(cfg.seed, trials, cfg.n or 8, cfg.p, lambda d: d.m <= arc_limit):
        report.extend(_counters_agree(d))
    return report


def suite_minimum_search(cfg: SuiteConfig) -> ReductionReport:
    report = ReductionReport("minimum-fas-via-card-fas")
    oracle = SpectrumOracle("brute").card_fas
    if cfg.corrupt_oracle:
        oracle = corrupted(oracle)
    for d in all_digraphs(4 if cfg.exhaustive_n is None else cfg.exhaustive_n):
        report.extend(verify_minimum_search(d, oracle))
    return report


def suite_partition(cfg: SuiteConfig, budget: int = 18) -> ReductionReport:
    report = ReductionReport("partition")
    rng = random.Random(cfg.seed)
    trials = 100 if cfg.trials is None else cfg.trials
    for d in FIXED_DIGRAPHS:
        report.extend(verify_partition_identity(d, 2))
    for i, d in enumerate(random_digraphs(cfg.seed, trials, cfg.n or 4, cfg.p, lambda d: 1 <= d.m <= budget)):
        ell = rng.randint(1, min(4, budget // d.m))
        report.extend(verify_partition_identity(d, ell))
    return report


def suite_interpolation(cfg: SuiteConfig, arc_limit: int = 6) -> ReductionReport:
    report = ReductionReport("fas-spectrum-via-fas")
    oracle = SpectrumOracle().fas
    if cfg.corrupt_oracle:
        oracle = corrupted(oracle)
    trials = 50 if cfg.trials is None else cfg.trials
    corpus = list(FIXED_DIGRAPHS) + list(
        random_digraphs(cfg.seed, trials, cfg.n or 4, cfg.p, lambda d: d.m <= arc_limit)
    )
    for d in corpus:
        if d.m <= arc_limit:
            report.extend(verify_interpolation(d, oracle))
    return report


def suite_karp_recurrence(cfg: SuiteConfig) -> ReductionReport:
    report = ReductionReport("card-vc-via-card-fas")
    oracle = SpectrumOracle().card_fas
    if cfg.corrupt_oracle:
        oracle = corrupted(oracle)
    trials = 50 if cfg.trials is None else cfg.trials
    for g in list(FIXED_UGRAPHS) + list(random_ugraphs(cfg.seed, trials, cfg.n or 5, cfg.p)):
        report.extend(verify_card_vc_driver(g, oracle))
    return report


def suite_parsimonious(cfg: SuiteConfig) -> ReductionReport:
    report = ReductionReport("parsimonious-minimum")
    trials = 100 if cfg.trials is None else cfg.trials
    for g in list(FIXED_UGRAPHS) + list(random_ugraphs(cfg.seed, trials, cfg.n or 6, cfg.p)):
        report.extend(verify_parsimonious_min(g))
    return report


def suite_fvs(cfg: SuiteConfig) -> ReductionReport:
    report = ReductionReport("fas-fvs-line-digraph")
    trials = 100 if cfg.trials is None else cfg.trials
    for d in list(FIXED_DIGRAPHS) + list(random_digraphs(cfg.seed, trials, cfg.n or 5, cfg.p)):
        report.extend(verify_fvs_correspondence(d))
    return report


def suite_minimal(cfg: SuiteConfig, arc_limit: int = 10) -> ReductionReport:
    report = ReductionReport("minimal-fas")
    trials = 50 if cfg.trials is None else cfg.trials
    corpus = list(FIXED_DIGRAPHS) + list(
        random_digraphs(cfg.seed, trials, cfg.n or 5, cfg.p, lambda d: d.m <= arc_limit)
    )
    for d in corpus:
        report.extend(_single("minimal-fas", d, {}, [
            Check("minimal-count", minimal_fas_count(d), minimal_fas_count_exhaustive(d)),
        ]))
    return report


SUITES: dict[str, Callable[[SuiteConfig], ReductionReport]] = {
    "dp-vs-brute": suite_dp_vs_brute,
    "partition": suite_partition,
    "karp-recurrence": suite_karp_recurrence,
    "interpolation": suite_interpolation,
    "parsimonious": suite_parsimonious,
    "fvs": suite_fvs,
    "minimum-search": suite_minimum_search,
    "minimal": suite_minimal,
}


def run_suite(name: str, cfg: SuiteConfig) -> list[ReductionReport]:
    if name == "all":
        return [suite(cfg) for suite in SUITES.values()]
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return [SUITES[name](cfg)]

