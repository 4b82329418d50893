"""Oracle-driven recovery procedures and correspondence verifiers.

Drivers never compute the target quantity themselves: every number they use
comes from an injected counting oracle, and every oracle call is appended to an
``OracleTranscript`` in call order.  Verifiers compare both sides of an identity
with brute force and return a ``ReductionReport`` instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Callable, Sequence

import numpy as np

from .contraction import fas_spectrum_contracted
from .counting import (
    MinimumCount,
    Spectrum,
    fas_spectrum_bruteforce,
    fas_spectrum_dp,
    fas_table,
    fvs_spectrum,
    fvs_table,
    minimum_of_spectrum,
    vc_spectrum,
)
from .gadgets import karp_gadget, line_digraph, subdivision_gadget
from .graphs import Digraph, Graph, UGraph, is_acyclic, is_fas, is_vc, serialize

CardFasOracle = Callable[[Digraph, int], int]
FasOracle = Callable[[Digraph], int]


class InconsistentOracleError(ArithmeticError):
    """Recovered values that cannot be counts: an oracle or construction bug."""


class SpectrumOracle:
    """Exact #Card-FAS / #FAS answers backed by one of the exact counters.

    Spectra are cached per digraph, so a driver asking for ``k = 0, 1, ...`` on
    the same gadget pays for a single count.  ``algo`` is ``"contract"``
    (default, handles large sparse gadgets), ``"dp"`` or ``"brute"``.
    """

    def __init__(self, algo: str = "contract", cap: int | None = None):
        if algo not in ("contract", "dp", "brute"):
            raise ValueError(f"unknown algorithm {algo!r}")
        self.algo = algo
        self.cap = cap
        self._cache: dict[Digraph, tuple[int | None, Spectrum]] = {}

    def spectrum(self, d: Digraph, max_degree: int | None = None) -> Spectrum:
        hit = self._cache.get(d)
        if hit is not None and (hit[0] is None or (max_degree is not None and max_degree <= hit[0])):
            return hit[1]
        if self.algo == "brute":
            s, known = fas_spectrum_bruteforce(d, self.cap), None
        elif self.algo == "dp":
            s, known = fas_spectrum_dp(d, self.cap), None
        else:
            if max_degree is not None:
                # drivers walk k upwards; over-asking avoids recounting at every step
                max_degree = max(max_degree, 8 if hit is None else 2 * hit[0])
            s = fas_spectrum_contracted(d, max_degree, self.cap)
            known = None if max_degree is None or max_degree >= d.m else max_degree
        self._cache[d] = (known, s)
        return s

    def card_fas(self, d: Digraph, k: int) -> int:
        if k < 0 or k > d.m:
            return 0
        return self.spectrum(d, k)[k]

    def fas(self, d: Digraph) -> int:
        return self.spectrum(d).total


def corrupted(oracle: Callable[..., int], delta: int = 1) -> Callable[..., int]:
    """Oracle that is off by ``delta`` on every answer, for negative-path tests."""

    def wrong(*args: Any) -> int:
        return oracle(*args) + delta

    return wrong


@dataclass
class OracleCall:
    problem: str
    vertices: int
    arcs: int
    params: dict[str, int]
    answer: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "problem": self.problem,
            "vertices": self.vertices,
            "arcs": self.arcs,
            "params": dict(self.params),
            "answer": str(self.answer),
        }


@dataclass
class OracleTranscript:
    records: list[OracleCall] = field(default_factory=list)

    @property
    def calls(self) -> int:
        return len(self.records)

    @property
    def answers(self) -> list[int]:
        return [r.answer for r in self.records]

    def ask(self, problem: str, oracle: Callable[..., int], d: Digraph, *args: int, **params: int) -> int:
        answer = oracle(d, *args)
        if isinstance(answer, bool) or not isinstance(answer, int):
            raise InconsistentOracleError(f"oracle returned a non-integer answer {answer!r}")
        self.records.append(OracleCall(problem, d.n, d.m, params, answer))
        return answer

    def to_dict(self) -> dict[str, Any]:
        return {"calls": self.calls, "records": [r.to_dict() for r in self.records]}


@dataclass
class Check:
    name: str
    left: Any
    right: Any
    passed: bool | None = None

    def __post_init__(self) -> None:
        if self.passed is None:
            self.passed = self.left == self.right

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "left": _jsonable(self.left), "right": _jsonable(self.right), "passed": self.passed}


@dataclass
class InstanceResult:
    graph: str
    params: dict[str, Any]
    checks: list[Check]
    transcripts: list[OracleTranscript] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict[str, Any]:
        out = {
            "graph": self.graph,
            "params": _jsonable(self.params),
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.transcripts:
            out["transcripts"] = [t.to_dict() for t in self.transcripts]
        return out


@dataclass
class ReductionReport:
    identity: str
    instances: list[InstanceResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def failures(self) -> list[InstanceResult]:
        return [r for r in self.instances if not r.passed]

    def extend(self, other: ReductionReport) -> None:
        self.instances.extend(other.instances)

    def to_dict(self) -> dict[str, Any]:
        return {
            "identity": self.identity,
            "passed": self.passed,
            "instances_tested": len(self.instances),
            "failures": len(self.failures),
            "instances": [r.to_dict() for r in self.instances],
        }


def _jsonable(value: Any) -> Any:
    # counts go out as decimal strings; small structural ints stay numbers
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return str(value)
    if isinstance(value, Spectrum):
        return value.to_strings()
    if isinstance(value, MinimumCount):
        return {"m": value.m, "count": str(value.count)}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): v if isinstance(v, (int, float, str)) and not isinstance(v, bool) else _jsonable(v)
                for k, v in value.items()}
    return value


def _default_card_fas() -> CardFasOracle:
    return SpectrumOracle().card_fas


def _default_fas() -> FasOracle:
    return SpectrumOracle().fas


def card_vc_via_card_fas(
    g: UGraph, k: int, oracle: CardFasOracle | None = None
) -> tuple[int, OracleTranscript]:
    """Number of vertex covers of size ``k`` from #Card-FAS answers on ``G'(k + 1)``.

    With ``ell > k'`` every FAS of size ``k'`` is a vertex cover's arcs plus
    ``k' - kappa`` of the ``4*ell*|E|`` edge arcs, hence
    ``C(k') = F(k') - sum_{j<k'} C(4 ell |E|, k' - j) C(j)``.
    """
    if k < 0 or k > g.n:
        raise ValueError(f"k must lie in [0, {g.n}], got {k}")
    oracle = oracle or _default_card_fas()
    ell = k + 1
    gadget, _ = karp_gadget(g, ell)
    edge_arcs = 4 * ell * g.m
    transcript = OracleTranscript()
    covers: list[int] = []
    for kp in range(k + 1):
        f = transcript.ask("card-fas", oracle, gadget, kp, k=kp, ell=ell)
        c = f - sum(comb(edge_arcs, kp - j) * covers[j] for j in range(kp))
        if c < 0:
            raise InconsistentOracleError(f"recovered a negative cover count {c} at size {kp}")
        covers.append(c)
    return covers[k], transcript


def interpolate(xs: Sequence[int], ys: Sequence[int]) -> list[Fraction]:
    """Monomial coefficients of the unique polynomial of degree < len(xs) through the points.

    Newton divided differences over exact rationals, then expansion of the
    Newton form by Horner steps.
    """
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    size = len(xs)
    table = [Fraction(y) for y in ys]
    newton = [table[0]]
    for level in range(1, size):
        table = [(table[i + 1] - table[i]) / (xs[i + level] - xs[i]) for i in range(size - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * size
    for i in range(size - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + newton[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += newton[i]
    return coeffs


def fas_spectrum_via_fas(d: Digraph, oracle: FasOracle | None = None) -> tuple[Spectrum, OracleTranscript]:
    """FAS spectrum of ``d`` from #FAS answers on the subdivisions ``H'(1..|A|+1)``.

    ``#FAS(H'(ell)) = sum_i F_i (2^ell - 1)^i``; the nodes ``2^ell - 1`` are distinct,
    so the coefficients are recovered by interpolation.
    """
    oracle = oracle or _default_fas()
    transcript = OracleTranscript()
    nodes, values = [], []
    for ell in range(1, d.m + 2):
        h, _ = subdivision_gadget(d, ell)
        values.append(transcript.ask("fas", oracle, h, ell=ell))
        nodes.append(2**ell - 1)
    coeffs = []
    for i, c in enumerate(interpolate(nodes, values)):
        if c.denominator != 1 or c < 0:
            raise InconsistentOracleError(f"coefficient {i} recovered as {c}, not a nonnegative integer")
        coeffs.append(int(c))
    # invariants checkable without the oracle: the full arc set is an FAS, and the
    # empty set is one exactly when d is acyclic
    if coeffs[-1] != 1 or len(coeffs) != d.m + 1:
        raise InconsistentOracleError(f"top coefficient recovered as {coeffs[-1]}, expected 1")
    if coeffs[0] != int(is_acyclic(d)):
        raise InconsistentOracleError(f"constant coefficient recovered as {coeffs[0]}, expected {int(is_acyclic(d))}")
    return Spectrum(coeffs), transcript


def minimum_fas_via_card_fas(
    d: Digraph, oracle: CardFasOracle | None = None
) -> tuple[MinimumCount, OracleTranscript]:
    """Ask #Card-FAS for ``k = 0, 1, ...`` and stop at the first nonzero answer."""
    oracle = oracle or _default_card_fas()
    transcript = OracleTranscript()
    for k in range(d.m + 1):
        answer = transcript.ask("card-fas", oracle, d, k, k=k)
        if answer:
            return MinimumCount(k, answer), transcript
    raise InconsistentOracleError("oracle reported no FAS at all, yet the full arc set is one")


def verify_card_vc_driver(g: UGraph, oracle: CardFasOracle | None = None) -> ReductionReport:
    """Runs the cover-count driver for every ``k`` and also checks the split system
    ``F(m+i) = C(m+i) + sum_j C(4 ell |E|, i-j) C(m+j)`` with ``m`` computed directly."""
    oracle = oracle or _default_card_fas()
    covers = vc_spectrum(g)
    m = minimum_of_spectrum(covers).m
    checks, transcripts = [], []
    for k in range(g.n + 1):
        try:
            got, transcript = card_vc_via_card_fas(g, k, oracle)
        except InconsistentOracleError as exc:
            checks.append(Check(f"C({k})", str(exc), covers[k], passed=False))
            continue
        transcripts.append(transcript)
        checks.append(Check(f"C({k})", got, covers[k]))
        checks.append(Check(f"oracle-calls(k={k})", transcript.calls, k + 1))
        ell = k + 1
        edge_arcs = 4 * ell * g.m
        answers = transcript.answers
        for kp in range(k + 1):
            if kp < m:
                expected = 0
            else:
                i = kp - m
                expected = covers[m + i] + sum(comb(edge_arcs, i - j) * covers[m + j] for j in range(i))
            checks.append(Check(f"F({kp}) on G'({ell})", answers[kp], expected))
    report = ReductionReport("card-vc-via-card-fas")
    report.instances.append(InstanceResult(serialize(g), {"min_vc": m}, checks, transcripts))
    return report


def verify_interpolation(d: Digraph, oracle: FasOracle | None = None) -> ReductionReport:
    direct = fas_spectrum_bruteforce(d)
    try:
        recovered, transcript = fas_spectrum_via_fas(d, oracle)
    except InconsistentOracleError as exc:
        checks = [Check("spectrum", str(exc), direct, passed=False)]
        transcripts = []
    else:
        checks = [
            Check("spectrum", recovered, direct),
            Check("oracle-calls", transcript.calls, d.m + 1),
        ]
        transcripts = [transcript]
    report = ReductionReport("fas-spectrum-via-fas")
    report.instances.append(InstanceResult(serialize(d), {}, checks, transcripts))
    return report


def verify_minimum_search(d: Digraph, oracle: CardFasOracle | None = None) -> ReductionReport:
    expected = minimum_of_spectrum(fas_spectrum_bruteforce(d))
    got, transcript = minimum_fas_via_card_fas(d, oracle)
    checks = [Check("minimum", got, expected), Check("oracle-calls", transcript.calls, got.m + 1)]
    report = ReductionReport("minimum-fas-via-card-fas")
    report.instances.append(InstanceResult(serialize(d), {}, checks, [transcript]))
    return report


def verify_parsimonious_min(g: UGraph, brute_cap: int = 20) -> ReductionReport:
    """Minimum covers of ``g`` against minimum FAS of ``G'(2)``.

    All vertex arcs together form an FAS, so minimum FAS have at most ``n``
    arcs and a degree-``n`` truncated count suffices.  Minimum FAS made of
    vertex arcs only are enumerated by trying every ``m``-subset of vertices;
    when that number equals the total count, no minimum FAS uses an edge arc.
    """
    gadget, gmap = karp_gadget(g, 2)
    vc_min = minimum_of_spectrum(vc_spectrum(g))
    fas_min = minimum_of_spectrum(fas_spectrum_contracted(gadget, max_degree=g.n))
    vertex_only = []
    for chosen in combinations(range(g.n), fas_min.m):
        if is_fas(gadget, [gmap.vertex_arcs[v] for v in chosen]):
            vertex_only.append(chosen)
    checks = [
        Check("minimum-size", fas_min.m, vc_min.m),
        Check("minimum-count", fas_min.count, vc_min.count),
        Check("vertex-arc-only-minimum-fas", len(vertex_only), fas_min.count),
        Check("projections-are-covers", sum(is_vc(g, c) for c in vertex_only), len(vertex_only)),
    ]
    if gadget.m <= brute_cap:
        table = fas_table(gadget)
        masks = np.flatnonzero(table)
        sizes = np.bitwise_count(masks.astype(np.uint64))
        minimum = masks[sizes == sizes.min()]
        vertex_mask = gadget.mask_of_arcs(gmap.vertex_arcs.values())
        stray = int(np.count_nonzero(minimum & ~vertex_mask))
        checks.append(Check("enumerated-minimum-fas-with-edge-arcs", stray, 0))
        checks.append(Check("enumerated-minimum-count", len(minimum), vc_min.count))
    report = ReductionReport("parsimonious-minimum")
    report.instances.append(
        InstanceResult(serialize(g), {"gadget_vertices": gadget.n, "gadget_arcs": gadget.m}, checks)
    )
    return report


def _project(masks: np.ndarray, groups: Sequence[int]) -> np.ndarray:
    """Bit ``a`` of the result is set when ``masks`` meets ``groups[a]``."""
    out = np.zeros(len(masks), dtype=np.int64)
    for a, group in enumerate(groups):
        out |= ((masks & group) != 0).astype(np.int64) << a
    return out


def verify_partition_identity(d: Digraph, ell: int) -> ReductionReport:
    """Families of FAS of ``H'(ell)`` lying over each FAS of ``d``.

    A set of gadget arcs projects to the source arcs whose path it meets.
    Each FAS ``F`` of ``d`` must have a fiber of exactly ``(2^ell - 1)^|F|``
    gadget FAS, and no gadget FAS may project outside ``FAS(d)``.
    """
    h, gmap = subdivision_gadget(d, ell)
    spectrum = fas_spectrum_bruteforce(d)
    base = 2**ell - 1
    table_h = fas_table(h)
    table_d = fas_table(d)
    groups = [h.mask_of_arcs(gmap.arc_paths[a]) for a in d.arcs]
    gadget_fas = np.flatnonzero(table_h)
    projected = _project(gadget_fas, groups)
    fibers = np.bincount(projected, minlength=1 << d.m)
    sizes = np.bitwise_count(np.arange(1 << d.m, dtype=np.uint64)).astype(np.int64)
    expected = np.where(table_d, base**sizes, 0)
    checks = [
        Check("aggregate", len(gadget_fas), sum(c * base**i for i, c in enumerate(spectrum))),
        Check("projections-outside-fas", int(np.count_nonzero(~table_d[projected])), 0),
        Check("mismatched-fibers", int(np.count_nonzero(fibers != expected)), 0),
    ]
    for i, c in enumerate(spectrum):
        checks.append(Check(f"fibers-over-size-{i}", int(fibers[sizes == i].sum()), c * base**i))
    report = ReductionReport("partition")
    report.instances.append(
        InstanceResult(serialize(d), {"ell": ell, "gadget_arcs": h.m}, checks)
    )
    return report


def verify_fvs_correspondence(d: Digraph) -> ReductionReport:
    """FAS of ``d`` against FVS of its line digraph, as spectra and set by set."""
    line, gmap = line_digraph(d)
    fas = fas_table(d)
    fvs = fvs_table(line)
    masks = np.arange(1 << d.m, dtype=np.int64)
    images = np.zeros(len(masks), dtype=np.int64)
    for i, a in enumerate(d.arcs):
        images |= ((masks >> i) & 1) << gmap.arc_vertex[a]
    checks = [
        Check("spectra", fas_spectrum_bruteforce(d), fvs_spectrum(line)),
        Check("membership-disagreements", int(np.count_nonzero(fas != fvs[images])), 0),
    ]
    report = ReductionReport("fas-fvs-line-digraph")
    report.instances.append(InstanceResult(serialize(d), {"line_vertices": line.n, "line_arcs": line.m}, checks))
    return report


def merged(identity: str, reports: Sequence[ReductionReport]) -> ReductionReport:
    out = ReductionReport(identity)
    for r in reports:
        out.extend(r)
    return out


def summary(graph: Graph) -> str:
    return f"{graph.n} vertices, {graph.m} {'arcs' if isinstance(graph, Digraph) else 'edges'}"
