"""Command-line front end: ``count``, ``gadget``, ``reduce`` and ``verify``.

Every run prints one JSON document (or writes it to ``--out``).  Counts are
decimal strings.  Exit codes: 0 success, 2 usage error, 3 input error,
4 cap exceeded, 5 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Any, Sequence

from .campaigns import SUITES, SuiteConfig, run_suite
from .contraction import fas_spectrum_contracted
from .counting import (
    BRUTE_FORCE_CAP,
    CapExceededError,
    Spectrum,
    fas_spectrum_bruteforce,
    fas_spectrum_dp,
    fvs_spectrum,
    minimal_fas_count,
    minimum_of_spectrum,
    vc_spectrum,
)
from .gadgets import karp_gadget, line_digraph, subdivision_gadget
from .graphs import Digraph, GraphError, UGraph, read_graph, serialize
from .reductions import (
    InconsistentOracleError,
    SpectrumOracle,
    card_vc_via_card_fas,
    fas_spectrum_via_fas,
    minimum_fas_via_card_fas,
    summary,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAP = 4
EXIT_VERIFY = 5

COUNT_KINDS = ("fas", "card-fas", "min-fas", "minimal-fas", "vc", "card-vc", "min-vc", "fvs", "card-fvs", "min-fvs")
EXHAUSTIVE_SUITES = ("dp-vs-brute", "minimum-search")


class UsageError(Exception):
    pass


def _fas_spectrum(d: Digraph, algo: str, cap: int | None) -> tuple[Spectrum, str]:
    if algo == "auto":
        algo = "brute" if d.m <= (cap or BRUTE_FORCE_CAP) else "contract"
    if algo == "brute":
        return fas_spectrum_bruteforce(d, cap), algo
    if algo == "dp":
        return fas_spectrum_dp(d, cap), algo
    return fas_spectrum_contracted(d, cap=cap), algo


def run_count(args: argparse.Namespace) -> dict[str, Any]:
    kind = args.kind
    if kind.startswith("card-") and args.k is None:
        raise UsageError(f"--kind {kind} needs --k")
    graph = read_graph(args.input)
    wants_ugraph = kind.endswith("vc")
    if wants_ugraph != isinstance(graph, UGraph):
        expected = "graph" if wants_ugraph else "digraph"
        raise GraphError(f"--kind {kind} needs a '{expected}' input file")
    start = time.perf_counter()
    doc: dict[str, Any] = {"kind": kind}
    if kind == "minimal-fas":
        doc["count"] = str(minimal_fas_count(graph, args.cap))
        algo = "brute"
    else:
        if kind.endswith("vc"):
            spectrum, algo = vc_spectrum(graph, args.cap), "brute"
        elif kind.endswith("fvs"):
            spectrum, algo = fvs_spectrum(graph, args.cap), "brute"
        else:
            spectrum, algo = _fas_spectrum(graph, args.algo, args.cap)
        if kind.startswith("card-"):
            doc["k"] = args.k
            doc["count"] = str(spectrum[args.k] if 0 <= args.k < len(spectrum) else 0)
        elif kind.startswith("min-"):
            best = minimum_of_spectrum(spectrum)
            doc["m"] = best.m
            doc["count"] = str(best.count)
        else:
            doc["count"] = str(spectrum.total)
        doc["spectrum"] = spectrum.to_strings()
    doc["algorithm"] = algo
    doc["elapsed_seconds"] = round(time.perf_counter() - start, 6)
    return doc


def run_gadget(args: argparse.Namespace) -> dict[str, Any]:
    if args.kind in ("karp", "subdiv") and args.ell is None:
        raise UsageError(f"--kind {args.kind} needs --ell")
    if args.ell is not None and args.ell < 1:
        raise UsageError("--ell must be a positive integer")
    graph = read_graph(args.input)
    if (args.kind == "karp") != isinstance(graph, UGraph):
        raise GraphError(f"--kind {args.kind} needs a '{'graph' if args.kind == 'karp' else 'digraph'}' input file")
    if args.kind == "karp":
        gadget, gmap = karp_gadget(graph, args.ell)
    elif args.kind == "subdiv":
        gadget, gmap = subdivision_gadget(graph, args.ell)
    else:
        gadget, gmap = line_digraph(graph)
    doc: dict[str, Any] = {
        "kind": args.kind,
        "ell": args.ell,
        "vertices": gadget.n,
        "arcs": gadget.m,
        "summary": summary(gadget),
    }
    if args.out:
        _write(args.out, serialize(gadget))
        _write(args.out + ".map", gmap.to_text())
        doc["out"] = args.out
        doc["map"] = args.out + ".map"
    else:
        doc["graph"] = serialize(gadget)
        doc["map"] = gmap.to_text()
    return doc


def run_reduce(args: argparse.Namespace) -> dict[str, Any]:
    graph = read_graph(args.input)
    algo = "contract" if args.algo == "auto" else args.algo
    oracle = SpectrumOracle(algo, args.cap)
    doc: dict[str, Any] = {"kind": args.kind}
    if args.kind == "card-vc":
        if args.k is None:
            raise UsageError("--kind card-vc needs --k")
        if not isinstance(graph, UGraph):
            raise GraphError("--kind card-vc needs a 'graph' input file")
        if not 0 <= args.k <= graph.n:
            raise UsageError(f"--k must lie in [0, {graph.n}]")
        count, transcript = card_vc_via_card_fas(graph, args.k, oracle.card_fas)
        doc.update(k=args.k, count=str(count))
    else:
        if not isinstance(graph, Digraph):
            raise GraphError(f"--kind {args.kind} needs a 'digraph' input file")
        if args.kind == "fas-spectrum":
            spectrum, transcript = fas_spectrum_via_fas(graph, oracle.fas)
            doc["spectrum"] = spectrum.to_strings()
        else:
            best, transcript = minimum_fas_via_card_fas(graph, oracle.card_fas)
            doc.update(m=best.m, count=str(best.count))
    doc["oracle"] = algo
    doc["transcript"] = transcript.to_dict()
    return doc


def run_verify(args: argparse.Namespace) -> tuple[dict[str, Any], bool]:
    trials = args.trials
    if args.seed is None:
        if trials:
            raise UsageError("--trials needs --seed")
        if args.suite not in EXHAUSTIVE_SUITES or args.exhaustive_n is None:
            raise UsageError("--seed is required for randomized campaigns")
        trials = 0
    if args.p is not None and not 0.0 <= args.p <= 1.0:
        raise UsageError("--p must lie in [0, 1]")
    cfg = SuiteConfig(
        seed=args.seed or 0,
        trials=trials,
        n=args.n,
        p=args.p,
        exhaustive_n=args.exhaustive_n,
        corrupt_oracle=args.corrupt_oracle,
    )
    reports = run_suite(args.suite, cfg)
    passed = all(r.passed for r in reports)
    doc = {
        "suite": args.suite,
        "config": {
            "seed": args.seed,
            "trials": trials,
            "n": args.n,
            "p": args.p,
            "exhaustive_n": args.exhaustive_n,
            "corrupt_oracle": args.corrupt_oracle,
        },
        "passed": passed,
        "suites": [
            {"identity": r.identity, "passed": r.passed, "instances_tested": len(r.instances),
             "failures": len(r.failures)}
            for r in reports
        ],
        "reports": [r.to_dict() for r in reports],
    }
    if args.out and not passed:
        folder = args.out + ".counterexamples"
        os.makedirs(folder, exist_ok=True)
        for r in reports:
            for i, inst in enumerate(r.failures):
                stem = os.path.join(folder, f"{r.identity}-{i:04d}")
                _write(stem + ".txt", inst.graph)
                _write(stem + ".json", json.dumps(inst.to_dict(), indent=2) + "\n")
        doc["counterexamples"] = folder
    return doc, passed


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fascount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    count = sub.add_parser("count", help="exact counts on a graph file")
    count.add_argument("input")
    count.add_argument("--kind", required=True, choices=COUNT_KINDS)
    count.add_argument("--k", type=int)
    count.add_argument("--algo", choices=("auto", "brute", "dp", "contract"), default="auto")
    count.add_argument("--cap", type=int)
    count.add_argument("--out")

    gadget = sub.add_parser("gadget", help="build a reduction gadget")
    gadget.add_argument("input")
    gadget.add_argument("--kind", required=True, choices=("karp", "subdiv", "line"))
    gadget.add_argument("--ell", type=int)
    gadget.add_argument("--out", help="gadget path; the map goes to <out>.map")

    reduce = sub.add_parser("reduce", help="run an oracle-driven reduction")
    reduce.add_argument("input")
    reduce.add_argument("--kind", required=True, choices=("card-vc", "fas-spectrum", "min-fas"))
    reduce.add_argument("--k", type=int)
    reduce.add_argument("--algo", choices=("auto", "brute", "dp", "contract"), default="auto",
                        help="counter backing the oracle")
    reduce.add_argument("--cap", type=int)
    reduce.add_argument("--out")

    verify = sub.add_parser("verify", help="seeded verification campaign")
    verify.add_argument("--suite", required=True, choices=tuple(SUITES) + ("all",))
    verify.add_argument("--seed", type=int)
    verify.add_argument("--trials", type=int)
    verify.add_argument("--n", type=int, help="largest vertex count in the random corpus")
    verify.add_argument("--p", type=float, help="fixed arc probability (default: cycle 0.3, 0.5, 0.8)")
    verify.add_argument("--exhaustive-n", type=int)
    verify.add_argument("--corrupt-oracle", action="store_true", help="self-test with an off-by-one oracle")
    verify.add_argument("--out")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    code = EXIT_OK
    try:
        if args.command == "count":
            doc = run_count(args)
        elif args.command == "gadget":
            doc = run_gadget(args)
        elif args.command == "reduce":
            doc = run_reduce(args)
        else:
            doc, passed = run_verify(args)
            code = EXIT_OK if passed else EXIT_VERIFY
    except UsageError as exc:
        print(f"fascount: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"fascount: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GraphError, OSError) as exc:
        print(f"fascount: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistentOracleError as exc:
        print(f"fascount: reduction failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    text = json.dumps(doc, indent=2) + "\n"
    if getattr(args, "out", None) and args.command in ("count", "reduce", "verify"):
        _write(args.out, text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
