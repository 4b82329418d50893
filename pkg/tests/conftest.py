from __future__ import annotations

from itertools import combinations

from hypothesis import strategies as st

from fascount.graphs import Digraph, UGraph, is_fas, is_fvs, is_vc


def naive_fas_spectrum(d: Digraph) -> list[int]:
    """Independent oracle: every arc subset through the scalar ``is_fas`` predicate."""
    return [sum(is_fas(d, c) for c in combinations(d.arcs, k)) for k in range(d.m + 1)]


def naive_vc_spectrum(g: UGraph) -> list[int]:
    return [sum(is_vc(g, c) for c in combinations(range(g.n), k)) for k in range(g.n + 1)]


def naive_fvs_spectrum(d: Digraph) -> list[int]:
    return [sum(is_fvs(d, c) for c in combinations(range(d.n), k)) for k in range(d.n + 1)]


@st.composite
def digraphs(draw, max_n: int = 5, max_arcs: int | None = None) -> Digraph:
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(n) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=max_arcs)) if pairs else []
    return Digraph(n, arcs)


@st.composite
def ugraphs(draw, max_n: int = 5) -> UGraph:
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return UGraph(n, edges)


ACCEPTANCE: dict[str, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for name in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0].rstrip("ab")), s)):
            terminalreporter.write_line(f"{ACCEPTANCE[name]}  criterion {name}")
