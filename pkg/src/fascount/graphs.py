"""Digraphs, undirected graphs, membership predicates and the text format.

Vertices are dense indices ``0..n-1``.  Arcs and edges are kept sorted so two
graphs with the same content compare (and serialize) identically.  For an
undirected edge the smaller endpoint comes first; the vertex order used by the
vertex-cover gadget is plain numeric order.

Text format::

    digraph <n> <m>        (or: graph <n> <m>)
    <u> <v>                (m lines, 0-based)

Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Union

Arc = tuple[int, int]


class GraphError(ValueError):
    """Base class for invalid graphs and unreadable graph files."""


class MalformedGraphError(GraphError):
    pass


class EndpointRangeError(GraphError):
    pass


class LoopError(GraphError):
    pass


class DuplicateArcError(GraphError):
    pass


def _check_pairs(n: int, pairs: Iterable[Arc], what: str, undirected: bool) -> tuple[Arc, ...]:
    if n < 0:
        raise GraphError(f"vertex count must be nonnegative, got {n}")
    seen: set[Arc] = set()
    for u, v in pairs:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointRangeError(f"{what} ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise LoopError(f"loop at vertex {u} is not allowed")
        key = (min(u, v), max(u, v)) if undirected else (u, v)
        if key in seen:
            raise DuplicateArcError(f"duplicate {what} ({u}, {v})")
        seen.add(key)
    return tuple(sorted(seen))


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph; ``arcs`` is normalized to a sorted tuple of pairs."""

    n: int
    arcs: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", _check_pairs(self.n, self.arcs, "arc", undirected=False))

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def arc_index(self) -> dict[Arc, int]:
        return {a: i for i, a in enumerate(self.arcs)}

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return tuple(tuple(s) for s in out)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        """Bitmask of out-neighbours per vertex."""
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[u] |= 1 << v
        return tuple(masks)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.arcs:
            masks[v] |= 1 << u
        return tuple(masks)

    def arcs_of_mask(self, mask: int) -> list[Arc]:
        return [a for i, a in enumerate(self.arcs) if mask >> i & 1]

    def mask_of_arcs(self, arcs: Iterable[Arc]) -> int:
        mask = 0
        for a in arcs:
            a = (int(a[0]), int(a[1]))
            if a not in self.arc_index:
                raise GraphError(f"{a} is not an arc of this digraph")
            mask |= 1 << self.arc_index[a]
        return mask

    def without_arcs(self, arcs: Iterable[Arc]) -> Digraph:
        drop = self.mask_of_arcs(arcs)
        return Digraph(self.n, [a for i, a in enumerate(self.arcs) if not drop >> i & 1])

    def without_vertices(self, vertices: Iterable[int]) -> Digraph:
        """Delete vertices and their incident arcs; surviving vertices are renumbered in order."""
        gone = set(vertices)
        keep = [v for v in range(self.n) if v not in gone]
        new = {v: i for i, v in enumerate(keep)}
        return Digraph(len(keep), [(new[u], new[v]) for u, v in self.arcs if u in new and v in new])


@dataclass(frozen=True)
class UGraph:
    """Loopless undirected graph; edges stored as ``(u, v)`` with ``u < v``, sorted."""

    n: int
    edges: tuple[Arc, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", _check_pairs(self.n, self.edges, "edge", undirected=True))

    @property
    def m(self) -> int:
        return len(self.edges)


Graph = Union[Digraph, UGraph]


def is_acyclic(d: Digraph) -> bool:
    """Kahn elimination: acyclic iff every vertex is eventually removed as a source."""
    indeg = [0] * d.n
    for _, v in d.arcs:
        indeg[v] += 1
    queue = deque(v for v in range(d.n) if indeg[v] == 0)
    removed = 0
    while queue:
        u = queue.popleft()
        removed += 1
        for v in d.successors[u]:
            indeg[v] -= 1
            if indeg[v] == 0:
                queue.append(v)
    return removed == d.n


def is_fas(d: Digraph, f: Iterable[Arc]) -> bool:
    """True iff deleting the arcs ``f`` leaves an acyclic digraph.

    Raises GraphError when ``f`` names a pair that is not an arc of ``d``.
    """
    return is_acyclic(d.without_arcs(f))


def is_fvs(d: Digraph, s: Iterable[int]) -> bool:
    s = set(s)
    for v in s:
        if not 0 <= v < d.n:
            raise GraphError(f"vertex {v} outside [0, {d.n})")
    return is_acyclic(d.without_vertices(s))


def is_vc(g: UGraph, c: Iterable[int]) -> bool:
    c = set(c)
    return all(u in c or v in c for u, v in g.edges)


def serialize(graph: Graph) -> str:
    if isinstance(graph, Digraph):
        head, pairs = "digraph", graph.arcs
    else:
        head, pairs = "graph", graph.edges
    lines = [f"{head} {graph.n} {len(pairs)}"]
    lines.extend(f"{u} {v}" for u, v in pairs)
    return "\n".join(lines) + "\n"


def parse(text: str) -> Graph:
    lines = [
        (no, line.strip())
        for no, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not lines:
        raise MalformedGraphError("empty input: missing header line")
    no, header = lines[0]
    fields = header.split()
    if len(fields) != 3 or fields[0] not in ("digraph", "graph"):
        raise MalformedGraphError(f"line {no}: expected 'digraph <n> <m>' or 'graph <n> <m>', got {header!r}")
    try:
        n, m = int(fields[1]), int(fields[2])
    except ValueError:
        raise MalformedGraphError(f"line {no}: vertex and arc counts must be integers") from None
    if n < 0 or m < 0:
        raise MalformedGraphError(f"line {no}: counts must be nonnegative")
    body = lines[1:]
    if len(body) != m:
        raise MalformedGraphError(f"header announces {m} pairs but {len(body)} follow")
    pairs = []
    for no, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise MalformedGraphError(f"line {no}: expected '<u> <v>', got {line!r}")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise MalformedGraphError(f"line {no}: endpoints must be integers") from None
    if fields[0] == "digraph":
        return Digraph(n, pairs)
    return UGraph(n, pairs)


def read_graph(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Each ordered pair ``u != v`` (lexicographic order) is an arc with probability ``p``.

    Uses ``random.Random(seed)`` (Mersenne Twister), whose ``random()`` stream
    is fixed across platforms and Python versions for integer seeds.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return Digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p])


def random_ugraph(n: int, p: float, seed: int) -> UGraph:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    rng = random.Random(seed)
    return UGraph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


def undirected_cycle(n: int) -> UGraph:
    return UGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path_ugraph(n: int) -> UGraph:
    return UGraph(n, [(i, i + 1) for i in range(n - 1)])
