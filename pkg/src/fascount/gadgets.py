"""The three instance transformations: Karp gadget, arc subdivision, line digraph.

Vertex numbering is fixed so that gadgets serialize byte-identically:

* ``karp_gadget``: ``v0 = v``, ``v1 = n + v``; for the ``e``-th sorted edge,
  side ``i`` and replica ``j`` (1-based), ``2n + 2*ell*e + ell*i + (j - 1)``.
* ``subdivision_gadget``: original vertices keep their index; interior vertex
  ``i`` (1-based) of the path replacing the ``a``-th sorted arc is
  ``n + (ell - 1)*a + (i - 1)``.
* ``line_digraph``: vertex ``i`` is the ``i``-th sorted arc.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graphs import Arc, Digraph, Graph, UGraph, serialize


@dataclass(frozen=True)
class GadgetMap:
    kind: str
    source: Graph
    ell: int | None = None
    # karp: v -> (v0, v1) and edge -> (side-0 replicas, side-1 replicas)
    vertex_arcs: dict[int, Arc] = field(default_factory=dict)
    edge_vertices: dict[Arc, tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=dict)
    # subdiv: source arc -> arcs of its path, in order
    arc_paths: dict[Arc, tuple[Arc, ...]] = field(default_factory=dict)
    # line: source arc -> vertex
    arc_vertex: dict[Arc, int] = field(default_factory=dict)

    def to_text(self) -> str:
        """Sidecar listing, one ``key value...`` record per line, source order."""
        head = serialize(self.source).splitlines()[0]
        lines = [f"kind {self.kind}", f"source {head}"]
        if self.ell is not None:
            lines.append(f"ell {self.ell}")
        for v, (a, b) in self.vertex_arcs.items():
            lines.append(f"vertex {v} arc {a} {b}")
        for (u, v), (side0, side1) in self.edge_vertices.items():
            lines.append(
                f"edge {u} {v} side0 {' '.join(map(str, side0))} side1 {' '.join(map(str, side1))}"
            )
        for (u, v), path in self.arc_paths.items():
            walk = [path[0][0]] + [b for _, b in path]
            lines.append(f"arc {u} {v} path {' '.join(map(str, walk))}")
        for (u, v), w in self.arc_vertex.items():
            lines.append(f"arc {u} {v} vertex {w}")
        return "\n".join(lines) + "\n"


def _check_ell(ell: int) -> None:
    if isinstance(ell, bool) or not isinstance(ell, int) or ell < 1:
        raise ValueError(f"ell must be a positive integer, got {ell!r}")


def karp_gadget(g: UGraph, ell: int) -> tuple[Digraph, GadgetMap]:
    """Digraph with a vertex arc ``(v0, v1)`` per vertex and ``ell`` replicas of the
    two 2-arc paths ``u1 -> e0j -> v0`` and ``v1 -> e1j -> u0`` per edge ``u < v``."""
    _check_ell(ell)
    n = g.n
    arcs = [(v, n + v) for v in range(n)]
    edge_vertices = {}
    for e, (u, v) in enumerate(g.edges):
        base = 2 * n + 2 * ell * e
        side0 = tuple(base + j for j in range(ell))
        side1 = tuple(base + ell + j for j in range(ell))
        for w0, w1 in zip(side0, side1):
            arcs += [(n + u, w0), (w0, v), (n + v, w1), (w1, u)]
        edge_vertices[(u, v)] = (side0, side1)
    gadget = Digraph(2 * n + 2 * ell * g.m, arcs)
    gmap = GadgetMap(
        "karp", g, ell,
        vertex_arcs={v: (v, n + v) for v in range(n)},
        edge_vertices=edge_vertices,
    )
    return gadget, gmap


def subdivision_gadget(d: Digraph, ell: int) -> tuple[Digraph, GadgetMap]:
    """Replace every arc by a directed path of ``ell`` arcs through fresh vertices."""
    _check_ell(ell)
    arcs = []
    paths = {}
    for a, (u, v) in enumerate(d.arcs):
        walk = [u] + [d.n + (ell - 1) * a + i for i in range(ell - 1)] + [v]
        path = tuple(zip(walk, walk[1:]))
        arcs += path
        paths[(u, v)] = path
    return Digraph(d.n + (ell - 1) * d.m, arcs), GadgetMap("subdiv", d, ell, arc_paths=paths)


def line_digraph(d: Digraph) -> tuple[Digraph, GadgetMap]:
    index = d.arc_index
    arcs = [(index[(u, v)], index[(v, w)]) for u, v in d.arcs for w in d.successors[v]]
    return Digraph(d.m, arcs), GadgetMap("line", d, arc_vertex=dict(index))


def contract_paths(h: Digraph, gmap: GadgetMap) -> Digraph:
    """Inverse of ``subdivision_gadget``: collapse each path back to one arc."""
    if gmap.kind != "subdiv":
        raise ValueError("contract_paths needs a subdivision map")
    on_paths = {a for path in gmap.arc_paths.values() for a in path}
    if on_paths != set(h.arcs):
        raise ValueError("map does not cover the gadget's arcs")
    return Digraph(gmap.source.n, [(path[0][0], path[-1][1]) for path in gmap.arc_paths.values()])
