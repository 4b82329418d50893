"""FAS spectra of large but sparse digraphs via contraction plus a weighted DP.

Each surviving "super-arc" carries two packed polynomials over the original
arcs it absorbed: ``keep`` (deletion choices that still connect its tail to
its head) and ``cut`` (choices that do not).  Reductions:

* a vertex without in-arcs or without out-arcs lies on no cycle, so its arcs
  are free and contribute their total ``keep + cut``;
* a vertex with one in-arc and one out-arc is bypassed (series);
  when both ends coincide the two arcs form a lone cycle which must be cut;
* parallel super-arcs merge: the pair is cut only when both are cut.

The reduced digraph is then counted by inclusion-exclusion over source sets,
this time with every arc entering ``S`` (from inside or outside) tracked, so
that each term factors over the vertices of ``T``::

    Z(S) = sum_T (-1)^(|T|+1) prod_{v in T} f_S(v) Z(S - T)
    f_S(v) = prod_{u in S, u->v} cut(u,v) * prod_{u not in S, u->v} total(u,v)

With ``max_degree`` set, every product is truncated mod ``x^(max_degree+1)``,
which keeps gadget counts with hundreds of arcs cheap when only the low
coefficients are wanted.
"""

from __future__ import annotations

from collections import defaultdict

from .counting import DP_CAP, CapExceededError, Spectrum, unpack
from .graphs import Digraph


class _Packed:
    def __init__(self, slot: int, max_degree: int | None):
        self.slot = slot
        self.mask = None if max_degree is None else (1 << (slot * (max_degree + 1))) - 1

    def mul(self, a: int, b: int) -> int:
        p = a * b
        return p if self.mask is None else p & self.mask


def contract(d: Digraph, max_degree: int | None = None):
    """Apply the reductions until none fires.

    Returns ``(vertices, arcs, factor, arith)`` where ``arcs`` maps
    ``(u, v)`` to ``[keep, cut]`` over the surviving ``vertices``.
    """
    arith = _Packed(d.m + d.n + 2, max_degree)
    x = 1 << arith.slot
    if arith.mask is not None:
        x &= arith.mask
    arcs: dict[tuple[int, int], list[int]] = {a: [1, x] for a in d.arcs}
    succ: dict[int, set[int]] = defaultdict(set)
    pred: dict[int, set[int]] = defaultdict(set)
    for u, v in d.arcs:
        succ[u].add(v)
        pred[v].add(u)
    alive = set(range(d.n))
    factor = 1

    def drop(u: int, v: int) -> list[int]:
        succ[u].discard(v)
        pred[v].discard(u)
        return arcs.pop((u, v))

    def add(u: int, v: int, keep: int, cut: int) -> None:
        nonlocal factor
        if u == v:
            factor = arith.mul(factor, cut)
            return
        if (u, v) in arcs:
            k2, c2 = arcs[(u, v)]
            both_cut = arith.mul(cut, c2)
            keep = arith.mul(keep + cut, k2 + c2) - both_cut
            cut = both_cut
        arcs[(u, v)] = [keep, cut]
        succ[u].add(v)
        pred[v].add(u)

    queue = list(range(d.n))
    while queue:
        w = queue.pop()
        if w not in alive:
            continue
        if not pred[w] or not succ[w]:
            touched = set(pred[w]) | set(succ[w])
            for u in list(pred[w]):
                keep, cut = drop(u, w)
                factor = arith.mul(factor, keep + cut)
            for v in list(succ[w]):
                keep, cut = drop(w, v)
                factor = arith.mul(factor, keep + cut)
            alive.discard(w)
            queue.extend(touched)
        elif len(pred[w]) == 1 and len(succ[w]) == 1:
            (u,), (v,) = pred[w], succ[w]
            k1, c1 = drop(u, w)
            k2, c2 = drop(w, v)
            keep = arith.mul(k1, k2)
            cut = arith.mul(k1 + c1, k2 + c2) - keep
            alive.discard(w)
            add(u, v, keep, cut)
            queue.extend((u, v))
    vertices = sorted(alive)
    return vertices, arcs, factor, arith


def fas_spectrum_contracted(d: Digraph, max_degree: int | None = None, cap: int | None = None) -> Spectrum:
    """Exact FAS spectrum (``coeffs[0..max_degree]`` when truncated)."""
    cap = DP_CAP if cap is None else cap
    vertices, arcs, factor, arith = contract(d, max_degree)
    r = len(vertices)
    if r > cap:
        raise CapExceededError(f"{r} vertices remain after contraction, above the cap of {cap}")
    index = {v: i for i, v in enumerate(vertices)}
    into: list[list[tuple[int, int, int]]] = [[] for _ in range(r)]
    for (u, v), (keep, cut) in arcs.items():
        into[index[v]].append((index[u], cut, keep + cut))

    z = [0] * (1 << r)
    z[0] = 1
    for s in range(1, 1 << r):
        prods, odd = [1], [False]
        x = s
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            f = 1
            for u, cut, total in into[v]:
                f = arith.mul(f, cut if s >> u & 1 else total)
            prods += [arith.mul(p, f) for p in prods]
            odd += [not o for o in odd]
        pos = neg = 0
        t_index = 0
        # subsets were generated in the same order as the doubling above
        for t in _subsets_in_doubling_order(s):
            t_index += 1
            term = prods[t_index] * z[s ^ t]
            if odd[t_index]:
                pos += term
            else:
                neg += term
        z[s] = pos - neg
        if arith.mask is not None:
            z[s] &= arith.mask
    result = arith.mul(factor, z[-1])
    length = d.m + 1 if max_degree is None else min(max_degree, d.m) + 1
    if arith.mask is not None:
        result &= (1 << (arith.slot * length)) - 1
    return Spectrum(unpack(result, arith.slot, length))


def _subsets_in_doubling_order(s: int) -> list[int]:
    subs = [0]
    x = s
    while x:
        low = x & -x
        x ^= low
        subs += [t | low for t in subs]
    return subs[1:]


def card_fas(d: Digraph, k: int, cap: int | None = None) -> int:
    """Number of feedback arc sets of exactly ``k`` arcs."""
    if k < 0 or k > d.m:
        return 0
    return fas_spectrum_contracted(d, max_degree=k, cap=cap)[k]


def fas_total(d: Digraph, cap: int | None = None) -> int:
    return fas_spectrum_contracted(d, cap=cap).total
