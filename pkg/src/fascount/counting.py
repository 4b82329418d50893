"""Exact cardinality spectra for feedback arc sets, vertex covers and feedback vertex sets.

Two independent routes compute FAS spectra:

* ``fas_spectrum_bruteforce`` tests every arc subset (vectorized with numpy,
  one boolean per subset).
* ``fas_spectrum_dp`` runs an inclusion-exclusion over source sets on vertex
  subsets, ``O(3^n)`` big-integer operations.

Polynomials in the DP are packed into a single Python int (Kronecker
substitution): coefficient ``k`` lives in bits ``[k*B, (k+1)*B)``.  Every
packed value is a nonnegative combination of counts, so sums, products and
the final ``positive - negative`` difference never borrow across slots as long
as ``B`` exceeds the bit length of the largest intermediate coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .graphs import Digraph, UGraph

BRUTE_FORCE_CAP = 24
BRUTE_FORCE_HARD_CAP = 30
DP_CAP = 16
VERTEX_CAP = 24

_CHUNK = 1 << 18


class CapExceededError(ValueError):
    """Instance too large for the requested exhaustive algorithm."""


@dataclass(frozen=True)
class Spectrum:
    """``coeffs[k]`` = number of solutions of cardinality exactly ``k``."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def total(self) -> int:
        return sum(self.coeffs)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def evaluate(self, x: int) -> int:
        return sum(c * x**k for k, c in enumerate(self.coeffs))

    def to_strings(self) -> list[str]:
        return [str(c) for c in self.coeffs]


class MinimumCount(NamedTuple):
    m: int
    count: int


def _check_cap(size: int, cap: int, what: str) -> None:
    if size > cap:
        raise CapExceededError(f"{what} is {size}, above the cap of {cap}")


def _brute_cap(cap: int | None) -> int:
    cap = BRUTE_FORCE_CAP if cap is None else cap
    if cap > BRUTE_FORCE_HARD_CAP:
        raise ValueError(f"brute-force cap may be raised to {BRUTE_FORCE_HARD_CAP} at most, got {cap}")
    return cap


def _peel(alive: np.ndarray, out_masks: Sequence, n: int) -> np.ndarray:
    """Repeatedly delete sinks of the alive subgraph; an empty remainder means acyclic.

    ``out_masks[v]`` is either a Python int (fixed arcs) or an array aligned
    with ``alive`` (arcs vary per subset).
    """
    one = np.uint64(1)
    while True:
        changed = False
        for v in range(n):
            bit = one << np.uint64(v)
            sink = ((alive & bit) != 0) & ((alive & np.asarray(out_masks[v], dtype=np.uint64)) == 0)
            if sink.any():
                alive = np.where(sink, alive & ~bit, alive)
                changed = True
        if not changed:
            return alive == 0


def iter_acyclic_arc_subsets(d: Digraph, chunk: int = _CHUNK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield ``(start, acyclic)`` where ``acyclic[i]`` tells whether keeping the arcs of
    mask ``start + i`` (and deleting the rest) leaves an acyclic digraph."""
    total = 1 << d.m
    full_vertices = np.uint64((1 << d.n) - 1)
    for start in range(0, total, chunk):
        kept = np.arange(start, min(total, start + chunk), dtype=np.uint64)
        outs = [np.zeros(len(kept), dtype=np.uint64) for _ in range(d.n)]
        for i, (u, v) in enumerate(d.arcs):
            outs[u] |= ((kept >> np.uint64(i)) & np.uint64(1)) << np.uint64(v)
        alive = np.full(len(kept), full_vertices, dtype=np.uint64)
        yield start, _peel(alive, outs, d.n)


def fas_table(d: Digraph, cap: int | None = None) -> np.ndarray:
    """Boolean array over deleted-arc masks: ``table[F]`` iff the arcs of ``F`` form an FAS.

    Bit ``i`` of a mask refers to ``d.arcs[i]``.
    """
    _check_cap(d.m, _brute_cap(cap), "arc count")
    acyclic_kept = np.concatenate([t for _, t in iter_acyclic_arc_subsets(d)])
    # deleted mask F keeps full ^ F == full - F, i.e. the reversed index
    return acyclic_kept[::-1].copy()


def _popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.int64)


def fas_spectrum_bruteforce(d: Digraph, cap: int | None = None) -> Spectrum:
    _check_cap(d.m, _brute_cap(cap), "arc count")
    counts = np.zeros(d.m + 1, dtype=np.int64)
    for start, acyclic in iter_acyclic_arc_subsets(d):
        kept = np.arange(start, start + len(acyclic), dtype=np.uint64)
        counts += np.bincount(_popcount(kept[acyclic]), minlength=d.m + 1)
    # kept k arcs <-> deleted m - k arcs
    return Spectrum([int(c) for c in counts[::-1]])


def fas_spectrum_dp(d: Digraph, cap: int | None = None) -> Spectrum:
    """FAS spectrum by inclusion-exclusion over the source set of the kept subgraph.

    With ``A(S)`` the generating polynomial (``x`` marks a deleted arc) of the
    acyclic arc choices inside the subgraph induced by ``S``::

        A(S) = sum_{T nonempty subset of S} (-1)^(|T|+1) x^e(S->T) (1+x)^e(T->S-T) A(S-T)

    Arcs ending in ``T`` must be deleted for ``T`` to consist of sources; arcs
    leaving ``T`` are unconstrained.
    """
    cap = DP_CAP if cap is None else cap
    _check_cap(d.n, cap, "vertex count")
    n, m = d.n, d.m
    slot = m + n + 2
    ins = d.in_masks

    inner = [0] * (1 << n)  # arcs with both ends in X
    for x in range(1, 1 << n):
        v = (x & -x).bit_length() - 1
        rest = x & (x - 1)
        inner[x] = inner[rest] + (ins[v] & rest).bit_count() + (d.out_masks[v] & rest).bit_count()

    one_plus_x = [1]
    step = 1 + (1 << slot)
    for _ in range(m):
        one_plus_x.append(one_plus_x[-1] * step)

    acyc = [0] * (1 << n)
    acyc[0] = 1
    for s in range(1, 1 << n):
        subs, into, odd = [0], [0], [False]
        x = s
        while x:
            low = x & -x
            v = low.bit_length() - 1
            x ^= low
            dv = (ins[v] & s).bit_count()
            subs += [t | low for t in subs]
            into += [a + dv for a in into]
            odd += [not o for o in odd]
        inner_s = inner[s]
        pos = neg = 0
        for t, a, o in zip(subs[1:], into[1:], odd[1:]):
            r = s ^ t
            term = (one_plus_x[inner_s - inner[r] - a] * acyc[r]) << (a * slot)
            if o:
                pos += term
            else:
                neg += term
        acyc[s] = pos - neg
    return Spectrum(unpack(acyc[-1], slot, m + 1))


def unpack(packed: int, slot: int, length: int) -> list[int]:
    mask = (1 << slot) - 1
    out = []
    for _ in range(length):
        out.append(packed & mask)
        packed >>= slot
    if packed:
        raise ArithmeticError("packed polynomial has terms beyond the expected degree")
    return out


def vc_spectrum(g: UGraph, cap: int | None = None) -> Spectrum:
    cap = VERTEX_CAP if cap is None else cap
    _check_cap(g.n, cap, "vertex count")
    counts = np.zeros(g.n + 1, dtype=np.int64)
    total = 1 << g.n
    for start in range(0, total, _CHUNK):
        chosen = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        ok = np.ones(len(chosen), dtype=bool)
        for u, v in g.edges:
            ok &= (chosen & np.uint64((1 << u) | (1 << v))) != 0
        counts += np.bincount(_popcount(chosen[ok]), minlength=g.n + 1)
    return Spectrum([int(c) for c in counts])


def fvs_table(d: Digraph, cap: int | None = None) -> np.ndarray:
    """Boolean array over deleted-vertex masks: ``table[S]`` iff ``S`` is an FVS."""
    cap = VERTEX_CAP if cap is None else cap
    _check_cap(d.n, cap, "vertex count")
    total = 1 << d.n
    parts = []
    for start in range(0, total, _CHUNK):
        kept = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        parts.append(_peel(kept.copy(), d.out_masks, d.n))
    return np.concatenate(parts)[::-1].copy()


def fvs_spectrum(d: Digraph, cap: int | None = None) -> Spectrum:
    table = fvs_table(d, cap)
    deleted = np.arange(len(table), dtype=np.uint64)
    return Spectrum([int(c) for c in np.bincount(_popcount(deleted[table]), minlength=d.n + 1)])


def minimal_fas_count(d: Digraph, cap: int | None = None) -> int:
    """Number of inclusion-minimal feedback arc sets.

    Supersets of an FAS are FAS, so F is minimal as soon as no ``F - {a}``
    is an FAS: any proper subset lies inside some ``F - {a}``.
    """
    table = fas_table(d, cap)
    masks = np.arange(len(table), dtype=np.int64)
    minimal = table.copy()
    for i in range(d.m):
        bit = 1 << i
        has = (masks & bit) != 0
        minimal &= ~has | ~table[masks ^ bit]
    return int(minimal.sum())


def minimum_of_spectrum(s: Spectrum | Sequence[int]) -> MinimumCount:
    for k, c in enumerate(s):
        if c:
            return MinimumCount(k, int(c))
    raise ValueError("spectrum has no nonzero coefficient")


def binomial_row(m: int) -> Spectrum:
    return Spectrum([comb(m, k) for k in range(m + 1)])
