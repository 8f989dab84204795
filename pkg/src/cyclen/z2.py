"""GF(2) cycle space of a multigraph.

Edge sets are int bitmasks (bit ``k`` = edge ``k``), so sums are XORs and
rank computations are plain Gaussian elimination over machine words.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .graph import SpanningForest, WeightedMultigraph

__all__ = [
    "CycleSpaceError",
    "EdgeSetZ2",
    "z2_sum",
    "odd_vertices",
    "in_cycle_space",
    "fundamental_cycle",
    "z2_coordinates",
    "z2_reconstruct",
    "is_circuit",
    "decompose_edge_disjoint_circuits",
    "gf2_rank",
    "TwoBasisVerdict",
    "verify_two_basis",
]


class CycleSpaceError(ValueError):
    """Raised when an edge set is required to be in the cycle space and is not."""

    def __init__(self, message: str, vertex: int | None = None):
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True)
class EdgeSetZ2:
    host: WeightedMultigraph = field(repr=False)
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.host.m:
            raise ValueError("edge set has bits outside the host's edges")

    @classmethod
    def of(cls, host: WeightedMultigraph, edges: Iterable[int]) -> "EdgeSetZ2":
        bits = 0
        for k in edges:
            if not 0 <= k < host.m:
                raise ValueError(f"no edge {k} in host graph")
            bits ^= 1 << k
        return cls(host, bits)

    @property
    def edges(self) -> list[int]:
        """Sorted edge indices (the JSON form)."""
        out, b, k = [], self.bits, 0
        while b:
            if b & 1:
                out.append(k)
            b >>= 1
            k += 1
        return out

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, k: int) -> bool:
        return bool(self.bits >> k & 1)

    def __bool__(self) -> bool:
        return self.bits != 0

    def __xor__(self, other: "EdgeSetZ2") -> "EdgeSetZ2":
        return z2_sum(self, other)

    __add__ = __xor__

    @property
    def length(self) -> Fraction:
        return sum((self.host.edges[k].length for k in self.edges), Fraction(0))


def _same_host(a: EdgeSetZ2, b: EdgeSetZ2) -> None:
    if a.host is not b.host and a.host != b.host:
        raise ValueError("edge sets live on different graphs")


def z2_sum(a: EdgeSetZ2, b: EdgeSetZ2) -> EdgeSetZ2:
    _same_host(a, b)
    return EdgeSetZ2(a.host, a.bits ^ b.bits)


def odd_vertices(z: EdgeSetZ2) -> list[int]:
    parity = [0] * z.host.n
    for k in z.edges:
        e = z.host.edges[k]
        if not e.is_loop:
            parity[e.tail] ^= 1
            parity[e.head] ^= 1
    return [v for v, p in enumerate(parity) if p]


def in_cycle_space(z: EdgeSetZ2) -> bool:
    """Every vertex has even degree in ``z`` (a loop adds 2)."""
    return not odd_vertices(z)


def _require_cycle_space(z: EdgeSetZ2) -> None:
    odd = odd_vertices(z)
    if odd:
        raise CycleSpaceError(f"edge set is not in the cycle space: vertex {odd[0]} has odd degree", odd[0])


def fundamental_cycle(f: SpanningForest, chord: int) -> EdgeSetZ2:
    if chord not in f.chord_position:
        raise ValueError(f"edge {chord} is a tree edge, not a chord")
    e = f.graph.edges[chord]
    path = f.tree_path(e.head, e.tail)
    return EdgeSetZ2.of(f.graph, [chord] + [k for k, _ in path])


def z2_coordinates(z: EdgeSetZ2, f: SpanningForest) -> tuple[int, ...]:
    """Chord-indexed bit vector of ``z``; equals membership of each chord."""
    if z.host is not f.graph and z.host != f.graph:
        raise ValueError("edge set and forest live on different graphs")
    _require_cycle_space(z)
    return tuple(1 if c in z else 0 for c in f.chords)


def z2_reconstruct(coords: Sequence[int], f: SpanningForest) -> EdgeSetZ2:
    if len(coords) != len(f.chords):
        raise ValueError(f"expected {len(f.chords)} coordinates, got {len(coords)}")
    z = EdgeSetZ2(f.graph)
    for c, bit in zip(f.chords, coords):
        if bit % 2:
            z = z ^ fundamental_cycle(f, c)
    return z


def is_circuit(z: EdgeSetZ2) -> bool:
    """Edge set of a circle: a single loop, or connected and 2-regular."""
    edges = z.edges
    if not edges:
        return False
    g = z.host
    if len(edges) == 1:
        return g.edges[edges[0]].is_loop
    deg: dict[int, int] = {}
    adj: dict[int, list[int]] = {}
    for k in edges:
        e = g.edges[k]
        if e.is_loop:
            return False
        for a, b in ((e.tail, e.head), (e.head, e.tail)):
            deg[a] = deg.get(a, 0) + 1
            adj.setdefault(a, []).append(b)
    if any(d != 2 for d in deg.values()):
        return False
    start = next(iter(adj))
    seen, stack = {start}, [start]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(deg)


def decompose_edge_disjoint_circuits(z: EdgeSetZ2) -> list[EdgeSetZ2]:
    """Split an even edge set into pairwise disjoint circuits.

    Walks from the tail of the lowest remaining edge, always leaving by the
    lowest-index incident edge not yet on the walk, and cuts off a circuit
    as soon as a vertex repeats.
    """
    _require_cycle_space(z)
    g = z.host
    remaining = set(z.edges)
    circuits = []
    while remaining:
        first = min(remaining)
        v0 = g.edges[first].tail
        path_vertices = [v0]
        path_edges: list[int] = []
        position = {v0: 0}
        on_walk: set[int] = set()
        k = first
        v = v0
        while True:
            w = g.other_end(k, v)
            path_edges.append(k)
            on_walk.add(k)
            if w in position:
                cut = position[w]
                circuit = path_edges[cut:]
                circuits.append(EdgeSetZ2.of(g, circuit))
                remaining.difference_update(circuit)
                break
            position[w] = len(path_vertices)
            path_vertices.append(w)
            v = w
            k = min(e for e in g.incidence[v] if e in remaining and e not in on_walk)
    return circuits


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of int bitmask rows (XOR basis by leading bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            if top not in basis:
                basis[top] = r
                break
            r ^= basis[top]
    return len(basis)


class TwoBasisVerdict(NamedTuple):
    ok: bool
    diagnostic: str

    def __bool__(self) -> bool:
        return self.ok


def verify_two_basis(basis: Sequence[EdgeSetZ2], host: WeightedMultigraph | None = None) -> TwoBasisVerdict:
    """Check that ``basis`` generates the cycle space and no edge lies in
    more than two members.  The diagnostic names the first failed condition,
    checked in the order: membership, spanning, edge multiplicity.
    """
    if host is None:
        if not basis:
            raise ValueError("need a host graph to check an empty family")
        host = basis[0].host
    for i, z in enumerate(basis):
        if z.host is not host and z.host != host:
            raise ValueError(f"member {i} lives on a different graph")
    for i, z in enumerate(basis):
        odd = odd_vertices(z)
        if odd:
            return TwoBasisVerdict(False, f"member {i} not in cycle space (vertex {odd[0]} has odd degree)")
    need = host.cycle_rank
    rank = gf2_rank(z.bits for z in basis)
    if rank < need:
        return TwoBasisVerdict(False, f"does not span (rank {rank} < {need})")
    for k in range(host.m):
        uses = sum(1 for z in basis if k in z)
        if uses > 2:
            return TwoBasisVerdict(False, f"edge {k} in {uses} members")
    return TwoBasisVerdict(True, f"2-basis (rank {rank}, every edge in at most 2 members)")
