"""Edge-weighted multigraphs with exact lengths, DFS spanning forests,
closed walks and exhaustions of infinite graphs by finite truncations."""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, NamedTuple, Sequence

__all__ = [
    "GraphError",
    "WalkError",
    "ExhaustionError",
    "Edge",
    "WeightedMultigraph",
    "SpanningForest",
    "ClosedWalk",
    "Exhaustion",
    "to_fraction",
    "build_graph",
    "spanning_forest",
    "walk_length",
    "exhaustion_step",
    "shortest_path_metric",
    "normalize_by_fundamental_multiplicity",
]


class GraphError(ValueError):
    """Invalid graph data (bad length, dangling endpoint, ...)."""


class WalkError(ValueError):
    """A walk does not fit the graph it is evaluated on."""


class ExhaustionError(ValueError):
    pass


def to_fraction(value) -> Fraction:
    """Parse an exact length. Floats are rejected, everything else goes
    through :class:`fractions.Fraction` (``"1/2"``, ``3``, ``Fraction``)."""
    if isinstance(value, bool) or isinstance(value, float):
        raise GraphError(f"length {value!r} is not exact; use a rational string like '1/2'")
    try:
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise GraphError(f"cannot parse length {value!r}") from exc


class Edge(NamedTuple):
    tail: int
    head: int
    length: Fraction

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True)
class WeightedMultigraph:
    """Vertices ``0..n-1`` and an indexed edge list; parallel edges and
    self-loops are allowed.  Build through :func:`build_graph`."""

    n: int
    edges: tuple[Edge, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        for k, e in enumerate(self.edges):
            if e.length <= 0:
                raise GraphError(f"edge {k} has non-positive length {e.length}")
            for end in (e.tail, e.head):
                if not 0 <= end < self.n:
                    raise GraphError(f"edge {k} has dangling endpoint {end} (vertices 0..{self.n - 1})")

    @property
    def m(self) -> int:
        return len(self.edges)

    def length(self, k: int) -> Fraction:
        return self.edges[k].length

    @property
    def total_length(self) -> Fraction:
        return sum((e.length for e in self.edges), Fraction(0))

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices incident to each vertex, ascending; a loop is listed once."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for k, e in enumerate(self.edges):
            inc[e.tail].append(k)
            if not e.is_loop:
                inc[e.head].append(k)
        return tuple(tuple(row) for row in inc)

    def other_end(self, k: int, v: int) -> int:
        e = self.edges[k]
        if v == e.tail:
            return e.head
        if v == e.head:
            return e.tail
        raise WalkError(f"edge {k} is not incident to vertex {v}")

    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        comps = []
        for root in range(self.n):
            if seen[root]:
                continue
            seen[root] = True
            comp, stack = [], [root]
            while stack:
                v = stack.pop()
                comp.append(v)
                for k in self.incidence[v]:
                    w = self.other_end(k, v)
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    @property
    def cycle_rank(self) -> int:
        """Dimension of the cycle space, ``m - n + #components``."""
        return self.m - self.n + len(self.components())


def build_graph(vertex_count: int, edge_list: Iterable[Sequence]) -> WeightedMultigraph:
    """Validate and freeze ``(tail, head, length)`` triples; edge order is kept."""
    edges = []
    for k, item in enumerate(edge_list):
        try:
            tail, head, length = item
        except (TypeError, ValueError) as exc:
            raise GraphError(f"edge {k}: expected (tail, head, length), got {item!r}") from exc
        if not isinstance(tail, int) or not isinstance(head, int):
            raise GraphError(f"edge {k}: endpoints must be integers")
        edges.append(Edge(tail, head, to_fraction(length)))
    return WeightedMultigraph(int(vertex_count), tuple(edges))


@dataclass(frozen=True)
class SpanningForest:
    """Depth-first spanning forest.

    ``parent[v]`` is ``(parent vertex, tree edge)`` or ``None`` for roots.
    ``order`` lists vertices in discovery order, so parents precede children.
    ``chords`` (ascending) fixes the coordinate order of homology classes.
    """

    graph: WeightedMultigraph = field(repr=False)
    parent: tuple[tuple[int, int] | None, ...]
    depth: tuple[int, ...]
    order: tuple[int, ...]
    roots: tuple[int, ...]
    tree_edges: frozenset[int]
    chords: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        chords = tuple(k for k in range(self.graph.m) if k not in self.tree_edges)
        object.__setattr__(self, "chords", chords)

    @cached_property
    def chord_position(self) -> dict[int, int]:
        return {c: i for i, c in enumerate(self.chords)}

    def tree_path(self, u: int, v: int) -> list[tuple[int, int]]:
        """Oriented tree path from ``u`` to ``v`` as ``(edge, direction)`` steps,
        direction ``+1`` when the edge is crossed tail to head."""
        up: list[tuple[int, int]] = []
        down: list[tuple[int, int]] = []
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a, up = self._climb(a, up)
        while self.depth[b] > self.depth[a]:
            b, down = self._climb(b, down)
        while a != b:
            a, up = self._climb(a, up)
            b, down = self._climb(b, down)
            if self.parent[a] is None and a != b:
                raise GraphError(f"vertices {u} and {v} lie in different components")
        # ``down`` was recorded walking from v upwards; reverse it
        return up + [(e, -d) for e, d in reversed(down)]

    def _climb(self, x: int, steps: list[tuple[int, int]]):
        p = self.parent[x]
        if p is None:
            raise GraphError(f"vertex {x} has no parent")
        pv, e = p
        direction = 1 if self.graph.edges[e].tail == x else -1
        steps.append((e, direction))
        return pv, steps


def spanning_forest(g: WeightedMultigraph) -> SpanningForest:
    """DFS forest: each component rooted at its lowest vertex, incident
    edges explored in ascending index order."""
    parent: list[tuple[int, int] | None] = [None] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    order: list[int] = []
    roots: list[int] = []
    tree: set[int] = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        roots.append(root)
        order.append(root)
        stack = [(root, iter(g.incidence[root]))]
        while stack:
            v, it = stack[-1]
            for k in it:
                w = g.other_end(k, v)
                if not seen[w]:
                    seen[w] = True
                    parent[w] = (v, k)
                    depth[w] = depth[v] + 1
                    tree.add(k)
                    order.append(w)
                    stack.append((w, iter(g.incidence[w])))
                    break
            else:
                stack.pop()
    return SpanningForest(g, tuple(parent), tuple(depth), tuple(order), tuple(roots), frozenset(tree))


@dataclass(frozen=True)
class ClosedWalk:
    """A walk given by its start vertex and ``(edge, direction)`` steps.

    ``direction`` is ``+1`` for tail-to-head traversal and ``-1`` otherwise.
    Whether it actually closes is checked against a graph, see :meth:`vertices`.
    """

    start: int
    steps: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple((int(e), int(d)) for e, d in self.steps))

    def __add__(self, other: "ClosedWalk") -> "ClosedWalk":
        if other.start != self.start:
            raise WalkError("can only concatenate closed walks at a common base vertex")
        return ClosedWalk(self.start, self.steps + other.steps)

    def reversed(self) -> "ClosedWalk":
        return ClosedWalk(self.start, tuple((e, -d) for e, d in reversed(self.steps)))

    def vertices(self, g: WeightedMultigraph) -> list[int]:
        """Vertex sequence; raises :class:`WalkError` on a bad incidence."""
        if not 0 <= self.start < g.n:
            raise WalkError(f"start vertex {self.start} not in graph")
        seq = [self.start]
        v = self.start
        for i, (k, d) in enumerate(self.steps):
            if not 0 <= k < g.m:
                raise WalkError(f"step {i}: no edge {k}")
            if d not in (1, -1):
                raise WalkError(f"step {i}: direction must be +1 or -1")
            e = g.edges[k]
            src, dst = (e.tail, e.head) if d == 1 else (e.head, e.tail)
            if src != v:
                raise WalkError(f"step {i}: edge {k} does not leave vertex {v} in direction {d:+d}")
            v = dst
            seq.append(v)
        return seq

    def is_closed(self, g: WeightedMultigraph) -> bool:
        return self.vertices(g)[-1] == self.start

    def validate(self, g: WeightedMultigraph) -> None:
        if not self.is_closed(g):
            raise WalkError("walk is not closed")


def walk_length(g: WeightedMultigraph, w: ClosedWalk) -> Fraction:
    """Sum of traversed edge lengths, with multiplicity."""
    w.validate(g)
    return sum((g.edges[k].length for k, _ in w.steps), Fraction(0))


@dataclass(frozen=True)
class Exhaustion:
    """Nested finite truncations ``G_1, G_2, ...`` of an infinite graph.

    ``edge_map(n)``/``vertex_map(n)`` send ``G_n`` into ``G_{n+1}``; when left
    as ``None`` the truncations are prefix-nested (``G_n``'s vertices and
    edges keep their indices in ``G_{n+1}``).  ``limit`` caps finite families.
    """

    build: Callable[[int], WeightedMultigraph]
    edge_map: Callable[[int], tuple[int, ...]] | None = None
    vertex_map: Callable[[int], tuple[int, ...]] | None = None
    limit: int | None = None
    name: str = ""

    def _check(self, n: int) -> None:
        if n < 1:
            raise ExhaustionError("truncation index must be >= 1")
        if self.limit is not None and n > self.limit:
            raise ExhaustionError(f"exhaustion {self.name!r} has only {self.limit} truncations")

    def graph(self, n: int) -> WeightedMultigraph:
        self._check(n)
        return self.build(n)

    def step_edges(self, n: int) -> tuple[int, ...]:
        self._check(n + 1)
        if self.edge_map is not None:
            return tuple(self.edge_map(n))
        return tuple(range(self.graph(n).m))

    def step_vertices(self, n: int) -> tuple[int, ...]:
        self._check(n + 1)
        if self.vertex_map is not None:
            return tuple(self.vertex_map(n))
        return tuple(range(self.graph(n).n))

    def lift_edge(self, k: int, n: int, target: int) -> int:
        """Image of edge ``k`` of ``G_n`` in ``G_target`` (``target >= n``)."""
        if target < n:
            raise ExhaustionError("can only lift to a later truncation")
        for j in range(n, target):
            k = self.step_edges(j)[k]
        return k

    def lift_vertex(self, v: int, n: int, target: int) -> int:
        if target < n:
            raise ExhaustionError("can only lift to a later truncation")
        for j in range(n, target):
            v = self.step_vertices(j)[v]
        return v

    def check_step(self, n: int) -> None:
        """Raise unless the map ``G_n -> G_{n+1}`` is injective and keeps
        endpoints and lengths."""
        small, big = self.graph(n), self.graph(n + 1)
        emap, vmap = self.step_edges(n), self.step_vertices(n)
        if len(set(emap)) != len(emap) or len(set(vmap)) != len(vmap):
            raise ExhaustionError(f"step {n}: map is not injective")
        for k, e in enumerate(small.edges):
            f = big.edges[emap[k]]
            if f.length != e.length or (vmap[e.tail], vmap[e.head]) != (f.tail, f.head):
                raise ExhaustionError(f"step {n}: edge {k} not preserved")


def exhaustion_step(x: Exhaustion, n: int) -> WeightedMultigraph:
    return x.graph(n)


def shortest_path_metric(g: WeightedMultigraph) -> Callable[[int, int], Fraction | None]:
    """Exact graph distance between vertices (Dijkstra on rationals).

    Returns ``None`` for vertices in different components.  Rows are
    computed lazily and memoised.
    """
    rows: dict[int, list[Fraction | None]] = {}

    def row(s: int) -> list[Fraction | None]:
        dist: list[Fraction | None] = [None] * g.n
        dist[s] = Fraction(0)
        heap = [(Fraction(0), s)]
        done = [False] * g.n
        while heap:
            d, v = heapq.heappop(heap)
            if done[v]:
                continue
            done[v] = True
            for k in g.incidence[v]:
                w = g.other_end(k, v)
                nd = d + g.edges[k].length
                if dist[w] is None or nd < dist[w]:
                    dist[w] = nd
                    heapq.heappush(heap, (nd, w))
        return dist

    def metric(u: int, v: int) -> Fraction | None:
        if u not in rows:
            rows[u] = row(u)
        return rows[u][v]

    return metric


def normalize_by_fundamental_multiplicity(g: WeightedMultigraph, forest: SpanningForest | None = None) -> WeightedMultigraph:
    """Divide each edge length by the number of fundamental cycles through it.

    Edges on no fundamental cycle (bridges) keep their length.  This keeps the
    squared lengths of the fundamental cycles summable whenever the original
    lengths are.
    """
    forest = forest or spanning_forest(g)
    count = [0] * g.m
    for c in forest.chords:
        e = g.edges[c]
        count[c] += 1
        for k, _ in forest.tree_path(e.head, e.tail):
            count[k] += 1
    return WeightedMultigraph(
        g.n, tuple(Edge(e.tail, e.head, e.length / max(count[k], 1)) for k, e in enumerate(g.edges))
    )
