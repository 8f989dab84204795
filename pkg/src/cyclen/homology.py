"""Integer homology of a graph, carried by circulations.

On a graph there are no 2-cells, so a class in H1(G; Z) *is* its unique
circulation.  Coordinates are the flow values on the chords of a fixed
spanning forest; the tree flows are then forced by conservation.

The length of a class is the least length ``sum |a_i| l(walk_i)`` of a chain
of closed walks representing it.  Any such chain has net flow equal to the
class circulation ``f`` and length at least ``sum |f_e| l(e)``; splitting
``f`` into simple cycles that follow its signs attains the bound, which is
what :func:`min_length_representative` and :func:`flow_decompose` exploit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .graph import ClosedWalk, SpanningForest, WalkError, WeightedMultigraph

__all__ = [
    "ConservationError",
    "Circulation",
    "HomologyClass",
    "CycleWithMultiplicity",
    "walk_to_circulation",
    "class_of",
    "circulation_of",
    "length_of_circulation",
    "length_of_class",
    "min_length_representative",
    "flow_decompose",
    "cycle_circulation",
    "is_subclass",
    "is_subflow",
    "is_primitive",
    "primitive_decompose",
    "check_oplus",
]


class ConservationError(ValueError):
    pass


@dataclass(frozen=True)
class Circulation:
    """Integer flow per edge; sign is relative to the stored edge orientation."""

    host: WeightedMultigraph = field(repr=False)
    flows: tuple[int, ...]

    def __post_init__(self):
        flows = tuple(int(x) for x in self.flows)
        if len(flows) != self.host.m:
            raise ValueError(f"expected {self.host.m} flow values, got {len(flows)}")
        object.__setattr__(self, "flows", flows)

    @classmethod
    def zero(cls, host: WeightedMultigraph) -> "Circulation":
        return cls(host, (0,) * host.m)

    @classmethod
    def from_pairs(cls, host: WeightedMultigraph, pairs: Iterable[tuple[int, int]]) -> "Circulation":
        flows = [0] * host.m
        for k, z in pairs:
            flows[k] += z
        return cls(host, tuple(flows))

    def imbalance(self) -> list[int]:
        """Inflow minus outflow at each vertex."""
        bal = [0] * self.host.n
        for e, x in zip(self.host.edges, self.flows):
            if x and not e.is_loop:
                bal[e.tail] -= x
                bal[e.head] += x
        return bal

    def is_conserved(self) -> bool:
        return not any(self.imbalance())

    def check(self) -> None:
        for v, b in enumerate(self.imbalance()):
            if b:
                raise ConservationError(f"flow not conserved at vertex {v} (net inflow {b})")

    @property
    def support(self) -> list[int]:
        return [k for k, x in enumerate(self.flows) if x]

    def pairs(self) -> list[dict]:
        """JSON form: nonzero ``{"edge": k, "flow": z}`` entries."""
        return [{"edge": k, "flow": x} for k, x in enumerate(self.flows) if x]

    def _same(self, other: "Circulation") -> None:
        if self.host is not other.host and self.host != other.host:
            raise ValueError("circulations live on different graphs")

    def __add__(self, other: "Circulation") -> "Circulation":
        self._same(other)
        return Circulation(self.host, tuple(a + b for a, b in zip(self.flows, other.flows)))

    def __sub__(self, other: "Circulation") -> "Circulation":
        self._same(other)
        return Circulation(self.host, tuple(a - b for a, b in zip(self.flows, other.flows)))

    def __neg__(self) -> "Circulation":
        return Circulation(self.host, tuple(-a for a in self.flows))

    def __mul__(self, k: int) -> "Circulation":
        return Circulation(self.host, tuple(k * a for a in self.flows))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.flows)


@dataclass(frozen=True)
class HomologyClass:
    """Chord coordinates of a class with respect to ``forest``."""

    forest: SpanningForest = field(repr=False)
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(x) for x in self.coords)
        if len(coords) != len(self.forest.chords):
            raise ValueError(f"class needs {len(self.forest.chords)} chord coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zero(cls, forest: SpanningForest) -> "HomologyClass":
        return cls(forest, (0,) * len(forest.chords))

    @classmethod
    def unit(cls, forest: SpanningForest, chord: int) -> "HomologyClass":
        coords = [0] * len(forest.chords)
        coords[forest.chord_position[chord]] = 1
        return cls(forest, tuple(coords))

    def _same(self, other: "HomologyClass") -> None:
        if self.forest is not other.forest and self.forest != other.forest:
            raise ValueError("classes are anchored to different forests")

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        self._same(other)
        return HomologyClass(self.forest, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        self._same(other)
        return HomologyClass(self.forest, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(self.forest, tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> "HomologyClass":
        return HomologyClass(self.forest, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords)


@dataclass(frozen=True)
class CycleWithMultiplicity:
    """Oriented simple cycle (or a single loop) traversed ``multiplicity`` times."""

    host: WeightedMultigraph = field(repr=False)
    start: int
    steps: tuple[tuple[int, int], ...]
    multiplicity: int = 1

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")
        verts = self.walk.vertices(self.host)
        if verts[-1] != verts[0]:
            raise WalkError("cycle does not close")
        if len(set(verts[:-1])) != len(verts) - 1:
            raise WalkError("cycle is not simple")

    @property
    def walk(self) -> ClosedWalk:
        return ClosedWalk(self.start, self.steps)

    @property
    def edges(self) -> list[int]:
        return [k for k, _ in self.steps]

    @property
    def cycle_length(self) -> Fraction:
        return sum((self.host.edges[k].length for k, _ in self.steps), Fraction(0))

    @property
    def length(self) -> Fraction:
        return self.multiplicity * self.cycle_length

    def circulation(self) -> Circulation:
        return Circulation.from_pairs(self.host, ((k, self.multiplicity * d) for k, d in self.steps))


def walk_to_circulation(g: WeightedMultigraph, w: ClosedWalk) -> Circulation:
    """Net signed traversal count per edge."""
    w.validate(g)
    return Circulation.from_pairs(g, w.steps)


def class_of(c: Circulation, f: SpanningForest) -> HomologyClass:
    if c.host is not f.graph and c.host != f.graph:
        raise ValueError("circulation and forest live on different graphs")
    c.check()
    return HomologyClass(f, tuple(c.flows[k] for k in f.chords))


def circulation_of(h: HomologyClass) -> Circulation:
    """The unique circulation with the given chord values."""
    f = h.forest
    g = f.graph
    flows = [0] * g.m
    excess = [0] * g.n  # inflow - outflow seen so far
    for k, x in zip(f.chords, h.coords):
        flows[k] = x
        e = g.edges[k]
        if x and not e.is_loop:
            excess[e.tail] -= x
            excess[e.head] += x
    # children before parents, so each parent edge settles its child
    for v in reversed(f.order):
        p = f.parent[v]
        if p is None:
            continue
        pv, k = p
        if g.edges[k].head == v:
            x = -excess[v]
            excess[pv] -= x
        else:
            x = excess[v]
            excess[pv] += x
        flows[k] = x
        excess[v] = 0
    return Circulation(g, tuple(flows))


def length_of_circulation(c: Circulation) -> Fraction:
    return sum((abs(x) * e.length for e, x in zip(c.host.edges, c.flows) if x), Fraction(0))


def length_of_class(h: HomologyClass) -> Fraction:
    return length_of_circulation(circulation_of(h))


def min_length_representative(h: HomologyClass) -> tuple[Circulation, Fraction]:
    c = circulation_of(h)
    return c, length_of_circulation(c)


def flow_decompose(c: Circulation) -> list[CycleWithMultiplicity]:
    """Split a circulation into simple cycles that follow its signs.

    Starts at the lowest-index edge still carrying flow and keeps leaving by
    the lowest-index edge with residual flow out of the current vertex; when
    a vertex repeats, the closed part is cut off with the smallest residual
    on it as multiplicity.
    """
    c.check()
    g = c.host
    residual = list(c.flows)
    cycles: list[CycleWithMultiplicity] = []

    def leaves(k: int, v: int) -> int:
        """Flow direction of edge ``k`` if its residual leaves ``v``, else 0."""
        x = residual[k]
        e = g.edges[k]
        if x > 0 and e.tail == v:
            return 1
        if x < 0 and e.head == v:
            return -1
        return 0

    while any(residual):
        k = next(i for i, x in enumerate(residual) if x)
        e = g.edges[k]
        v = e.tail if residual[k] > 0 else e.head
        position = {v: 0}
        steps: list[tuple[int, int]] = []
        while True:
            d = leaves(k, v)
            steps.append((k, d))
            w = g.other_end(k, v)
            if w in position:
                loop = steps[position[w]:]
                mult = min(abs(residual[j]) for j, _ in loop)
                for j, dj in loop:
                    residual[j] -= dj * mult
                cycles.append(CycleWithMultiplicity(g, w, tuple(loop), mult))
                break
            position[w] = len(steps)
            v = w
            k = next(j for j in g.incidence[v] if leaves(j, v))
    return cycles


def cycle_circulation(cycle: CycleWithMultiplicity) -> Circulation:
    return cycle.circulation()


def is_subflow(d: Circulation, c: Circulation) -> bool:
    """Edge-wise: ``d(e)`` lies between 0 and ``c(e)`` inclusive."""
    return all(min(0, y) <= x <= max(0, y) for x, y in zip(d.flows, c.flows))


def is_subclass(d: HomologyClass, c: HomologyClass) -> bool:
    """``d`` is a subclass of ``c`` when l(c) = l(d) + l(c - d)."""
    d._same(c)
    return length_of_class(c) == length_of_class(d) + length_of_class(c - d)


def is_primitive(h: HomologyClass) -> bool:
    """Nonzero class whose circulation is one simple cycle with unit flow."""
    c = circulation_of(h)
    if not c or any(abs(x) != 1 for x in c.flows if x):
        return False
    pieces = flow_decompose(c)
    return len(pieces) == 1


def primitive_decompose(h: HomologyClass) -> list[HomologyClass]:
    """Primitive classes summing to ``h`` whose lengths add up to l(h).

    A cycle of multiplicity k contributes k identical unit classes.
    """
    f = h.forest
    out = []
    for cyc in flow_decompose(circulation_of(h)):
        unit = class_of(Circulation.from_pairs(f.graph, cyc.steps), f)
        out.extend([unit] * cyc.multiplicity)
    return out


def check_oplus(c: HomologyClass, parts: Sequence[HomologyClass]) -> bool:
    """``c`` is the sum of ``parts`` and their lengths add up exactly."""
    total = HomologyClass.zero(c.forest)
    for p in parts:
        total = total + p
    if total != c:
        return False
    return sum((length_of_class(p) for p in parts), Fraction(0)) == length_of_class(c)
