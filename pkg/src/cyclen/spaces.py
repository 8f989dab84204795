"""Weighted graphs for the standard examples: owl, ladder, comb, sine-comb
and discretised circles.

Every family is prefix-nested: truncation ``n`` keeps the vertex and edge
indices of truncation ``n - 1`` and appends new ones, so the exhaustion maps
are plain inclusions.  Circles are drawn as ``k``-gons (``k = 4`` by default).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .graph import (
    ClosedWalk,
    Exhaustion,
    SpanningForest,
    WeightedMultigraph,
    build_graph,
    spanning_forest,
    to_fraction,
)
from .homology import Circulation, CycleWithMultiplicity, HomologyClass, class_of
from .metric import GeometricTail, SigmaRepresentative, SigmaTerm

__all__ = [
    "SpaceError",
    "Space",
    "make_owl",
    "make_ladder",
    "make_comb",
    "make_sine_comb",
    "make_cycle",
    "ladder_exhaustion",
    "comb_exhaustion",
    "sine_comb_exhaustion",
    "RECIPES",
    "make_space",
]

HALF = Fraction(1, 2)


class SpaceError(ValueError):
    pass


@dataclass(frozen=True)
class Space:
    """A generated graph plus its distinguished classes and walks."""

    name: str
    params: dict
    graph: WeightedMultigraph
    forest: SpanningForest
    classes: dict[str, HomologyClass] = field(default_factory=dict)
    walks: dict[str, ClosedWalk] = field(default_factory=dict)
    sigma: SigmaRepresentative | None = None
    circles: tuple[CycleWithMultiplicity, ...] = ()

    def manifest(self) -> dict:
        return {
            "name": self.name,
            "params": {k: str(v) for k, v in self.params.items()},
            "chords": list(self.forest.chords),
            "classes": {k: list(h.coords) for k, h in self.classes.items()},
            "walks": {
                k: {"start": w.start, "steps": [list(s) for s in w.steps]} for k, w in self.walks.items()
            },
            "sigma": None
            if self.sigma is None
            else [
                {
                    "start": t.cycle.start,
                    "steps": [list(s) for s in t.cycle.steps],
                    "multiplicity": t.cycle.multiplicity,
                    "length": str(t.length),
                    "truncation": t.truncation,
                }
                for t in self.sigma.terms
            ],
        }


def _need_positive(n: int, what: str = "n") -> None:
    if not isinstance(n, int) or n < 1:
        raise SpaceError(f"{what} must be a positive integer, got {n!r}")


def _cycle(g: WeightedMultigraph, start: int, edges: list[int]) -> CycleWithMultiplicity:
    """Orient a list of consecutive edges forwards from ``start``."""
    steps, v = [], start
    for k in edges:
        e = g.edges[k]
        d = 1 if e.tail == v else -1
        steps.append((k, d))
        v = e.head if d == 1 else e.tail
    return CycleWithMultiplicity(g, start, tuple(steps))


def _unit_class(f: SpanningForest, cyc: CycleWithMultiplicity) -> HomologyClass:
    return class_of(Circulation.from_pairs(f.graph, cyc.steps), f)


def make_owl() -> Space:
    """Two unit triangles sharing the middle edge ``uv``.

    Vertices are numbered x=0, u=1, v=2, y=3, so the DFS tree from x runs
    x-u-v-y and both triangles become fundamental cycles.  Edges: ux, xv,
    uv (middle), vy, yu.  ``sigma`` and ``tau`` are oriented so the middle
    edge cancels in their sum.
    """
    x, u, v, y = 0, 1, 2, 3
    g = build_graph(4, [(u, x, 1), (x, v, 1), (u, v, 1), (v, y, 1), (y, u, 1)])
    f = spanning_forest(g)
    sigma = ClosedWalk(x, ((1, 1), (2, -1), (0, 1)))  # x -> v -> u -> x
    tau = ClosedWalk(u, ((2, 1), (3, 1), (4, 1)))  # u -> v -> y -> u
    cs = class_of(Circulation.from_pairs(g, sigma.steps), f)
    ct = class_of(Circulation.from_pairs(g, tau.steps), f)
    return Space(
        "owl",
        {},
        g,
        f,
        classes={"sigma": cs, "tau": ct, "sigma+tau": cs + ct},
        walks={"sigma": sigma, "tau": tau},
    )


@lru_cache(maxsize=None)
def _ladder_graph(n: int) -> WeightedMultigraph:
    # t_k = 2k, b_k = 2k + 1; rung k has length 2^-k, the two rails of
    # square i have length 2^-(i+1), so square i has perimeter 4·2^-i
    edges = [(0, 1, 1)]
    for i in range(1, n + 1):
        h = Fraction(1, 2 ** (i + 1))
        edges += [(2 * i - 2, 2 * i, h), (2 * i - 1, 2 * i + 1, h), (2 * i, 2 * i + 1, Fraction(1, 2**i))]
    return build_graph(2 * n + 2, edges)


def _ladder_edges(i: int) -> tuple[int, int, int, int]:
    """(top rail, bottom rail, right rung, left rung) of square ``i``."""
    top, bottom, rung = 3 * i - 2, 3 * i - 1, 3 * i
    left = 0 if i == 1 else 3 * (i - 1)
    return top, bottom, rung, left


def ladder_exhaustion() -> Exhaustion:
    return Exhaustion(_ladder_graph, name="ladder")


def make_ladder(n: int) -> Space:
    """``n``-square ladder and a walk that winds every square once, then the
    outer boundary once the other way round; it nets to zero on every edge.

    Walk: at t_{i-1} go round square i (top, rung down, bottom back, rung up),
    then step along the top rail to t_i; after the last square come back
    along the top rail to t_0 and traverse the outer boundary reversed.
    """
    _need_positive(n)
    g = _ladder_graph(n)
    f = spanning_forest(g)
    steps: list[tuple[int, int]] = []
    squares: dict[str, HomologyClass] = {}
    for i in range(1, n + 1):
        top, bottom, rung, left = _ladder_edges(i)
        steps += [(top, 1), (rung, 1), (bottom, -1), (left, -1), (top, 1)]
        square = _cycle(g, 2 * i - 2, [top, rung, bottom, left])
        h = _unit_class(f, square)
        # orient each square so that its own chord is crossed forwards
        if sum(h.coords) < 0:
            h = -h
        squares[f"square{i}"] = h
    steps += [(_ladder_edges(i)[0], -1) for i in range(n, 0, -1)]
    steps += [(0, 1)]
    steps += [(_ladder_edges(i)[1], 1) for i in range(1, n + 1)]
    steps += [(_ladder_edges(n)[2], -1)]
    steps += [(_ladder_edges(i)[0], -1) for i in range(n, 0, -1)]
    total = HomologyClass.zero(f)
    for h in squares.values():
        total = total + h
    classes = dict(squares)
    classes["squares"] = total
    return Space("ladder", {"n": n}, g, f, classes=classes, walks={"sigma": ClosedWalk(0, tuple(steps))})


@lru_cache(maxsize=None)
def _comb_graph(n: int, k: int = 4) -> WeightedMultigraph:
    # block i: vertices s_i, f_i, then k-1 circle vertices; edges spine_i,
    # tooth_i, then the k circle edges from f_i round and back
    edges = []
    for i in range(1, n + 1):
        prev = _comb_spine_vertex(i - 1, k)
        s, foot = _comb_spine_vertex(i, k), _comb_spine_vertex(i, k) + 1
        edges.append((prev, s, Fraction(1, 2**i)))
        edges.append((s, foot, 1))
        edges += _polygon(foot, foot + 1, k, Fraction(1, 2**i))
    return build_graph(_comb_spine_vertex(n + 1, k), edges)


def _comb_spine_vertex(i: int, k: int) -> int:
    return 0 if i == 0 else 1 + (i - 1) * (k + 1)


def _polygon(anchor: int, first_new: int, k: int, perimeter: Fraction) -> list:
    side = perimeter / k
    if k == 1:
        return [(anchor, anchor, side)]
    ring = [anchor] + list(range(first_new, first_new + k - 1))
    return [(ring[j], ring[(j + 1) % k], side) for j in range(k)]


def comb_exhaustion(k: int = 4) -> Exhaustion:
    return Exhaustion(lambda n: _comb_graph(n, k), name="comb")


def _comb_edge(i: int, k: int) -> int:
    """Index of spine edge ``i``; tooth and circle edges follow it."""
    return (i - 1) * (k + 2)


def make_comb(n: int, k: int = 4) -> Space:
    """Spine with ``n`` teeth of length 1 and a circle of length ``2^-i`` at
    the foot of tooth ``i``; spine segment ``i`` has length ``2^-i``.

    ``sigma`` is the sigma-representative ``tau_1, ..., tau_n`` (one term per
    circle, living in truncation ``i``) with the geometric tail of the
    infinite comb; walk ``connected`` runs along the spine, down and up each
    tooth and once round each circle, then back along the spine.
    """
    _need_positive(n)
    _need_positive(k, "k")
    g = _comb_graph(n, k)
    f = spanning_forest(g)
    circles = []
    steps: list[tuple[int, int]] = []
    for i in range(1, n + 1):
        spine = _comb_edge(i, k)
        tooth = spine + 1
        ring = list(range(spine + 2, spine + 2 + k))
        foot = _comb_spine_vertex(i, k) + 1
        circle = _cycle(g, foot, ring)
        circles.append(circle)
        steps += [(spine, 1), (tooth, 1)] + list(circle.steps) + [(tooth, -1)]
    steps += [(_comb_edge(i, k), -1) for i in range(n, 0, -1)]
    terms = tuple(SigmaTerm(c, i) for i, c in enumerate(circles, start=1))
    sigma = SigmaRepresentative(terms, GeometricTail(Fraction(1, 2 ** (n + 1)), HALF))
    total = HomologyClass.zero(f)
    classes = {}
    for i, c in enumerate(circles, start=1):
        classes[f"tau{i}"] = _unit_class(f, c)
        total = total + classes[f"tau{i}"]
    classes["sum"] = total
    return Space(
        "comb",
        {"n": n, "k": k},
        g,
        f,
        classes=classes,
        walks={"connected": ClosedWalk(0, tuple(steps))},
        sigma=sigma,
        circles=tuple(circles),
    )


@lru_cache(maxsize=None)
def _sine_comb_graph(n: int, k: int = 4) -> WeightedMultigraph:
    # block i: path vertex u_i then k-1 circle vertices
    edges = []
    for i in range(1, n + 1):
        prev, u = _sine_vertex(i - 1, k), _sine_vertex(i, k)
        edges.append((prev, u, 1))
        edges += _polygon(u, u + 1, k, Fraction(1, 2**i))
    return build_graph(_sine_vertex(n + 1, k), edges)


def _sine_vertex(i: int, k: int) -> int:
    return 0 if i == 0 else 1 + (i - 1) * k


def sine_comb_exhaustion(k: int = 4) -> Exhaustion:
    return Exhaustion(lambda n: _sine_comb_graph(n, k), name="sine-comb")


def make_sine_comb(n: int, k: int = 4) -> Space:
    """Path ``u_0 - u_1 - ... - u_n`` of unit segments with a circle of length
    ``2^-i`` hung at ``u_i``.  Classes ``circle{i}`` are the unit circle
    classes; ``sigma`` lists the circles as a sequence with geometric tail."""
    _need_positive(n)
    _need_positive(k, "k")
    g = _sine_comb_graph(n, k)
    f = spanning_forest(g)
    circles = []
    for i in range(1, n + 1):
        first = (i - 1) * (k + 1) + 1
        circles.append(_cycle(g, _sine_vertex(i, k), list(range(first, first + k))))
    classes = {f"circle{i}": _unit_class(f, c) for i, c in enumerate(circles, start=1)}
    terms = tuple(SigmaTerm(c, i) for i, c in enumerate(circles, start=1))
    sigma = SigmaRepresentative(terms, GeometricTail(Fraction(1, 2 ** (n + 1)), HALF))
    return Space("sine-comb", {"n": n, "k": k}, g, f, classes=classes, sigma=sigma, circles=tuple(circles))


def make_cycle(k: int, total_length=1) -> Space:
    """``k``-gon with equal sides and perimeter ``total_length``; ``k = 1``
    is a single loop."""
    _need_positive(k, "k")
    total_length = to_fraction(total_length)
    if total_length <= 0:
        raise SpaceError("total_length must be positive")
    g = build_graph(k, _polygon(0, 1, k, total_length))
    f = spanning_forest(g)
    circle = _cycle(g, 0, list(range(k)))
    return Space(
        "cycle",
        {"k": k, "total_length": total_length},
        g,
        f,
        classes={"circle": _unit_class(f, circle)},
        walks={"circle": circle.walk},
        circles=(circle,),
    )


RECIPES = {
    "owl": lambda n=None, k=4: make_owl(),
    "ladder": lambda n=1, k=4: make_ladder(n),
    "comb": lambda n=1, k=4: make_comb(n, k),
    "sine-comb": lambda n=1, k=4: make_sine_comb(n, k),
    "cycle": lambda n=4, k=None: make_cycle(n),
}


def make_space(name: str, n: int | None = None, k: int = 4) -> Space:
    if name not in RECIPES:
        raise SpaceError(f"unknown space {name!r}; choose from {sorted(RECIPES)}")
    kwargs = {"k": k}
    if n is not None:
        kwargs["n"] = n
    return RECIPES[name](**kwargs)
