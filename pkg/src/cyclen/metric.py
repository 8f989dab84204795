"""Area budgets for the d1 distance on homology.

Everything here is exact: areas are rational multiples of a power of pi,
held as :class:`PiMultiple`.  Upper bounds come from filling each circle
of length ``l`` with a disc of area at most ``(pi/2) l**2``; lower bounds
only exist for isometrically embedded circles, by quadratic scaling of the
unit-circle bound 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Sequence

from .graph import ClosedWalk, WeightedMultigraph, shortest_path_metric, to_fraction
from .homology import CycleWithMultiplicity, HomologyClass, length_of_class, primitive_decompose

__all__ = [
    "DISC_CONSTANT",
    "PiMultiple",
    "AreaBudget",
    "GeometricTail",
    "SigmaTerm",
    "SigmaRepresentative",
    "SubdividedPath",
    "disc_area_budget",
    "d1_upper_bound",
    "squares_threshold",
    "cylinder_delta",
    "homotopy_width_bound",
    "delta_close_check",
    "is_isometric_cycle",
    "circle_lower_bound",
    "sigma_tail_bound",
    "FragmentabilityReport",
    "fragmentability_report",
    "cauchy_verify",
]

# coefficient of pi in the disc filling constant U = pi/2
DISC_CONSTANT = Fraction(1, 2)


@dataclass(frozen=True, eq=False)
class PiMultiple:
    """The exact real number ``coeff * pi**power``.

    Comparisons are exact and only defined between equal powers of pi
    (zero compares with anything).
    """

    coeff: Fraction
    power: int = 1

    def __post_init__(self):
        object.__setattr__(self, "coeff", Fraction(self.coeff))

    def _key(self) -> tuple[Fraction, int]:
        return (self.coeff, self.power if self.coeff else 0)

    def __eq__(self, other) -> bool:
        if isinstance(other, PiMultiple):
            return self._key() == other._key()
        if isinstance(other, (int, Fraction)):
            return self._key() == (Fraction(other), 0)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._key())

    def _cmp_coeffs(self, other) -> tuple[Fraction, Fraction]:
        if not isinstance(other, PiMultiple):
            other = PiMultiple(Fraction(other), 0)
        if self.coeff and other.coeff and self.power != other.power:
            raise TypeError("cannot compare different powers of pi exactly")
        return self.coeff, other.coeff

    def __lt__(self, other) -> bool:
        a, b = self._cmp_coeffs(other)
        return a < b

    def __le__(self, other) -> bool:
        a, b = self._cmp_coeffs(other)
        return a <= b

    def __gt__(self, other) -> bool:
        a, b = self._cmp_coeffs(other)
        return a > b

    def __ge__(self, other) -> bool:
        a, b = self._cmp_coeffs(other)
        return a >= b

    def __float__(self) -> float:
        return float(self.coeff) * math.pi**self.power

    def __str__(self) -> str:
        if self.coeff == 0 or self.power == 0:
            return str(self.coeff)
        pi = "π" if self.power == 1 else f"π^{self.power}"
        return f"{self.coeff}·{pi}"

    def __add__(self, other: "PiMultiple") -> "PiMultiple":
        if other.power != self.power and other.coeff and self.coeff:
            raise ValueError("cannot add different powers of pi exactly")
        power = self.power if self.coeff else other.power
        return type(self)(self.coeff + other.coeff, power)

    def __mul__(self, k) -> "PiMultiple":
        if isinstance(k, PiMultiple):
            return PiMultiple(self.coeff * k.coeff, self.power + k.power)
        return type(self)(self.coeff * Fraction(k), self.power)

    __rmul__ = __mul__


class AreaBudget(PiMultiple):
    """An area ``q·π`` with ``q >= 0``."""

    def __init__(self, coeff, power: int = 1):
        if power != 1:
            raise ValueError("area budgets are multiples of pi")
        super().__init__(Fraction(coeff), 1)
        if self.coeff < 0:
            raise ValueError("area budget must be non-negative")


def disc_area_budget(lengths: Iterable) -> AreaBudget:
    """Total area of discs filling circles of the given lengths."""
    total = Fraction(0)
    for x in lengths:
        x = to_fraction(x)
        if x < 0:
            raise ValueError(f"negative length {x}")
        total += x * x
    return AreaBudget(DISC_CONSTANT * total)


def d1_upper_bound(h: HomologyClass) -> AreaBudget:
    """Upper bound on d1([h], 0): one disc per primitive piece of ``h``."""
    return disc_area_budget(length_of_class(p) for p in primitive_decompose(h))


def squares_threshold(total, eps) -> Fraction:
    """``r = eps/total``: parts ``a_i < r`` summing to ``total`` have
    ``sum a_i**2 < r * total = eps``."""
    total, eps = to_fraction(total), to_fraction(eps)
    if total <= 0 or eps <= 0:
        raise ValueError("total and eps must be positive")
    return eps / total


def cylinder_delta(l, eps) -> PiMultiple:
    """Closeness needed to join two curves of length < l + eps by cylinders
    of total area < eps, as a multiple of ``1/pi``.

    Each patch curve is shorter than ``4·delta`` and all of them together
    shorter than ``3l``, so the area is below ``(pi/2)·4·delta·3l =
    6·pi·l·delta``; ``delta = eps/(6·pi·l)`` keeps it under ``eps``.
    """
    l, eps = to_fraction(l), to_fraction(eps)
    if not 0 < eps < l:
        raise ValueError("need 0 < eps < l")
    return PiMultiple(eps / (6 * l), -1)


def homotopy_width_bound(delta: PiMultiple | Fraction) -> PiMultiple | Fraction:
    """Width bound ``5·delta`` of the cylinder homotopy between constant-speed curves."""
    return delta * 5


@dataclass(frozen=True)
class SubdividedPath:
    """Closed walk cut into ``k`` consecutive subpaths.

    ``breakpoints`` are strictly increasing step indices in ``[0, len)``;
    subpath ``j`` runs from ``breakpoints[j]`` to ``breakpoints[j+1]``, the
    last one wrapping round to ``breakpoints[0]``.
    """

    graph: WeightedMultigraph
    walk: ClosedWalk
    breakpoints: tuple[int, ...]

    def __post_init__(self):
        self.walk.validate(self.graph)
        bp = tuple(self.breakpoints)
        object.__setattr__(self, "breakpoints", bp)
        n = len(self.walk.steps)
        if not bp:
            raise ValueError("need at least one breakpoint")
        if any(b >= c for b, c in zip(bp, bp[1:])) or bp[0] < 0 or bp[-1] >= max(n, 1):
            raise ValueError("breakpoints must be strictly increasing step indices")

    @property
    def k(self) -> int:
        return len(self.breakpoints)

    @property
    def piece_lengths(self) -> list[Fraction]:
        lens = [self.graph.edges[k].length for k, _ in self.walk.steps]
        bp = list(self.breakpoints) + [self.breakpoints[0] + len(lens)]
        doubled = lens + lens
        return [sum(doubled[a:b], Fraction(0)) for a, b in zip(bp, bp[1:])]

    @property
    def length(self) -> Fraction:
        return sum(self.piece_lengths, Fraction(0))

    @property
    def endpoints(self) -> list[tuple[int, int]]:
        verts = self.walk.vertices(self.graph)[:-1] or [self.walk.start]
        bp = list(self.breakpoints)
        return [(verts[a % len(verts)], verts[b % len(verts)]) for a, b in zip(bp, bp[1:] + [bp[0]])]


def delta_close_check(
    a: SubdividedPath,
    b: SubdividedPath,
    delta,
    vertex_distance: Callable[[int, int], Fraction | None] | None = None,
) -> bool:
    """Whether two subdivided closed walks are delta-close.

    ``vertex_distance`` defaults to the shortest-path metric of ``a.graph``;
    vertices at infinite distance (``None``) are never close.
    """
    delta = to_fraction(delta)
    if a.k != b.k:
        raise ValueError(f"subdivision counts differ ({a.k} != {b.k})")
    if vertex_distance is None:
        vertex_distance = shortest_path_metric(a.graph)
    if abs(a.length - b.length) >= delta:
        return False
    la, lb = a.piece_lengths, b.piece_lengths
    if any(x >= delta for x in la + lb):
        return False
    sa = sb = Fraction(0)
    for x, y in zip(la, lb):
        sa += x
        sb += y
        if abs(sa - sb) >= delta:
            return False
    bound = delta / a.k
    for (p, q), (p2, q2) in zip(a.endpoints, b.endpoints):
        for s, t in ((p, p2), (q, q2)):
            d = vertex_distance(s, t)
            if d is None or d >= bound:
                return False
    return True


def is_isometric_cycle(g: WeightedMultigraph, cycle: CycleWithMultiplicity) -> bool:
    """Graph distance between any two cycle vertices equals the shorter arc."""
    verts = cycle.walk.vertices(g)[:-1]
    lens = [g.edges[k].length for k, _ in cycle.steps]
    total = sum(lens, Fraction(0))
    pos = [Fraction(0)]
    for x in lens[:-1]:
        pos.append(pos[-1] + x)
    dist = shortest_path_metric(g)
    for i in range(len(verts)):
        for j in range(i + 1, len(verts)):
            arc = pos[j] - pos[i]
            if dist(verts[i], verts[j]) != min(arc, total - arc):
                return False
    return True


def circle_lower_bound(circumference: PiMultiple | Fraction | int | str) -> PiMultiple:
    """Lower bound ``(c / 2pi)**2`` on the area needed to kill an isometric circle.

    The unit circle (``c = 2pi``, pass ``PiMultiple(2)``) gives exactly 1.
    A plain rational circumference ``c`` gives ``(c**2/4)·pi**-2``.
    """
    if not isinstance(circumference, PiMultiple):
        circumference = PiMultiple(to_fraction(circumference), 0)
    if circumference.coeff <= 0:
        raise ValueError("circumference must be positive")
    s = circumference.coeff / 2
    return PiMultiple(s * s, 2 * circumference.power - 2)


@dataclass(frozen=True)
class GeometricTail:
    """Lengths ``first, first·ratio, first·ratio**2, ...`` after the stored prefix.

    ``ratio >= 1`` makes the squared lengths diverge.
    """

    first: Fraction
    ratio: Fraction

    def __post_init__(self):
        object.__setattr__(self, "first", to_fraction(self.first))
        object.__setattr__(self, "ratio", to_fraction(self.ratio))
        if self.first <= 0 or self.ratio <= 0:
            raise ValueError("tail lengths must be positive")

    def square_sum(self) -> Fraction | None:
        if self.ratio >= 1:
            return None
        return self.first**2 / (1 - self.ratio**2)


class SigmaTerm(NamedTuple):
    cycle: CycleWithMultiplicity
    truncation: int

    @property
    def length(self) -> Fraction:
        return self.cycle.length


@dataclass(frozen=True)
class SigmaRepresentative:
    """Finite prefix of a sequence of cycles, optionally with a modelled tail.

    Term ``i`` lives in truncation ``terms[i].truncation`` of some exhaustion;
    ``tail`` describes the (infinitely many) lengths after the prefix.
    """

    terms: tuple[SigmaTerm, ...] = ()
    tail: GeometricTail | None = None

    def __post_init__(self):
        terms = tuple(self.terms)
        object.__setattr__(self, "terms", terms)
        idx = [t.truncation for t in terms]
        if any(a > b for a, b in zip(idx, idx[1:])):
            raise ValueError("truncation indices must be non-decreasing")

    @property
    def lengths(self) -> list[Fraction]:
        return [t.length for t in self.terms]

    @property
    def prefix_length(self) -> Fraction:
        return sum(self.lengths, Fraction(0))

    def total_length(self) -> Fraction | None:
        """Sum of all lengths, ``None`` when it diverges."""
        if self.tail is None:
            return self.prefix_length
        if self.tail.ratio >= 1:
            return None
        return self.prefix_length + self.tail.first / (1 - self.tail.ratio)


def sigma_tail_bound(rep: SigmaRepresentative, n: int) -> AreaBudget | None:
    """Disc budget for all terms after the first ``n``; ``None`` if infinite."""
    if not 0 <= n <= len(rep.terms):
        raise ValueError(f"prefix index {n} outside 0..{len(rep.terms)}")
    budget = disc_area_budget(rep.lengths[n:])
    if rep.tail is None:
        return budget
    rest = rep.tail.square_sum()
    if rest is None:
        return None
    return AreaBudget(budget.coeff + DISC_CONSTANT * rest)


def cauchy_verify(rep: SigmaRepresentative, eps_schedule: Sequence) -> bool:
    """Each ``eps`` is beaten (as a pi-coefficient) by the tail budget at some prefix."""
    schedule = [to_fraction(e) for e in eps_schedule]
    if any(e <= 0 for e in schedule) or any(a <= b for a, b in zip(schedule, schedule[1:])):
        raise ValueError("schedule must be positive and strictly decreasing")
    tails = [sigma_tail_bound(rep, n) for n in range(len(rep.terms) + 1)]
    for eps in schedule:
        if not any(t is not None and t.coeff < eps for t in tails):
            return False
    return True


@dataclass(frozen=True)
class FragmentabilityReport:
    fragmentable: bool
    witness: tuple[HomologyClass, ...]
    piece_lengths: tuple[Fraction, ...]
    # below this delta only the zero class can be fragmented
    shortest_cycle: Fraction | None

    def __bool__(self) -> bool:
        return self.fragmentable


def _shortest_cycle_through(g: WeightedMultigraph, k: int) -> Fraction | None:
    e = g.edges[k]
    if e.is_loop:
        return e.length
    rest = WeightedMultigraph(g.n, g.edges[:k] + g.edges[k + 1:])
    d = shortest_path_metric(rest)(e.tail, e.head)
    return None if d is None else d + e.length


def fragmentability_report(h: HomologyClass, delta) -> FragmentabilityReport:
    """Certify ``h`` as delta-fragmentable via its primitive pieces.

    ``shortest_cycle`` is the least length of a cycle through a chord in
    the support of ``h``; no nonzero class splits into pieces shorter than it.
    """
    delta = to_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    pieces = tuple(primitive_decompose(h))
    lengths = tuple(length_of_class(p) for p in pieces)
    g = h.forest.graph
    through = [
        _shortest_cycle_through(g, c) for c, x in zip(h.forest.chords, h.coords) if x
    ]
    shortest = min((x for x in through if x is not None), default=None)
    ok = all(x < delta for x in lengths)
    return FragmentabilityReport(ok, pieces if ok else (), lengths, shortest)
