from __future__ import annotations

from fractions import Fraction

import pytest

from cyclen.graph import walk_length
from cyclen.homology import (
    Circulation,
    class_of,
    is_primitive,
    length_of_class,
    walk_to_circulation,
)
from cyclen.metric import PiMultiple, d1_upper_bound
from cyclen.spaces import (
    RECIPES,
    SpaceError,
    make_comb,
    make_cycle,
    make_ladder,
    make_owl,
    make_sine_comb,
    make_space,
)
from cyclen.z2 import EdgeSetZ2


class TestOwl:
    def test_lengths(self):
        s = make_owl()
        assert length_of_class(s.classes["sigma"]) == 3
        assert length_of_class(s.classes["sigma+tau"]) == 4

    def test_triangle_sets_sum_to_outer(self):
        s = make_owl()
        a = EdgeSetZ2.of(s.graph, [k for k, _ in s.walks["sigma"].steps])
        b = EdgeSetZ2.of(s.graph, [k for k, _ in s.walks["tau"].steps])
        assert (a ^ b).edges == [0, 1, 3, 4]

    def test_walk_classes(self):
        s = make_owl()
        for name in ("sigma", "tau"):
            assert class_of(walk_to_circulation(s.graph, s.walks[name]), s.forest) == s.classes[name]


class TestLadder:
    @pytest.mark.parametrize("n", [1, 2, 3, 7])
    def test_walk_nets_to_zero(self, n):
        s = make_ladder(n)
        assert not walk_to_circulation(s.graph, s.walks["sigma"])

    def test_sum_of_squares(self):
        s = make_ladder(5)
        assert s.classes["squares"].coords == (1,) * 5

    def test_square_perimeters(self):
        s = make_ladder(5)
        for i in range(1, 6):
            h = s.classes[f"square{i}"]
            assert is_primitive(h)
            assert length_of_class(h) == 4 * Fraction(1, 2**i)
            assert d1_upper_bound(h) == PiMultiple(Fraction(1, 2) * (4 * Fraction(1, 2**i)) ** 2)

    def test_zero(self):
        with pytest.raises(SpaceError):
            make_ladder(0)

    def test_prefix_nested(self):
        small, big = make_ladder(3).graph, make_ladder(4).graph
        assert big.edges[: small.m] == small.edges


class TestComb:
    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_sigma_length(self, n):
        s = make_comb(n)
        assert s.sigma.prefix_length == 1 - Fraction(1, 2**n)

    @pytest.mark.parametrize("n", [1, 4, 10])
    def test_connected_walk(self, n):
        s = make_comb(n)
        w = s.walks["connected"]
        # each tooth twice, each circle once, each spine segment twice
        spine = sum(Fraction(1, 2**i) for i in range(1, n + 1))
        assert walk_length(s.graph, w) == (1 - Fraction(1, 2**n)) + 2 * n + 2 * spine
        assert walk_length(s.graph, w) >= 2 * n
        assert class_of(walk_to_circulation(s.graph, w), s.forest) == s.classes["sum"]

    def test_zero(self):
        with pytest.raises(SpaceError):
            make_comb(0)


class TestSineComb:
    def test_circles(self):
        s = make_sine_comb(4)
        for i, c in enumerate(s.circles, start=1):
            assert c.cycle_length == Fraction(1, 2**i)
            assert length_of_class(s.classes[f"circle{i}"]) == Fraction(1, 2**i)

    def test_zero(self):
        with pytest.raises(SpaceError):
            make_sine_comb(0)


class TestCycle:
    def test_loop(self):
        s = make_cycle(1, 1)
        assert s.graph.m == 1 and s.graph.edges[0].is_loop and s.graph.total_length == 1

    def test_square(self):
        s = make_cycle(4, 1)
        assert s.graph.m == 4 and s.graph.total_length == 1

    def test_primitive(self):
        for k in (1, 2, 5):
            assert is_primitive(make_cycle(k).classes["circle"])

    @pytest.mark.parametrize("args", [(0, 1), (3, 0), (3, -1)])
    def test_invalid(self, args):
        with pytest.raises(SpaceError):
            make_cycle(*args)


class TestManifest:
    @pytest.mark.parametrize("name", sorted(RECIPES))
    def test_round_trip(self, name):
        s = make_space(name, 3 if name != "owl" else None)
        m = s.manifest()
        assert m["chords"] == list(s.forest.chords)
        for key, coords in m["classes"].items():
            assert coords == list(s.classes[key].coords)
        for key, w in m["walks"].items():
            c = Circulation.from_pairs(s.graph, [tuple(x) for x in w["steps"]])
            assert c.is_conserved()

    def test_unknown(self):
        with pytest.raises(SpaceError):
            make_space("torus")
