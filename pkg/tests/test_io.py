from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclen import io
from cyclen.graph import ClosedWalk, GraphError, build_graph
from cyclen.homology import Circulation
from cyclen.metric import PiMultiple
from cyclen.spaces import make_comb, make_owl
from cyclen.z2 import EdgeSetZ2


@given(
    st.integers(1, 6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(
                st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.fractions(min_value=Fraction(1, 99), max_value=9)),
                max_size=8,
            ),
        )
    )
)
def test_graph_round_trip(data):
    n, edges = data
    g = build_graph(n, edges)
    text = json.dumps(io.graph_to_json(g))
    assert io.graph_from_json(json.loads(text)) == g


def test_ids_may_arrive_shuffled():
    data = {"vertices": 2, "edges": [{"id": 1, "tail": 1, "head": 0, "length": "2"}, {"id": 0, "tail": 0, "head": 1, "length": "1/3"}]}
    g = io.graph_from_json(data)
    assert g.edges[0].length == Fraction(1, 3)


@pytest.mark.parametrize(
    "data",
    [
        [],
        {"vertices": 2},
        {"vertices": "2", "edges": []},
        {"vertices": 2, "edges": [{"tail": 0, "head": 1}]},
        {"vertices": 2, "edges": [{"id": 3, "tail": 0, "head": 1, "length": "1"}]},
        {"vertices": 2, "edges": [{"tail": 0, "head": 1, "length": 0.5}]},
        {"vertices": 2, "edges": [{"tail": 0, "head": 1, "length": "-1"}]},
    ],
)
def test_malformed(data):
    with pytest.raises(GraphError):
        io.graph_from_json(data)


def test_load_rejects_bad_json(tmp_path):
    p = tmp_path / "g.json"
    p.write_text("{nope")
    with pytest.raises(GraphError):
        io.load_graph(str(p))


def test_digest_is_stable():
    assert io.graph_digest(make_owl().graph) == io.graph_digest(make_owl().graph)
    assert io.graph_digest(make_owl().graph) != io.graph_digest(make_comb(1).graph)
    assert io.graph_digest(make_owl().graph).startswith("sha256:")


def test_exact_pairs():
    assert io.exact(Fraction(1023, 1024)) == {"exact": "1023/1024", "approx": 1023 / 1024}
    assert io.exact(PiMultiple(Fraction(1, 2)))["exact"] == "1/2·π"


def test_dot_marks_flow():
    g = make_owl().graph
    text = io.to_dot(g, [1, 1, 0, 1, -1])
    assert text.startswith("graph G {")
    assert '[f=-1]' in text and 'e2: 1"' in text


def test_witness_round_trips():
    g = make_owl().graph
    c = Circulation(g, (1, 1, 0, 1, 1))
    assert io.circulation_from_json(g, io.circulation_to_json(c)) == c
    z = EdgeSetZ2.of(g, [0, 3])
    assert io.edge_set_from_json(g, io.edge_set_to_json(z)) == z
    w = ClosedWalk(0, ((1, 1), (2, -1), (0, 1)))
    assert io.walk_from_json(io.walk_to_json(w)) == w


def test_bad_witnesses():
    g = make_owl().graph
    with pytest.raises(ValueError):
        io.edge_set_from_json(g, [0, 0])
    with pytest.raises(ValueError):
        io.circulation_from_json(g, [{"edge": 9, "flow": 1}])
    with pytest.raises(ValueError):
        io.walk_from_json({"steps": []})
