import random

import pytest

from vcew import io
from vcew.errors import ParseError
from vcew.graph import Graph, is_proper
from vcew.listcolor import ListColoringInstance
from vcew.treewidth import compute_decomposition, validate_decomposition
from vcew import oracle
from tests.conftest import random_small_graph


def test_parse_graph_basic():
    g, pre = io.parse_graph("p vcew 3 2\n1 2\n2 3\n")
    assert g.vertex_count == 3 and g.edges == ((0, 1), (1, 2)) and pre == {}


def test_parse_graph_preweight():
    g, pre = io.parse_graph("p vcew 2 1\n1 2 1\n")
    assert pre == {(0, 1): 1}


def test_parse_graph_triangle_and_comments():
    g, pre = io.parse_graph("c a triangle\np vcew 3 3\n1 2\n2 3\n1 3\n")
    assert len(g.edges) == 3


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("p vcew 3 2\n1 2\n1 2\n", "duplicate"),
        ("p vcew 3 1\n1 1\n", "self-loop"),
        ("p vcew 3 1\n1 4\n", "range"),
        ("p vcew 2 1\n1 2 7\n", "pre-weight"),
        ("p vcew 2 2\n1 2\n", "declares"),
        ("1 2\n", "header"),
    ],
)
def test_parse_graph_errors(text, fragment):
    with pytest.raises(ParseError) as err:
        io.parse_graph(text)
    assert fragment in str(err.value)


def test_parse_graph_error_carries_line_number():
    with pytest.raises(ParseError) as err:
        io.parse_graph("p vcew 3 2\n1 2\n1 2\n")
    assert err.value.line == 3


def test_parse_td_single_bag():
    td = io.parse_td("s td 1 3 3\nb 1 1 2 3\n")
    assert td.bags == (frozenset({0, 1, 2}),) and td.root == 0
    c3 = Graph.build(3, [(0, 1), (1, 2), (0, 2)])
    assert validate_decomposition(c3, td)
    assert td.width() == 2


def test_parse_td_two_bags():
    td = io.parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n")
    p3 = Graph.build(3, [(0, 1), (1, 2)])
    assert validate_decomposition(p3, td)
    assert td.width() == 1


def test_parse_td_bad_header():
    with pytest.raises(ParseError):
        io.parse_td("s td x 2 3\nb 1 1 2\n")
    with pytest.raises(ParseError):
        io.parse_td("b 1 1 2\n")
    with pytest.raises(ParseError):
        io.parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n")  # missing tree edge
    with pytest.raises(ParseError):
        io.parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 3\n")  # unknown bag


def test_parse_listcoloring():
    inst = io.parse_listcoloring("p lc 2 1\n1 2\nl 1 2\nl 2 3\n")
    assert inst.lists == ((2,), (3,))
    inst = io.parse_listcoloring("p lc 2 1\n1 2\nl 1 2\nl 2 2\n")
    assert inst.lists == ((2,), (2,))


def test_parse_listcoloring_missing_list():
    with pytest.raises(ParseError) as err:
        io.parse_listcoloring("p lc 2 1\n1 2\nl 1 2\n")
    assert "no color list" in str(err.value)
    with pytest.raises(ParseError):
        io.parse_listcoloring("p lc 1 0\nl 1\n")  # empty list


def test_result_round_trip():
    record = io.ResultRecord(
        status="yes",
        algorithm="oracle",
        verified=True,
        witness=((0, 1, 1), (1, 2, 0)),
        colors=(1, 1, 0),
        stats={"elapsed_ms": 3, "search_nodes": 17},
    )
    text = io.emit_result(record)
    assert '"witness":[[1,2,1],[2,3,0]]' in text
    assert io.parse_result(text) == record


def test_no_result_omits_witness():
    text = io.emit_result(io.ResultRecord(status="no", algorithm="tw", verified=True))
    assert "witness" not in text and "colors" not in text
    back = io.parse_result(text)
    assert back.status == "no" and back.witness is None


def test_graph_round_trip_random():
    rng = random.Random(7)
    for _ in range(100):
        g = random_small_graph(rng, max_n=9)
        pre = {e: rng.randint(0, 1) for e in g.edges if rng.random() < 0.4}
        g2, pre2 = io.parse_graph(io.emit_graph(g, pre))
        assert g2 == g and pre2 == pre


def test_td_round_trip_random():
    rng = random.Random(11)
    for _ in range(60):
        g = random_small_graph(rng, max_n=8)
        td = compute_decomposition(g)
        td2 = io.parse_td(io.emit_td(td))
        assert td2.bags == td.bags
        assert validate_decomposition(g, td2)


def test_lc_round_trip_random():
    rng = random.Random(13)
    for _ in range(60):
        g = random_small_graph(rng, max_n=6)
        lists = [
            sorted(rng.sample(range(2, 9), rng.randint(1, 3)))
            for _ in range(g.vertex_count)
        ]
        inst = ListColoringInstance.build(g, lists)
        assert io.parse_listcoloring(io.emit_listcoloring(inst)) == inst


def test_weights_round_trip_and_errors():
    g = Graph.build(3, [(0, 1), (1, 2)])
    w = {(0, 1): 1, (1, 2): 0}
    assert io.parse_weights(io.emit_weights(g, w), g) == w
    with pytest.raises(ParseError):
        io.parse_weights("1 2 1\n", g)  # incomplete


def test_emitted_yes_results_reverify():
    rng = random.Random(19)
    for _ in range(40):
        g = random_small_graph(rng, max_n=6)
        w = oracle.solve_exhaustive(g)
        if w is None:
            continue
        record = io.ResultRecord(
            status="yes",
            algorithm="oracle",
            verified=True,
            witness=io.witness_from_assignment(g, w),
        )
        back = io.parse_result(io.emit_result(record))
        assert is_proper(g, io.assignment_from_witness(back.witness))
