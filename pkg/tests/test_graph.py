from fractions import Fraction

import pytest

from pathauction import (
    Disconnected,
    Edge,
    FormatError,
    Network,
    TooLarge,
    detour_cost,
    enumerate_paths,
    network_from_json,
    network_to_json,
    rank_paths,
    shortest_path,
    validate,
)


def _net(rows, source, sink, bids=None):
    nodes = sorted({n for _, t, h, _ in rows for n in (t, h)})
    edges = tuple(Edge(eid, t, h, eid) for eid, t, h, _ in rows)
    costs = {eid: Fraction(c) for eid, _, _, c in rows}
    return Network(
        nodes=tuple(nodes),
        edges=edges,
        source=source,
        sink=sink,
        true_cost=costs,
        bid=dict(bids) if bids else dict(costs),
    )


def test_example1_is_valid(example1):
    assert validate(example1) == []


def test_single_edge_network_owns_a_cut():
    net = _net([("only", "X", "Y", 3)], "X", "Y")
    rules = {v.rule for v in validate(net)}
    assert "agent owns a cut" in rules


def test_zero_cost_edge_is_flagged():
    net = _net([("e1", "X", "Y", 0), ("e2", "X", "Y", 2)], "X", "Y")
    rules = {v.rule for v in validate(net)}
    assert "nonpositive cost" in rules


def test_duplicate_owner_and_unknown_node_flagged():
    edges = (Edge("e1", "X", "Y", "a"), Edge("e2", "X", "Z", "a"))
    costs = {"a": Fraction(1)}
    net = Network(("X", "Y"), edges, "X", "Y", costs, dict(costs))
    rules = {v.rule for v in validate(net)}
    assert "agent owns multiple edges" in rules
    assert "unknown node" in rules


def test_disconnected_flagged():
    net = _net([("e1", "X", "M", 1), ("e2", "Y", "M", 1), ("e3", "X", "M", 1)], "X", "Y")
    rules = {v.rule for v in validate(net)}
    assert "disconnected" in rules


def test_shortest_path_example1(example1):
    path = shortest_path(example1, example1.true_cost)
    assert path.edges == ("A", "B", "C", "D", "E", "F")
    assert path.cost == 6


def test_shortest_path_avoiding_best_route(example1):
    """With A priced out of reach, the best remaining route is J P E F."""
    costs = dict(example1.true_cost)
    costs["A"] = Fraction(10**6)
    path = shortest_path(example1, costs)
    assert path.edges == ("J", "P", "E", "F")
    assert sum(example1.true_cost[a] for a in path.owners) == 10


def test_shortest_path_fig3(fig3):
    path = shortest_path(fig3, fig3.true_cost)
    assert path.edges == ("e",)
    assert path.cost == 1


def test_shortest_path_tie_breaks_lexicographically():
    net = _net([("b", "X", "Y", 3), ("a", "X", "Y", 3), ("c", "X", "Y", 4)], "X", "Y")
    assert shortest_path(net).edges == ("a",)


def test_rank_paths_example1(example1):
    ranked = rank_paths(example1, example1.true_cost, k=6)
    assert ranked.costs == (6, 7, 9, 10, 15, 16)


def test_rank_paths_fig2(fig2):
    ranked = rank_paths(fig2, fig2.true_cost, k=2)
    assert ranked.costs == (3, 5)


def test_rank_k1_equals_shortest(example1, fig2, fig3, xsmall):
    for net in (example1, fig2, fig3, xsmall):
        assert rank_paths(net, net.true_cost, k=1).paths[0] == shortest_path(
            net, net.true_cost
        )


def test_enumerate_counts(example1, fig2, fig3):
    assert len(enumerate_paths(example1, example1.true_cost)) == 6
    assert len(enumerate_paths(fig2, fig2.true_cost)) == 2
    assert len(enumerate_paths(fig3, fig3.true_cost)) == 2


def test_enumerate_guard():
    rows = [(f"e{i:02d}", "X", "Y", i + 1) for i in range(25)]
    net = _net(rows, "X", "Y")
    with pytest.raises(TooLarge):
        enumerate_paths(net)


def test_disconnected_raises():
    net = _net([("e1", "X", "M", 1), ("e2", "Y", "M", 1), ("e3", "X", "M", 2)], "X", "Y")
    with pytest.raises(Disconnected):
        shortest_path(net)


@pytest.mark.parametrize(
    "agent,mode,expected",
    [
        ("E", "excluded", 15),
        ("E", "zeroed", 5),
        ("A", "excluded", 10),
        ("A", "zeroed", 5),
        ("B", "excluded", 7),
        ("F", "excluded", 16),
    ],
)
def test_detour_costs_example1(example1, agent, mode, expected):
    assert detour_cost(example1, agent, mode, example1.true_cost) == expected


def test_json_round_trip_is_byte_exact(example1):
    text = network_to_json(example1)
    again = network_to_json(network_from_json(text))
    assert text == again


def test_json_rejects_unknown_keys(example1):
    text = network_to_json(example1).replace('"source"', '"extra": 1, "source"', 1)
    with pytest.raises(FormatError):
        network_from_json(text)


def test_json_rejects_bad_cost(example1):
    text = network_to_json(example1).replace('"true_cost": "1"', '"true_cost": "1/0"', 1)
    with pytest.raises(FormatError):
        network_from_json(text)


def test_bid_profile_must_cover_agents(example1):
    from pathauction import bids_from_json

    with pytest.raises(FormatError):
        bids_from_json('{"A": "1"}', example1)
    with pytest.raises(FormatError):
        bids_from_json('{"A": 1}', example1)


def test_missing_bid_defaults_to_true_cost():
    text = """
    {"nodes": ["X", "Y"],
     "edges": [{"id": "a", "from": "X", "to": "Y", "owner": "a", "true_cost": "3/2"},
               {"id": "b", "from": "X", "to": "Y", "owner": "b", "true_cost": "4", "bid": "5"}],
     "source": "X", "sink": "Y"}
    """
    net = network_from_json(text)
    assert net.bid["a"] == Fraction(3, 2)
    assert net.bid["b"] == Fraction(5)
