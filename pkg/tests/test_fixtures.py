import pytest

from pathauction import (
    FIXTURES,
    enumerate_paths,
    fixture,
    network_from_json,
    network_to_json,
    validate,
)


def test_known_names():
    assert sorted(FIXTURES) == ["example1", "fig2", "fig3", "xsmall"]
    with pytest.raises(KeyError):
        fixture("nope")


@pytest.mark.parametrize(
    "name,costs",
    [
        ("example1", (6, 7, 9, 10, 15, 16)),
        ("fig2", (3, 5)),
        ("fig3", (1, 5)),
        ("xsmall", (2, 4)),
    ],
)
def test_ranked_costs(name, costs):
    net = fixture(name)
    assert validate(net) == []
    assert enumerate_paths(net, net.true_cost).costs == costs


def test_xsmall_shape(xsmall):
    assert len(xsmall.edges) == 3
    assert {e.id for e in xsmall.edges} == {"r", "s", "u"}


def test_fig3_parallel_edges(fig3):
    assert all(e.tail == "X" and e.head == "Y" for e in fig3.edges)


def test_round_trip(example1):
    text = network_to_json(example1)
    assert network_to_json(network_from_json(text)) == text
