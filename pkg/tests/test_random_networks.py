"""Generator determinism plus oracle agreement on the random population."""

import pytest

from pathauction import (
    GenerationFailed,
    detour_cost,
    enumerate_paths,
    group_share_path,
    network_to_json,
    random_network,
    rank_paths,
    shortest_path,
    validate,
)


def test_generator_is_deterministic():
    for seed in (0, 7, 123):
        assert network_to_json(random_network(seed)) == network_to_json(
            random_network(seed)
        )


def test_generated_networks_are_valid(random_nets_200):
    for net in random_nets_200:
        assert validate(net) == []
        assert len(net.nodes) <= 8
        assert len(net.edges) <= 14


def test_generated_networks_run_tie_free(random_nets_200):
    for net in random_nets_200[:80]:
        group_share_path(net, net.true_cost)  # raises TieError on a bad instance


def test_generation_failure_surfaces():
    with pytest.raises(GenerationFailed):
        random_network(0, node_budget=2, edge_budget=2, cost_range=(1, 1), max_attempts=5)


def test_rank_agrees_with_enumeration(random_nets_200):
    for net in random_nets_200:
        ranked = enumerate_paths(net, net.true_cost)
        again = rank_paths(net, net.true_cost, k=len(ranked.paths) + 3)
        assert again.paths == ranked.paths


def test_shortest_is_the_enumeration_minimum(random_nets_200):
    for net in random_nets_200[:80]:
        ranked = enumerate_paths(net, net.true_cost)
        best = shortest_path(net, net.true_cost)
        assert best == ranked.paths[0]
        assert best.cost == rank_paths(net, net.true_cost, k=1).costs[0]


def test_zeroed_detour_identity(random_nets_200):
    """Zeroing an agent on the unique best path shaves exactly its own cost;
    zeroing anyone never makes things dearer."""
    for net in random_nets_200[:80]:
        best = shortest_path(net, net.true_cost)
        for agent in net.agents:
            zeroed = detour_cost(net, agent, "zeroed", net.true_cost)
            assert zeroed <= best.cost
            if agent in best.owner_set:
                assert zeroed == best.cost - net.true_cost[agent]


def test_group_index_satisfies_the_membership_definition(random_nets_200):
    """Group q means: on every one of the q cheapest paths, off the next."""
    from pathauction import classify_groups

    for net in random_nets_200[:60]:
        ranked = enumerate_paths(net, net.true_cost)
        assignment = classify_groups(ranked)
        for agent, q in assignment.group_of.items():
            assert all(agent in ranked.paths[j].owner_set for j in range(q))
            assert agent not in ranked.paths[q].owner_set


def test_results_in_lowest_terms(random_nets_200):
    import math

    for net in random_nets_200[:30]:
        res = group_share_path(net, net.true_cost)
        for value in res.payments.values():
            assert value.denominator > 0
            assert math.gcd(abs(value.numerator), value.denominator) == 1
