"""Directed-graph substrate for procurement path auctions.

The model is a directed multigraph with a source and a sink in which every
edge is owned by exactly one self-interested agent and every agent owns
exactly one edge. Each agent carries a private true cost and a declared
bid, both strictly positive exact rationals.

This module provides:

* validation of the model invariants (including that no single agent's
  edge is a cut between source and sink),
* deterministic shortest and k-shortest loopless path computation
  (Dijkstra plus Yen-style deviations, ties broken by the
  lexicographically smallest edge-id sequence),
* a brute-force enumeration oracle for all loopless paths, used to
  cross-check the ranking algorithms on small instances,
* detour costs (cheapest path avoiding an agent, cheapest path with an
  agent's cost zeroed) that marginal-pricing rules are built from,
* the normative JSON file format for networks.

Everything here is a pure function over immutable values; results depend
only on arguments and are safe to share between threads.
"""

from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Mapping

from .errors import Disconnected, FormatError, TooLarge
from .rational import format_cost, parse_cost

#: Edge-count guard for the brute-force enumeration oracle.
ENUMERATION_EDGE_GUARD = 24


@dataclass(frozen=True)
class Edge:
    """One directed edge; `owner` is the agent that prices it."""

    id: str
    tail: str
    head: str
    owner: str


@dataclass(frozen=True)
class Path:
    """A loopless source-to-sink route.

    `edges` and `owners` are aligned; `cost` is the sum of the designated
    cost of each edge under whatever cost map produced the path.
    """

    edges: tuple[str, ...]
    owners: tuple[str, ...]
    cost: Fraction

    def __post_init__(self) -> None:
        if len(self.edges) != len(self.owners):
            raise ValueError("edges and owners must be aligned")

    @property
    def owner_set(self) -> frozenset[str]:
        return frozenset(self.owners)


@dataclass(frozen=True)
class RankedPaths:
    """Paths in nondecreasing cost order (ties: smaller edge-id sequence)."""

    paths: tuple[Path, ...]

    @property
    def costs(self) -> tuple[Fraction, ...]:
        return tuple(p.cost for p in self.paths)

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self) -> Iterator[Path]:
        return iter(self.paths)


@dataclass(frozen=True)
class Violation:
    """One broken invariant: the rule that failed and the offending element."""

    rule: str
    subject: str

    def __str__(self) -> str:
        return f"{self.rule}: {self.subject}"


@dataclass(frozen=True, eq=True)
class Network:
    """Directed multigraph with one pricing agent per edge.

    `true_cost` and `bid` are keyed by agent id and must cover exactly the
    set of edge owners. Instances are immutable; derived lookup tables are
    built once at construction.
    """

    nodes: tuple[str, ...]
    edges: tuple[Edge, ...]
    source: str
    sink: str
    true_cost: dict[str, Fraction]
    bid: dict[str, Fraction]

    _adjacency: dict[str, tuple[Edge, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _radjacency: dict[str, tuple[Edge, ...]] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _edge_by_id: dict[str, Edge] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )
    _edge_of_owner: dict[str, Edge] = field(
        init=False, repr=False, compare=False, default_factory=dict
    )

    def __post_init__(self) -> None:
        fwd: dict[str, list[Edge]] = {}
        rev: dict[str, list[Edge]] = {}
        for edge in self.edges:
            fwd.setdefault(edge.tail, []).append(edge)
            rev.setdefault(edge.head, []).append(edge)
            self._edge_by_id.setdefault(edge.id, edge)
            self._edge_of_owner.setdefault(edge.owner, edge)
        for node, out in fwd.items():
            self._adjacency[node] = tuple(sorted(out, key=lambda e: e.id))
        for node, inc in rev.items():
            self._radjacency[node] = tuple(sorted(inc, key=lambda e: e.id))

    @property
    def agents(self) -> tuple[str, ...]:
        """All edge owners, sorted."""
        return tuple(sorted(e.owner for e in self.edges))

    def edge_of(self, agent: str) -> Edge:
        return self._edge_of_owner[agent]

    def edge(self, edge_id: str) -> Edge:
        return self._edge_by_id[edge_id]

    def out_edges(self, node: str) -> tuple[Edge, ...]:
        return self._adjacency.get(node, ())

    def in_edges(self, node: str) -> tuple[Edge, ...]:
        return self._radjacency.get(node, ())

    def truthful_bids(self) -> dict[str, Fraction]:
        return dict(self.true_cost)

    def declared_bids(self) -> dict[str, Fraction]:
        return dict(self.bid)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate(network: Network) -> list[Violation]:
    """Check every model invariant; an empty list means the network is valid.

    Violations are data, not failures: each one names the broken rule and
    the offending element so callers can print or collect them.
    """
    out: list[Violation] = []
    nodes = set(network.nodes)
    if len(nodes) != len(network.nodes):
        out.append(Violation("duplicate node", "nodes list repeats a name"))
    for endpoint, label in ((network.source, "source"), (network.sink, "sink")):
        if endpoint not in nodes:
            out.append(Violation("unknown node", f"{label} {endpoint!r}"))
    if network.source == network.sink:
        out.append(Violation("source equals sink", network.source))

    seen_edge_ids: set[str] = set()
    owner_counts: dict[str, int] = {}
    for edge in network.edges:
        if edge.id in seen_edge_ids:
            out.append(Violation("duplicate edge id", edge.id))
        seen_edge_ids.add(edge.id)
        owner_counts[edge.owner] = owner_counts.get(edge.owner, 0) + 1
        for endpoint in (edge.tail, edge.head):
            if endpoint not in nodes:
                out.append(Violation("unknown node", f"edge {edge.id} endpoint {endpoint!r}"))
    for owner, count in owner_counts.items():
        if count > 1:
            out.append(Violation("agent owns multiple edges", owner))

    owners = set(owner_counts)
    for label, costs in (("true_cost", network.true_cost), ("bid", network.bid)):
        for agent in owners - set(costs):
            out.append(Violation("missing cost", f"{label} for agent {agent}"))
        for agent in set(costs) - owners:
            out.append(Violation("unexpected cost entry", f"{label} for {agent}"))
        for agent, value in costs.items():
            if value <= 0:
                out.append(Violation("nonpositive cost", f"{label} {agent}={format_cost(value)}"))

    if out:
        # Structural problems make the reachability checks unreliable.
        return out

    if not _reachable(network, frozenset()):
        out.append(Violation("disconnected", f"no path {network.source} -> {network.sink}"))
        return out
    for edge in network.edges:
        if not _reachable(network, frozenset({edge.id})):
            out.append(Violation("agent owns a cut", edge.owner))
    return out


def _reachable(network: Network, excluded_edges: frozenset[str]) -> bool:
    seen = {network.source}
    frontier = [network.source]
    while frontier:
        node = frontier.pop()
        if node == network.sink:
            return True
        for edge in network.out_edges(node):
            if edge.id in excluded_edges or edge.head in seen:
                continue
            seen.add(edge.head)
            frontier.append(edge.head)
    return network.sink in seen


# ---------------------------------------------------------------------------
# Shortest paths
# ---------------------------------------------------------------------------


def _resolve_costs(network: Network, costs: Mapping[str, Fraction] | None) -> Mapping[str, Fraction]:
    resolved = network.bid if costs is None else costs
    for agent, value in resolved.items():
        if value < 0:
            raise ValueError(f"negative cost for agent {agent}")
    return resolved


def _distance_to_sink(
    network: Network,
    costs: Mapping[str, Fraction],
    excluded_edges: frozenset[str],
    excluded_nodes: frozenset[str],
) -> dict[str, Fraction]:
    """Dijkstra over reversed edges: exact min cost from each node to the sink."""
    dist: dict[str, Fraction] = {}
    heap: list[tuple[Fraction, str]] = [(Fraction(0), network.sink)]
    while heap:
        d, node = heapq.heappop(heap)
        if node in dist:
            continue
        dist[node] = d
        for edge in network.in_edges(node):
            if edge.id in excluded_edges or edge.tail in excluded_nodes or edge.tail in dist:
                continue
            heapq.heappush(heap, (d + costs[edge.owner], edge.tail))
    return dist


def _best_path(
    network: Network,
    costs: Mapping[str, Fraction],
    excluded_edges: frozenset[str] = frozenset(),
    excluded_nodes: frozenset[str] = frozenset(),
    start: str | None = None,
) -> Path | None:
    """Minimum-cost loopless path, lexicographically smallest edge ids among ties.

    Works by computing exact distances to the sink and then greedily walking
    tight edges in edge-id order. With strictly positive costs (at most one
    zeroed edge) the walk cannot revisit a node, so the greedy choice is the
    lexicographic minimum over all minimum-cost paths.
    """
    origin = network.source if start is None else start
    if origin in excluded_nodes or network.sink in excluded_nodes:
        return None
    dist = _distance_to_sink(network, costs, excluded_edges, excluded_nodes)
    if origin not in dist:
        return None
    edges: list[str] = []
    owners: list[str] = []
    node = origin
    visited = {origin}
    while node != network.sink:
        chosen: Edge | None = None
        for edge in network.out_edges(node):
            if edge.id in excluded_edges or edge.head in excluded_nodes or edge.head in visited:
                continue
            head_dist = dist.get(edge.head)
            if head_dist is None:
                continue
            if costs[edge.owner] + head_dist == dist[node]:
                chosen = edge
                break
        if chosen is None:
            # Only reachable through a zero-cost cycle; fall back to brute force.
            return _best_path_by_enumeration(network, costs, excluded_edges, excluded_nodes, origin)
        edges.append(chosen.id)
        owners.append(chosen.owner)
        visited.add(chosen.head)
        node = chosen.head
    return Path(tuple(edges), tuple(owners), dist[origin])


def _best_path_by_enumeration(
    network: Network,
    costs: Mapping[str, Fraction],
    excluded_edges: frozenset[str],
    excluded_nodes: frozenset[str],
    start: str,
) -> Path | None:
    best: Path | None = None
    for path in _walk_all(network, costs, excluded_edges, excluded_nodes, start):
        if best is None or (path.cost, path.edges) < (best.cost, best.edges):
            best = path
    return best


def shortest_path(network: Network, costs: Mapping[str, Fraction] | None = None) -> Path:
    """Minimum-cost loopless source-to-sink path under the given cost map.

    `costs` maps agent id to a nonnegative cost; None means the declared
    bids. Ties at the minimum are resolved toward the lexicographically
    smallest edge-id sequence, so the result is deterministic.

    Raises Disconnected when the sink is unreachable.
    """
    resolved = _resolve_costs(network, costs)
    path = _best_path(network, resolved)
    if path is None:
        raise Disconnected(f"no path {network.source} -> {network.sink}")
    return path


def iter_ranked_paths(
    network: Network, costs: Mapping[str, Fraction] | None = None
) -> Iterator[Path]:
    """Yield loopless paths in nondecreasing cost order (Yen-style deviations).

    The iterator is exhaustive: run to completion it produces every loopless
    source-to-sink path exactly once. Candidate deviations are ordered by
    (cost, edge-id sequence), matching the enumeration oracle's sort.
    """
    resolved = _resolve_costs(network, costs)
    first = _best_path(network, resolved)
    if first is None:
        raise Disconnected(f"no path {network.source} -> {network.sink}")
    yield first
    accepted: list[Path] = [first]
    accepted_keys = {first.edges}
    candidates: dict[tuple[str, ...], Path] = {}
    while True:
        prev = accepted[-1]
        prev_nodes = _node_sequence(network, prev)
        root_cost = Fraction(0)
        for i in range(len(prev.edges)):
            spur_node = prev_nodes[i]
            root_edges = prev.edges[:i]
            removed_edges = {
                p.edges[i]
                for p in accepted
                if len(p.edges) > i and p.edges[:i] == root_edges
            }
            removed_nodes = frozenset(prev_nodes[:i])
            spur = _best_path(
                network,
                resolved,
                excluded_edges=frozenset(removed_edges),
                excluded_nodes=removed_nodes,
                start=spur_node,
            )
            if spur is not None:
                edges = root_edges + spur.edges
                if edges not in accepted_keys and edges not in candidates:
                    owners = prev.owners[:i] + spur.owners
                    candidates[edges] = Path(edges, owners, root_cost + spur.cost)
            root_cost += resolved[prev.owners[i]]
        if not candidates:
            return
        best_key = min(candidates, key=lambda e: (candidates[e].cost, e))
        nxt = candidates.pop(best_key)
        accepted.append(nxt)
        accepted_keys.add(nxt.edges)
        yield nxt


def rank_paths(
    network: Network, costs: Mapping[str, Fraction] | None = None, k: int = 1
) -> RankedPaths:
    """The first min(k, total) loopless paths in nondecreasing cost order."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    out: list[Path] = []
    for path in iter_ranked_paths(network, costs):
        out.append(path)
        if len(out) == k:
            break
    return RankedPaths(tuple(out))


def _node_sequence(network: Network, path: Path) -> tuple[str, ...]:
    nodes = [network.source]
    for edge_id in path.edges:
        nodes.append(network.edge(edge_id).head)
    return tuple(nodes)


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _walk_all(
    network: Network,
    costs: Mapping[str, Fraction],
    excluded_edges: frozenset[str],
    excluded_nodes: frozenset[str],
    start: str,
) -> Iterator[Path]:
    sink = network.sink

    def recurse(
        node: str, visited: set[str], edges: list[str], owners: list[str], cost: Fraction
    ) -> Iterator[Path]:
        if node == sink:
            yield Path(tuple(edges), tuple(owners), cost)
            return
        for edge in network.out_edges(node):
            if edge.id in excluded_edges or edge.head in excluded_nodes or edge.head in visited:
                continue
            visited.add(edge.head)
            edges.append(edge.id)
            owners.append(edge.owner)
            yield from recurse(edge.head, visited, edges, owners, cost + costs[edge.owner])
            owners.pop()
            edges.pop()
            visited.remove(edge.head)

    if start not in excluded_nodes:
        yield from recurse(start, {start}, [], [], Fraction(0))


def enumerate_paths(
    network: Network, costs: Mapping[str, Fraction] | None = None
) -> RankedPaths:
    """Every loopless source-to-sink path, sorted exactly as rank_paths sorts.

    This is the desk-scale oracle the ranking algorithms are checked
    against; it refuses graphs with more than ENUMERATION_EDGE_GUARD edges.
    """
    if len(network.edges) > ENUMERATION_EDGE_GUARD:
        raise TooLarge(
            f"{len(network.edges)} edges exceeds the enumeration guard of "
            f"{ENUMERATION_EDGE_GUARD}"
        )
    resolved = _resolve_costs(network, costs)
    paths = sorted(
        _walk_all(network, resolved, frozenset(), frozenset(), network.source),
        key=lambda p: (p.cost, p.edges),
    )
    if not paths:
        raise Disconnected(f"no path {network.source} -> {network.sink}")
    return RankedPaths(tuple(paths))


# ---------------------------------------------------------------------------
# Detour costs
# ---------------------------------------------------------------------------


def detour_cost(
    network: Network,
    agent: str,
    mode: str,
    costs: Mapping[str, Fraction] | None = None,
) -> Fraction:
    """Cost of the cheapest path after sidelining one agent.

    mode "excluded": the agent's edge is removed entirely (the agent must
    not own a cut). mode "zeroed": the agent's edge is kept but priced at
    zero.
    """
    resolved = _resolve_costs(network, costs)
    if mode == "excluded":
        path = _best_path(
            network, resolved, excluded_edges=frozenset({network.edge_of(agent).id})
        )
        if path is None:
            raise Disconnected(f"removing agent {agent} disconnects the network")
        return path.cost
    if mode == "zeroed":
        zeroed = dict(resolved)
        zeroed[agent] = Fraction(0)
        path = _best_path(network, zeroed)
        if path is None:
            raise Disconnected(f"no path {network.source} -> {network.sink}")
        return path.cost
    raise ValueError(f"unknown detour mode {mode!r}")


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

_NETWORK_KEYS = {"nodes", "edges", "source", "sink"}
_EDGE_REQUIRED = {"id", "from", "to", "owner", "true_cost"}
_EDGE_KEYS = _EDGE_REQUIRED | {"bid"}


def network_from_json(text: str) -> Network:
    """Parse the normative JSON network format.

    Unknown keys are rejected; a missing edge `bid` defaults to the edge's
    `true_cost`. Costs must be canonical cost strings.
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise FormatError("network file must be a JSON object")
    unknown = set(raw) - _NETWORK_KEYS
    if unknown:
        raise FormatError(f"unknown network keys: {sorted(unknown)}")
    missing = _NETWORK_KEYS - set(raw)
    if missing:
        raise FormatError(f"missing network keys: {sorted(missing)}")
    if not isinstance(raw["nodes"], list) or not all(isinstance(n, str) for n in raw["nodes"]):
        raise FormatError("nodes must be an array of strings")
    if not isinstance(raw["edges"], list):
        raise FormatError("edges must be an array of objects")

    edges: list[Edge] = []
    true_cost: dict[str, Fraction] = {}
    bid: dict[str, Fraction] = {}
    for item in raw["edges"]:
        if not isinstance(item, dict):
            raise FormatError("each edge must be a JSON object")
        unknown = set(item) - _EDGE_KEYS
        if unknown:
            raise FormatError(f"unknown edge keys: {sorted(unknown)}")
        missing = _EDGE_REQUIRED - set(item)
        if missing:
            raise FormatError(f"edge missing keys: {sorted(missing)}")
        for key in ("id", "from", "to", "owner"):
            if not isinstance(item[key], str):
                raise FormatError(f"edge field {key} must be a string")
        owner = item["owner"]
        if owner in true_cost:
            raise FormatError(f"agent {owner} appears on more than one edge")
        edges.append(Edge(item["id"], item["from"], item["to"], owner))
        true_cost[owner] = parse_cost(item["true_cost"])
        bid[owner] = parse_cost(item["bid"]) if "bid" in item else true_cost[owner]

    for key in ("source", "sink"):
        if not isinstance(raw[key], str):
            raise FormatError(f"{key} must be a string")

    return Network(
        nodes=tuple(raw["nodes"]),
        edges=tuple(edges),
        source=raw["source"],
        sink=raw["sink"],
        true_cost=true_cost,
        bid=bid,
    )


def network_to_json(network: Network) -> str:
    """Canonical serialization: sorted nodes and edges, bid always explicit."""
    payload = {
        "nodes": sorted(network.nodes),
        "edges": [
            {
                "id": e.id,
                "from": e.tail,
                "to": e.head,
                "owner": e.owner,
                "true_cost": format_cost(network.true_cost[e.owner]),
                "bid": format_cost(network.bid[e.owner]),
            }
            for e in sorted(network.edges, key=lambda e: e.id)
        ],
        "source": network.source,
        "sink": network.sink,
    }
    return json.dumps(payload, indent=2) + "\n"


def load_network(path: str) -> Network:
    with open(path, "r", encoding="utf-8") as handle:
        return network_from_json(handle.read())


def save_network(network: Network, path: str) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(network_to_json(network))


def bids_from_json(text: str, network: Network | None = None) -> dict[str, Fraction]:
    """Parse a bid-profile file: a JSON object mapping agent id to cost string."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise FormatError("bid file must be a JSON object")
    bids = {}
    for agent, value in raw.items():
        bids[agent] = parse_cost(value)
    if network is not None and set(bids) != set(network.agents):
        raise FormatError("bid profile must cover exactly the network's agents")
    return bids


def bids_to_json(bids: Mapping[str, Fraction]) -> str:
    return json.dumps({a: format_cost(v) for a, v in sorted(bids.items())}, indent=2) + "\n"
