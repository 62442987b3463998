"""Built-in benchmark networks.

Four small instances exercise every interesting shape:

* example1: six-route network whose truthful path costs are
  6, 7, 9, 10, 15, 16 and whose cheapest path carries agents from four
  distinct survival groups.
* fig2: a three-edge series route (cost 3) against one parallel edge
  (cost 5).
* fig3: two parallel source-to-sink edges, costs 1 and 5; the smallest
  instance on which every path mechanism degenerates to a second-price
  auction.
* xsmall: a two-edge route (1 + 1) against one parallel edge (cost 4);
  small enough for exhaustive bid-grid analysis of the group-sharing
  rule.
"""

from __future__ import annotations

from fractions import Fraction

from .graph import Edge, Network


def _build(edge_rows: list[tuple[str, str, str, int]], source: str, sink: str) -> Network:
    nodes = sorted({n for _, tail, head, _ in edge_rows for n in (tail, head)})
    edges = tuple(Edge(eid, tail, head, eid) for eid, tail, head, _ in edge_rows)
    costs = {eid: Fraction(c) for eid, _, _, c in edge_rows}
    return Network(
        nodes=tuple(nodes),
        edges=edges,
        source=source,
        sink=sink,
        true_cost=costs,
        bid=dict(costs),
    )


def example1() -> Network:
    return _build(
        [
            ("A", "X", "n1", 1),
            ("B", "n1", "n2", 1),
            ("C", "n2", "n3", 1),
            ("D", "n3", "n4", 1),
            ("E", "n4", "n5", 1),
            ("F", "n5", "Y", 1),
            ("G", "n1", "g1", 1),
            ("K", "g1", "n3", 2),
            ("H", "n1", "h1", 2),
            ("I", "h1", "n3", 3),
            ("J", "X", "j1", 4),
            ("P", "j1", "n4", 4),
            ("M", "n1", "m1", 6),
            ("L", "m1", "n5", 7),
            ("N", "X", "q1", 8),
            ("O", "q1", "Y", 8),
        ],
        source="X",
        sink="Y",
    )


def fig2() -> Network:
    return _build(
        [
            ("a", "X", "m1", 1),
            ("b", "m1", "m2", 1),
            ("c", "m2", "Y", 1),
            ("d", "X", "Y", 5),
        ],
        source="X",
        sink="Y",
    )


def fig3() -> Network:
    return _build(
        [
            ("e", "X", "Y", 1),
            ("f", "X", "Y", 5),
        ],
        source="X",
        sink="Y",
    )


def xsmall() -> Network:
    return _build(
        [
            ("r", "X", "a1", 1),
            ("s", "a1", "Y", 1),
            ("u", "X", "Y", 4),
        ],
        source="X",
        sink="Y",
    )


FIXTURES = {
    "example1": example1,
    "fig2": fig2,
    "fig3": fig3,
    "xsmall": xsmall,
}


def fixture(name: str) -> Network:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURES)}") from None
