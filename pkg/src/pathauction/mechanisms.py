"""Payment rules for single-item auctions and procurement path auctions.

Two families live here:

* Single-item sealed-bid auctions (first price, second price, and a
  convex blend of the two), in forward form (highest bid wins and pays)
  and reverse form (lowest bid wins and is paid).

* Path auctions on a Network: pay-as-bid, marginal pricing (each winner
  is paid the detour cost its absence would cause minus the detour cost
  of making it free), and a group-sharing rule that partitions the
  winning path's agents by how far down the ranking they survive and pays
  each group the cost gap it protects, split by a configurable rule.
  Three variants trade revenue for stronger truth-telling pressure.

Every function is pure: it reads its arguments, returns a PaymentResult
and never mutates shared state. Strict cost order among the path ranks a
rule consumes is a precondition; equal costs raise TieError rather than
guessing a tie-break with unknown incentive effects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import (
    EmptyGroup,
    InsufficientPaths,
    NonpositiveProfit,
    NotSelected,
    TieError,
)
from .graph import Network, Path, RankedPaths, detour_cost, iter_ranked_paths

RULE_KINDS = ("equal", "reverse-rank", "waterfall", "compound")

MECHANISM_IDS = (
    "fp-single",
    "vickrey-single",
    "avg-single",
    "fp-path",
    "vcg",
    "x",
    "tradeoff1",
    "tradeoff2",
    "tradeoff3",
)


@dataclass(frozen=True)
class DistributionRule:
    """How a group's pooled profit is split among its members.

    equal: every member gets pool/m.
    reverse-rank: members are ranked by bid, and the j-th largest bidder
        receives the proportion of the pool that the j-th smallest bid
        represents (low bidders earn the larger shares).
    waterfall: every member first gets a guaranteed minimum `delta`, then
        the lowest current payments are raised in lock step until the pool
        is spent.
    compound: waterfall, with any remainder after all payments equalize
        split evenly.
    """

    kind: str
    delta: Fraction | None = None

    def __post_init__(self) -> None:
        if self.kind not in RULE_KINDS:
            raise ValueError(f"unknown distribution rule {self.kind!r}")
        needs_delta = self.kind in ("waterfall", "compound")
        if needs_delta and self.delta is None:
            raise ValueError(f"rule {self.kind!r} requires delta")
        if not needs_delta and self.delta is not None:
            raise ValueError(f"rule {self.kind!r} does not take delta")
        if self.delta is not None and self.delta < 0:
            raise ValueError("delta must be nonnegative")


EQUAL_SPLIT = DistributionRule("equal")


@dataclass(frozen=True)
class GroupAssignment:
    """Group index per winning-path agent.

    An agent has group q when it lies on every one of the q cheapest paths
    and not on the (q+1)-th. Only agents of the cheapest path are
    assigned. `present_groups` is the strictly increasing list of indices
    that actually occur and `max_group` its largest entry; indices may
    skip values.
    """

    group_of: dict[str, int]
    present_groups: tuple[int, ...]
    max_group: int

    def members(self, group: int) -> tuple[str, ...]:
        return tuple(sorted(a for a, q in self.group_of.items() if q == group))


@dataclass(frozen=True)
class GroupProfits:
    """Pooled profit per present group index."""

    by_group: dict[int, Fraction]

    def total(self) -> Fraction:
        return sum(self.by_group.values(), Fraction(0))


@dataclass(frozen=True)
class PaymentResult:
    """Outcome of one mechanism run.

    `payments` and `utilities` cover every participant, zero for the
    unselected. In procurement settings utility is payment minus true
    cost and the mechanism's own utility is the negated total; in forward
    auctions utility is value minus price and the mechanism's utility is
    its revenue.
    """

    payments: dict[str, Fraction]
    utilities: dict[str, Fraction]
    total: Fraction
    mechanism_utility: Fraction
    selected: tuple[str, ...]
    chosen_path: Path | None = None
    winner: str | None = None
    groups: dict[str, int] | None = None
    branch: str | None = None

    def payment(self, agent: str) -> Fraction:
        return self.payments[agent]

    def utility(self, agent: str) -> Fraction:
        return self.utilities[agent]


# ---------------------------------------------------------------------------
# Single-item auctions
# ---------------------------------------------------------------------------


def _single_item(
    bids: Mapping[str, Fraction],
    orientation: str,
    price: Callable[[Fraction, Fraction], Fraction],
    types: Mapping[str, Fraction] | None,
) -> PaymentResult:
    if orientation not in ("forward", "reverse"):
        raise ValueError(f"orientation must be forward or reverse, got {orientation!r}")
    if len(bids) < 2:
        raise ValueError("single-item auctions need at least two participants")
    for agent, value in bids.items():
        if value <= 0:
            raise ValueError(f"nonpositive bid for {agent}")
    types = bids if types is None else types

    forward = orientation == "forward"
    best = max(bids.values()) if forward else min(bids.values())
    winners = sorted(a for a, v in bids.items() if v == best)
    if len(winners) > 1:
        raise TieError(f"tied winning bid among {winners}")
    winner = winners[0]
    rest = [v for a, v in bids.items() if a != winner]
    second = max(rest) if forward else min(rest)
    amount = price(best, second)

    payments = {a: Fraction(0) for a in bids}
    utilities = {a: Fraction(0) for a in bids}
    payments[winner] = amount
    if forward:
        utilities[winner] = types[winner] - amount
        mech = amount
    else:
        utilities[winner] = amount - types[winner]
        mech = -amount
    return PaymentResult(
        payments=payments,
        utilities=utilities,
        total=amount,
        mechanism_utility=mech,
        selected=(winner,),
        winner=winner,
    )


def first_price_single(
    bids: Mapping[str, Fraction],
    orientation: str = "forward",
    types: Mapping[str, Fraction] | None = None,
) -> PaymentResult:
    """Winner pays (forward) or is paid (reverse) its own bid."""
    return _single_item(bids, orientation, lambda own, second: own, types)


def vickrey_single(
    bids: Mapping[str, Fraction],
    orientation: str = "forward",
    types: Mapping[str, Fraction] | None = None,
) -> PaymentResult:
    """Winner pays (forward) or is paid (reverse) the second-best bid."""
    return _single_item(bids, orientation, lambda own, second: second, types)


def averaged_single(
    bids: Mapping[str, Fraction],
    lam: Fraction,
    orientation: str = "forward",
    types: Mapping[str, Fraction] | None = None,
) -> PaymentResult:
    """Blend of own bid and second bid: price = lam*own + (1-lam)*second.

    lam = 0 reduces to the second-price rule, lam = 1 to pay-as-bid.
    """
    if not (0 <= lam <= 1):
        raise ValueError("lam must lie in [0, 1]")
    return _single_item(
        bids, orientation, lambda own, second: lam * own + (1 - lam) * second, types
    )


# ---------------------------------------------------------------------------
# Ranking prefix shared by the path mechanisms
# ---------------------------------------------------------------------------


def _resolve_bids(network: Network, bids: Mapping[str, Fraction] | None) -> dict[str, Fraction]:
    resolved = dict(network.bid if bids is None else bids)
    if set(resolved) != set(network.agents):
        raise ValueError("bid profile must cover exactly the network's agents")
    for agent, value in resolved.items():
        if value <= 0:
            raise ValueError(f"nonpositive bid for {agent}")
    return resolved


def _require_strict_prefix(paths: Sequence[Path], upto: int) -> None:
    """TieError unless costs are strictly increasing over paths[0..upto]."""
    for j in range(min(upto, len(paths) - 1)):
        if paths[j].cost == paths[j + 1].cost:
            raise TieError(
                f"paths ranked {j + 1} and {j + 2} tie at cost {paths[j].cost}"
            )


def _grouping_prefix(network: Network, bids: Mapping[str, Fraction]) -> RankedPaths:
    """Shortest ranked prefix in which every cheapest-path agent is absent once."""
    paths: list[Path] = []
    remaining: set[str] = set()
    for path in iter_ranked_paths(network, bids):
        paths.append(path)
        if len(paths) == 1:
            remaining = set(path.owners)
            continue
        remaining -= {a for a in remaining if a not in path.owner_set}
        if not remaining:
            return RankedPaths(tuple(paths))
    raise InsufficientPaths(
        f"agents {sorted(remaining)} appear on every source-to-sink path"
    )


def classify_groups(ranked: RankedPaths) -> GroupAssignment:
    """Assign each cheapest-path agent its survival group index.

    The group index of an agent is the number of consecutive ranks, from
    the top, whose paths all contain it; equivalently the rank just before
    its first absence. Costs must be strictly increasing over the consumed
    prefix, up to and including each agent's first absence.
    """
    paths = ranked.paths
    if not paths:
        raise InsufficientPaths("no ranked paths supplied")
    group_of: dict[str, int] = {}
    for agent in paths[0].owners:
        first_absent = next(
            (j for j, p in enumerate(paths) if agent not in p.owner_set), None
        )
        if first_absent is None:
            raise InsufficientPaths(f"agent {agent} appears in every supplied path")
        group_of[agent] = first_absent
    max_group = max(group_of.values())
    _require_strict_prefix(paths, max_group)
    present = tuple(sorted(set(group_of.values())))
    return GroupAssignment(group_of=group_of, present_groups=present, max_group=max_group)


def group_profits(assignment: GroupAssignment, ranked: RankedPaths) -> GroupProfits:
    """Pooled profit per present group.

    Group q's pool is the cost gap between its own substitute path (rank
    q+1) and the substitute path of the previous present group, with the
    cheapest path itself standing in below the first present group. The
    pools telescope: they sum to cost(rank max+1) - cost(rank 1).
    """
    paths = ranked.paths
    if len(paths) <= assignment.max_group:
        raise InsufficientPaths(
            f"need {assignment.max_group + 1} ranked paths, got {len(paths)}"
        )
    _require_strict_prefix(paths, assignment.max_group)
    by_group: dict[int, Fraction] = {}
    previous = 0
    for q in assignment.present_groups:
        by_group[q] = paths[q].cost - paths[previous].cost
        previous = q
    return GroupProfits(by_group=by_group)


# ---------------------------------------------------------------------------
# Profit distribution within a group
# ---------------------------------------------------------------------------


def distribute(
    rule: DistributionRule,
    group_bids: Sequence[tuple[str, Fraction]],
    profit: Fraction,
) -> dict[str, Fraction]:
    """Split a positive profit pool among a group's members.

    Returns each member's pure profit (not payment). Shares always sum to
    the pool exactly. Bid ties are ordered by agent id so results are
    deterministic.
    """
    if not group_bids:
        raise EmptyGroup("cannot distribute to an empty group")
    if profit <= 0:
        raise NonpositiveProfit(f"profit pool must be positive, got {profit}")
    m = len(group_bids)

    if rule.kind == "equal":
        share = profit / m
        return {agent: share for agent, _ in group_bids}

    if rule.kind == "reverse-rank":
        by_size = sorted(group_bids, key=lambda ab: (-ab[1], ab[0]))
        total = sum(b for _, b in group_bids)
        return {
            by_size[j][0]: profit * by_size[m - 1 - j][1] / total for j in range(m)
        }

    # waterfall / compound
    delta = rule.delta if rule.delta is not None else Fraction(0)
    if profit < m * delta:
        delta = profit / m
    pay = {agent: bid + delta for agent, bid in group_bids}
    pool = profit - m * delta
    while pool > 0:
        low = min(pay.values())
        at_low = [agent for agent, value in pay.items() if value == low]
        higher = [value for value in pay.values() if value > low]
        if higher:
            step = min(higher) - low
            cost = step * len(at_low)
            if cost <= pool:
                for agent in at_low:
                    pay[agent] += step
                pool -= cost
                continue
        # Pool runs out before the next level (or all levels already equal):
        # spread what is left evenly over the current lowest payments.
        bump = pool / len(at_low)
        for agent in at_low:
            pay[agent] += bump
        pool = Fraction(0)
    bids_by_agent = dict(group_bids)
    return {agent: pay[agent] - bids_by_agent[agent] for agent in pay}


# ---------------------------------------------------------------------------
# Path mechanisms
# ---------------------------------------------------------------------------


def _path_result(
    network: Network,
    chosen: Path,
    payments_on_path: Mapping[str, Fraction],
    groups: Mapping[str, int] | None = None,
) -> PaymentResult:
    payments = {a: Fraction(0) for a in network.agents}
    utilities = {a: Fraction(0) for a in network.agents}
    for agent, amount in payments_on_path.items():
        payments[agent] = amount
        utilities[agent] = amount - network.true_cost[agent]
    total = sum(payments.values(), Fraction(0))
    return PaymentResult(
        payments=payments,
        utilities=utilities,
        total=total,
        mechanism_utility=-total,
        selected=tuple(sorted(payments_on_path)),
        chosen_path=chosen,
        groups=dict(groups) if groups is not None else None,
    )


def _top_two(network: Network, bids: Mapping[str, Fraction]) -> Path:
    """The cheapest path, strictly cheaper than the runner-up."""
    top = list(itertools.islice(iter_ranked_paths(network, bids), 2))
    if len(top) == 2 and top[0].cost == top[1].cost:
        raise TieError(f"two cheapest paths tie at cost {top[0].cost}")
    return top[0]


def first_price_path(
    network: Network, bids: Mapping[str, Fraction] | None = None
) -> PaymentResult:
    """Pay-as-bid: each agent on the cheapest path is paid its own bid."""
    resolved = _resolve_bids(network, bids)
    chosen = _top_two(network, resolved)
    return _path_result(network, chosen, {a: resolved[a] for a in chosen.owners})


def vcg_path(network: Network, bids: Mapping[str, Fraction] | None = None) -> PaymentResult:
    """Marginal pricing on the cheapest path.

    Each selected agent is paid the cost of the cheapest path avoiding its
    edge minus the cost of the cheapest path with its edge priced at zero.
    Unselected agents are paid nothing.
    """
    resolved = _resolve_bids(network, bids)
    chosen = _top_two(network, resolved)
    pay = {
        agent: detour_cost(network, agent, "excluded", resolved)
        - detour_cost(network, agent, "zeroed", resolved)
        for agent in chosen.owners
    }
    return _path_result(network, chosen, pay)


def group_structure(
    network: Network, bids: Mapping[str, Fraction] | None = None
) -> tuple[RankedPaths, GroupAssignment, GroupProfits]:
    """Ranked prefix, survival groups and pooled profits for the cheapest path."""
    resolved = _resolve_bids(network, bids)
    ranked = _grouping_prefix(network, resolved)
    assignment = classify_groups(ranked)
    return ranked, assignment, group_profits(assignment, ranked)


def group_share_path(
    network: Network,
    bids: Mapping[str, Fraction] | None = None,
    rule: DistributionRule = EQUAL_SPLIT,
) -> PaymentResult:
    """Group-sharing payments on the cheapest path.

    Agents of the cheapest path are grouped by survival depth; each group's
    pooled profit is the ranking cost gap it protects, split among members
    by `rule`. Every selected agent receives its bid plus its share, so
    the grand total always equals the cost of the path ranked just past
    the deepest group.
    """
    resolved = _resolve_bids(network, bids)
    ranked, assignment, pools = group_structure(network, resolved)
    pay: dict[str, Fraction] = {}
    for q in assignment.present_groups:
        members = assignment.members(q)
        shares = distribute(rule, [(a, resolved[a]) for a in members], pools.by_group[q])
        for agent in members:
            pay[agent] = resolved[agent] + shares[agent]
    return _path_result(network, ranked.paths[0], pay, groups=assignment.group_of)


def savings_switch_path(
    network: Network,
    bids: Mapping[str, Fraction] | None = None,
    threshold: Fraction = Fraction(0),
    rule: DistributionRule = EQUAL_SPLIT,
) -> PaymentResult:
    """Run marginal pricing unless group sharing saves more than `threshold`.

    The relative saving is (marginal total - group total) / marginal total,
    taken as 0 when the marginal total is 0. Above the threshold the
    group-sharing payments apply, otherwise the marginal ones. The result's
    `branch` records which side was used.
    """
    if not (0 <= threshold <= 1):
        raise ValueError("threshold must lie in [0, 1]")
    marginal = vcg_path(network, bids)
    shared = group_share_path(network, bids, rule)
    if marginal.total == 0:
        ratio = Fraction(0)
    else:
        ratio = (marginal.total - shared.total) / marginal.total
    if ratio > threshold:
        return replace(shared, branch="x")
    return replace(marginal, branch="vcg", groups=shared.groups)


def member_gap_path(
    network: Network, bids: Mapping[str, Fraction] | None = None
) -> PaymentResult:
    """Every member of group q earns the adjacent ranking gap, unshared.

    The profit of each group-q agent is cost(rank q+1) - cost(rank q),
    paid per member rather than pooled.
    """
    resolved = _resolve_bids(network, bids)
    ranked, assignment, _ = group_structure(network, resolved)
    costs = ranked.costs
    pay = {
        agent: resolved[agent] + (costs[q] - costs[q - 1])
        for agent, q in assignment.group_of.items()
    }
    return _path_result(network, ranked.paths[0], pay, groups=assignment.group_of)


def member_gap_schedule(
    network: Network,
    agent: str,
    raise_by: Fraction,
    bids: Mapping[str, Fraction] | None = None,
) -> Fraction:
    """Payment to `agent` under member_gap_path after it alone raises its bid.

    The schedule is bracketed by the baseline ranking: within the adjacent
    gap the payment is flat; past it the payment jumps to successively
    wider gaps; past the gap to the cheapest path the agent is priced out
    and paid nothing. All brackets use the baseline group index and costs.
    """
    if raise_by < 0:
        raise ValueError("raise_by must be nonnegative")
    resolved = _resolve_bids(network, bids)
    ranked, assignment, _ = group_structure(network, resolved)
    if agent not in assignment.group_of:
        raise NotSelected(f"agent {agent} is not on the cheapest path")
    k = assignment.group_of[agent]
    costs = ranked.costs
    own = resolved[agent]

    def gap(j: int) -> Fraction:
        # cost(rank k+1) - cost(rank j), ranks 1-based, costs 0-based.
        return costs[k] - costs[j - 1]

    if raise_by <= gap(k):
        return gap(k) + own
    for j in range(k - 1, 0, -1):
        if gap(j) >= raise_by > gap(j + 1):
            return gap(j) + own
    return Fraction(0)


def shared_gap_to_best_path(
    network: Network, bids: Mapping[str, Fraction] | None = None
) -> PaymentResult:
    """Each group shares the gap between its substitute path and the cheapest.

    Group q's pool is cost(rank q+1) - cost(rank 1), split evenly among its
    members; per-member profit is therefore never above what marginal
    pricing would grant the same agent.
    """
    resolved = _resolve_bids(network, bids)
    ranked, assignment, _ = group_structure(network, resolved)
    costs = ranked.costs
    pay: dict[str, Fraction] = {}
    for q in assignment.present_groups:
        members = assignment.members(q)
        share = (costs[q] - costs[0]) / len(members)
        for agent in members:
            pay[agent] = resolved[agent] + share
    return _path_result(network, ranked.paths[0], pay, groups=assignment.group_of)


# ---------------------------------------------------------------------------
# Uniform dispatch and side-by-side comparison
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MechanismSpec:
    """A mechanism id plus the parameters it needs, runnable on a network.

    Single-item ids treat the network's agents as the bidders and ignore
    the topology; `orientation` applies only to them.
    """

    mechanism: str
    rule: DistributionRule = EQUAL_SPLIT
    lam: Fraction | None = None
    threshold: Fraction | None = None
    orientation: str = "reverse"

    def __post_init__(self) -> None:
        if self.mechanism not in MECHANISM_IDS:
            raise ValueError(f"unknown mechanism {self.mechanism!r}")

    def run(self, network: Network, bids: Mapping[str, Fraction] | None = None) -> PaymentResult:
        resolved = _resolve_bids(network, bids)
        name = self.mechanism
        if name == "fp-single":
            return first_price_single(resolved, self.orientation, network.true_cost)
        if name == "vickrey-single":
            return vickrey_single(resolved, self.orientation, network.true_cost)
        if name == "avg-single":
            lam = self.lam if self.lam is not None else Fraction(1, 2)
            return averaged_single(resolved, lam, self.orientation, network.true_cost)
        if name == "fp-path":
            return first_price_path(network, resolved)
        if name == "vcg":
            return vcg_path(network, resolved)
        if name == "x":
            return group_share_path(network, resolved, self.rule)
        if name == "tradeoff1":
            threshold = self.threshold if self.threshold is not None else Fraction(0)
            return savings_switch_path(network, resolved, threshold, self.rule)
        if name == "tradeoff2":
            return member_gap_path(network, resolved)
        return shared_gap_to_best_path(network, resolved)


def compare_mechanisms(
    network: Network,
    bids: Mapping[str, Fraction] | None,
    specs: Iterable[MechanismSpec],
) -> list[tuple[MechanismSpec, PaymentResult]]:
    """Run several mechanisms on the same bids, one independent row each."""
    return [(spec, spec.run(network, bids)) for spec in specs]
