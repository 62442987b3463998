"""Exhaustive small-instance incentive analysis.

Given an auction game (a path mechanism on a network, or a single-item
auction over a type vector) and a finite bid grid per agent, this module
answers, by full enumeration:

* how often an agent is selected at a given bid (selection probability
  over the uniform grid of opponent profiles),
* which bids are best responses, and which survive as each agent's
  rational bid set under three strategy refinements,
* which full profiles the mechanism itself prefers (its utility argmax),
* whether the agents' preferred profiles and the mechanism's preferred
  profiles can coincide, and how a mechanism classifies across a suite
  of instances (strongly/partially/impossible consistent),
* executable property checkers: partial truthfulness, criticality of the
  total payment, the exact per-group criticality identity of the
  group-sharing rule, per-group payment invariance under rank-preserving
  bid changes, and exhaustive best-response truthfulness.

Profiles that violate a mechanism's strict-order precondition (cost ties)
are excluded from profile sets and scored as "not selected, utility 0"
inside best-response evaluation. All reports are canonically ordered
(agents lexicographic, profiles lexicographic) so results do not depend
on enumeration order; enumeration may be parallelized freely.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .errors import Disconnected, GenerationFailed, GridTooLarge, TieError, TooLarge
from .graph import Edge, Network, enumerate_paths, validate
from .mechanisms import (
    EQUAL_SPLIT,
    DistributionRule,
    MechanismSpec,
    PaymentResult,
    averaged_single,
    first_price_single,
    group_share_path,
    group_structure,
    vcg_path,
    vickrey_single,
)
from .rational import format_cost

#: Upper bound on the full profile product space any operation will enumerate.
PROFILE_GUARD = 10**6

MODES = ("undominated", "all", "dominant")


# ---------------------------------------------------------------------------
# Games and grids
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SingleItemGame:
    """A sealed-bid single-item auction over a fixed private type vector."""

    types: dict[str, Fraction]
    mechanism: str = "vickrey"
    orientation: str = "forward"
    lam: Fraction | None = None

    def __post_init__(self) -> None:
        if self.mechanism not in ("first-price", "vickrey", "averaged"):
            raise ValueError(f"unknown single-item mechanism {self.mechanism!r}")

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(sorted(self.types))

    @property
    def procurement(self) -> bool:
        return self.orientation == "reverse"

    def truthful(self) -> dict[str, Fraction]:
        return dict(self.types)

    def run(self, bids: Mapping[str, Fraction]) -> PaymentResult:
        if self.mechanism == "first-price":
            return first_price_single(bids, self.orientation, self.types)
        if self.mechanism == "vickrey":
            return vickrey_single(bids, self.orientation, self.types)
        lam = self.lam if self.lam is not None else Fraction(1, 2)
        return averaged_single(bids, lam, self.orientation, self.types)


@dataclass(frozen=True)
class PathGame:
    """A path mechanism played on a fixed network (procurement side)."""

    network: Network
    spec: MechanismSpec = MechanismSpec("x")

    @property
    def agents(self) -> tuple[str, ...]:
        return self.network.agents

    @property
    def types(self) -> dict[str, Fraction]:
        return dict(self.network.true_cost)

    @property
    def procurement(self) -> bool:
        return True

    def truthful(self) -> dict[str, Fraction]:
        return dict(self.network.true_cost)

    def run(self, bids: Mapping[str, Fraction]) -> PaymentResult:
        return self.spec.run(self.network, bids)


@dataclass(frozen=True)
class BidGrid:
    """A finite, strictly increasing list of allowed bids per agent."""

    bids_for: dict[str, tuple[Fraction, ...]]

    def __post_init__(self) -> None:
        for agent, bids in self.bids_for.items():
            if not bids:
                raise ValueError(f"empty grid for agent {agent}")
            if any(b2 <= b1 for b1, b2 in zip(bids, bids[1:])):
                raise ValueError(f"grid for agent {agent} must be strictly increasing")

    @property
    def agents(self) -> tuple[str, ...]:
        return tuple(sorted(self.bids_for))

    def product_size(self) -> int:
        size = 1
        for bids in self.bids_for.values():
            size *= len(bids)
        return size

    @classmethod
    def procurement(
        cls, types: Mapping[str, Fraction], unit: Fraction = Fraction(1), cap: int = 3
    ) -> "BidGrid":
        """Each agent may bid its true cost or up to `cap` units above it."""
        return cls(
            {a: tuple(t + i * unit for i in range(cap + 1)) for a, t in types.items()}
        )

    @classmethod
    def forward(
        cls, types: Mapping[str, Fraction], unit: Fraction = Fraction(1)
    ) -> "BidGrid":
        """Each bidder may bid any positive multiple of `unit` up to its value."""
        grids: dict[str, tuple[Fraction, ...]] = {}
        for agent, t in types.items():
            bids = []
            v = unit
            while v <= t:
                bids.append(v)
                v += unit
            if not bids:
                raise ValueError(f"type {t} of {agent} is below one currency unit")
            grids[agent] = tuple(bids)
        return cls(grids)


def default_grid(game, unit: Fraction = Fraction(1), cap: int = 3) -> BidGrid:
    """The conventional grid for a game: procurement above type, forward below."""
    if game.procurement:
        return BidGrid.procurement(game.types, unit, cap)
    return BidGrid.forward(game.types, unit)


# ---------------------------------------------------------------------------
# Profile evaluation with caching
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Outcome:
    utilities: tuple[Fraction, ...]
    mechanism_utility: Fraction
    selected: frozenset[str]


class _Evaluator:
    """Evaluates full bid profiles once and caches compact outcomes.

    Profiles are tuples aligned with the sorted agent order. An outcome of
    None means the profile violates the mechanism's preconditions (a cost
    tie) and is inadmissible.
    """

    def __init__(self, game, grid: BidGrid):
        if set(grid.agents) != set(game.agents):
            raise ValueError("grid must cover exactly the game's agents")
        self.game = game
        self.agents: tuple[str, ...] = grid.agents
        self.index = {a: i for i, a in enumerate(self.agents)}
        self.grids: tuple[tuple[Fraction, ...], ...] = tuple(
            grid.bids_for[a] for a in self.agents
        )
        self._cache: dict[tuple[Fraction, ...], _Outcome | None] = {}

    def require_enumerable(self, skip_agent: str | None = None) -> None:
        """Guard any operation that walks a grid product."""
        size = 1
        for agent, bids in zip(self.agents, self.grids):
            if agent != skip_agent:
                size *= len(bids)
        if size > PROFILE_GUARD:
            raise GridTooLarge(f"profile space {size} exceeds {PROFILE_GUARD}")

    def outcome(self, profile: tuple[Fraction, ...]) -> _Outcome | None:
        hit = self._cache.get(profile)
        if hit is None and profile not in self._cache:
            try:
                result = self.game.run(dict(zip(self.agents, profile)))
            except TieError:
                hit = None
            else:
                hit = _Outcome(
                    utilities=tuple(result.utilities[a] for a in self.agents),
                    mechanism_utility=result.mechanism_utility,
                    selected=frozenset(result.selected),
                )
            self._cache[profile] = hit
        return hit

    def profiles(self) -> Iterator[tuple[Fraction, ...]]:
        return itertools.product(*self.grids)

    def opponent_profiles(self, agent: str) -> Iterator[tuple[tuple[Fraction, ...], ...]]:
        others = [g for a, g in zip(self.agents, self.grids) if a != agent]
        return itertools.product(*others)

    def assemble(
        self, agent: str, bid: Fraction, opponents: tuple[Fraction, ...]
    ) -> tuple[Fraction, ...]:
        i = self.index[agent]
        return opponents[:i] + (bid,) + opponents[i:]

    def utility(self, agent: str, profile: tuple[Fraction, ...]) -> Fraction:
        out = self.outcome(profile)
        if out is None:
            return Fraction(0)
        return out.utilities[self.index[agent]]


# ---------------------------------------------------------------------------
# Selection probability and best responses
# ---------------------------------------------------------------------------


def selection_probability(game, grid: BidGrid, agent: str, bid: Fraction) -> Fraction:
    """Fraction of admissible opponent profiles under which `agent` is selected.

    Opponent profiles are weighted uniformly; profiles whose completed bid
    vector violates the mechanism's preconditions are excluded from the
    count entirely.
    """
    return _selection_probability(_Evaluator(game, grid), agent, bid)


def _selection_probability(ev: _Evaluator, agent: str, bid: Fraction) -> Fraction:
    ev.require_enumerable(skip_agent=agent)
    admissible = 0
    selected = 0
    for opponents in ev.opponent_profiles(agent):
        out = ev.outcome(ev.assemble(agent, bid, opponents))
        if out is None:
            continue
        admissible += 1
        if agent in out.selected:
            selected += 1
    if admissible == 0:
        return Fraction(0)
    return Fraction(selected, admissible)


def best_response_set(
    game, grid: BidGrid, agent: str, opponent_profile: Mapping[str, Fraction]
) -> set[Fraction]:
    """All grid bids maximizing the agent's utility against one fixed profile.

    Profiles that hit a cost tie score as "not selected, utility 0".
    """
    ev = _Evaluator(game, grid)
    others = tuple(a for a in ev.agents if a != agent)
    if set(opponent_profile) != set(others):
        raise ValueError("opponent profile must cover exactly the other agents")
    opponents = tuple(opponent_profile[a] for a in others)
    for other, value in zip(others, opponents):
        if value not in grid.bids_for[other]:
            raise ValueError(f"bid {value} for {other} is off the grid")
    utilities = {
        bid: ev.utility(agent, ev.assemble(agent, bid, opponents))
        for bid in grid.bids_for[agent]
    }
    best = max(utilities.values())
    return {bid for bid, u in utilities.items() if u == best}


def _utility_vectors(
    ev: _Evaluator, agent: str
) -> tuple[list[tuple[Fraction, ...]], dict[Fraction, tuple[Fraction, ...]]]:
    """Per-bid utility vectors over the full ordered opponent product."""
    ev.require_enumerable()
    opponents = list(ev.opponent_profiles(agent))
    own = ev.grids[ev.index[agent]]
    vectors = {
        bid: tuple(ev.utility(agent, ev.assemble(agent, bid, opp)) for opp in opponents)
        for bid in own
    }
    return opponents, vectors


def _optimal_bids(ev: _Evaluator, agent: str, mode: str) -> tuple[Fraction, ...]:
    if mode not in MODES:
        raise ValueError(f"unknown strategy mode {mode!r}")
    opponents, vectors = _utility_vectors(ev, agent)
    own = ev.grids[ev.index[agent]]
    n_opp = len(opponents)

    best_anywhere: set[Fraction] = set()
    best_everywhere: set[Fraction] = set(own)
    for j in range(n_opp):
        column_best = max(vectors[bid][j] for bid in own)
        winners = {bid for bid in own if vectors[bid][j] == column_best}
        best_anywhere |= winners
        best_everywhere &= winners

    if mode == "all":
        return tuple(sorted(best_anywhere))

    base = best_everywhere if mode == "dominant" else best_anywhere
    survivors = [
        bid
        for bid in sorted(base)
        if not any(_dominates(vectors[other], vectors[bid]) for other in own if other != bid)
    ]

    # Bids whose utility vectors are exactly equal are interchangeable on
    # the grid; a rational risk-averse agent resolves the indifference
    # toward the truthful bid, so each equal class keeps only its member
    # closest to the true type.
    truthful = ev.game.types[agent]
    by_vector: dict[tuple[Fraction, ...], list[Fraction]] = {}
    for bid in survivors:
        by_vector.setdefault(vectors[bid], []).append(bid)
    kept = [
        min(bids, key=lambda b: (abs(b - truthful), b)) for bids in by_vector.values()
    ]
    return tuple(sorted(kept))


def _dominates(left: tuple[Fraction, ...], right: tuple[Fraction, ...]) -> bool:
    """Weak dominance: at least as good everywhere, strictly better somewhere."""
    strict = False
    for lv, rv in zip(left, right):
        if lv < rv:
            return False
        if lv > rv:
            strict = True
    return strict


def agent_optimal_bids(
    game, grid: BidGrid, agent: str, mode: str = "undominated"
) -> tuple[Fraction, ...]:
    """The agent's rational bid set under the chosen refinement.

    "all": every bid that is a best response to at least one opponent
    profile. "undominated": those of them not weakly dominated by another
    grid bid, with exact-tie indifference resolved toward the truthful
    bid. "dominant": bids that are best responses to every profile, same
    indifference resolution.
    """
    return _optimal_bids(_Evaluator(game, grid), agent, mode)


# ---------------------------------------------------------------------------
# Profile sets and the alignment report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConsistencyReport:
    """Agent-optimal and mechanism-optimal bid sets for one instance."""

    agents: tuple[str, ...]
    mode: str
    grid: dict[str, tuple[Fraction, ...]]
    agent_optimal: dict[str, tuple[Fraction, ...]]
    joint_optimal: tuple[tuple[Fraction, ...], ...]
    mechanism_optimal: tuple[tuple[Fraction, ...], ...]
    aligned: tuple[tuple[Fraction, ...], ...]
    verdict: str  # "nonempty" | "empty" | "inadmissible"

    def profile_dicts(self, which: str) -> list[dict[str, str]]:
        profiles = getattr(self, which)
        return [
            {a: format_cost(v) for a, v in zip(self.agents, profile)}
            for profile in profiles
        ]

    def to_json_dict(self) -> dict:
        return {
            "agents": list(self.agents),
            "mode": self.mode,
            "grid": {a: [format_cost(v) for v in g] for a, g in sorted(self.grid.items())},
            "obs": {
                a: [format_cost(v) for v in bids]
                for a, bids in sorted(self.agent_optimal.items())
            },
            "oab": self.profile_dicts("joint_optimal"),
            "aes": self.profile_dicts("mechanism_optimal"),
            "ioa": self.profile_dicts("aligned"),
            "verdict": self.verdict,
        }


def joint_optimal_profiles(
    game, grid: BidGrid, mode: str = "undominated"
) -> tuple[tuple[Fraction, ...], ...]:
    """Product of the per-agent optimal bid sets, admissible profiles only."""
    ev = _Evaluator(game, grid)
    return _joint_optimal(ev, {a: _optimal_bids(ev, a, mode) for a in ev.agents})


def _joint_optimal(
    ev: _Evaluator, per_agent: Mapping[str, tuple[Fraction, ...]]
) -> tuple[tuple[Fraction, ...], ...]:
    product = itertools.product(*(per_agent[a] for a in ev.agents))
    return tuple(sorted(p for p in product if ev.outcome(p) is not None))


def mechanism_optimal_profiles(game, grid: BidGrid) -> tuple[tuple[Fraction, ...], ...]:
    """Admissible profiles maximizing the mechanism's own utility, exactly."""
    return _mechanism_optimal(_Evaluator(game, grid))


def _mechanism_optimal(ev: _Evaluator) -> tuple[tuple[Fraction, ...], ...]:
    ev.require_enumerable()
    best: Fraction | None = None
    argmax: list[tuple[Fraction, ...]] = []
    for profile in ev.profiles():
        out = ev.outcome(profile)
        if out is None:
            continue
        if best is None or out.mechanism_utility > best:
            best = out.mechanism_utility
            argmax = [profile]
        elif out.mechanism_utility == best:
            argmax.append(profile)
    return tuple(sorted(argmax))


def alignment_report(game, grid: BidGrid, mode: str = "undominated") -> ConsistencyReport:
    """Full report: per-agent sets, their product, the mechanism's argmax,
    and the intersection of the two profile sets."""
    ev = _Evaluator(game, grid)
    per_agent = {a: _optimal_bids(ev, a, mode) for a in ev.agents}
    joint = _joint_optimal(ev, per_agent)
    mech = _mechanism_optimal(ev)
    aligned = tuple(sorted(set(joint) & set(mech)))
    if not mech and not joint:
        verdict = "inadmissible"
    else:
        verdict = "nonempty" if aligned else "empty"
    return ConsistencyReport(
        agents=ev.agents,
        mode=mode,
        grid={a: grid.bids_for[a] for a in ev.agents},
        agent_optimal=per_agent,
        joint_optimal=joint,
        mechanism_optimal=mech,
        aligned=aligned,
        verdict=verdict,
    )


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict over a finite suite of instances, with per-instance reports.

    The verdict is relative to the supplied instances: enumeration cannot
    decide a claim quantified over all possible situations.
    """

    verdict: str
    reports: tuple[ConsistencyReport, ...]


def classify_consistency(
    instances: Sequence[tuple[object, BidGrid]], mode: str = "undominated"
) -> ClassificationResult:
    """Classify a mechanism over a suite of (game, grid) instances.

    impossible-consistent: alignment empty on every instance.
    partially-consistent: empty on some instances, nonempty on others.
    consistent: nonempty on every instance.
    strongly-consistent: consistent, and on every instance the alignment
    equals the agents' set or the mechanism's set outright.
    """
    if not instances:
        raise ValueError("need at least one instance")
    reports = tuple(alignment_report(game, grid, mode) for game, grid in instances)
    if any(r.verdict == "inadmissible" for r in reports):
        raise ValueError("an instance admitted no tie-free profile at all")
    empty = [r.verdict == "empty" for r in reports]
    if all(empty):
        verdict = "impossible-consistent"
    elif any(empty):
        verdict = "partially-consistent"
    else:
        verdict = "consistent"
        if all(
            r.aligned == r.joint_optimal or r.aligned == r.mechanism_optimal
            for r in reports
        ):
            verdict = "strongly-consistent"
    return ClassificationResult(verdict=verdict, reports=reports)


# ---------------------------------------------------------------------------
# Property checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    name: str
    verdict: str  # "holds" | "fails" | "holds-budget-exhausted"
    witnesses: tuple = ()
    counterexamples: tuple = ()
    detail: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict != "fails"


def check_partly_truthful(game, grid: BidGrid) -> PropertyReport:
    """Three conditions per agent: the truthful bid maximizes selection
    probability, selection probability never rises with the bid, and any
    selected agent earns strictly positive utility."""
    ev = _Evaluator(game, grid)
    ev.require_enumerable()
    counterexamples: list[tuple] = []
    for agent in ev.agents:
        truthful = game.types[agent]
        own = grid.bids_for[agent]
        probs = {bid: _selection_probability(ev, agent, bid) for bid in own}
        top = max(probs.values())
        if truthful not in own or probs.get(truthful) != top:
            counterexamples.append(
                ("selection probability not maximal at truthful bid", agent)
            )
        for b1, b2 in zip(own, own[1:]):
            if probs[b2] > probs[b1]:
                counterexamples.append(
                    ("selection probability rises with the bid", agent, b1, b2)
                )
    for profile in ev.profiles():
        out = ev.outcome(profile)
        if out is None:
            continue
        for agent in out.selected:
            u = out.utilities[ev.index[agent]]
            if u <= 0:
                counterexamples.append(
                    ("selected agent with nonpositive utility", agent, profile, u)
                )
    verdict = "holds" if not counterexamples else "fails"
    return PropertyReport(
        name="partly-truthful", verdict=verdict, counterexamples=tuple(counterexamples)
    )


def check_critical(
    network: Network,
    spec: MechanismSpec,
    bids: Mapping[str, Fraction] | None = None,
    unit: Fraction = Fraction(1),
) -> PropertyReport:
    """Is the mechanism's total spend pinned down to within one unit?

    Holds when exactly one path is affordable at one unit below the total
    paid, while the total itself leaves at least two options open.
    """
    result = spec.run(network, bids)
    resolved = dict(network.bid if bids is None else bids)
    every = enumerate_paths(network, resolved)
    at_total = [p for p in every if p.cost <= result.total]
    just_below = [p for p in every if p.cost <= result.total - unit]
    ok = len(just_below) == 1 and len(at_total) >= 2
    rows = tuple((p.edges, p.cost) for p in at_total)
    return PropertyReport(
        name="critical",
        verdict="holds" if ok else "fails",
        witnesses=rows if ok else (),
        counterexamples=() if ok else rows,
        detail=(
            f"total {format_cost(result.total)}: {len(at_total)} paths affordable, "
            f"{len(just_below)} at one unit less"
        ),
    )


def check_strongly_critical(
    network: Network,
    bids: Mapping[str, Fraction] | None = None,
    rule: DistributionRule = EQUAL_SPLIT,
    unit: Fraction = Fraction(1),
) -> PropertyReport:
    """Exact per-prefix criticality of the group-sharing payments.

    For every prefix of present groups, the prefix's aggregate payment
    must equal the cost of its substitute path minus the bids of the
    remaining cheapest-path agents, and one more unit must make that
    substitute affordable.
    """
    result = group_share_path(network, bids, rule)
    resolved = dict(network.bid if bids is None else bids)
    ranked, assignment, _ = group_structure(network, resolved)
    costs = ranked.costs
    rows = []
    failures = []
    for j, q in enumerate(assignment.present_groups):
        prefix_groups = assignment.present_groups[: j + 1]
        prefix_agents = [a for a, g in assignment.group_of.items() if g in prefix_groups]
        beyond_agents = [a for a in assignment.group_of if a not in prefix_agents]
        lhs = sum((result.payments[a] for a in prefix_agents), Fraction(0))
        beyond_bids = sum((resolved[a] for a in beyond_agents), Fraction(0))
        rhs = costs[q] - beyond_bids
        substitute_affordable = costs[q] <= lhs + unit + beyond_bids
        rows.append((q, lhs, rhs))
        if lhs != rhs or not substitute_affordable:
            failures.append((q, lhs, rhs))
    return PropertyReport(
        name="strongly-critical",
        verdict="holds" if not failures else "fails",
        witnesses=tuple(rows),
        counterexamples=tuple(failures),
    )


def check_group_truthfulness(
    network: Network,
    bids: Mapping[str, Fraction] | None = None,
    rule: DistributionRule = EQUAL_SPLIT,
    trials: int = 50,
    seed: int = 0,
) -> PropertyReport:
    """Random within-group bid changes that provably keep the path ranking
    fixed must leave that group's total payment unchanged.

    Perturbations that change the enumerated path order, create a cost tie
    or drive a bid nonpositive are rejected, not counted as evidence. The
    verdict is budget-relative: it reports no counterexample found within
    the accepted trials.
    """
    resolved = dict(network.bid if bids is None else bids)
    base = group_share_path(network, resolved, rule)
    _, assignment, _ = group_structure(network, resolved)
    base_order = [p.edges for p in enumerate_paths(network, resolved)]
    rng = random.Random(seed)
    accepted = 0
    counterexamples = []
    for _ in range(trials):
        q = rng.choice(assignment.present_groups)
        members = assignment.members(q)
        perturbed = dict(resolved)
        deltas = {
            agent: Fraction(rng.randint(-3, 3), rng.choice((2, 3, 4, 5)))
            for agent in members
        }
        if len(members) > 1 and rng.random() < Fraction(1, 2):
            # Sum-preserving shuffles inside the group keep the winning
            # path's cost fixed and survive re-ranking far more often.
            mean = sum(deltas.values(), Fraction(0)) / len(members)
            deltas = {agent: d - mean for agent, d in deltas.items()}
        for agent in members:
            perturbed[agent] = resolved[agent] + deltas[agent]
        if any(v <= 0 for v in perturbed.values()):
            continue
        try:
            new_order = [p.edges for p in enumerate_paths(network, perturbed)]
        except (TooLarge, Disconnected):
            continue
        if new_order != base_order:
            continue
        try:
            new_result = group_share_path(network, perturbed, rule)
        except TieError:
            continue
        accepted += 1
        before = sum((base.payments[a] for a in members), Fraction(0))
        after = sum((new_result.payments[a] for a in members), Fraction(0))
        if before != after:
            counterexamples.append((q, dict(perturbed), before, after))
    verdict = "fails" if counterexamples else "holds-budget-exhausted"
    return PropertyReport(
        name="group-truthful",
        verdict=verdict,
        counterexamples=tuple(counterexamples),
        detail=f"{accepted} ranking-preserving perturbations accepted of {trials} trials",
    )


def check_vcg_truthful(game, grid: BidGrid) -> PropertyReport:
    """Exhaustively confirm the truthful bid is a best response everywhere."""
    ev = _Evaluator(game, grid)
    ev.require_enumerable()
    counterexamples = []
    for agent in ev.agents:
        truthful = game.types[agent]
        own = grid.bids_for[agent]
        for opponents in ev.opponent_profiles(agent):
            truthful_u = ev.utility(agent, ev.assemble(agent, truthful, opponents))
            for bid in own:
                if ev.utility(agent, ev.assemble(agent, bid, opponents)) > truthful_u:
                    counterexamples.append((agent, bid, opponents))
    return PropertyReport(
        name="vcg-truthful",
        verdict="holds" if not counterexamples else "fails",
        counterexamples=tuple(counterexamples),
    )


def check_degenerate_vickrey(
    network: Network, bids: Mapping[str, Fraction] | None = None
) -> PropertyReport:
    """On a network whose cheapest path is a single edge, group sharing,
    marginal pricing and a reverse second-price award must coincide."""
    resolved = dict(network.bid if bids is None else bids)
    ranked, assignment, _ = group_structure(network, resolved)
    chosen = ranked.paths[0]
    if len(chosen.edges) != 1:
        return PropertyReport(
            name="degenerate-vickrey",
            verdict="fails",
            detail="cheapest path is not a single edge",
        )
    shared = group_share_path(network, resolved)
    marginal = vcg_path(network, resolved)
    runner_up = ranked.costs[1]
    winner = chosen.owners[0]
    ok = (
        shared.payments == marginal.payments
        and shared.payments[winner] == runner_up
    )
    return PropertyReport(
        name="degenerate-vickrey",
        verdict="holds" if ok else "fails",
        witnesses=((winner, shared.payments[winner], runner_up),),
        detail=f"winner {winner} paid {format_cost(shared.payments[winner])}",
    )


# ---------------------------------------------------------------------------
# Random instance generation
# ---------------------------------------------------------------------------


def random_network(
    seed: int,
    node_budget: int = 8,
    edge_budget: int = 14,
    cost_range: tuple[int, int] = (1, 9),
    max_attempts: int = 400,
) -> Network:
    """A valid random network with pairwise distinct path costs.

    Construction places two node-disjoint source-to-sink chains (so no
    single agent owns a cut) and sprinkles extra edges, then rejection
    samples until validation passes and every enumerated path cost is
    distinct, which keeps every mechanism tie-free at truthful bids.
    Deterministic in `seed`.
    """
    if node_budget < 2 or edge_budget < 2:
        raise ValueError("need room for at least two parallel edges")
    rng = random.Random(seed)
    lo, hi = cost_range
    for _ in range(max_attempts):
        n_inter = rng.randint(0, node_budget - 2)
        inter = [f"m{i}" for i in range(1, n_inter + 1)]
        k1 = rng.randint(0, min(3, n_inter, edge_budget - 2))
        k2 = rng.randint(0, min(3, n_inter - k1, edge_budget - k1 - 2))
        chain1 = inter[:k1]
        chain2 = inter[k1 : k1 + k2]
        rows: list[tuple[str, str]] = []
        for chain in (chain1, chain2):
            seq = ["src"] + chain + ["dst"]
            rows.extend(zip(seq, seq[1:]))
        used = ["src", "dst"] + chain1 + chain2
        extra = rng.randint(0, edge_budget - len(rows))
        tails = [n for n in used if n != "dst"]
        for _ in range(extra):
            tail = rng.choice(tails)
            heads = [n for n in used if n not in ("src", tail)]
            rows.append((tail, rng.choice(heads)))
        edges = tuple(
            Edge(f"e{i:02d}", tail, head, f"e{i:02d}") for i, (tail, head) in enumerate(rows)
        )
        costs = {e.id: Fraction(rng.randint(lo, hi)) for e in edges}
        candidate = Network(
            nodes=tuple(sorted(set(used))),
            edges=edges,
            source="src",
            sink="dst",
            true_cost=costs,
            bid=dict(costs),
        )
        if validate(candidate):
            continue
        try:
            ranked = enumerate_paths(candidate, candidate.true_cost)
        except (TooLarge, Disconnected):
            continue
        cost_list = ranked.costs
        if len(set(cost_list)) != len(cost_list):
            continue
        return candidate
    raise GenerationFailed(f"no valid instance within {max_attempts} attempts (seed {seed})")
