"""Command-line front end.

Subcommands: validate, rank, run, analyze, check, fixtures. Graph and bid
files use the JSON formats defined in the graph module. All amounts print
as exact cost strings; tables add a decimal approximation for fractions.

Exit codes: 0 success (or property holds), 1 failure or parse error,
2 cost tie where a strict order was required, 3 enumeration guard hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .analysis import (
    BidGrid,
    PathGame,
    check_critical,
    check_degenerate_vickrey,
    check_group_truthfulness,
    check_partly_truthful,
    check_strongly_critical,
    check_vcg_truthful,
    alignment_report,
)
from .errors import FormatError, GridTooLarge, PathAuctionError, TieError
from .fixtures import FIXTURES, fixture
from .graph import (
    Network,
    bids_from_json,
    load_network,
    network_to_json,
    rank_paths,
    validate,
)
from .mechanisms import (
    MECHANISM_IDS,
    DistributionRule,
    MechanismSpec,
    PaymentResult,
)
from .rational import approx_suffix, format_cost, parse_cost

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_TIE = 2
EXIT_GUARD = 3

PROPERTIES = (
    "partly-truthful",
    "critical",
    "strongly-critical",
    "group-truthful",
    "vcg-truthful",
    "degenerate-vickrey",
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathauction",
        description="Payment mechanisms and incentive analysis for path auctions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a network file against the model invariants")
    p.add_argument("graph")

    p = sub.add_parser("rank", help="list the k cheapest loopless paths")
    p.add_argument("graph")
    p.add_argument("-k", type=int, default=1)

    p = sub.add_parser("run", help="run one payment mechanism")
    p.add_argument("graph")
    p.add_argument("--mechanism", required=True, choices=list(MECHANISM_IDS))
    p.add_argument("--rule", choices=["equal", "reverse-rank", "waterfall", "compound"])
    p.add_argument("--delta", help="waterfall minimum profit (cost string)")
    p.add_argument("--lambda", dest="lam", help="blend weight for avg-single (cost string)")
    p.add_argument("--c", dest="threshold", help="savings threshold for tradeoff1 (cost string)")
    p.add_argument("--bids", default="declared",
                   help="'declared', 'truthful', or a bid-profile JSON file")
    p.add_argument("--orientation", choices=["forward", "reverse"], default="reverse",
                   help="single-item mechanisms only")
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("analyze", help="agent-optimal and mechanism-optimal bid sets")
    p.add_argument("graph")
    p.add_argument("--mechanism", default="vcg", choices=["vcg", "x", "fp-path"])
    p.add_argument("--cap", type=int, default=3, help="grid steps above the true cost")
    p.add_argument("--unit", default="1", help="currency unit (cost string)")
    p.add_argument("--mode", choices=["undominated", "all", "dominant"],
                   default="undominated")
    p.add_argument("--rule", choices=["equal", "reverse-rank", "waterfall", "compound"])
    p.add_argument("--delta", help="waterfall minimum profit (cost string)")
    p.add_argument("--format", choices=["table", "json"], default="table")

    p = sub.add_parser("check", help="run one property checker")
    p.add_argument("graph")
    p.add_argument("--property", required=True, dest="prop", choices=list(PROPERTIES))
    p.add_argument("--mechanism", default=None,
                   choices=["vcg", "x", "fp-path", "tradeoff2", "tradeoff3"])
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=3)
    p.add_argument("--bids", default="declared")

    p = sub.add_parser("fixtures", help="write a built-in benchmark network to a file")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("--out", default=None, help="output path; '-' for stdout")

    return parser


def _load_graph(path: str) -> Network:
    network = load_network(path)
    problems = validate(network)
    if problems:
        for violation in problems:
            print(violation)
        raise FormatError(f"{path} is not a valid network")
    return network


def _resolve_bid_source(network: Network, source: str) -> dict[str, Fraction]:
    if source == "declared":
        return network.declared_bids()
    if source == "truthful":
        return network.truthful_bids()
    with open(source, "r", encoding="utf-8") as handle:
        return bids_from_json(handle.read(), network)


def _rule_from_args(args) -> DistributionRule:
    kind = args.rule or "equal"
    if kind in ("waterfall", "compound"):
        delta = parse_cost(args.delta) if args.delta else Fraction(1)
        return DistributionRule(kind, delta)
    if args.delta:
        raise FormatError("--delta only applies to the waterfall and compound rules")
    return DistributionRule(kind)


def _spec_from_args(args) -> MechanismSpec:
    name = args.mechanism
    if args.rule and name not in ("x", "tradeoff1"):
        raise FormatError("--rule only applies to mechanisms x and tradeoff1")
    if args.lam and name != "avg-single":
        raise FormatError("--lambda only applies to avg-single")
    if args.threshold and name != "tradeoff1":
        raise FormatError("--c only applies to tradeoff1")
    lam = parse_cost(args.lam) if args.lam else None
    threshold = parse_cost(args.threshold) if args.threshold else None
    return MechanismSpec(
        mechanism=name,
        rule=_rule_from_args(args),
        lam=lam,
        threshold=threshold,
        orientation=args.orientation,
    )


def _result_json(spec: MechanismSpec, result: PaymentResult) -> str:
    payload = {
        "mechanism": spec.mechanism,
        "chosen_path": list(result.chosen_path.edges) if result.chosen_path else None,
        "winner": result.winner,
        "payments": {a: format_cost(v) for a, v in sorted(result.payments.items())},
        "utilities": {a: format_cost(v) for a, v in sorted(result.utilities.items())},
        "groups": dict(sorted(result.groups.items())) if result.groups else None,
        "total": format_cost(result.total),
        "mechanism_utility": format_cost(result.mechanism_utility),
        "branch": result.branch,
    }
    return json.dumps(payload, indent=2)


_EXAMPLE1_NOTE = (
    "note: payments follow p = detour(excluded) - detour(zeroed) exactly; "
    "for B and C that gives 2 each (total 35), not the sometimes-quoted "
    "1 each (total 33), which contradicts that formula."
)


def _print_result_table(network: Network, spec: MechanismSpec,
                        bids: dict[str, Fraction], result: PaymentResult) -> None:
    header = f"mechanism: {spec.mechanism}"
    if spec.mechanism in ("x", "tradeoff1"):
        header += f" (rule={spec.rule.kind})"
    if result.branch:
        header += f" [branch: {result.branch}]"
    print(header)
    groups = result.groups or {}
    print(f"{'agent':<8}{'bid':<12}{'group':<7}{'payment':<18}utility")
    for agent in sorted(result.payments):
        print(
            f"{agent:<8}"
            f"{format_cost(bids[agent]):<12}"
            f"{str(groups.get(agent, '')):<7}"
            f"{approx_suffix(result.payments[agent]):<18}"
            f"{approx_suffix(result.utilities[agent])}"
        )
    print(f"total: {approx_suffix(result.total)}")
    print(f"mechanism utility: {approx_suffix(result.mechanism_utility)}")


def cmd_validate(args) -> int:
    try:
        network = load_network(args.graph)
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    problems = validate(network)
    for violation in problems:
        print(violation)
    if problems:
        return EXIT_FAIL
    print("ok")
    return EXIT_OK


def cmd_rank(args) -> int:
    network = _load_graph(args.graph)
    ranked = rank_paths(network, None, k=args.k)
    tie = False
    for i, path in enumerate(ranked, start=1):
        print(f"{i:<4}{' '.join(path.edges):<40}{format_cost(path.cost)}")
    costs = ranked.costs
    tie = any(a == b for a, b in zip(costs, costs[1:]))
    if tie:
        print("warning: tied costs among printed ranks", file=sys.stderr)
        return EXIT_TIE
    return EXIT_OK


def cmd_run(args) -> int:
    network = _load_graph(args.graph)
    spec = _spec_from_args(args)
    bids = _resolve_bid_source(network, args.bids)
    result = spec.run(network, bids)
    if args.format == "json":
        print(_result_json(spec, result))
    else:
        _print_result_table(network, spec, bids, result)
        if spec.mechanism == "vcg" and network_to_json(network) == network_to_json(
            fixture("example1")
        ):
            print(_EXAMPLE1_NOTE)
    return EXIT_OK


def cmd_analyze(args) -> int:
    network = _load_graph(args.graph)
    rule = _rule_from_args(args)
    game = PathGame(network, MechanismSpec(args.mechanism, rule=rule))
    grid = BidGrid.procurement(network.true_cost, parse_cost(args.unit), args.cap)
    report = alignment_report(game, grid, args.mode)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
        return EXIT_OK
    print(f"mechanism: {args.mechanism}   mode: {args.mode}")
    for agent in report.agents:
        bids = ", ".join(format_cost(b) for b in report.agent_optimal[agent])
        print(f"obs[{agent}]: {{{bids}}}")
    for label, which in (("oab", "joint_optimal"), ("aes", "mechanism_optimal"),
                         ("ioa", "aligned")):
        rows = [
            "(" + ", ".join(f"{a}={row[a]}" for a in report.agents) + ")"
            for row in report.profile_dicts(which)
        ]
        print(f"{label}: {'{' + '; '.join(rows) + '}' if rows else '{}'}")
    print(f"verdict: {report.verdict}")
    return EXIT_OK


def cmd_check(args) -> int:
    network = _load_graph(args.graph)
    bids = _resolve_bid_source(network, args.bids)
    prop = args.prop
    if prop == "partly-truthful":
        game = PathGame(network, MechanismSpec(args.mechanism or "x"))
        grid = BidGrid.procurement(network.true_cost, Fraction(1), args.cap)
        report = check_partly_truthful(game, grid)
    elif prop == "critical":
        report = check_critical(network, MechanismSpec(args.mechanism or "x"), bids)
    elif prop == "strongly-critical":
        report = check_strongly_critical(network, bids)
    elif prop == "group-truthful":
        report = check_group_truthfulness(
            network, bids, trials=args.trials, seed=args.seed
        )
    elif prop == "vcg-truthful":
        game = PathGame(network, MechanismSpec("vcg"))
        grid = BidGrid.procurement(network.true_cost, Fraction(1), args.cap)
        report = check_vcg_truthful(game, grid)
    else:
        report = check_degenerate_vickrey(network, bids)
    print(f"{report.name}: {report.verdict}")
    if report.detail:
        print(report.detail)
    for row in report.witnesses:
        print(f"witness: {_format_row(row)}")
    for row in report.counterexamples:
        print(f"counterexample: {_format_row(row)}")
    return EXIT_OK if report.holds else EXIT_FAIL


def _format_row(row) -> str:
    if isinstance(row, Fraction):
        return format_cost(row)
    if isinstance(row, (tuple, list)):
        return "(" + ", ".join(_format_row(item) for item in row) + ")"
    if isinstance(row, dict):
        items = ", ".join(f"{k}={_format_row(v)}" for k, v in sorted(row.items()))
        return "{" + items + "}"
    return str(row)


def cmd_fixtures(args) -> int:
    network = fixture(args.name)
    text = network_to_json(network)
    out = args.out or f"{args.name}.json"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
        print(f"wrote {out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "validate": cmd_validate,
        "rank": cmd_rank,
        "run": cmd_run,
        "analyze": cmd_analyze,
        "check": cmd_check,
        "fixtures": cmd_fixtures,
    }
    try:
        return handlers[args.command](args)
    except TieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TIE
    except GridTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (PathAuctionError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
