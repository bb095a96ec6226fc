"""Command line: run experiments, validate responses offline, replay traces, summarise results."""

from __future__ import annotations

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from llmrts.agents import ROSTER_MODES, RosterError, build_roster
from llmrts.bridge import protoss_registry
from llmrts.clients import (ClientConfigError, ReplayClient, TraceError, make_client, parse_client_spec,
                            read_trace)
from llmrts.grammar import MESSAGE_ACTION, extract_actions, format_action
from llmrts.metrics import ResultsError, format_summary, load_results, persist, summarize
from llmrts.orchestrator import StepBudget, run_episode
from llmrts.scenarios import ScenarioError, get_scenario

log = logging.getLogger("llmrts")


def parse_seeds(text: str) -> list[int]:
    """``"1..20"``, ``"3"`` or ``"1,4,9"``."""
    seeds: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            if int(hi) < int(lo):
                raise argparse.ArgumentTypeError(f"empty seed range {part!r}")
            seeds.extend(range(int(lo), int(hi) + 1))
        elif part:
            seeds.append(int(part))
    if not seeds:
        raise argparse.ArgumentTypeError("no seeds given")
    return seeds


def _seeds_arg(text: str) -> list[int]:
    try:
        return parse_seeds(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad seed list {text!r}") from exc


def _budget(args: argparse.Namespace) -> StepBudget:
    return StepBudget(args.max_wait, args.query_wait, args.retries)


def _roster(mode: str | None, scenario):
    return build_roster(mode or scenario.roster_mode, scenario)


def _run_seed(scenario, roster, config, budget, seed: int, out: Path, ticks_per_decision: int, grids: bool):
    """One episode; returns (seed, result, error text).  Top level so worker processes can run it."""
    trace_path = out / f"{scenario.id}-seed{seed}.trace.jsonl"
    try:
        # Replay cursors are per episode, so every seed gets a fresh client.
        client = make_client(config)
        return seed, run_episode(scenario, roster, client, budget, seed, ticks_per_decision=ticks_per_decision,
                                 trace=trace_path, grids=grids), None
    except ClientConfigError:
        raise
    except Exception as exc:  # noqa: BLE001 - one failed episode must not stop the batch
        log.exception("episode %s seed %d failed", scenario.id, seed)
        return seed, None, f"{type(exc).__name__}: {exc}"


def cmd_run(args: argparse.Namespace) -> int:
    try:
        scenario = get_scenario(args.scenario)
        roster = _roster(args.mode, scenario)
        config = parse_client_spec(args.client, delay=args.mock_delay, endpoint=args.endpoint, model=args.model,
                                   key_env=args.key_env)
        budget = _budget(args)
        make_client(config)  # fail fast on a bad replay path or mock script
    except (ScenarioError, RosterError, ClientConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    results_path = out / "results.jsonl"
    job = (scenario, roster, config, budget)
    extra = (out, args.ticks_per_decision, args.grids)
    try:
        if args.parallel_episodes > 1:
            with ProcessPoolExecutor(max_workers=args.parallel_episodes) as pool:
                outcomes = list(pool.map(_run_seed, *zip(*[(*job, seed, *extra) for seed in args.seeds])))
        else:
            outcomes = (_run_seed(*job, seed, *extra) for seed in args.seeds)
        results = []
        for seed, result, error in outcomes:
            if result is None:
                print(f"{scenario.id} seed {seed}: failed ({error})")
                continue
            persist(result, results_path)
            results.append(result)
            print(f"{scenario.id} seed {seed}: {result.outcome} KD={result.kd:.2f} steps={result.steps} "
                  f"fallbacks={result.fallbacks} hash={result.result_hash()[:12]}")
    except ClientConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not results:
        print("no episodes completed")
        return 1
    print(format_summary(summarize(results)))
    print(f"results: {results_path}")
    return 0


def cmd_replay(args: argparse.Namespace) -> int:
    try:
        records = read_trace(args.trace)
    except (OSError, TraceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    header = next((r for r in records if r.get("type") == "header"), None)
    recorded = next((r for r in records if r.get("type") == "result"), None)
    if header is None:
        print(f"error: {args.trace} has no header record", file=sys.stderr)
        return 2
    try:
        scenario = get_scenario(header["scenario"])
        roster = _roster(args.mode, scenario)
        if [p.name for p in roster] != header["agents"]:
            raise RosterError(f"trace agents {header['agents']} do not match roster {[p.name for p in roster]}")
    except (ScenarioError, RosterError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    b = header["budget"]
    result = run_episode(scenario, roster, ReplayClient.from_records(records),
                         StepBudget(b["max_wait"], b["query_wait"], b["retries"]), header["seed"],
                         ticks_per_decision=header["ticks_per_decision"], trace=args.out)
    print(f"{scenario.id} seed {result.seed}: {result.outcome} KD={result.kd:.2f} hash={result.result_hash()[:12]}")
    if recorded is None:
        print("trace has no recorded result to compare against")
        return 0
    if recorded["result_hash"] == result.result_hash():
        print("replay matches the recorded result")
        return 0
    print(f"replay differs from the recorded result ({recorded['result_hash'][:12]})")
    return 1


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return 2
    registry = protoss_registry()
    report = extract_actions(text)
    ok = not report.rejected
    for action in report.actions:
        if action.name == MESSAGE_ACTION:
            print(f"ok      {format_action(action)}")
            continue
        entry = registry.entries.get(action.name)
        if entry is None:
            print(f"invalid {format_action(action)}: unknown-action")
            ok = False
        elif len(action.args) != len(entry.arg_schema) or any(
                kind != _arg_kind(arg) for kind, arg in zip(entry.arg_schema, action.args)):
            print(f"invalid {format_action(action)}: bad-arity (expected {entry.signature})")
            ok = False
        else:
            print(f"ok      {format_action(action)}")
    for raw, why in report.rejected:
        print(f"reject  {raw.strip()}: {why}")
    print(f"{len(report.actions)} recognised, {len(report.rejected)} rejected")
    return 0 if ok and report.actions else 1


def _arg_kind(arg) -> str:
    return {"ScreenCoord": "screen", "MinimapCoord": "minimap", "UnitTag": "tag"}.get(type(arg).__name__, "other")


def cmd_stats(args: argparse.Namespace) -> int:
    try:
        results = load_results(args.results)
    except (OSError, ResultsError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not results:
        print("no results")
        return 1
    print(format_summary(summarize(results)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="llmrts", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run seeded episodes and summarise KD/WR")
    run.add_argument("--scenario", required=True)
    run.add_argument("--mode", choices=ROSTER_MODES, help="agent roster (default: the scenario's own)")
    run.add_argument("--client", default="mock:always-noop",
                     help="mock:<script>, replay:<trace.jsonl> or http[:URL]")
    run.add_argument("--seeds", type=_seeds_arg, default=[1], help="e.g. 1..20 or 1,2,5")
    run.add_argument("--out", default="runs")
    run.add_argument("--mock-delay", type=float, default=None, help="seconds a mock waits before answering")
    run.add_argument("--endpoint", help="chat-completions URL for the http client")
    run.add_argument("--model")
    run.add_argument("--key-env", help="environment variable holding the API key")
    run.add_argument("--ticks-per-decision", type=int, default=10)
    run.add_argument("--grids", action="store_true", help="attach feature grids as text")
    run.add_argument("--max-wait", type=float, default=60.0, help="step budget in seconds")
    run.add_argument("--query-wait", type=float, default=30.0, help="per-attempt budget in seconds")
    run.add_argument("--retries", type=int, default=3)
    run.add_argument("--parallel-episodes", type=int, default=1, metavar="N",
                     help="run up to N seeds at once in worker processes (default: one after another)")
    run.set_defaults(func=cmd_run)

    replay = sub.add_parser("replay", help="re-run a recorded trace and compare results")
    replay.add_argument("trace")
    replay.add_argument("--mode", choices=ROSTER_MODES)
    replay.add_argument("--out", help="write the replayed trace here")
    replay.set_defaults(func=cmd_replay)

    validate = sub.add_parser("validate", help="check the actions in a response file")
    validate.add_argument("file")
    validate.set_defaults(func=cmd_validate)

    stats = sub.add_parser("stats", help="summarise a results file")
    stats.add_argument("results")
    stats.set_defaults(func=cmd_stats)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
