"""Episode loop: observe, query every agent concurrently, execute, advance the simulator.

The simulation is paused while responses are collected (lockstep).  Query
workers only ever see the immutable :class:`ChatRequest`; the world is owned
by the coordinating thread.
"""

from __future__ import annotations

import logging
import threading
import time
from concurrent.futures import ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Callable, Mapping, Sequence

from llmrts.agents import AgentProfile, Router, UnitCaches
from llmrts.bridge import Registry, protoss_registry, transform
from llmrts.calls import ActionError
from llmrts.clients import (Client, ClientConfigError, NonRetryableError, QueryMeta, TraceRecorder)
from llmrts.grammar import MESSAGE_ACTION, TextAction, extract_actions, extract_message_actions, format_action
from llmrts.metrics import EpisodeResult, kd_ratio
from llmrts.observation import (ChatRequest, LastStep, assemble_query, build_observation, render_feature_grid)
from llmrts.scenarios import ScenarioConfig, check_victory, get_scenario, load_scenario
from llmrts.sim import engine
from llmrts.sim.world import GameEvent, WorldState

log = logging.getLogger(__name__)

DEFAULT_ACTION = TextAction("No_Operation", ())
DEFAULT_TICKS_PER_DECISION = 10
PLAYER, ENEMY = 1, 2


@dataclass(frozen=True)
class StepBudget:
    max_wait: float = 60.0
    query_wait: float = 30.0
    retries: int = 3

    def __post_init__(self) -> None:
        if self.retries < 1:
            raise ValueError("retries must be at least 1")
        if self.max_wait < self.query_wait:
            raise ValueError("the step wait must not be shorter than the per-query wait")


@dataclass
class Attempt:
    outcome: str  # ok | timeout | retryable | fatal
    detail: str
    duration: float


@dataclass
class AgentResponse:
    agent: str
    raw_text: str | None
    actions: list[TextAction]
    messages: list[tuple[str, str]]
    latency: float
    attempts: int
    fallback: bool
    waits: list[float] = field(default_factory=list)
    log: list[Attempt] = field(default_factory=list)
    rejected: list[tuple[str, str]] = field(default_factory=list)


def parse_response(agent: str, text: str, latency: float, attempts: int, waits: list[float],
                   attempt_log: list[Attempt]) -> AgentResponse:
    report = extract_actions(text)
    messages, bad_messages = extract_message_actions(text)
    actions = [a for a in report.actions if a.name != MESSAGE_ACTION]
    return AgentResponse(agent, text, actions, messages, latency, attempts, False, waits, attempt_log,
                         report.rejected + bad_messages)


def fallback_response(agent: str, latency: float, attempts: int, waits: list[float],
                      attempt_log: list[Attempt]) -> AgentResponse:
    return AgentResponse(agent, None, [DEFAULT_ACTION], [], latency, attempts, True, waits, attempt_log)


def _attempt(client: Client, request: ChatRequest, meta: QueryMeta, limit: float
             ) -> tuple[str | None, Attempt]:
    """One completion in its own daemon thread, abandoned after ``limit`` seconds."""
    box: dict[str, object] = {}
    done = threading.Event()

    def work() -> None:
        try:
            box["text"] = client.complete(request, meta)
        except Exception as exc:  # noqa: BLE001 - any client failure is one failed attempt
            box["error"] = exc
        done.set()

    start = time.monotonic()
    threading.Thread(target=work, daemon=True, name=f"query-{meta.agent}").start()
    finished = done.wait(limit)
    took = time.monotonic() - start
    if not finished:
        return None, Attempt("timeout", f"no response within {limit:g} s", took)
    if "error" in box:
        exc = box["error"]
        kind = "fatal" if isinstance(exc, NonRetryableError) else "retryable"
        return None, Attempt(kind, f"{type(exc).__name__}: {exc}", took)
    return str(box["text"]), Attempt("ok", "", took)


def query_agent(agent: str, request: ChatRequest, client: Client, budget: StepBudget,
                meta: QueryMeta | None = None, cancel: threading.Event | None = None) -> AgentResponse:
    """Up to ``budget.retries`` attempts with waits of 1, 2, 4, ... seconds after each failure."""
    meta = meta or QueryMeta(agent, 0)
    cancel = cancel or threading.Event()
    start = time.monotonic()
    waits: list[float] = []
    attempt_log: list[Attempt] = []
    for i in range(budget.retries):
        if cancel.is_set():
            break
        text, info = _attempt(client, request, meta, budget.query_wait)
        attempt_log.append(info)
        if text is not None:
            return parse_response(agent, text, time.monotonic() - start, i + 1, waits, attempt_log)
        if info.outcome == "fatal":
            break
        w0 = time.monotonic()
        cancel.wait(2 ** i)
        waits.append(time.monotonic() - w0)
    return fallback_response(agent, time.monotonic() - start, len(attempt_log), waits, attempt_log)


def concurrent_fanout(jobs: Sequence[tuple[str, ChatRequest, Client, QueryMeta]], budget: StepBudget
                      ) -> dict[str, AgentResponse]:
    """Query every agent at once; agents still pending after ``budget.max_wait`` fall back."""
    if not jobs:
        return {}
    start = time.monotonic()
    cancels = {agent: threading.Event() for agent, *_ in jobs}
    pool = ThreadPoolExecutor(max_workers=len(jobs), thread_name_prefix="fanout")
    try:
        futures = {pool.submit(query_agent, agent, req, client, budget, meta, cancels[agent]): agent
                   for agent, req, client, meta in jobs}
        done, _ = wait(futures, timeout=budget.max_wait)
        out: dict[str, AgentResponse] = {}
        for fut, agent in futures.items():
            if fut in done:
                out[agent] = fut.result()
            else:
                cancels[agent].set()
                out[agent] = fallback_response(agent, time.monotonic() - start, 0, [],
                                               [Attempt("timeout", "step budget expired", budget.max_wait)])
        return out
    finally:
        pool.shutdown(wait=False, cancel_futures=True)


# ---------------------------------------------------------------------------
# episode
# ---------------------------------------------------------------------------

@dataclass
class StepRecord:
    step: int
    tick: int
    responses: dict[str, AgentResponse]
    errors: dict[str, list[str]]


def _execute_action(action: TextAction, profile: AgentProfile, caches: UnitCaches, world: WorldState,
                    registry: Registry) -> ActionError | None:
    ctx = caches.context(profile, world)
    world.selections[profile.name] = list(ctx.team)
    focus = caches.focus_point(profile, world)
    if focus is not None:
        world.move_camera(profile.name, *focus)
    calls = transform(action, ctx, world, registry)
    if isinstance(calls, ActionError):
        return calls
    for call in calls:
        err = engine.execute(call, ctx, world)
        if err is not None:
            return ActionError(action, err.category, err.detail)
    return None


def run_episode(scenario: ScenarioConfig | str, roster: Sequence[AgentProfile],
                clients: Client | Mapping[str, Client], budget: StepBudget, seed: int, *,
                ticks_per_decision: int = DEFAULT_TICKS_PER_DECISION,
                trace: TraceRecorder | str | Path | IO[str] | None = None, grids: bool = False,
                registry: Registry | None = None,
                on_step: Callable[[StepRecord, WorldState], None] | None = None) -> EpisodeResult:
    """Run one seeded episode to termination and return its result."""
    config = get_scenario(scenario) if isinstance(scenario, str) else scenario
    names = [p.name for p in roster]
    if not roster:
        raise ClientConfigError("roster is empty")
    if isinstance(clients, Mapping):
        missing = [n for n in names if n not in clients]
        if missing:
            raise ClientConfigError(f"no client configured for agent(s): {', '.join(missing)}")
        client_of = dict(clients)
    else:
        client_of = {n: clients for n in names}
    reg = registry or protoss_registry()
    world = load_scenario(config, seed)
    recorder = trace if isinstance(trace, TraceRecorder) or trace is None else TraceRecorder(trace)
    if recorder is not None:
        recorder.write({"type": "header", "scenario": config.id, "seed": seed, "agents": names,
                        "ticks_per_decision": ticks_per_decision,
                        "budget": {"max_wait": budget.max_wait, "query_wait": budget.query_wait,
                                   "retries": budget.retries}})

    caches = UnitCaches(list(roster), PLAYER)
    router = Router(names)
    last = {n: LastStep() for n in names}
    inbox: dict[str, list] = {n: [] for n in names}
    step_no = 0
    fallbacks = 0
    outcome = check_victory(config, world, world.clock)
    try:
        while outcome == "ongoing":
            caches.sync(world)
            jobs = []
            for profile in roster:
                ctx = caches.context(profile, world)
                focus = caches.focus_point(profile, world)
                if focus is not None:
                    world.move_camera(profile.name, *focus)
                obs = build_observation(
                    profile, world, inbox[profile.name], last[profile.name], ctx=ctx, task=config.task,
                    targets=router.targets(profile.name), step=step_no, registry=reg,
                    teams=[(t.name, t.tags) for t in caches.agent_teams(profile.name)])
                attachments = [render_feature_grid(world, world.camera(profile.name), PLAYER)] if grids else []
                request = assemble_query(profile, obs, attachments)
                jobs.append((profile.name, request, client_of[profile.name], QueryMeta(profile.name, step_no, seed)))
            responses = concurrent_fanout(jobs, budget)
            if recorder is not None:
                for name, request, _, _ in jobs:
                    r = responses[name]
                    recorder.record(step_no, name, request.digest(), r.raw_text, fallback=r.fallback,
                                    attempts=r.attempts)

            errors: dict[str, list[str]] = {n: [] for n in names}
            done_actions: dict[str, list[str]] = {n: [] for n in names}
            for profile in roster:
                r = responses[profile.name]
                fallbacks += int(r.fallback)
                for raw, why in r.rejected:
                    errors[profile.name].append(f"{raw.strip()[:80]}: not recognised ({why})")
                for target, content in r.messages:
                    notice = router.send(step_no, profile.name, target, content)
                    if notice is not None:
                        errors[profile.name].append(notice.render())
                for action in r.actions:
                    done_actions[profile.name].append(format_action(action))
                    err = _execute_action(action, profile, caches, world, reg)
                    if err is not None:
                        errors[profile.name].append(err.render())
            inbox = router.deliver()

            events: list[GameEvent] = []
            for _ in range(ticks_per_decision):
                events.extend(engine.step(world))
                outcome = check_victory(config, world, world.clock)
                if outcome != "ongoing":
                    break
            last = {n: LastStep(done_actions[n], errors[n], events) for n in names}
            record = StepRecord(step_no, world.clock, responses, errors)
            if recorder is not None:
                recorder.write({"type": "step", "step": step_no, "tick": world.clock,
                                "errors": errors, "state_hash": world.state_hash()})
            if on_step is not None:
                on_step(record, world)
            step_no += 1

        killed = int(world.players[ENEMY].lost_value)
        dead = int(world.players[PLAYER].lost_value)
        result = EpisodeResult(config.id, seed, outcome, kd_ratio(killed, dead), killed, dead, step_no,
                               world.clock, world.state_hash(),
                               recorder.path if recorder is not None else None, fallbacks)
        if recorder is not None:
            recorder.write({"type": "result", **result.to_dict(), "result_hash": result.result_hash()})
        return result
    finally:
        if recorder is not None and recorder is not trace:
            recorder.close()
