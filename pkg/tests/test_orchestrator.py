from __future__ import annotations

import io
import json
import threading
import time

import pytest

from helpers import scenario_request
from llmrts.agents import build_roster
from llmrts.clients import (ClientConfigError, MockClient, NonRetryableError, QueryMeta, ReplayClient,
                            RetryableError, TraceRecorder, read_trace)
from llmrts.orchestrator import (DEFAULT_ACTION, StepBudget, concurrent_fanout, query_agent, run_episode)
from llmrts.scenarios import ScenarioConfig, get_scenario


class Flaky:
    """Fails ``failures`` times, then answers."""

    def __init__(self, failures: int, text: str = "<Hold_Position()>", exc=RetryableError):
        self.failures = failures
        self.text = text
        self.exc = exc
        self.calls = 0
        self.lock = threading.Lock()

    def complete(self, request, meta):
        with self.lock:
            self.calls += 1
            n = self.calls
        if n <= self.failures:
            raise self.exc(f"failure {n}")
        return self.text


class Sleepy:
    def __init__(self, delay: float):
        self.delay = delay

    def complete(self, request, meta):
        time.sleep(self.delay)
        return "<Hold_Position()>"


@pytest.fixture(scope="module")
def req():
    return scenario_request("task4-l1", 1)[1]


def test_budget_invariants():
    with pytest.raises(ValueError):
        StepBudget(1, 2, 1)
    with pytest.raises(ValueError):
        StepBudget(2, 1, 0)


def test_first_success_needs_one_attempt(req):
    r = query_agent("A", req, MockClient("always-noop", 0.05), StepBudget(5, 1, 3))
    assert (r.attempts, r.fallback, r.waits) == (1, False, [])
    assert r.actions == [DEFAULT_ACTION]


def test_non_retryable_failure_stops_at_once(req):
    r = query_agent("A", req, Flaky(5, exc=NonRetryableError), StepBudget(10, 1, 3))
    assert r.fallback and r.attempts == 1 and r.waits == []


def test_slow_attempt_is_abandoned_after_the_query_wait(req):
    start = time.monotonic()
    r = query_agent("A", req, Sleepy(3.0), StepBudget(5, 0.1, 1))
    assert r.fallback and r.log[0].outcome == "timeout"
    assert time.monotonic() - start < 1.5  # 0.1 s attempt plus the 1 s wait


def test_step_budget_expiry_falls_everyone_back(req):
    jobs = [(f"A{i}", req, Sleepy(0.2), QueryMeta(f"A{i}", 0)) for i in range(4)]
    start = time.monotonic()
    out = concurrent_fanout(jobs, StepBudget(0.1, 0.1, 1))
    assert time.monotonic() - start < 0.2
    assert all(r.fallback and r.actions == [DEFAULT_ACTION] for r in out.values())
    assert set(out) == {f"A{i}" for i in range(4)}


def test_messages_are_separated_from_actions(req):
    text = "<MessageTo(CombatGroup0, '''go <Attack_Unit(0x1)>''')> <Hold_Position()>"
    r = query_agent("A", req, Flaky(0, text), StepBudget(5, 1, 1))
    assert r.messages == [("CombatGroup0", "go <Attack_Unit(0x1)>")]
    assert [a.name for a in r.actions] == ["Hold_Position"]


def short_scenario(seconds: float = 3.0) -> ScenarioConfig:
    doc = get_scenario("task4-l1").to_dict()
    doc.update(id="task4-l1-short", max_seconds=seconds, agents=[{"name": "CombatGroup0", "teams": [
        {"name": "Stalker-1", "types": ["Stalker"], "capacity": 6}]}, {"name": "CombatGroup1", "teams": [
        {"name": "Stalker-2", "types": ["Stalker"], "capacity": 6}]}])
    return ScenarioConfig.from_dict(doc)


def test_three_steps_two_agents_six_query_records():
    cfg = short_scenario()
    sink = io.StringIO()
    result = run_episode(cfg, build_roster("task", cfg), MockClient("random-valid-action", 0), StepBudget(5, 2, 1),
                         seed=2, trace=TraceRecorder(sink))
    records = [json.loads(line) for line in sink.getvalue().splitlines()]
    kinds = [r["type"] for r in records]
    assert kinds[0] == "header" and kinds[-1] == "result"
    queries = [r for r in records if r["type"] == "query"]
    assert result.steps == 3 and result.ticks == 30
    assert sorted((q["step"], q["agent"]) for q in queries) == [
        (s, a) for s in range(3) for a in ("CombatGroup0", "CombatGroup1")]
    assert [r["step"] for r in records if r["type"] == "step"] == [0, 1, 2]
    assert records[-1]["result_hash"] == result.result_hash()


def test_missing_client_aborts_before_step_zero():
    cfg = short_scenario()
    with pytest.raises(ClientConfigError, match="CombatGroup1"):
        run_episode(cfg, build_roster("task", cfg), {"CombatGroup0": MockClient("always-noop", 0)},
                    StepBudget(5, 2, 1), seed=1)


def test_failing_client_never_aborts_the_episode():
    cfg = short_scenario(1.0)
    result = run_episode(cfg, build_roster("task", cfg), Flaky(10**6, exc=NonRetryableError), StepBudget(5, 1, 1),
                         seed=1)
    assert result.steps == 1 and result.fallbacks == 2


def test_focus_fire_in_task4_scores_kills_with_a_complete_trace(tmp_path):
    cfg = get_scenario("task4-l1")
    path = tmp_path / "ff.jsonl"
    result = run_episode(cfg, build_roster("task", cfg), MockClient("focus-fire", 0), StepBudget(5, 2, 1), seed=1,
                         trace=path)
    assert result.kd > 0 and result.outcome in ("win", "lose", "draw")
    records = read_trace(path)
    steps = [r for r in records if r["type"] == "step"]
    queries = [r for r in records if r["type"] == "query"]
    assert [s["step"] for s in steps] == list(range(result.steps))
    assert len(queries) == result.steps and all(q["response"] for q in queries)


def test_replay_reproduces_the_recorded_result(tmp_path):
    cfg = short_scenario(8.0)
    roster = build_roster("task", cfg)
    path = tmp_path / "rec.jsonl"
    first = run_episode(cfg, roster, MockClient("random-valid-action", 0), StepBudget(5, 2, 1), seed=4, trace=path)
    again = run_episode(cfg, roster, ReplayClient.from_path(path), StepBudget(5, 2, 1), seed=4)
    assert again.result_hash() == first.result_hash()
    assert again.to_dict() | {"trace_path": None} == first.to_dict() | {"trace_path": None}
    assert again.state_hash == first.state_hash
