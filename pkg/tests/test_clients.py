from __future__ import annotations

import io
import json
import socket

import httpx
import pytest

from helpers import scenario_request
from llmrts.bridge import protoss_registry
from llmrts.clients import (ClientConfig, ClientConfigError, HttpClient, MockClient, NonRetryableError, QueryMeta,
                            ReplayClient, RetryableError, TraceError, TraceRecorder, make_client, parse_client_spec,
                            read_trace)
from llmrts.grammar import extract_actions
from llmrts.orchestrator import StepBudget, query_agent

KEY = "sk-test-secret-123"


@pytest.fixture(scope="module")
def request_():
    return scenario_request("task4-l1", 1)


def test_noop_mock(request_):
    profile, req = request_
    assert MockClient("always-noop", 0).complete(req, QueryMeta(profile.name, 0)) == "<No_Operation()>"


@pytest.mark.parametrize("script", ["focus-fire", "kite", "random-valid-action"])
def test_scripted_mocks_answer_with_registered_actions(request_, script):
    profile, req = request_
    text = MockClient(script, 0).complete(req, QueryMeta(profile.name, 0, 7))
    actions = extract_actions(text).actions
    assert actions and all(a.name in protoss_registry().entries for a in actions)


def test_focus_fire_targets_the_weakest_visible_enemy():
    from helpers import micro_world, team_context
    from llmrts.agents import AgentProfile, TeamSpec
    from llmrts.observation import LastStep, assemble_query, build_observation

    w, tags = micro_world()
    weak = w.spawn("Zergling", 2, 33, 33)
    w.units[tags["roach"]].health = 20.0
    weak.health = 20.0  # tie on health: lower tag wins
    w.move_camera("G", 31, 30)
    profile = AgentProfile("G", "micro-combat", "CombatGroup", (TeamSpec("Stalker-1", ("Stalker",)),),
                           frozenset({"basic"}))
    ctx = team_context((tags["stalker1"], tags["stalker2"]), name="G", subsets=("basic",))
    req = assemble_query(profile, build_observation(profile, w, [], LastStep(), ctx=ctx))
    text = MockClient("focus-fire", 0).complete(req, QueryMeta("G", 0))
    assert extract_actions(text).actions[0].args[0].tag == min(tags["roach"], weak.tag)


def test_random_valid_is_seeded(request_):
    profile, req = request_
    client = MockClient("random-valid-action", 0)
    a = [client.complete(req, QueryMeta(profile.name, s, 3)) for s in range(5)]
    b = [client.complete(req, QueryMeta(profile.name, s, 3)) for s in range(5)]
    assert a == b


def test_client_specs():
    assert parse_client_spec("mock:kite", delay=0).script == "kite"
    assert parse_client_spec("mock").script == "always-noop"
    with pytest.raises(ClientConfigError):
        parse_client_spec("mock:nope")
    with pytest.raises(ClientConfigError):
        parse_client_spec("grpc:x")
    with pytest.raises(ClientConfigError):
        ClientConfig("mock", script="kite", endpoint="http://x")
    with pytest.raises(ClientConfigError):
        make_client(parse_client_spec("replay:/does/not/exist.jsonl"))


def test_recorder_rejects_duplicates_and_replay_returns_in_order(tmp_path):
    path = tmp_path / "t.jsonl"
    rec = TraceRecorder(path)
    rec.record(0, "A", "h0", "<Hold_Position()>")
    rec.record(0, "B", "h1", None, fallback=True, attempts=3)
    rec.record(1, "A", "h2", "<No_Operation()>")
    with pytest.raises(TraceError):
        rec.record(1, "A", "h3", "again")
    rec.close()
    replay = ReplayClient.from_records(read_trace(path))
    assert replay.complete(None, QueryMeta("A", 0)) == "<Hold_Position()>"
    assert replay.complete(None, QueryMeta("A", 1)) == "<No_Operation()>"
    with pytest.raises(NonRetryableError):
        replay.complete(None, QueryMeta("A", 2))
    with pytest.raises(NonRetryableError):
        replay.complete(None, QueryMeta("B", 0))


def test_trace_write_failure_is_reported():
    sink = io.StringIO()
    rec = TraceRecorder(sink)
    sink.close()
    with pytest.raises(TraceError):
        rec.record(0, "A", "h", "x")


def test_malformed_trace_line(tmp_path):
    path = tmp_path / "bad.jsonl"
    path.write_text('{"type": "header"}\nnot json\n')
    with pytest.raises(TraceError, match=":2:"):
        read_trace(path)


# -- http ----------------------------------------------------------------------

def http_client(handler, monkeypatch, key=KEY):
    if key is None:
        monkeypatch.delenv("TEST_LLM_KEY", raising=False)
    else:
        monkeypatch.setenv("TEST_LLM_KEY", key)
    config = parse_client_spec("http:http://stub.local/v1/chat/completions", model="m", key_env="TEST_LLM_KEY")
    return HttpClient(config, transport=httpx.MockTransport(handler))


def test_http_sends_a_chat_completion(request_, monkeypatch):
    profile, req = request_
    seen = {}

    def handler(r: httpx.Request) -> httpx.Response:
        seen["auth"] = r.headers["authorization"]
        seen["body"] = json.loads(r.content)
        return httpx.Response(200, json={"choices": [{"message": {"content": "<Hold_Position()>"}}]})

    assert http_client(handler, monkeypatch).complete(req, QueryMeta(profile.name, 0)) == "<Hold_Position()>"
    assert seen["auth"] == f"Bearer {KEY}"
    assert seen["body"]["model"] == "m" and seen["body"]["messages"] == req.messages()


@pytest.mark.parametrize("response", [
    httpx.Response(500, text="oops"),
    httpx.Response(429, text="slow down"),
    httpx.Response(200, text="not json"),
    httpx.Response(200, json={"choices": []}),
])
def test_http_failures_are_retryable(request_, monkeypatch, response):
    profile, req = request_
    with pytest.raises(RetryableError):
        http_client(lambda r: response, monkeypatch).complete(req, QueryMeta(profile.name, 0))


def test_http_transport_error_does_not_leak_the_key(request_, monkeypatch):
    profile, req = request_

    def handler(r: httpx.Request) -> httpx.Response:
        raise httpx.ConnectError(f"refused with header {r.headers['authorization']}")

    with pytest.raises(RetryableError) as info:
        http_client(handler, monkeypatch).complete(req, QueryMeta(profile.name, 0))
    assert KEY not in str(info.value) and KEY not in repr(info.value)
    assert info.value.__cause__ is None


def test_http_missing_key_is_not_retryable(request_, monkeypatch):
    profile, req = request_
    with pytest.raises(NonRetryableError):
        http_client(lambda r: httpx.Response(200), monkeypatch, key=None).complete(req, QueryMeta(profile.name, 0))


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_unreachable_endpoint_is_retryable_and_engages_backoff(request_, monkeypatch):
    profile, req = request_
    monkeypatch.setenv("TEST_LLM_KEY", KEY)
    config = parse_client_spec(f"http:http://127.0.0.1:{_free_port()}/v1/chat/completions", key_env="TEST_LLM_KEY",
                               timeout=2.0)
    client = HttpClient(config)
    with pytest.raises(RetryableError):
        client.complete(req, QueryMeta(profile.name, 0))
    r = query_agent(profile.name, req, client, StepBudget(10, 5, 1))
    assert r.fallback and r.attempts == 1 and r.log[0].outcome == "retryable"
    assert len(r.waits) == 1 and r.waits[0] == pytest.approx(1.0, abs=0.1)
