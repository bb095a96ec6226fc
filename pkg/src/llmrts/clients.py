"""Decision sources behind one ``complete(request, meta) -> text`` interface.

* mock: scripted policies that read only the observation text
* replay: recorded raw responses, one cursor per agent
* http: a chat-completions endpoint reached with httpx
"""

from __future__ import annotations

import json
import math
import os
import random
import re
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Any, Callable, Protocol

import httpx

from llmrts.grammar import SCREEN_SIZE
from llmrts.observation import ChatRequest, parse_unit_line

MOCK_SCRIPTS = ("always-noop", "random-valid-action", "focus-fire", "kite")
CLIENT_KINDS = ("mock", "replay", "http")
DEFAULT_MOCK_DELAY = 0.2
DEFAULT_KEY_ENV = "LLMRTS_API_KEY"
NOOP_TEXT = "<No_Operation()>"


class ClientError(Exception):
    """Failure of one completion attempt."""


class RetryableError(ClientError):
    pass


class NonRetryableError(ClientError):
    pass


class ClientConfigError(ValueError):
    pass


@dataclass(frozen=True)
class QueryMeta:
    agent: str
    step: int
    seed: int = 0


class Client(Protocol):
    def complete(self, request: ChatRequest, meta: QueryMeta) -> str: ...


@dataclass(frozen=True)
class ClientConfig:
    kind: str
    script: str | None = None
    delay: float | None = None
    trace_path: str | None = None
    endpoint: str | None = None
    model: str | None = None
    key_env: str | None = None
    timeout: float | None = None
    temperature: float | None = None

    def __post_init__(self) -> None:
        groups = {"mock": ("script", "delay"), "replay": ("trace_path",),
                  "http": ("endpoint", "model", "key_env", "timeout", "temperature")}
        if self.kind not in groups:
            raise ClientConfigError(f"unknown client kind {self.kind!r}; valid kinds: {', '.join(CLIENT_KINDS)}")
        for kind, names in groups.items():
            if kind == self.kind:
                continue
            stray = [n for n in names if getattr(self, n) is not None]
            if stray:
                raise ClientConfigError(f"{self.kind} client does not take {', '.join(stray)}")
        if self.kind == "mock" and self.script not in MOCK_SCRIPTS:
            raise ClientConfigError(f"unknown mock script {self.script!r}; valid scripts: {', '.join(MOCK_SCRIPTS)}")
        if self.kind == "replay" and not self.trace_path:
            raise ClientConfigError("replay client needs a trace path")
        if self.kind == "http" and not self.endpoint:
            raise ClientConfigError("http client needs an endpoint URL")


def parse_client_spec(spec: str, *, delay: float | None = None, endpoint: str | None = None,
                      model: str | None = None, key_env: str | None = None,
                      timeout: float | None = None, temperature: float | None = None) -> ClientConfig:
    """``mock:focus-fire``, ``replay:trace.jsonl``, ``http`` or ``http:URL``."""
    kind, _, rest = spec.partition(":")
    if kind == "mock":
        return ClientConfig("mock", script=rest or "always-noop",
                            delay=DEFAULT_MOCK_DELAY if delay is None else delay)
    if kind == "replay":
        return ClientConfig("replay", trace_path=rest)
    if kind == "http":
        return ClientConfig("http", endpoint=rest or endpoint or os.environ.get("LLMRTS_ENDPOINT"),
                            model=model or os.environ.get("LLMRTS_MODEL", "gpt-4o-mini"),
                            key_env=key_env or DEFAULT_KEY_ENV, timeout=30.0 if timeout is None else timeout,
                            temperature=0.0 if temperature is None else temperature)
    raise ClientConfigError(f"unknown client kind {kind!r}; valid kinds: {', '.join(CLIENT_KINDS)}")


def make_client(config: ClientConfig) -> Client:
    if config.kind == "mock":
        return MockClient(config.script or "always-noop", config.delay or 0.0)
    if config.kind == "replay":
        return ReplayClient.from_path(config.trace_path or "")
    return HttpClient(config)


# ---------------------------------------------------------------------------
# observation text helpers used by the scripted policies
# ---------------------------------------------------------------------------

_HEADER_RE = re.compile(r"^\[(\d+)\] ", re.M)
_HINT_RE = re.compile(r"minimap \[(\d+), (\d+)\]")
_SIGNATURE_RE = re.compile(r"^<([A-Za-z][A-Za-z0-9_]*)\(([^)]*)\)>$")


def split_blocks(user_text: str) -> dict[int, list[str]]:
    """Block id -> body lines of a rendered observation."""
    heads = list(_HEADER_RE.finditer(user_text))
    out = {}
    for i, m in enumerate(heads):
        end = heads[i + 1].start() if i + 1 < len(heads) else len(user_text)
        body = user_text[m.start():end].strip().splitlines()[1:]
        out[int(m.group(1))] = body
    return out


@dataclass
class ObservedState:
    own: list[dict[str, Any]]
    enemies: list[dict[str, Any]]
    signatures: dict[str, tuple[str, ...]]
    hint: tuple[int, int] | None

    @classmethod
    def from_request(cls, request: ChatRequest) -> ObservedState:
        blocks = split_blocks(request.user)
        units = [u for u in (parse_unit_line(line) for line in blocks.get(3, [])) if u]
        sigs = {}
        for line in blocks.get(6, []):
            m = _SIGNATURE_RE.match(line.strip())
            if m:
                sigs[m.group(1)] = tuple(a.strip() for a in m.group(2).split(",") if a.strip())
        hint = _HINT_RE.search(" ".join(blocks.get(12, [])))
        return cls([u for u in units if u["owner"] == "self"], [u for u in units if u["owner"] == "enemy"],
                   sigs, (int(hint.group(1)), int(hint.group(2))) if hint else None)

    def centroid(self) -> tuple[float, float] | None:
        if not self.own:
            return None
        return (sum(u["x"] for u in self.own) / len(self.own), sum(u["y"] for u in self.own) / len(self.own))


def _weakest(state: ObservedState) -> dict[str, Any] | None:
    if not state.enemies:
        return None
    c = state.centroid() or (SCREEN_SIZE / 2, SCREEN_SIZE / 2)
    return min(state.enemies, key=lambda u: (u["health"] + u["shield"], math.hypot(u["x"] - c[0], u["y"] - c[1]),
                                             u["tag"]))


def _advance(state: ObservedState) -> str:
    if "All_Units_Attack" in state.signatures:
        return "<All_Units_Attack()>"
    if state.hint and "Move_Minimap" in state.signatures and state.own:
        return f"<Move_Minimap([{state.hint[0]}, {state.hint[1]}])>"
    return NOOP_TEXT


def focus_fire_policy(state: ObservedState, meta: QueryMeta) -> str:
    """Whole team attacks the weakest visible enemy; otherwise advance toward the task hint."""
    target = _weakest(state)
    if target is not None and "Attack_Unit" in state.signatures and state.own:
        return f"<Attack_Unit(0x{target['tag']:X})>"
    return _advance(state)


def kite_policy(state: ObservedState, meta: QueryMeta) -> str:
    """Attack while weapons are ready, step back from the nearest enemy while they cool down."""
    target = _weakest(state)
    c = state.centroid()
    if target is None or c is None or "Attack_Unit" not in state.signatures:
        return _advance(state)
    cooling = sum(1 for u in state.own if "weapon-cooldown" in u["status"])
    nearest = min(state.enemies, key=lambda u: (math.hypot(u["x"] - c[0], u["y"] - c[1]), u["tag"]))
    dist = math.hypot(nearest["x"] - c[0], nearest["y"] - c[1])
    if "Move_Screen" in state.signatures and cooling * 2 > len(state.own) and 0 < dist < 24:
        dx, dy = (c[0] - nearest["x"]) / dist, (c[1] - nearest["y"]) / dist
        x = min(max(round(c[0] + dx * 8), 0), SCREEN_SIZE - 1)
        y = min(max(round(c[1] + dy * 8), 0), SCREEN_SIZE - 1)
        return f"<Move_Screen([{x}, {y}])>"
    return f"<Attack_Unit(0x{target['tag']:X})>"


def random_valid_policy(state: ObservedState, meta: QueryMeta) -> str:
    """One action drawn uniformly from the valid-action block, with random arguments."""
    rng = random.Random(f"{meta.seed}:{meta.agent}:{meta.step}")
    if not state.signatures:
        return NOOP_TEXT
    name = rng.choice(sorted(state.signatures))
    tags = sorted(u["tag"] for u in state.own + state.enemies)
    args = []
    for kind in state.signatures[name]:
        if kind == "tag":
            if not tags:
                return NOOP_TEXT
            args.append(f"0x{rng.choice(tags):X}")
        else:
            args.append(f"[{rng.randrange(SCREEN_SIZE)}, {rng.randrange(SCREEN_SIZE)}]")
    return f"<{name}({', '.join(args)})>"


POLICIES: dict[str, Callable[[ObservedState, QueryMeta], str]] = {
    "always-noop": lambda state, meta: NOOP_TEXT,
    "random-valid-action": random_valid_policy,
    "focus-fire": focus_fire_policy,
    "kite": kite_policy,
}


class MockClient:
    """Scripted response after a fixed delay.  Stateless, so safe across threads."""

    def __init__(self, script: str = "always-noop", delay: float = DEFAULT_MOCK_DELAY):
        if script not in POLICIES:
            raise ClientConfigError(f"unknown mock script {script!r}; valid scripts: {', '.join(MOCK_SCRIPTS)}")
        self.script = script
        self.delay = delay

    def complete(self, request: ChatRequest, meta: QueryMeta) -> str:
        if self.delay > 0:
            time.sleep(self.delay)
        if self.script == "always-noop":
            return NOOP_TEXT
        action = POLICIES[self.script](ObservedState.from_request(request), meta)
        return f"Scripted {self.script} decision.\nActions:\n{action}"


# ---------------------------------------------------------------------------
# traces: record and replay
# ---------------------------------------------------------------------------

class TraceError(RuntimeError):
    pass


class TraceRecorder:
    """Line-delimited trace writer; one query record per (step, agent)."""

    def __init__(self, sink: str | Path | IO[str]):
        self.path = str(sink) if isinstance(sink, (str, Path)) else None
        try:
            self._fh = open(sink, "w", encoding="utf-8") if isinstance(sink, (str, Path)) else sink
        except OSError as exc:
            raise TraceError(f"cannot open trace sink {sink}: {exc}") from exc
        self._owns = isinstance(sink, (str, Path))
        self._seen: set[tuple[int, str]] = set()
        self._lock = threading.Lock()

    def write(self, record: dict[str, Any]) -> None:
        line = json.dumps(record, sort_keys=True) + "\n"
        with self._lock:
            try:
                self._fh.write(line)
                self._fh.flush()
            except (OSError, ValueError) as exc:
                raise TraceError(f"trace write failed ({self.path or 'stream'}): {exc}") from exc

    def record(self, step: int, agent: str, request_hash: str, response: str | None, *,
               fallback: bool = False, attempts: int = 1) -> None:
        key = (step, agent)
        with self._lock:
            if key in self._seen:
                raise TraceError(f"duplicate trace record for agent {agent} at step {step}")
            self._seen.add(key)
        self.write({"type": "query", "step": step, "agent": agent, "request_hash": request_hash,
                    "response": response, "fallback": fallback, "attempts": attempts})

    def close(self) -> None:
        if self._owns:
            self._fh.close()


def read_trace(path: str | Path) -> list[dict[str, Any]]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if line.strip():
                try:
                    records.append(json.loads(line))
                except json.JSONDecodeError as exc:
                    raise TraceError(f"{path}:{lineno}: malformed trace record ({exc.msg})") from exc
    return records


@dataclass
class ReplayClient:
    """Hands back recorded responses in order, per agent.  Recorded fallbacks fail again."""

    responses: dict[str, list[dict[str, Any]]]
    _cursors: dict[str, int] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)

    @classmethod
    def from_records(cls, records: list[dict[str, Any]]) -> ReplayClient:
        by_agent: dict[str, list[dict[str, Any]]] = {}
        for r in records:
            if r.get("type") == "query":
                by_agent.setdefault(r["agent"], []).append(r)
        for items in by_agent.values():
            items.sort(key=lambda r: r["step"])
        return cls(by_agent)

    @classmethod
    def from_path(cls, path: str | Path) -> ReplayClient:
        if not Path(path).is_file():
            raise ClientConfigError(f"replay trace {path} does not exist")
        return cls.from_records(read_trace(path))

    def complete(self, request: ChatRequest, meta: QueryMeta) -> str:
        with self._lock:
            items = self.responses.get(meta.agent, [])
            i = self._cursors.get(meta.agent, 0)
            if i >= len(items):
                raise NonRetryableError(f"replay exhausted for agent {meta.agent} at step {meta.step}")
            self._cursors[meta.agent] = i + 1
        record = items[i]
        if record.get("fallback") or record.get("response") is None:
            raise NonRetryableError(f"recorded fallback for agent {meta.agent} at step {record['step']}")
        return record["response"]


# ---------------------------------------------------------------------------
# http
# ---------------------------------------------------------------------------

class HttpClient:
    """Chat-completions call; the API key is read per call and never logged or echoed."""

    def __init__(self, config: ClientConfig, transport: httpx.BaseTransport | None = None):
        self.config = config
        self.transport = transport

    def _key(self) -> str:
        name = self.config.key_env or DEFAULT_KEY_ENV
        key = os.environ.get(name)
        if not key:
            raise NonRetryableError(f"environment variable {name} is not set")
        return key

    def complete(self, request: ChatRequest, meta: QueryMeta) -> str:
        body = {"model": self.config.model, "messages": request.messages(),
                "temperature": self.config.temperature}
        headers = {"Authorization": f"Bearer {self._key()}"}
        try:
            with httpx.Client(timeout=self.config.timeout, transport=self.transport) as http:
                resp = http.post(self.config.endpoint or "", json=body, headers=headers)
        except httpx.HTTPError as exc:
            raise RetryableError(f"transport error: {type(exc).__name__}") from None
        if resp.status_code >= 400:
            raise RetryableError(f"endpoint returned HTTP {resp.status_code}")
        try:
            return resp.json()["choices"][0]["message"]["content"]
        except (ValueError, KeyError, IndexError, TypeError):
            raise RetryableError("malformed chat-completions response") from None
