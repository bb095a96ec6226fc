"""Agent rosters, per-agent unit-team caches and the inter-agent message router."""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any

from llmrts.calls import AgentContext
from llmrts.sim.world import WorldState

log = logging.getLogger(__name__)

ROSTER_MODES = ("ECEB", "SCEB", "ECSB", "full", "task")
CHANNEL = "Channel"
PLAYER = 1


class RosterError(ValueError):
    pass


@dataclass(frozen=True)
class TeamSpec:
    name: str
    types: tuple[str, ...] = ()
    capacity: int = 12
    virtual: str | None = None  # "army" | "structures" for views over the whole player


@dataclass(frozen=True)
class AgentProfile:
    name: str
    role: str
    kind: str
    teams: tuple[TeamSpec, ...]
    action_subset: frozenset[str]
    client: str = "default"
    modes: frozenset[str] = frozenset()

    @property
    def virtual(self) -> bool:
        return all(t.virtual for t in self.teams)


@lru_cache(maxsize=1)
def _templates() -> dict[str, Any]:
    return json.loads(resources.files("llmrts").joinpath("data/agents.json").read_text())


def _team_specs(raw: list[dict[str, Any]], default_capacity: int) -> tuple[TeamSpec, ...]:
    return tuple(TeamSpec(t["name"], tuple(t.get("types", ())), int(t.get("capacity", default_capacity)),
                          t.get("virtual")) for t in raw)


def build_roster(mode: str, scenario: Any = None) -> list[AgentProfile]:
    """Agents for a game mode, or for a micro task (``mode="task"``) as listed by the scenario."""
    doc = _templates()
    templates = {a["name"]: a for a in doc["agents"]}
    cap = int(doc["default_capacity"])
    if mode not in ROSTER_MODES:
        raise RosterError(f"unknown mode {mode!r}; valid modes: {', '.join(ROSTER_MODES)}")
    if mode == "task":
        if scenario is None or not scenario.agents:
            raise RosterError("task mode needs a scenario that lists its agents")
        wanted = [a if isinstance(a, dict) else {"name": a} for a in scenario.agents]
        easy_build = False
    else:
        wanted = [{"name": n} for n in doc["modes"][mode]]
        easy_build = mode in doc["easy_build_modes"]
    roster = []
    for spec in wanted:
        base = templates.get(spec["name"])
        if base is None and "teams" not in spec:
            raise RosterError(f"unknown agent {spec['name']!r}")
        base = base or {"role": "micro-combat", "kind": "CombatGroup", "subsets": ["basic", "skills", "single-unit"]}
        subsets = spec.get("subsets") or (base.get("easy_build_subsets") if easy_build and "easy_build_subsets" in base
                                          else base["subsets"])
        modes = set()
        if easy_build:
            modes.add("easy-build")
        if "easy-control" in subsets:
            modes.add("easy-control")
        roster.append(AgentProfile(
            name=spec["name"], role=spec.get("role", base["role"]), kind=spec.get("kind", base["kind"]),
            teams=_team_specs(spec.get("teams", base.get("teams", [])), cap),
            action_subset=frozenset(subsets), client=spec.get("client", "default"), modes=frozenset(modes),
        ))
    names = [a.name for a in roster]
    if len(set(names)) != len(names):
        raise RosterError("duplicate agent names in roster")
    return roster


# ---------------------------------------------------------------------------
# unit-team caches
# ---------------------------------------------------------------------------

@dataclass
class Team:
    name: str
    types: tuple[str, ...]
    capacity: int
    tags: list[int] = field(default_factory=list)

    @property
    def full(self) -> bool:
        return len(self.tags) >= self.capacity


def _sibling_name(name: str, index: int) -> str:
    base, _, num = name.rpartition("-")
    return f"{base}-{index}" if num.isdigit() else f"{name}-{index}"


class UnitCaches:
    """Which living friendly unit belongs to which agent's team.

    New units join the lowest-index team of the owning agent that accepts
    their type and is below capacity; when every such team is full a numbered
    sibling team is created.  Units whose type no agent claims go to the
    unassigned pool.
    """

    def __init__(self, roster: list[AgentProfile], player: int = PLAYER):
        self.player = player
        self.roster = roster
        self.teams: dict[str, list[Team]] = {}
        self.owner_of_type: dict[str, str] = {}
        self.virtual: dict[str, str] = {}
        for agent in roster:
            self.teams[agent.name] = []
            for spec in agent.teams:
                if spec.virtual:
                    self.virtual[agent.name] = spec.virtual
                    continue
                self.teams[agent.name].append(Team(spec.name, spec.types, spec.capacity))
                for t in spec.types:
                    self.owner_of_type.setdefault(t, agent.name)
        self.unassigned: list[int] = []
        self._warned: set[str] = set()

    def assigned(self) -> set[int]:
        out = set(self.unassigned)
        for teams in self.teams.values():
            for team in teams:
                out.update(team.tags)
        return out

    def _place(self, tag: int, type_name: str) -> None:
        agent = self.owner_of_type.get(type_name)
        if agent is None:
            if type_name not in self._warned:
                self._warned.add(type_name)
                log.debug("no agent controls %s; unit goes to the unassigned pool", type_name)
            self.unassigned.append(tag)
            return
        teams = self.teams[agent]
        matching = [t for t in teams if type_name in t.types]
        for team in matching:
            if not team.full:
                team.tags.append(tag)
                return
        last = matching[-1]
        sibling = Team(_sibling_name(last.name, len(matching) + 1), last.types, last.capacity, [tag])
        teams.insert(teams.index(last) + 1, sibling)

    def sync(self, world: WorldState) -> None:
        """Drop dead tags and place new ones (in tag order)."""
        alive = {u.tag: u for u in world.iter_units(self.player) if u.alive}
        self.unassigned = [t for t in self.unassigned if t in alive]
        for teams in self.teams.values():
            for team in teams:
                team.tags = [t for t in team.tags if t in alive]
        known = self.assigned()
        for tag in sorted(alive):
            if tag not in known:
                self._place(tag, alive[tag].type)

    def team_tags(self, agent: str, world: WorldState | None = None) -> tuple[int, ...]:
        """Tags the agent controls; virtual teams resolve against the world."""
        kind = self.virtual.get(agent)
        if kind and world is not None:
            if kind == "army":
                return tuple(u.tag for u in world.iter_units(self.player)
                             if world.utype(u).combat and not world.utype(u).structure)
            return ()
        tags: list[int] = []
        for team in self.teams.get(agent, []):
            tags.extend(team.tags)
        return tuple(sorted(tags))

    def agent_teams(self, agent: str) -> list[Team]:
        return list(self.teams.get(agent, []))

    def context(self, profile: AgentProfile, world: WorldState) -> AgentContext:
        return AgentContext(profile.name, self.player, self.team_tags(profile.name, world),
                            profile.action_subset, profile.modes)

    def focus_point(self, profile: AgentProfile, world: WorldState) -> tuple[float, float] | None:
        """Where the agent's camera should look: its team centroid, or its base for structure views."""
        kind = self.virtual.get(profile.name)
        if kind == "structures":
            base = world.meta.get("player_base")
            if base:
                return float(base[0]), float(base[1])
            structures = [u for u in world.iter_units(self.player) if world.utype(u).structure]
            return (structures[0].x, structures[0].y) if structures else None
        units = [world.units[t] for t in self.team_tags(profile.name, world)
                 if t in world.units and world.units[t].loaded_in is None]
        if not units:
            return None
        return sum(u.x for u in units) / len(units), sum(u.y for u in units) / len(units)


# ---------------------------------------------------------------------------
# messages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Message:
    step: int
    sender: str
    to: str
    content: str


@dataclass(frozen=True)
class Notice:
    """Router feedback shown alongside action errors."""

    category: str
    detail: str

    def render(self) -> str:
        return f"MessageTo: {self.category}: {self.detail}"


class Router:
    """Direct and channel messages between agents of one player.

    Sends during a step are buffered; ``deliver`` hands them out for the next
    step ordered by (step, sender), so delivery latency is one decision step.
    """

    def __init__(self, agents: list[str], channels: dict[str, list[str]] | None = None):
        self.agents = list(agents)
        self.channels = channels if channels is not None else {CHANNEL: list(agents)}
        self._outbox: list[tuple[int, int, Message]] = []
        self._seq = 0
        self._lock = threading.Lock()

    def targets(self, sender: str) -> list[str]:
        return [a for a in self.agents if a != sender] + sorted(self.channels)

    def send(self, step: int, sender: str, to: str, content: str) -> Notice | None:
        if to not in self.agents and to not in self.channels:
            return Notice("unknown-recipient", f"{to} is not an agent or channel; valid: "
                          f"{', '.join(self.targets(sender))}")
        with self._lock:
            self._outbox.append((self._seq, step, Message(step, sender, to, content)))
            self._seq += 1
        return None

    def deliver(self) -> dict[str, list[Message]]:
        with self._lock:
            pending = sorted(self._outbox, key=lambda item: (item[1], item[2].sender, item[0]))
            self._outbox = []
        inboxes: dict[str, list[Message]] = {a: [] for a in self.agents}
        for _, _, msg in pending:
            if msg.to in self.channels:
                for member in self.channels[msg.to]:
                    if member != msg.sender and member in inboxes:
                        inboxes[member].append(msg)
            else:
                inboxes[msg.to].append(msg)
        return inboxes
