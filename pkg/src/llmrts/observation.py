"""Per-agent text observations (twelve numbered blocks) and the query envelope.

Wording lives in ``data/observation.json`` and ``data/prompts.json`` so the
prompt can be restyled without touching code.  Block order and content:

    1 global state        5 last-step events     9 last-step errors
    2 unit counts         6 valid actions       10 received messages
    3 units on screen     7 action explanations 11 communication targets
    4 unit knowledge      8 last-step actions   12 task description
"""

from __future__ import annotations

import hashlib
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Any, Iterable, Sequence

import numpy as np

from llmrts.agents import AgentProfile, Message
from llmrts.bridge import Registry, protoss_registry, valid_actions
from llmrts.calls import AgentContext
from llmrts.grammar import SCREEN_SIZE, ScreenCoord
from llmrts.sim.coords import Camera, world_to_screen
from llmrts.sim.world import GameEvent, Unit, WorldState

BLOCK_IDS = tuple(range(1, 13))
GRID_CHANNELS = ("ownership", "unit-density", "terrain")


def _data(name: str) -> dict[str, Any]:
    return json.loads(resources.files("llmrts").joinpath(f"data/{name}").read_text())


@lru_cache(maxsize=1)
def templates() -> dict[str, Any]:
    return _data("observation.json")


@lru_cache(maxsize=1)
def wiki() -> dict[str, dict[str, Any]]:
    return _data("wiki.json")["entries"]


@lru_cache(maxsize=1)
def prompts() -> dict[str, Any]:
    return _data("prompts.json")


@dataclass
class LastStep:
    """What happened to one agent since its previous decision."""

    actions: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)
    events: list[GameEvent] = field(default_factory=list)


@dataclass(frozen=True)
class ObservationText:
    blocks: tuple[tuple[int, str], ...]

    def block(self, block_id: int) -> str:
        return dict(self.blocks)[block_id]

    def render(self) -> str:
        return "\n\n".join(text for _, text in self.blocks)


# ---------------------------------------------------------------------------
# unit lines
# ---------------------------------------------------------------------------

def _up(v: float) -> int:
    return int(math.ceil(v - 1e-9))


def unit_status(unit: Unit, world: WorldState) -> list[str]:
    flags = []
    if unit.build_left > 0:
        flags.append("constructing")
    if unit.queue:
        flags.append("producing")
    if unit.held_until > world.clock:
        flags.append("held")
    if unit.lifted_by is not None:
        flags.append("lifted")
    if unit.shade is not None:
        flags.append("phase-shifted")
    if unit.mode:
        flags.append(unit.mode)
    for e in world.effects:
        if e.kind == "guardian" and e.owner == unit.owner and math.hypot(unit.x - e.x, unit.y - e.y) <= e.radius:
            flags.append("shielded")
            break
    if unit.cooldowns and any(c > 0 for c in unit.cooldowns):
        flags.append("weapon-cooldown")
    return flags


def _owner_name(unit: Unit, player: int) -> str:
    if unit.owner == player:
        return "self"
    return "neutral" if unit.owner == 0 else "enemy"


def screen_units(world: WorldState, camera: Camera, player: int, visible: set[int] | None = None
                 ) -> list[tuple[Unit, ScreenCoord]]:
    """Units this player can see inside ``camera``, ascending by tag."""
    visible = world.visible_tags(player) if visible is None else visible
    out = []
    for u in world.iter_units():
        if not u.alive or u.loaded_in is not None or u.tag not in visible:
            continue
        p = world_to_screen(u.x, u.y, camera)
        if isinstance(p, ScreenCoord):
            out.append((u, p))
    return out


def format_unit_line(unit: Unit, pixel: ScreenCoord, world: WorldState, player: int) -> str:
    status = unit_status(unit, world)
    return templates()["blocks"]["3"]["line"].format(
        tag=f"0x{unit.tag:X}", type=unit.type, owner=_owner_name(unit, player), x=pixel.x, y=pixel.y,
        health=_up(unit.health), max_health=_up(unit.max_health), shield=_up(unit.shield),
        max_shield=_up(unit.max_shield), energy=int(math.floor(unit.energy + 1e-9)),
        max_energy=_up(unit.max_energy), status=", ".join(status) if status else "-",
    )


_UNIT_LINE_RE = re.compile(
    r"tag: 0x(?P<tag>[0-9A-F]+) \| type: (?P<type>\w+) \| owner: (?P<owner>\w+) \| "
    r"screen: \[(?P<x>\d+), (?P<y>\d+)\] \| health: (?P<health>\d+)/(?P<max_health>\d+) \| "
    r"shield: (?P<shield>\d+)/(?P<max_shield>\d+) \| energy: (?P<energy>\d+)/(?P<max_energy>\d+) \| "
    r"status: (?P<status>.*)$"
)


def parse_unit_line(line: str) -> dict[str, Any] | None:
    """Inverse of :func:`format_unit_line` (None when the line is not a unit line)."""
    m = _UNIT_LINE_RE.match(line.strip())
    if m is None:
        return None
    d: dict[str, Any] = m.groupdict()
    out: dict[str, Any] = {k: int(v) for k, v in d.items() if k not in ("tag", "type", "owner", "status")}
    out["tag"] = int(d["tag"], 16)
    out["type"] = d["type"]
    out["owner"] = d["owner"]
    out["status"] = [] if d["status"] == "-" else d["status"].split(", ")
    return out


# ---------------------------------------------------------------------------
# blocks
# ---------------------------------------------------------------------------

def _event_lines(events: Iterable[GameEvent], world: WorldState, ctx: AgentContext) -> list[str]:
    player = ctx.player
    owner_of = {t: u.owner for t, u in world.units.items()}
    for e in events:
        if e.kind == "unit-killed":
            owner_of[e.payload["tag"]] = e.payload["owner"]
    dealt = taken = 0.0
    lines = []
    for e in events:
        p = e.payload
        if e.kind == "damage-dealt":
            if owner_of.get(p.get("target")) == player:
                taken += p["amount"]
            elif owner_of.get(p.get("source")) == player:
                dealt += p["amount"]
        elif e.kind == "unit-killed":
            side = "own" if p["owner"] == player else ("enemy" if p["owner"] else "neutral")
            lines.append(f"{side} {p['type']} 0x{p['tag']:X} was killed")
        elif e.kind == "unit-created" and p.get("owner") == player:
            verb = "completed" if p.get("complete") else "created"
            lines.append(f"own {p['type']} 0x{p['tag']:X} {verb}")
        elif e.kind == "research-done" and p.get("owner") == player:
            lines.append(f"research {p['name']} finished")
        elif e.kind == "action-failed" and owner_of.get(p.get("unit")) == player:
            # Failures of queued orders; immediate call failures are listed with the errors.
            what = p.get("skill", "order")
            lines.append(f"{what} of 0x{p['unit']:X} failed: {p['category']}: {p.get('detail', '')}")
    if dealt or taken:
        lines.append(f"damage dealt: {dealt:.0f}, damage taken: {taken:.0f}")
    return lines


def _counts_line(units: Iterable[Unit]) -> str:
    counts = Counter(u.type for u in units)
    return ", ".join(f"{t} x{n}" for t, n in sorted(counts.items()))


def build_observation(agent: AgentProfile, world: WorldState, inbox: Sequence[Message], last_step: LastStep,
                      *, ctx: AgentContext, task: str = "", targets: Sequence[str] = (), step: int = 0,
                      teams: Sequence[tuple[str, Sequence[int]]] = (), registry: Registry | None = None
                      ) -> ObservationText:
    """Render the twelve blocks for ``agent``; a pure function of its inputs."""
    t = templates()
    tb = t["blocks"]
    player = ctx.player
    visible = world.visible_tags(player)
    camera = world.camera(agent.name)
    blocks: dict[int, list[str]] = {}

    ps = world.players[player]
    team_text = "; ".join(f"{name} [{', '.join(f'0x{tag:X}' for tag in tags)}]" for name, tags in teams) or "-"
    blocks[1] = [line.format(seconds=world.clock * world.stats.tick_seconds, step=step, tick=world.clock,
                             agent=agent.name, minerals=int(ps.minerals), vespene=int(ps.vespene),
                             supply_used=int(world.supply_used(player)), supply_cap=world.supply_cap(player),
                             teams=team_text)
                 for line in tb["1"]["lines"]]

    own = [u for u in world.iter_units(player) if u.alive]
    enemy = [u for u in world.iter_units() if u.owner not in (0, player) and u.alive and u.tag in visible
             and u.loaded_in is None]
    blocks[2] = []
    if own:
        blocks[2].append(tb["2"]["line"].format(owner="self", counts=_counts_line(own)))
    if enemy:
        blocks[2].append(tb["2"]["line"].format(owner="enemy", counts=_counts_line(enemy)))

    on_screen = screen_units(world, camera, player, visible)
    blocks[3] = [format_unit_line(u, p, world, player) for u, p in on_screen]

    blocks[4] = []
    for type_name in sorted({u.type for u, _ in on_screen}):
        entry = wiki().get(type_name)
        if entry is None:
            continue
        w4 = tb["4"]
        blocks[4].append(w4["line"].format(type=type_name, description=entry["description"]))
        blocks[4].extend(w4["detail"].format(line=line) for line in entry["stats"])
        if entry["strong_against"]:
            blocks[4].append(w4["strong"].format(names=", ".join(entry["strong_against"])))
        if entry["weak_against"]:
            blocks[4].append(w4["weak"].format(names=", ".join(entry["weak_against"])))

    blocks[5] = _event_lines(last_step.events, world, ctx)

    reg = registry or protoss_registry()
    available = valid_actions(ctx, world, reg)
    blocks[6] = [tb["6"]["line"].format(signature=sig) for sig, _ in available]
    blocks[7] = [tb["7"]["line"].format(name=sig, description=desc) for sig, desc in available]
    if available:
        blocks[7] += tb["7"]["args"]

    blocks[8] = [tb["8"]["line"].format(action=a) for a in last_step.actions]
    blocks[9] = [tb["9"]["line"].format(error=e) for e in last_step.errors]
    blocks[10] = [tb["10"]["line"].format(sender=m.sender, content=m.content) for m in inbox]
    blocks[11] = [line.format(targets=", ".join(targets) if targets else "none") for line in tb["11"]["lines"]]
    blocks[12] = [tb["12"]["line"].format(task=task or "none")]

    rendered = []
    for bid in BLOCK_IDS:
        spec = tb[str(bid)]
        body = blocks[bid] or [spec.get("empty", t["empty"])]
        rendered.append((bid, "\n".join([t["header"].format(id=bid, title=spec["title"])] + body)))
    return ObservationText(tuple(rendered))


# ---------------------------------------------------------------------------
# feature grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FeatureGrid:
    """64x64 integer grids indexed ``[row = screen y][column = screen x]``."""

    channels: dict[str, np.ndarray]

    def to_text(self) -> str:
        lines = [f"grid {SCREEN_SIZE}x{SCREEN_SIZE} channels={','.join(self.channels)} index=[y][x]"]
        cols = " ".join(f"{x % 10}" for x in range(SCREEN_SIZE))
        for name, grid in self.channels.items():
            lines.append(f"channel {name}")
            lines.append(f"    x: {cols}")
            for y in range(SCREEN_SIZE):
                lines.append(f"y{y:02d}: " + " ".join(str(int(v)) for v in grid[y]))
        return "\n".join(lines)


def render_feature_grid(world: WorldState, camera: Camera, player: int = 1,
                        channels: Sequence[str] = GRID_CHANNELS) -> FeatureGrid:
    out: dict[str, np.ndarray] = {}
    units = screen_units(world, camera, player)
    for name in channels:
        grid = np.zeros((SCREEN_SIZE, SCREEN_SIZE), dtype=np.int64)
        if name == "ownership":
            for u, p in units:
                grid[p.y, p.x] = 1 if u.owner == player else (3 if u.owner == 0 else 2)
        elif name == "unit-density":
            for _, p in units:
                grid[p.y, p.x] += 1
        elif name == "terrain":
            scale = camera.span / SCREEN_SIZE
            for py in range(SCREEN_SIZE):
                wy = min(int(camera.y0 + (py + 0.5) * scale), world.height - 1)
                for px in range(SCREEN_SIZE):
                    wx = min(int(camera.x0 + (px + 0.5) * scale), world.width - 1)
                    grid[py, px] = int(world.terrain[wy, wx])
        else:
            raise ValueError(f"unknown grid channel {name!r}")
        out[name] = grid
    return FeatureGrid(out)


# ---------------------------------------------------------------------------
# query envelope
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChatRequest:
    system: str
    examples: tuple[tuple[str, str], ...]
    user: str
    attachments: tuple[str, ...] = ()

    def messages(self) -> list[dict[str, str]]:
        """Chat-completions ``messages`` array."""
        msgs = [{"role": "system", "content": self.system}]
        for example_in, example_out in self.examples:
            msgs.append({"role": "user", "content": example_in})
            msgs.append({"role": "assistant", "content": example_out})
        content = self.user
        for attachment in self.attachments:
            content += "\n\n" + attachment
        msgs.append({"role": "user", "content": content})
        return msgs

    def digest(self) -> str:
        blob = json.dumps(self.messages(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def system_prompt(profile: AgentProfile) -> str:
    p = prompts()
    role = p["roles"].get(profile.kind) or p["roles"]["CombatGroup"]
    return f"You are agent {profile.name}.\n{p['common']}\n\n{role['rules']}"


def assemble_query(profile: AgentProfile, obs: ObservationText, grids: Sequence[FeatureGrid] = ()) -> ChatRequest:
    """System rules, one example exchange, the observation, then grid attachments."""
    p = prompts()
    role = p["roles"].get(profile.kind) or p["roles"]["CombatGroup"]
    return ChatRequest(
        system=system_prompt(profile),
        examples=((role["example_input"], role["example_output"]),),
        user=obs.render(),
        attachments=tuple(g.to_text() for g in grids),
    )
