"""Scenario configs: loading into a world and deciding the outcome.

A scenario is a JSON document shipped under ``data/scenarios``.  Spawns are
given as (type, count, region) records; units are packed on a grid inside the
region and jittered by a seed-derived offset, so a (config, seed) pair always
produces the same world.
"""

from __future__ import annotations

import copy
import json
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any

import numpy as np

from llmrts.sim.opponent import waves_done
from llmrts.sim.world import BLOCKED, WorldState, snap_center

PLAYER = 1
ENEMY = 2
OUTCOMES = ("ongoing", "win", "lose", "draw")
VICTORY_KINDS = ("kill_workers", "defend", "eliminate", "eliminate_and_kill_workers", "destroy_base")


class ScenarioError(ValueError):
    """A scenario id is unknown or its config cannot be loaded."""


@dataclass
class Spawn:
    type: str
    owner: int
    count: int = 1
    region: tuple[float, float, float, float] | None = None
    at: tuple[float, float] | None = None
    group: str = ""
    energy: float | None = None
    complete: bool = True


@dataclass
class ScenarioConfig:
    id: str
    width: int
    height: int
    mode: str  # micro | complete
    victory: dict[str, Any]
    max_seconds: float
    level: int = 1
    title: str = ""
    task: str = ""
    spawns: list[Spawn] = field(default_factory=list)
    players: dict[int, dict[str, Any]] = field(default_factory=dict)
    opponent: dict[str, Any] = field(default_factory=dict)
    waves: dict[str, Any] = field(default_factory=dict)
    meta: dict[str, Any] = field(default_factory=dict)
    blocked: list[tuple[int, int, int, int]] = field(default_factory=list)
    agents: list[Any] = field(default_factory=list)
    roster_mode: str = "task"
    economy: bool = False
    auto_workers: bool = False
    jitter: float = 0.3

    @property
    def max_ticks(self) -> int:
        return int(round(self.max_seconds / 0.1))

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> ScenarioConfig:
        doc = copy.deepcopy(doc)
        spawns = [Spawn(**{**s, "region": tuple(s["region"]) if s.get("region") else None,
                           "at": tuple(s["at"]) if s.get("at") else None}) for s in doc.pop("spawns", [])]
        players = {int(k): v for k, v in doc.pop("players", {}).items()}
        blocked = [tuple(b) for b in doc.pop("blocked", [])]
        cfg = cls(spawns=spawns, players=players, blocked=blocked, **doc)
        if cfg.victory.get("kind") not in VICTORY_KINDS:
            raise ScenarioError(f"{cfg.id}: unknown victory kind {cfg.victory.get('kind')!r}")
        return cfg

    def to_dict(self) -> dict[str, Any]:
        out = {k: copy.deepcopy(v) for k, v in self.__dict__.items()}
        out["spawns"] = [{k: (list(v) if isinstance(v, tuple) else v) for k, v in s.__dict__.items()
                          if v is not None and not (k == "group" and v == "")}
                         for s in self.spawns]
        out["players"] = {str(k): v for k, v in self.players.items()}
        out["blocked"] = [list(b) for b in self.blocked]
        return out


# ---------------------------------------------------------------------------
# manifest
# ---------------------------------------------------------------------------

def _scenario_dir():
    return resources.files("llmrts").joinpath("data/scenarios")


@lru_cache(maxsize=1)
def _manifest() -> dict[str, dict[str, Any]]:
    out = {}
    for entry in sorted(_scenario_dir().iterdir(), key=lambda p: p.name):
        if entry.name.endswith(".json"):
            doc = json.loads(entry.read_text())
            out[doc["id"]] = doc
    return out


def scenario_ids() -> list[str]:
    return list(_manifest())


def get_scenario(scenario_id: str) -> ScenarioConfig:
    docs = _manifest()
    if scenario_id not in docs:
        raise ScenarioError(f"unknown scenario {scenario_id!r}; valid ids: {', '.join(docs)}")
    return ScenarioConfig.from_dict(docs[scenario_id])


def read_scenario(path: str | Path) -> ScenarioConfig:
    return ScenarioConfig.from_dict(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def _grid_positions(spawn: Spawn, radius: float, jitter: float) -> list[tuple[float, float]]:
    if spawn.at is not None and spawn.count == 1:
        return [spawn.at]
    x0, y0, x1, y1 = spawn.region if spawn.region else (*spawn.at, *spawn.at)
    # columns fill the region's width; rows grow around its vertical centre
    spacing = 2 * (radius + jitter) + 0.1
    cols = max(1, int((x1 - x0) // spacing) + 1)
    used_rows = math.ceil(spawn.count / cols)
    used_cols = min(cols, spawn.count)
    ox = (x0 + x1) / 2 - (used_cols - 1) * spacing / 2
    oy = (y0 + y1) / 2 - (used_rows - 1) * spacing / 2
    return [(ox + (i % cols) * spacing, oy + (i // cols) * spacing) for i in range(spawn.count)]


def _check_overlaps(world: WorldState) -> None:
    ground = [u for u in world.iter_units()
              if not world.utype(u).air and not world.utype(u).structure and not world.utype(u).is_marker]
    for i, a in enumerate(ground):
        for b in ground[i + 1:]:
            if math.hypot(a.x - b.x, a.y - b.y) < world.utype(a).radius + world.utype(b).radius - 1e-6:
                raise ScenarioError(f"overlapping spawns: {a.type} 0x{a.tag:X} and {b.type} 0x{b.tag:X}")
    if world.occupancy.max(initial=0) > 1:
        raise ScenarioError("overlapping structure footprints")


def load_scenario(config: ScenarioConfig | str, seed: int = 0) -> WorldState:
    """Build the initial world for ``config``; deterministic in (config, seed)."""
    cfg = get_scenario(config) if isinstance(config, str) else config
    rng = random.Random(f"{cfg.id}:{seed}")
    terrain = np.zeros((cfg.height, cfg.width), dtype=np.uint8)
    for x0, y0, x1, y1 in cfg.blocked:
        terrain[y0:y1, x0:x1] = BLOCKED
    world = WorldState(cfg.width, cfg.height, seed=seed, terrain=terrain)
    for pid, settings in sorted(cfg.players.items()):
        ps = world.players[pid]
        ps.minerals = float(settings.get("minerals", 0))
        ps.vespene = float(settings.get("vespene", 0))
        ps.tech = set(settings.get("tech", []))
        ps.supply_bonus = int(settings.get("supply_bonus", 0))
    for spawn in cfg.spawns:
        ut = world.stats[spawn.type]
        if ut.structure:
            for x, y in _grid_positions(spawn, max(ut.footprint, 1) / 2, 0.0):
                cx, cy = snap_center(x, y, max(ut.footprint, 1))
                u = world.spawn(spawn.type, spawn.owner, cx, cy, complete=spawn.complete,
                                group=spawn.group, emit=False)
            continue
        jitter = 0.0 if ut.air else cfg.jitter
        for x, y in _grid_positions(spawn, ut.radius, jitter):
            x += rng.uniform(-jitter, jitter)
            y += rng.uniform(-jitter, jitter)
            u = world.spawn(spawn.type, spawn.owner, x, y, group=spawn.group, emit=False)
            if spawn.energy is not None:
                u.energy = min(float(spawn.energy), u.max_energy)
    _check_overlaps(world)
    world.opponent = copy.deepcopy(cfg.opponent)
    if world.opponent:
        world.opponent.setdefault("level", cfg.level)
    world.meta = copy.deepcopy(cfg.meta)
    world.waves = _schedule_waves(cfg, rng)
    if world.waves and "wave_target" not in world.meta and cfg.waves.get("target"):
        world.meta["wave_target"] = list(cfg.waves["target"])
    world.economy = cfg.economy
    world.auto_workers = cfg.auto_workers
    return world


def _schedule_waves(cfg: ScenarioConfig, rng: random.Random) -> list[dict[str, Any]]:
    """Expand the wave spec into concrete wave records (drop points jittered by seed)."""
    spec = cfg.waves
    if not spec:
        return []
    out = []
    for i, wave in enumerate(spec.get("list", [])):
        units = []
        for item in wave["units"]:
            for _ in range(int(item.get("count", 1))):
                jx = rng.uniform(-1.5, 1.5)
                jy = rng.uniform(-1.5, 1.5)
                units.append({"type": item["type"], "x": item["x"] + jx, "y": item["y"] + jy,
                              "cargo": list(item.get("cargo", []))})
        record: dict[str, Any] = {"tick": int(wave["tick"]), "units": units,
                                  "group": wave.get("group", f"wave{i}")}
        if "drop_region" in wave:
            x0, y0, x1, y1 = wave["drop_region"]
            record["drop"] = [rng.uniform(x0, x1), rng.uniform(y0, y1)]
        if "target" in wave:
            record["target"] = list(wave["target"])
        out.append(record)
    return out


# ---------------------------------------------------------------------------
# victory
# ---------------------------------------------------------------------------

def _combat_alive(world: WorldState, owner: int) -> list:
    return [u for u in world.iter_units(owner) if u.alive and world.utype(u).combat]


def _armed_mobile(world: WorldState, owner: int) -> list:
    return [u for u in _combat_alive(world, owner) if world.utype(u).weapons]


def _can_reinforce(world: WorldState, owner: int) -> bool:
    gates = any(u.type in ("WarpGate", "Gateway") and u.complete for u in world.iter_units(owner))
    return gates and world.players[owner].minerals >= 100


def _structures(world: WorldState, owner: int) -> list:
    return [u for u in world.iter_units(owner) if world.utype(u).structure and u.alive]


def _workers(world: WorldState, owner: int) -> list:
    return [u for u in world.iter_units(owner) if world.utype(u).worker and u.alive]


def check_victory(scenario: ScenarioConfig, world: WorldState, clock: int | None = None) -> str:
    """Outcome of ``world`` for the tasked player: ongoing, win, lose or draw."""
    clock = world.clock if clock is None else clock
    v = scenario.victory
    kind = v["kind"]
    count = int(v.get("count", 7))
    timed_out = clock >= scenario.max_ticks

    if kind == "destroy_base":
        mine, theirs = _structures(world, PLAYER), _structures(world, ENEMY)
        if not mine and not theirs:
            return "draw"
        if not theirs:
            return "win"
        if not mine or timed_out:
            return "lose"
        return "ongoing"

    enemy_workers_killed = world.players[ENEMY].lost_workers
    enemy_combat_dead = not _combat_alive(world, ENEMY) and waves_done(world)
    if kind == "kill_workers":
        won = enemy_workers_killed >= count
    elif kind == "eliminate":
        won = enemy_combat_dead
    elif kind == "eliminate_and_kill_workers":
        won = enemy_combat_dead and enemy_workers_killed >= count
    else:  # defend
        won = waves_done(world) and not _combat_alive(world, ENEMY) and len(_workers(world, PLAYER)) >= count
    if won:
        return "win"
    if timed_out:
        return "lose"
    if kind == "defend":
        if len(_workers(world, PLAYER)) < count:
            return "lose"
        return "ongoing"
    if not _armed_mobile(world, PLAYER) and not _can_reinforce(world, PLAYER):
        return "lose"
    return "ongoing"

