"""World state for the micro-RTS simulator."""

from __future__ import annotations

import hashlib
import json
import math
import random
from dataclasses import dataclass, field
from typing import Any, Iterator

import numpy as np

from llmrts.sim.coords import Camera, camera_at
from llmrts.sim.stats import Stats, UnitType, default_stats

# terrain codes
BUILDABLE, PATHABLE, BLOCKED, CREEP = 0, 1, 2, 3

NEUTRAL = 0


@dataclass
class Order:
    kind: str  # move | attack | attack_move | hold | cast | load | unload | flee
    x: float = 0.0
    y: float = 0.0
    tag: int | None = None
    skill: str | None = None  # only for "cast" orders


@dataclass
class Unit:
    tag: int
    type: str
    owner: int
    x: float
    y: float
    health: float
    shield: float
    energy: float
    max_health: float
    max_shield: float
    max_energy: float
    cooldowns: list[int] = field(default_factory=list)
    ability_cd: dict[str, int] = field(default_factory=dict)
    orders: list[Order] = field(default_factory=list)
    last_damage_tick: int = -(10**9)
    damage_received: float = 0.0
    regen_total: float = 0.0
    held_until: int = 0
    lifted_by: int | None = None
    channel_target: int | None = None
    channel_until: int = 0
    shade: int | None = None
    shade_of: int | None = None
    shade_until: int = 0
    build_left: int = 0
    build_total: int = 0
    queue: list[list[Any]] = field(default_factory=list)
    mode: str | None = None
    loaded_in: int | None = None
    cargo: list[int] = field(default_factory=list)
    group: str = ""
    home: tuple[float, float] = (0.0, 0.0)
    revealed_until: int = 0
    warp_ready: int = 0
    killer: int | None = None
    cargo_pending: list[str] = field(default_factory=list)  # scripted drop cargo

    @property
    def pos(self) -> tuple[float, float]:
        return self.x, self.y

    @property
    def complete(self) -> bool:
        return self.build_left <= 0

    @property
    def alive(self) -> bool:
        return self.health > 0

    @property
    def idle(self) -> bool:
        return not self.orders


@dataclass(frozen=True)
class GameEvent:
    step: int
    seq: int
    kind: str  # unit-killed | unit-created | research-done | damage-dealt | action-failed
    payload: dict[str, Any]

    def render(self) -> str:
        details = ", ".join(f"{k}={v}" for k, v in sorted(self.payload.items()))
        return f"[{self.step}] {self.kind}: {details}"


@dataclass
class PlayerState:
    minerals: float = 0.0
    vespene: float = 0.0
    tech: set[str] = field(default_factory=set)
    researching: set[str] = field(default_factory=set)
    lost_value: int = 0
    lost_workers: int = 0
    lost_units: int = 0
    supply_bonus: int = 0


@dataclass
class Effect:
    kind: str  # storm | forcefield | guardian | timewarp | nova | revelation | warp
    owner: int
    x: float
    y: float
    radius: float
    until: int
    source: int | None = None
    data: dict[str, Any] = field(default_factory=dict)


class WorldState:
    """Full simulator state.  Mutated only by the engine (single owner)."""

    def __init__(self, width: int, height: int, stats: Stats | None = None, seed: int = 0,
                 terrain: np.ndarray | None = None):
        self.stats = stats or default_stats()
        self.width = width
        self.height = height
        self.terrain = (np.zeros((height, width), dtype=np.uint8) if terrain is None
                        else np.asarray(terrain, dtype=np.uint8))
        if self.terrain.shape != (height, width):
            raise ValueError("terrain grid does not match map size")
        self.occupancy = np.zeros((height, width), dtype=np.int16)
        self.units: dict[int, Unit] = {}
        self.next_tag = 0x100
        self.players: dict[int, PlayerState] = {1: PlayerState(), 2: PlayerState()}
        self.cameras: dict[str, Camera] = {}
        self.selections: dict[str, list[int]] = {}
        self.scan_history: dict[int, dict[int, int]] = {1: {}, 2: {}}
        self.clock = 0
        self.effects: list[Effect] = []
        self.rng = random.Random(seed)
        self.seed = seed
        self._event_seq = 0
        self.pending_events: list[GameEvent] = []
        self.waves: list[dict[str, Any]] = []
        self.opponent: dict[str, Any] = {}
        self.meta: dict[str, Any] = {}
        self.supply_cap_override: dict[int, int] = {}
        self.auto_workers: bool = False
        self.economy: bool = False

    # -- units -------------------------------------------------------------

    def utype(self, unit: Unit | str) -> UnitType:
        return self.stats[unit if isinstance(unit, str) else unit.type]

    def spawn(self, type_name: str, owner: int, x: float, y: float, *, complete: bool = True,
              group: str = "", emit: bool = True) -> Unit:
        ut = self.stats[type_name]
        tag = self.next_tag
        self.next_tag += 1
        unit = Unit(
            tag=tag, type=type_name, owner=owner, x=float(x), y=float(y),
            health=float(ut.health), shield=float(ut.shield), energy=float(ut.energy_start),
            max_health=float(ut.health), max_shield=float(ut.shield), max_energy=float(ut.energy),
            cooldowns=[0] * len(ut.weapons), group=group, home=(float(x), float(y)),
        )
        if ut.structure and not complete:
            unit.build_total = self.stats.ticks(ut.build_time)
            unit.build_left = unit.build_total
        self.units[tag] = unit
        if ut.structure and ut.footprint:
            self._occupy(unit, +1)
        if emit:
            self.emit("unit-created", tag=tag, type=type_name, owner=owner)
        return unit

    def remove(self, unit: Unit) -> None:
        ut = self.utype(unit)
        if ut.structure and ut.footprint:
            self._occupy(unit, -1)
        del self.units[unit.tag]
        for sel in self.selections.values():
            if unit.tag in sel:
                sel.remove(unit.tag)

    def _occupy(self, unit: Unit, delta: int) -> None:
        xs, ys = footprint_cells(unit.x, unit.y, self.utype(unit).footprint)
        self.occupancy[ys.start:ys.stop, xs.start:xs.stop] += delta

    def get(self, tag: int) -> Unit | None:
        unit = self.units.get(tag)
        if unit is None or not unit.alive:
            return None
        return unit

    def iter_units(self, owner: int | None = None) -> Iterator[Unit]:
        for tag in sorted(self.units):
            u = self.units[tag]
            if owner is None or u.owner == owner:
                yield u

    def on_map(self, unit: Unit) -> bool:
        return unit.loaded_in is None

    def targetable(self, unit: Unit) -> bool:
        ut = self.utype(unit)
        return (unit.alive and unit.loaded_in is None and not ut.invulnerable
                and not ut.get("untargetable", False) and unit.owner != NEUTRAL)

    def layer(self, unit: Unit) -> str:
        if unit.lifted_by is not None:
            return "air"
        return "air" if self.utype(unit).air else "ground"

    def hit_layers(self, unit: Unit) -> set[str]:
        ut = self.utype(unit)
        if unit.lifted_by is not None:
            return {"air"}
        if ut.air:
            return {"air"}
        if ut.get("air_targetable"):
            return {"ground", "air"}
        return {"ground"}

    # -- players -----------------------------------------------------------

    def supply_used(self, player: int) -> float:
        return sum(self.utype(u).supply for u in self.units.values() if u.owner == player and u.alive)

    def supply_queued(self, player: int) -> float:
        total = 0.0
        for u in self.units.values():
            if u.owner != player:
                continue
            for item in u.queue:
                if item[0] == "unit":
                    total += self.stats[item[1]].supply
        for e in self.effects:
            if e.kind == "warp" and e.owner == player:
                total += self.stats[e.data["type"]].supply
        return total

    def supply_cap(self, player: int) -> int:
        if player in self.supply_cap_override:
            return self.supply_cap_override[player]
        cap = sum(self.utype(u).supply_provided for u in self.units.values()
                  if u.owner == player and u.complete and u.alive)
        return min(200, cap + self.players[player].supply_bonus)

    def has_structure(self, player: int, type_name: str) -> bool:
        return any(u.owner == player and u.type == type_name and u.complete and u.alive
                   for u in self.units.values())

    def tech_ok(self, player: int, type_name: str) -> str | None:
        """Name of a missing prerequisite structure, or None."""
        for req in self.stats[type_name].requires:
            if req == "Gateway" and self.has_structure(player, "WarpGate"):
                continue
            if not self.has_structure(player, req):
                return req
        return None

    # -- placement ---------------------------------------------------------

    def powered(self, x: float, y: float, player: int) -> bool:
        for u in self.units.values():
            if u.owner != player or not u.alive or not u.complete:
                continue
            if u.type == "Pylon":
                r = self.stats["Pylon"].get("power_radius", 6.5)
            elif u.type == "WarpPrism" and u.mode == "phasing" and u.loaded_in is None:
                r = self.stats["WarpPrism"].get("power_radius", 3.75)
            else:
                continue
            if (u.x - x) ** 2 + (u.y - y) ** 2 <= r * r:
                return True
        return False

    def placement_problem(self, type_name: str, x: float, y: float, player: int) -> str | None:
        """Why a structure of ``type_name`` centred at (x, y) cannot be placed (None if it can)."""
        ut = self.stats[type_name]
        size = max(ut.footprint, 1)
        xs, ys = footprint_cells(x, y, size)
        if xs.start < 0 or ys.start < 0 or xs.stop > self.width or ys.stop > self.height:
            return "outside map"
        if type_name == "Assimilator":
            geyser = self.geyser_at(x, y)
            if geyser is None:
                return "assimilator must be placed on a vespene geyser"
            if any(u.type == "Assimilator" and abs(u.x - geyser.x) < 0.5 and abs(u.y - geyser.y) < 0.5
                   for u in self.units.values()):
                return "geyser already taken"
            return None
        cells = self.terrain[ys.start:ys.stop, xs.start:xs.stop]
        if np.any(cells != BUILDABLE):
            return "terrain not buildable"
        if np.any(self.occupancy[ys.start:ys.stop, xs.start:xs.stop] > 0):
            return "obstructed"
        if ut.power and not self.powered(x, y, player):
            return "no power field"
        return None

    def geyser_at(self, x: float, y: float) -> Unit | None:
        for u in self.units.values():
            if u.type == "VespeneGeyser" and abs(u.x - x) < 0.5 and abs(u.y - y) < 0.5:
                return u
        return None

    def pathable(self, x: float, y: float) -> bool:
        cx, cy = int(math.floor(x)), int(math.floor(y))
        if cx < 0 or cy < 0 or cx >= self.width or cy >= self.height:
            return False
        return self.terrain[cy, cx] != BLOCKED and self.occupancy[cy, cx] == 0

    # -- cameras / selections ---------------------------------------------

    def camera(self, agent: str) -> Camera:
        cam = self.cameras.get(agent)
        if cam is None:
            cam = camera_at(self.width / 2, self.height / 2, self.width, self.height)
            self.cameras[agent] = cam
        return cam

    def move_camera(self, agent: str, x: float, y: float) -> Camera:
        cam = camera_at(x, y, self.width, self.height)
        self.cameras[agent] = cam
        return cam

    # -- events ------------------------------------------------------------

    def emit(self, kind: str, **payload: Any) -> GameEvent:
        event = GameEvent(self.clock, self._event_seq, kind, payload)
        self._event_seq += 1
        self.pending_events.append(event)
        return event

    def drain_events(self) -> list[GameEvent]:
        events, self.pending_events = self.pending_events, []
        return events

    # -- visibility --------------------------------------------------------

    def visible_tags(self, player: int) -> set[int]:
        observers = [u for u in self.units.values()
                     if u.owner == player and u.alive and u.loaded_in is None]
        if not observers:
            return set()
        ox = np.array([u.x for u in observers])
        oy = np.array([u.y for u in observers])
        sight = np.array([self.sight(u) for u in observers])
        seen: set[int] = set()
        for u in self.units.values():
            if not u.alive or u.loaded_in is not None:
                continue
            if u.owner == player or u.owner == NEUTRAL or u.revealed_until > self.clock:
                seen.add(u.tag)
                continue
            d2 = (ox - u.x) ** 2 + (oy - u.y) ** 2
            if np.any(d2 <= sight * sight):
                seen.add(u.tag)
        return seen

    def sight(self, unit: Unit) -> float:
        ut = self.utype(unit)
        if unit.mode == "surveillance":
            return float(self.stats.skills["SurveillanceMode"]["sight"])
        return float(ut.sight)

    # -- hashing -----------------------------------------------------------

    def state_dict(self) -> dict[str, Any]:
        def r(v: float) -> float:
            return round(float(v), 6)

        units = []
        for u in self.iter_units():
            units.append([
                u.tag, u.type, u.owner, r(u.x), r(u.y), r(u.health), r(u.shield), r(u.energy),
                [[o.kind, r(o.x), r(o.y), o.tag, o.skill] for o in u.orders], u.build_left,
                [[i[0], i[1], i[2]] for i in u.queue], u.mode, u.loaded_in, u.held_until,
                u.lifted_by, sorted(u.ability_cd.items()), list(u.cooldowns),
            ])
        players = {
            str(p): [r(s.minerals), r(s.vespene), sorted(s.tech), sorted(s.researching),
                     s.lost_value, s.lost_workers, s.lost_units]
            for p, s in sorted(self.players.items())
        }
        effects = [[e.kind, e.owner, r(e.x), r(e.y), r(e.radius), e.until, e.source]
                   for e in self.effects]
        cameras = {k: [r(c.x0), r(c.y0)] for k, c in sorted(self.cameras.items())}
        return {"clock": self.clock, "units": units, "players": players, "effects": effects,
                "cameras": cameras}

    def state_hash(self) -> str:
        blob = json.dumps(self.state_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def footprint_cells(x: float, y: float, size: int) -> tuple[range, range]:
    """Grid cells covered by a ``size`` x ``size`` footprint centred at (x, y)."""
    left = int(round(x - size / 2))
    top = int(round(y - size / 2))
    return range(left, left + size), range(top, top + size)


def snap_center(x: float, y: float, size: int) -> tuple[float, float]:
    """Nearest legal centre for a footprint of ``size`` cells."""
    off = (size % 2) * 0.5
    return math.floor(x - off + 0.5) + off, math.floor(y - off + 0.5) + off
