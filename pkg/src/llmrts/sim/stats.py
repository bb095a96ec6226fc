"""Unit statistics loaded from the versioned ``unit_stats.json`` data file."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any


@dataclass(frozen=True)
class Weapon:
    name: str
    damage: float
    attacks: int
    cooldown: float
    range: float
    targets: tuple[str, ...]
    bonus: dict[str, float] = field(default_factory=dict)
    splash: float = 0.0


@dataclass(frozen=True)
class UnitType:
    name: str
    race: str
    minerals: int
    vespene: int
    supply: float
    health: float
    shield: float
    armor: float
    speed: float
    sight: float
    radius: float
    attributes: tuple[str, ...]
    weapons: tuple[Weapon, ...]
    air: bool
    structure: bool
    worker: bool
    energy: float
    energy_start: float
    build_time: float
    producer: str | None
    requires: tuple[str, ...]
    footprint: int = 0
    power: bool = False
    supply_provided: int = 0
    extra: dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> int:
        """Resource value used by kill/death accounting: minerals + vespene."""
        return self.minerals + self.vespene

    @property
    def is_marker(self) -> bool:
        return bool(self.extra.get("marker"))

    @property
    def invulnerable(self) -> bool:
        return bool(self.extra.get("invulnerable"))

    @property
    def combat(self) -> bool:
        return not self.structure and not self.worker and self.name not in NON_COMBAT

    def get(self, key: str, default: Any = None) -> Any:
        return self.extra.get(key, default)


# Units that never count as "enemy combat units" for victory checks.
NON_COMBAT = frozenset({"OverlordTransport", "Overseer", "AdeptPhaseShift", "Observer"})

_CORE_FIELDS = {
    "race", "minerals", "vespene", "supply", "health", "shield", "armor", "speed", "sight",
    "radius", "attributes", "weapons", "air", "structure", "worker", "energy", "energy_start",
    "build_time", "producer", "requires", "footprint", "power", "supply_provided",
}


class Stats:
    def __init__(self, doc: dict[str, Any]):
        self.version = doc["version"]
        self.tick_seconds = float(doc["tick_seconds"])
        self.units: dict[str, UnitType] = {}
        for name, rec in doc["units"].items():
            weapons = tuple(
                Weapon(w["name"], float(w["damage"]), int(w.get("attacks", 1)), float(w["cooldown"]),
                       float(w["range"]), tuple(w["targets"]), dict(w.get("bonus", {})),
                       float(w.get("splash", 0.0)))
                for w in rec.get("weapons", [])
            )
            self.units[name] = UnitType(
                name=name, race=rec["race"], minerals=rec["minerals"], vespene=rec["vespene"],
                supply=rec["supply"], health=rec["health"], shield=rec["shield"],
                armor=rec["armor"], speed=rec["speed"], sight=rec["sight"], radius=rec["radius"],
                attributes=tuple(rec["attributes"]), weapons=weapons, air=rec["air"],
                structure=rec["structure"], worker=rec["worker"], energy=rec["energy"],
                energy_start=rec["energy_start"], build_time=rec["build_time"],
                producer=rec.get("producer"), requires=tuple(rec.get("requires", [])),
                footprint=rec.get("footprint", 0), power=rec.get("power", False),
                supply_provided=rec.get("supply_provided", 0),
                extra={k: v for k, v in rec.items() if k not in _CORE_FIELDS},
            )
        self.research: dict[str, dict[str, Any]] = doc["research"]
        self.upgrade_effects: dict[str, dict[str, dict[str, float]]] = doc["upgrade_effects"]
        self.skills: dict[str, dict[str, Any]] = doc["skills"]
        self.economy: dict[str, float] = doc["economy"]

    def __getitem__(self, name: str) -> UnitType:
        return self.units[name]

    def __contains__(self, name: str) -> bool:
        return name in self.units

    def ticks(self, seconds: float) -> int:
        return max(1, round(seconds / self.tick_seconds))

    def value(self, name: str) -> int:
        return self.units[name].value


def load_stats(path: str | Path | None = None) -> Stats:
    if path is None:
        return default_stats()
    return Stats(json.loads(Path(path).read_text()))


@lru_cache(maxsize=1)
def default_stats() -> Stats:
    text = resources.files("llmrts").joinpath("data/unit_stats.json").read_text()
    return Stats(json.loads(text))
