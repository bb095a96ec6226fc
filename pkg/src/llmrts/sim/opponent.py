"""Rule-based policy for the built-in opponent (player 2) and scheduled waves.

Level 1: groups hold their region and attack the nearest player unit that
comes within the aggro radius.  Level 2 additionally focuses the attacker
with the lowest health fraction.  Level 3 adds periodic regrouping and makes
workers flee from nearby threats.

``world.opponent`` configures the policy::

    {"level": 1, "stance": "hold" | "attack", "aggro": 10.0,
     "attack_target": [x, y], "interval": 5}
"""

from __future__ import annotations

import math
from collections import defaultdict

from llmrts.sim.world import Order, Unit, WorldState

OPPONENT = 2
DEFAULT_AGGRO = 10.0
DEFAULT_INTERVAL = 5
REGROUP_PERIOD = 100
FLEE_RADIUS = 6.0
FLEE_DISTANCE = 5.0


def opponent_tick(world: WorldState) -> None:
    _waves_tick(world)
    cfg = world.opponent
    if not cfg:
        return
    interval = int(cfg.get("interval", DEFAULT_INTERVAL))
    if world.clock % interval != 0:
        return
    level = int(cfg.get("level", 1))
    aggro = float(cfg.get("aggro", DEFAULT_AGGRO))
    player_units = [u for u in world.iter_units(1) if world.targetable(u) and u.held_until <= world.clock]
    groups: dict[str, list[Unit]] = defaultdict(list)
    for u in world.iter_units(OPPONENT):
        if not u.alive or u.loaded_in is not None or not u.complete or u.held_until > world.clock:
            continue
        ut = world.utype(u)
        if ut.structure or u.lifted_by is not None:
            continue
        groups[u.group or "default"].append(u)
    for name in sorted(groups):
        _group_tick(world, groups[name], player_units, level, aggro, cfg)


def _group_tick(world: WorldState, members: list[Unit], threats_pool: list[Unit], level: int,
                aggro: float, cfg: dict) -> None:
    from llmrts.sim.engine import _weapon_for

    workers = [u for u in members if world.utype(u).worker]
    fighters = [u for u in members if not world.utype(u).worker and world.utype(u).weapons]
    passive = [u for u in members if not world.utype(u).worker and not world.utype(u).weapons]

    if level >= 3:
        for w in workers:
            near = [t for t in threats_pool if math.hypot(t.x - w.x, t.y - w.y) <= FLEE_RADIUS]
            if near:
                cx = sum(t.x for t in near) / len(near)
                cy = sum(t.y for t in near) / len(near)
                dx, dy = w.x - cx, w.y - cy
                d = math.hypot(dx, dy) or 1.0
                tx = min(max(w.x + dx / d * FLEE_DISTANCE, 0.5), world.width - 0.5)
                ty = min(max(w.y + dy / d * FLEE_DISTANCE, 0.5), world.height - 0.5)
                w.orders = [Order("flee", tx, ty)]
            elif w.orders and w.orders[0].kind == "flee" and not _near_home(w):
                w.orders = [Order("move", w.home[0], w.home[1])]

    # queens and other combat units
    threats = [t for t in threats_pool
               if any(math.hypot(t.x - m.x, t.y - m.y) <= aggro for m in fighters)]
    stance = cfg.get("stance", "hold")
    if threats:
        for m in fighters:
            options = [t for t in threats if _weapon_for(world, m, t) is not None]
            if not options:
                continue
            if level >= 2:
                target = min(options, key=lambda t: (_health_fraction(t), t.tag))
            else:
                target = min(options, key=lambda t: (math.hypot(t.x - m.x, t.y - m.y), t.tag))
            current = m.orders[0] if m.orders else None
            if current is not None and current.kind == "attack" and current.tag == target.tag:
                continue
            if level < 2 and current is not None and current.kind == "attack":
                old = world.get(current.tag or 0)
                if old is not None and old in options:
                    continue
            m.orders = [Order("attack", target.x, target.y, target.tag)]
        return

    if stance == "attack" and cfg.get("attack_target"):
        tx, ty = cfg["attack_target"]
        for m in fighters + passive:
            if not m.orders or m.orders[0].kind not in ("attack_move",):
                m.orders = [Order("attack_move", float(tx), float(ty))]
        return

    for m in fighters:
        if m.orders and m.orders[0].kind == "attack":
            m.orders = []
        if not m.orders and not _near_home(m):
            m.orders = [Order("move", m.home[0], m.home[1])]

    if level >= 3 and world.clock % REGROUP_PERIOD == 0 and len(fighters) > 1:
        cx = sum(m.x for m in fighters) / len(fighters)
        cy = sum(m.y for m in fighters) / len(fighters)
        spread = max(math.hypot(m.x - cx, m.y - cy) for m in fighters)
        if spread > 4.0:
            for m in fighters:
                m.orders = [Order("move", cx, cy)]
                m.home = (cx, cy)


def _health_fraction(u: Unit) -> float:
    total = u.max_health + u.max_shield
    return (u.health + u.shield) / total if total else 1.0


def _near_home(u: Unit) -> bool:
    return math.hypot(u.x - u.home[0], u.y - u.home[1]) <= 2.0


def _waves_tick(world: WorldState) -> None:
    """Spawn scheduled waves and unload transports that reached their drop point."""
    for wave in world.waves:
        if not wave.get("spawned") and world.clock >= wave["tick"]:
            wave["spawned"] = True
            wave["tags"] = []
            for spec in wave["units"]:
                u = world.spawn(spec["type"], OPPONENT, spec["x"], spec["y"], group=wave.get("group", "wave"))
                u.home = tuple(wave.get("target", (u.x, u.y)))
                if spec["type"] == "OverlordTransport":
                    u.orders = [Order("move", wave["drop"][0], wave["drop"][1])]
                    u.cargo_pending = list(spec.get("cargo", []))
                elif wave.get("target"):
                    u.orders = [Order("attack_move", wave["target"][0], wave["target"][1])]
                wave["tags"].append(u.tag)
    for u in list(world.iter_units(OPPONENT)):
        cargo = u.cargo_pending
        if cargo and not u.orders:
            u.cargo_pending = []
            target = world.meta.get("wave_target") or (u.x, u.y)
            for k, type_name in enumerate(cargo):
                ang = 2 * math.pi * k / len(cargo)
                c = world.spawn(type_name, OPPONENT, u.x + 0.8 * math.cos(ang), u.y + 0.8 * math.sin(ang),
                                group=f"drop{u.tag}")
                c.orders = [Order("attack_move", float(target[0]), float(target[1]))]
                c.home = (float(target[0]), float(target[1]))


def waves_done(world: WorldState) -> bool:
    """True once every scheduled wave has spawned and every transport has unloaded or died."""
    for wave in world.waves:
        if not wave.get("spawned"):
            return False
        for tag in wave.get("tags", []):
            u = world.units.get(tag)
            if u is not None and u.cargo_pending:
                return False
    return True
