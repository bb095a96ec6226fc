"""Command execution and the fixed 0.1 s tick of the micro-RTS simulator."""

from __future__ import annotations

import math
from typing import Any, Callable

import numpy as np

from llmrts.calls import ActionError, AgentContext, BackendCall, CallError, ScreenTarget, WorldPoint, WorldTarget
from llmrts.grammar import MinimapCoord, ScreenCoord
from llmrts.sim.coords import minimap_center, pixel_center, world_to_screen
from llmrts.sim.world import BLOCKED, Effect, GameEvent, Order, Unit, WorldState, snap_center

BUILD_FUNCTIONS = {
    65: "Nexus", 40: "Assimilator", 70: "Pylon", 57: "Gateway", 48: "CyberneticsCore",
    55: "Forge", 69: "PhotonCannon", 525: "ShieldBattery", 101: "TwilightCouncil",
    100: "TemplarArchive", 49: "DarkShrine", 88: "Stargate", 54: "FleetBeacon",
    81: "RoboticsBay", 82: "RoboticsFacility",
}
RESEARCH_FUNCTIONS = {
    381: "ProtossAirArmor", 385: "ProtossAirWeapons", 428: "WarpGate", 389: "ProtossGroundArmor",
    393: "ProtossGroundWeapons", 397: "ProtossShields", 359: "Charge", 356: "Blink",
    351: "AdeptResonatingGlaives", 379: "PhoenixAnionPulseCrystals", 364: "ExtendedThermalLance",
    366: "GraviticBooster", 367: "GraviticDrive", 401: "PsiStorm", 404: "ShadowStrike",
}
TRAIN_FUNCTIONS = {
    541: "Mothership", 457: "Adept", 465: "DarkTemplar", 471: "HighTemplar", 491: "Sentry",
    493: "Stalker", 503: "Zealot", 482: "Oracle", 484: "Phoenix", 500: "VoidRay", 495: "Tempest",
    461: "Carrier", 481: "Observer", 501: "WarpPrism", 473: "Immortal", 462: "Colossus",
    466: "Disruptor",
}
WARP_FUNCTIONS = {505: "Adept", 506: "DarkTemplar", 507: "HighTemplar", 508: "Sentry", 509: "Stalker",
                  510: "Zealot"}
# Skills targeted at a point or unit that a single caster performs (smart casting).
SINGLE_CAST = {193: "ForceField", 197: "GuardianShield", 218: "PsiStorm", 219: "PurificationNova",
               214: "OracleRevelation", 90: "StasisTrap", 196: "GravitonBeam", 241: "TimeWarp"}
OTHER_FUNCTIONS = {0, 3, 7, 8, 12, 13, 274, 331, 332, 573, 547, 177, 141, 180, 182, 296, 538, 535,
                   38, 140, 329, 287, 516, 330}

ALL_FUNCTION_IDS = (set(BUILD_FUNCTIONS) | set(RESEARCH_FUNCTIONS) | set(TRAIN_FUNCTIONS)
                    | set(WARP_FUNCTIONS) | set(SINGLE_CAST) | OTHER_FUNCTIONS)

ACQUIRE_RADIUS = 7.0
ARRIVE_EPS = 0.1
SCAN_PERIOD = 10
MELEE_RANGE = 1.0


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _point(arg: Any, actor: AgentContext, world: WorldState) -> tuple[float, float]:
    if isinstance(arg, ScreenCoord):
        return pixel_center(arg.x, arg.y, world.camera(actor.name))
    if isinstance(arg, MinimapCoord):
        return minimap_center(arg.x, arg.y, world.width, world.height)
    if isinstance(arg, (WorldPoint, WorldTarget)):
        return float(arg.x), float(arg.y)
    if isinstance(arg, ScreenTarget):
        unit = _target_unit(arg, actor, world, own_ok=True)
        return unit.x, unit.y
    raise CallError("invalid-position", f"unsupported position argument {arg!r}")


def _target_unit(arg: Any, actor: AgentContext, world: WorldState, own_ok: bool = False) -> Unit:
    if isinstance(arg, WorldTarget):
        unit = world.get(arg.tag)
        if unit is None:
            raise CallError("invalid-target", f"unit 0x{arg.tag:X} does not exist")
        return unit
    if not isinstance(arg, ScreenTarget):
        raise CallError("invalid-target", "a unit argument is required")
    unit = world.get(arg.tag)
    if unit is None or unit.loaded_in is not None:
        raise CallError("invalid-target", f"unit 0x{arg.tag:X} does not exist")
    if not isinstance(world_to_screen(unit.x, unit.y, world.camera(actor.name)), ScreenCoord):
        raise CallError("invalid-target", f"unit 0x{arg.tag:X} is not on screen")
    if not own_ok and unit.owner == actor.player:
        raise CallError("invalid-target", f"unit 0x{arg.tag:X} is friendly")
    return unit


def _selected(actor: AgentContext, world: WorldState) -> list[Unit]:
    units = []
    for tag in world.selections.get(actor.name, []):
        u = world.get(tag)
        if u is not None and u.owner == actor.player and u.loaded_in is None:
            units.append(u)
    return units


def _mobile(world: WorldState, u: Unit) -> bool:
    ut = world.utype(u)
    return not ut.structure and speed_of(world, u) > 0 and u.complete


def _issue(u: Unit, order: Order, queueing: str | None) -> None:
    if queueing == "queued" and u.orders:
        last = u.orders[-1]
        if last == order:
            return
        u.orders.append(order)
    else:
        u.orders = [order]


def _spend(world: WorldState, player: int, minerals: float, vespene: float, what: str) -> None:
    ps = world.players[player]
    if ps.minerals + 1e-9 < minerals or ps.vespene + 1e-9 < vespene:
        raise CallError("insufficient-resources",
                        f"{what} needs {minerals:g} minerals / {vespene:g} vespene "
                        f"(have {int(ps.minerals)} / {int(ps.vespene)})")
    ps.minerals -= minerals
    ps.vespene -= vespene


def _check_supply(world: WorldState, player: int, type_name: str) -> None:
    need = world.stats[type_name].supply
    if world.supply_used(player) + world.supply_queued(player) + need > world.supply_cap(player) + 1e-9:
        raise CallError("insufficient-resources", f"not enough supply for {type_name}")


# ---------------------------------------------------------------------------
# command execution
# ---------------------------------------------------------------------------

def execute(call: BackendCall, actor: AgentContext, world: WorldState) -> ActionError | None:
    """Apply one backend call for ``actor``.  Returns None on success."""
    try:
        _execute(call, actor, world)
    except CallError as exc:
        world.emit("action-failed", agent=actor.name, function=call.function_name,
                   category=exc.category, detail=exc.detail)
        return ActionError(None, exc.category, exc.detail)
    return None


def _execute(call: BackendCall, actor: AgentContext, world: WorldState) -> None:
    fid = call.function_id
    args = call.resolved_args
    q = call.queueing
    if fid == 0:
        return
    if fid == 573:
        x, y = _point(args[0], actor, world)
        world.move_camera(actor.name, x, y)
        return
    if fid == 3:
        _select_rect(call, actor, world)
        return
    if fid == 7:
        world.selections[actor.name] = [u.tag for u in world.iter_units(actor.player)
                                        if _mobile(world, u) and not world.utype(u).worker]
        return
    if fid == 8:
        world.selections[actor.name] = [u.tag for u in world.iter_units(actor.player)
                                        if u.type == "WarpGate" and u.complete]
        return
    if fid in BUILD_FUNCTIONS:
        _build(BUILD_FUNCTIONS[fid], args[0], actor, world)
        return
    if fid in RESEARCH_FUNCTIONS:
        _research(RESEARCH_FUNCTIONS[fid], actor, world)
        return
    if fid in TRAIN_FUNCTIONS:
        _train(TRAIN_FUNCTIONS[fid], actor, world)
        return
    if fid in WARP_FUNCTIONS:
        _warp(WARP_FUNCTIONS[fid], args[0], actor, world)
        return
    if fid in SINGLE_CAST:
        _single_cast(SINGLE_CAST[fid], args, q, actor, world)
        return

    units = _selected(actor, world)
    if fid in (331, 332, 12, 13, 274):
        movers = [u for u in units if _mobile(world, u) and _can_act(world, u)]
        if not movers:
            raise CallError("invalid-target", "no controllable units selected")
        if fid == 274:
            for u in movers:
                _issue(u, Order("hold", u.x, u.y), q)
            return
        if fid == 12 and isinstance(args[0], ScreenTarget):
            target = _target_unit(args[0], actor, world)
            if not world.targetable(target):
                raise CallError("invalid-target", f"unit 0x{target.tag:X} cannot be attacked")
            for u in movers:
                if _weapon_for(world, u, target) is not None:
                    _issue(u, Order("attack", target.x, target.y, target.tag), q)
                else:
                    _issue(u, Order("move", target.x, target.y), q)
            return
        x, y = _point(args[0], actor, world)
        kind = "attack_move" if fid in (12, 13) else "move"
        for u in movers:
            _issue(u, Order(kind, x, y), q)
        return

    if fid in (547, 177):
        _phase_shift(args[0], actor, world, units)
    elif fid == 141:
        _cancel_phase(world, units)
    elif fid == 180:
        _blink(args[0], actor, world, units)
    elif fid == 182:
        _shadow_stride(args[0], actor, world, units)
    elif fid == 296:
        _morph_archon(world, units)
    elif fid in (538, 535):
        obs = [u for u in units if u.type == "Observer"]
        if not obs:
            raise CallError("invalid-target", "no Observer selected")
        for u in obs:
            u.mode = "surveillance" if fid == 538 else None
            u.orders = []
    elif fid in (329, 330):
        prisms = [u for u in units if u.type == "WarpPrism" and _can_act(world, u)]
        if not prisms:
            raise CallError("invalid-target", "no WarpPrism selected")
        for u in prisms:
            u.mode = "phasing" if fid == 329 else None
            u.orders = []
    elif fid == 38:
        oracles = [u for u in units if u.type == "Oracle" and _can_act(world, u)]
        if not oracles:
            raise CallError("invalid-target", "no Oracle selected")
        cost = world.stats.skills["PulsarBeam"]["energy"]
        ready = [u for u in oracles if u.mode == "pulsar" or u.energy >= cost]
        if not ready:
            raise CallError("unavailable", f"PulsarBeam needs {cost} energy")
        for u in ready:
            if u.mode != "pulsar":
                u.energy -= cost
                u.mode = "pulsar"
    elif fid == 140:
        phoenixes = [u for u in units if u.type == "Phoenix" and u.channel_target is not None]
        for u in phoenixes:
            _release_beam(world, u)
    elif fid == 287:
        _load(args[0], q, actor, world, units)
    elif fid == 516:
        x, y = _point(args[0], actor, world)
        prisms = [u for u in units if u.type == "WarpPrism" and _can_act(world, u)]
        if not prisms:
            raise CallError("invalid-target", "no WarpPrism selected")
        for u in prisms:
            _issue(u, Order("unload", x, y), q)
    else:
        raise CallError("unavailable", f"function {fid} is not supported by the simulator")


def _select_rect(call: BackendCall, actor: AgentContext, world: WorldState) -> None:
    a, b = call.resolved_args[0], call.resolved_args[1]
    x0, x1 = sorted((a.x, b.x))
    y0, y1 = sorted((a.y, b.y))
    cam = world.camera(actor.name)
    picked = []
    for u in world.iter_units(actor.player):
        if not u.alive or u.loaded_in is not None:
            continue
        p = world_to_screen(u.x, u.y, cam)
        if isinstance(p, ScreenCoord) and x0 <= p.x <= x1 and y0 <= p.y <= y1:
            picked.append(u.tag)
    if not picked:
        raise CallError("invalid-target", "selection rectangle contains no friendly unit")
    if call.queueing == "add":
        current = world.selections.get(actor.name, [])
        world.selections[actor.name] = current + [t for t in picked if t not in current]
    else:
        world.selections[actor.name] = picked


def _has_worker(world: WorldState, player: int) -> bool:
    return any(world.utype(u).worker and u.alive for u in world.units.values() if u.owner == player)


def _build(type_name: str, arg: Any, actor: AgentContext, world: WorldState) -> None:
    if not _has_worker(world, actor.player):
        raise CallError("unavailable", "no worker available to build")
    missing = world.tech_ok(actor.player, type_name)
    if missing:
        raise CallError("unavailable", f"{type_name} requires {missing}")
    x, y = _point(arg, actor, world)
    ut = world.stats[type_name]
    if type_name == "Assimilator":
        geyser = _nearest_of(world, x, y, "VespeneGeyser", 3.0)
        if geyser is None:
            raise CallError("invalid-position", "no vespene geyser at the target position")
        x, y = geyser.x, geyser.y
    else:
        x, y = snap_center(x, y, ut.footprint)
    problem = world.placement_problem(type_name, x, y, actor.player)
    if problem:
        raise CallError("invalid-position", f"cannot place {type_name} at ({x:g}, {y:g}): {problem}")
    _spend(world, actor.player, ut.minerals, ut.vespene, type_name)
    world.spawn(type_name, actor.player, x, y, complete=False)


def _nearest_of(world: WorldState, x: float, y: float, type_name: str, radius: float) -> Unit | None:
    best = None
    best_d = radius
    for u in world.iter_units():
        if u.type == type_name:
            d = math.hypot(u.x - x, u.y - y)
            if d <= best_d:
                best, best_d = u, d
    return best


def _producers(actor: AgentContext, world: WorldState, producer: str) -> list[Unit]:
    sel = [u for u in _selected(actor, world) if u.type == producer and u.complete]
    if sel:
        return sel
    return [u for u in world.iter_units(actor.player) if u.type == producer and u.complete]


def _train(type_name: str, actor: AgentContext, world: WorldState) -> None:
    ut = world.stats[type_name]
    producer = ut.producer or ""
    idle = [u for u in _producers(actor, world, producer) if not u.queue]
    if not idle:
        raise CallError("no-idle-building", f"no idle {producer} to train {type_name}")
    missing = world.tech_ok(actor.player, type_name)
    if missing:
        raise CallError("unavailable", f"{type_name} requires {missing}")
    _check_supply(world, actor.player, type_name)
    _spend(world, actor.player, ut.minerals, ut.vespene, type_name)
    idle[0].queue.append(["unit", type_name, world.stats.ticks(ut.build_time)])


def _research(name: str, actor: AgentContext, world: WorldState) -> None:
    rec = world.stats.research[name]
    ps = world.players[actor.player]
    if name in ps.tech or name in ps.researching:
        raise CallError("unavailable", f"{name} is already researched or in progress")
    idle = [u for u in _producers(actor, world, rec["building"]) if not u.queue]
    if not idle:
        raise CallError("no-idle-building", f"no idle {rec['building']} to research {name}")
    _spend(world, actor.player, rec["minerals"], rec["vespene"], name)
    ps.researching.add(name)
    idle[0].queue.append(["research", name, world.stats.ticks(rec["time"])])


def warp_spot_problem(world: WorldState, x: float, y: float, player: int) -> str | None:
    if not (0 <= x < world.width and 0 <= y < world.height):
        return "outside map"
    if not world.pathable(x, y):
        return "position not pathable"
    if not world.powered(x, y, player):
        return "no power field"
    for u in world.units.values():
        if u.alive and u.loaded_in is None and not world.utype(u).air and not world.utype(u).structure:
            if math.hypot(u.x - x, u.y - y) < u_radius(world, u) + 0.5:
                return "occupied"
    for e in world.effects:
        if e.kind == "warp" and math.hypot(e.x - x, e.y - y) < 1.0:
            return "occupied"
    return None


def u_radius(world: WorldState, u: Unit) -> float:
    return world.utype(u).radius


def _warp(type_name: str, arg: Any, actor: AgentContext, world: WorldState) -> None:
    ps = world.players[actor.player]
    if "WarpGate" not in ps.tech:
        raise CallError("unavailable", "warping requires WarpGate research")
    gates = [u for u in world.iter_units(actor.player)
             if u.type == "WarpGate" and u.complete and u.warp_ready <= world.clock]
    if not gates:
        raise CallError("no-idle-building", "no WarpGate is ready")
    missing = world.tech_ok(actor.player, type_name)
    if missing:
        raise CallError("unavailable", f"{type_name} requires {missing}")
    x, y = _point(arg, actor, world)
    problem = warp_spot_problem(world, x, y, actor.player)
    if problem:
        raise CallError("invalid-position", f"cannot warp {type_name} at ({x:.1f}, {y:.1f}): {problem}")
    _check_supply(world, actor.player, type_name)
    ut = world.stats[type_name]
    _spend(world, actor.player, ut.minerals, ut.vespene, type_name)
    skill = world.stats.skills["Warp"]
    gates[0].warp_ready = world.clock + world.stats.ticks(skill["gate_cooldown"])
    world.effects.append(Effect("warp", actor.player, x, y, 0.5,
                                world.clock + world.stats.ticks(skill["time"]),
                                data={"type": type_name}))


# ---------------------------------------------------------------------------
# skills
# ---------------------------------------------------------------------------

def _can_act(world: WorldState, u: Unit) -> bool:
    return (u.alive and u.complete and u.loaded_in is None and u.held_until <= world.clock
            and u.lifted_by is None)


def _caster_pool(world: WorldState, units: list[Unit], caster: str) -> list[Unit]:
    pool = [u for u in units if u.type == caster and _can_act(world, u)]
    if not pool:
        raise CallError("invalid-target", f"no {caster} selected")
    return pool


def _research_gate(world: WorldState, player: int, skill: dict[str, Any], name: str) -> None:
    need = skill.get("research")
    if need and need not in world.players[player].tech:
        raise CallError("unavailable", f"{name} requires {need} research")


def _ready(world: WorldState, pool: list[Unit], name: str, skill: dict[str, Any]) -> list[Unit]:
    energy = skill.get("energy", 0)
    ready = [u for u in pool if u.ability_cd.get(name, 0) <= world.clock and u.energy + 1e-9 >= energy]
    if not ready:
        if energy and all(u.energy + 1e-9 < energy for u in pool):
            raise CallError("unavailable", f"{name} needs {energy} energy")
        raise CallError("unavailable", f"{name} is on cooldown")
    return ready


def _pay(world: WorldState, u: Unit, name: str, skill: dict[str, Any]) -> None:
    u.energy -= skill.get("energy", 0)
    if skill.get("cooldown"):
        u.ability_cd[name] = world.clock + world.stats.ticks(skill["cooldown"])


def _blink(arg: Any, actor: AgentContext, world: WorldState, units: list[Unit]) -> None:
    skill = world.stats.skills["Blink"]
    _research_gate(world, actor.player, skill, "Blink")
    ready = _ready(world, _caster_pool(world, units, "Stalker"), "Blink", skill)
    x, y = _point(arg, actor, world)
    moved = False
    for u in ready:
        dx, dy = x - u.x, y - u.y
        d = math.hypot(dx, dy)
        if d > skill["range"] + 1e-9:
            continue
        if not world.pathable(x, y):
            raise CallError("invalid-position", "blink destination is not pathable")
        u.x, u.y = x, y
        u.orders = []
        _pay(world, u, "Blink", skill)
        moved = True
    if not moved:
        raise CallError("invalid-position", f"blink target is beyond range {skill['range']:g}")


def _shadow_stride(arg: Any, actor: AgentContext, world: WorldState, units: list[Unit]) -> None:
    skill = world.stats.skills["ShadowStride"]
    _research_gate(world, actor.player, skill, "ShadowStride")
    ready = _ready(world, _caster_pool(world, units, "DarkTemplar"), "ShadowStride", skill)
    target = _target_unit(arg, actor, world, own_ok=True)
    done = False
    for u in ready:
        if math.hypot(target.x - u.x, target.y - u.y) <= skill["range"] + target_radius(world, target):
            ang = math.atan2(u.y - target.y, u.x - target.x)
            off = target_radius(world, target) + world.utype(u).radius
            u.x, u.y = target.x + off * math.cos(ang), target.y + off * math.sin(ang)
            _pay(world, u, "ShadowStride", skill)
            if target.owner != actor.player and world.targetable(target):
                u.orders = [Order("attack", target.x, target.y, target.tag)]
            done = True
    if not done:
        raise CallError("invalid-position", "shadow stride target is out of range")


def target_radius(world: WorldState, u: Unit) -> float:
    return world.utype(u).radius


def _phase_shift(arg: Any, actor: AgentContext, world: WorldState, units: list[Unit]) -> None:
    skill = world.stats.skills["AdeptPhaseShift"]
    adepts = [u for u in _caster_pool(world, units, "Adept") if u.shade is None]
    if not adepts:
        raise CallError("unavailable", "phase shift already active")
    ready = _ready(world, adepts, "AdeptPhaseShift", skill)
    x, y = _point(arg, actor, world)
    for u in ready:
        shade = world.spawn("AdeptPhaseShift", u.owner, u.x, u.y, emit=False)
        shade.orders = [Order("move", x, y)]
        shade.shade_of = u.tag
        shade.shade_until = world.clock + world.stats.ticks(skill["duration"])
        u.shade = shade.tag
        _pay(world, u, "AdeptPhaseShift", skill)


def _cancel_phase(world: WorldState, units: list[Unit]) -> None:
    cancelled = False
    for u in units:
        if u.type == "Adept" and u.shade is not None:
            shade = world.units.get(u.shade)
            if shade is not None:
                world.remove(shade)
                shade.shade_of = None
            u.shade = None
            cancelled = True
        elif u.type == "AdeptPhaseShift":
            adept = world.units.get(u.shade_of or 0)
            if adept is not None:
                adept.shade = None
            if u.tag in world.units:  # the adept may already have dismissed it
                world.remove(u)
            cancelled = True
    if not cancelled:
        raise CallError("unavailable", "no active phase shift to cancel")


def _morph_archon(world: WorldState, units: list[Unit]) -> None:
    templars = [u for u in units if u.type in ("HighTemplar", "DarkTemplar") and _can_act(world, u)]
    if len(templars) < 2:
        raise CallError("invalid-target", "Archon morph needs two selected templars")
    skill = world.stats.skills["ArchonMorph"]
    for a, b in zip(templars[0::2], templars[1::2]):
        x, y = (a.x + b.x) / 2, (a.y + b.y) / 2
        for t in (a, b):
            world.remove(t)
        archon = world.spawn("Archon", a.owner, x, y)
        archon.build_total = archon.build_left = world.stats.ticks(skill["time"])


def _single_cast(name: str, args: tuple, q: str | None, actor: AgentContext, world: WorldState) -> None:
    skill = world.stats.skills[name]
    units = _selected(actor, world)
    _research_gate(world, actor.player, skill, name)
    ready = _ready(world, _caster_pool(world, units, skill["caster"]), name, skill)
    if name == "GuardianShield":
        caster = ready[0]
        _pay(world, caster, name, skill)
        world.effects.append(Effect("guardian", caster.owner, caster.x, caster.y, skill["radius"],
                                    world.clock + world.stats.ticks(skill["duration"]), caster.tag))
        return
    arg = args[0]
    tag = None
    if isinstance(arg, (ScreenTarget, WorldTarget)):
        target = _target_unit(arg, actor, world, own_ok=name in ("PsiStorm", "TimeWarp", "PurificationNova"))
        x, y, tag = target.x, target.y, target.tag
        if name == "GravitonBeam":
            if world.utype(target).structure or "massive" in world.utype(target).attributes:
                raise CallError("invalid-target", "graviton beam cannot lift that unit")
            if world.layer(target) == "air":
                raise CallError("invalid-target", "graviton beam needs a ground target")
    else:
        x, y = _point(arg, actor, world)
        if name == "GravitonBeam":
            raise CallError("invalid-target", "graviton beam needs a unit target")
    if not (0 <= x < world.width and 0 <= y < world.height):
        raise CallError("invalid-position", "target outside map")
    if name == "StasisTrap" and world.placement_problem("StasisTrap", x, y, actor.player) not in (None, "no power field"):
        raise CallError("invalid-position", "stasis trap position is blocked")
    # nearest ready caster goes
    ready.sort(key=lambda u: (math.hypot(u.x - x, u.y - y), u.tag))
    caster = ready[0]
    _issue(caster, Order("cast", x, y, tag, skill=name), q)


def _apply_cast(world: WorldState, u: Unit, order: Order) -> None:
    name = order.skill
    skill = world.stats.skills[name]
    if u.energy + 1e-9 < skill.get("energy", 0) or u.ability_cd.get(name, 0) > world.clock:
        world.emit("action-failed", unit=u.tag, skill=name, category="unavailable",
                   detail="not enough energy or on cooldown at cast time")
        return
    x, y = order.x, order.y
    if order.tag is not None:
        t = world.get(order.tag)
        if t is None:
            return
        x, y = t.x, t.y
    end = world.clock + world.stats.ticks(skill.get("duration", 0.1))
    if name == "PsiStorm":
        world.effects.append(Effect("storm", u.owner, x, y, skill["radius"], end, u.tag,
                                    {"per_tick": skill["damage"] / world.stats.ticks(skill["duration"])}))
    elif name == "ForceField":
        world.effects.append(Effect("forcefield", u.owner, x, y, skill["radius"], end, u.tag))
    elif name == "TimeWarp":
        world.effects.append(Effect("timewarp", u.owner, x, y, skill["radius"], end, u.tag,
                                    {"slow": skill["slow"]}))
    elif name == "OracleRevelation":
        for t in world.units.values():
            if t.owner not in (u.owner, 0) and math.hypot(t.x - x, t.y - y) <= skill["radius"]:
                t.revealed_until = max(t.revealed_until, end)
    elif name == "PurificationNova":
        world.effects.append(Effect("nova", u.owner, x, y, skill["radius"],
                                    world.clock + world.stats.ticks(skill["delay"]), u.tag,
                                    {"damage": skill["damage"], "shield_bonus": skill["shield_bonus"]}))
    elif name == "StasisTrap":
        trap = world.spawn("StasisTrap", u.owner, x, y, emit=False)
        trap.build_total = trap.build_left = world.stats.ticks(world.utype(trap).get("arm_time", 4))
    elif name == "GravitonBeam":
        t = world.get(order.tag or 0)
        if t is None or t.lifted_by is not None:
            return
        t.lifted_by = u.tag
        t.orders = []
        u.channel_target = t.tag
        u.channel_until = end
        u.orders = []
    _pay(world, u, name, skill)


def _release_beam(world: WorldState, phoenix: Unit) -> None:
    t = world.units.get(phoenix.channel_target or 0)
    if t is not None and t.lifted_by == phoenix.tag:
        t.lifted_by = None
    phoenix.channel_target = None
    phoenix.channel_until = 0


def _load(arg: Any, q: str | None, actor: AgentContext, world: WorldState, units: list[Unit]) -> None:
    prisms = [u for u in units if u.type == "WarpPrism" and _can_act(world, u)]
    if not prisms:
        raise CallError("invalid-target", "no WarpPrism selected")
    target = _target_unit(arg, actor, world, own_ok=True)
    if target.owner != actor.player or world.utype(target).structure or world.utype(target).air:
        raise CallError("invalid-target", "only friendly ground units can be loaded")
    _issue(prisms[0], Order("load", target.x, target.y, target.tag), q)


# ---------------------------------------------------------------------------
# tick
# ---------------------------------------------------------------------------

def speed_of(world: WorldState, u: Unit) -> float:
    ut = world.utype(u)
    speed = ut.speed
    for name in world.players.get(u.owner, _EMPTY).tech:
        eff = world.stats.upgrade_effects.get(name, {}).get(u.type)
        if eff and "speed" in eff:
            speed = eff["speed"]
    if u.mode in ("surveillance", "phasing"):
        return 0.0
    return speed


class _Empty:
    tech: set[str] = set()


_EMPTY = _Empty()


def weapon_range(world: WorldState, u: Unit, weapon) -> float:
    r = weapon.range
    for name in world.players.get(u.owner, _EMPTY).tech:
        eff = world.stats.upgrade_effects.get(name, {}).get(u.type)
        if eff:
            r += eff.get("range_bonus", 0)
    return r


def cooldown_ticks(world: WorldState, u: Unit, weapon) -> int:
    cd = weapon.cooldown
    for name in world.players.get(u.owner, _EMPTY).tech:
        eff = world.stats.upgrade_effects.get(name, {}).get(u.type)
        if eff:
            cd *= eff.get("cooldown_mult", 1.0)
    return world.stats.ticks(cd)


def _upgrade_bonus(world: WorldState, u: Unit, key: str) -> float:
    ut = world.utype(u)
    group = "*air" if ut.air else "*ground"
    total = 0.0
    for name in world.players.get(u.owner, _EMPTY).tech:
        eff = world.stats.upgrade_effects.get(name, {})
        for scope in (group, u.type):
            if scope in eff:
                total += eff[scope].get(key, 0)
    return total


def _weapon_for(world: WorldState, u: Unit, target: Unit):
    ut = world.utype(u)
    if not ut.weapons:
        return None
    if u.type == "Oracle" and u.mode != "pulsar":
        return None
    if u.channel_target is not None:
        return None
    layers = world.hit_layers(target)
    for i, w in enumerate(ut.weapons):
        if layers.intersection(w.targets):
            return i, w
    return None


def hit_damage(world: WorldState, attacker: Unit, weapon, target: Unit, guarded: bool) -> float:
    tt = world.utype(target)
    dmg = weapon.damage + sum(v for k, v in weapon.bonus.items() if k in tt.attributes)
    dmg += _upgrade_bonus(world, attacker, "damage_bonus")
    armor = tt.armor + _upgrade_bonus(world, target, "armor_bonus")
    reduction = world.stats.skills["GuardianShield"]["reduction"] if guarded else 0
    return max(world.stats.economy["min_damage"], dmg - armor - reduction)


def _edge_distance(world: WorldState, a: Unit, b: Unit) -> float:
    return math.hypot(a.x - b.x, a.y - b.y) - world.utype(a).radius - world.utype(b).radius


def step(world: WorldState) -> list[GameEvent]:
    """Advance one tick; returns the events produced during it."""
    from llmrts.sim.opponent import opponent_tick

    opponent_tick(world)
    _effects_tick(world)
    _progress_tick(world)
    _regen_tick(world)
    damage = _units_tick(world)
    _apply_damage(world, damage)
    _reap(world)
    if world.clock % SCAN_PERIOD == 0:
        _scan_tick(world)
    world.clock += 1
    return world.drain_events()


def _scan_tick(world: WorldState) -> None:
    """Record, per player, the last tick each map quadrant contained one of their units."""
    half_w, half_h = world.width / 2, world.height / 2
    for u in world.units.values():
        if u.alive and u.loaded_in is None and u.owner in world.scan_history:
            q = int(u.x >= half_w) + 2 * int(u.y >= half_h)
            world.scan_history[u.owner][q] = world.clock


def _progress_tick(world: WorldState) -> None:
    econ = world.stats.economy
    for u in list(world.iter_units()):
        if not u.alive:
            continue
        if u.build_left > 0:
            u.build_left -= 1
            if u.build_left == 0 and world.utype(u).structure:
                world.emit("unit-created", tag=u.tag, type=u.type, owner=u.owner, complete=True)
            continue
        if u.queue:
            item = u.queue[0]
            item[2] -= 1
            if item[2] <= 0:
                u.queue.pop(0)
                _finish_item(world, u, item)
        elif u.type == "Gateway" and "WarpGate" in world.players.get(u.owner, _EMPTY).tech:
            u.type = "WarpGate"
        if u.mode == "pulsar":
            u.energy -= world.stats.skills["PulsarBeam"]["drain"] * world.stats.tick_seconds
            if u.energy <= 0:
                u.energy = 0.0
                u.mode = None
        if u.channel_target is not None and (world.clock >= u.channel_until
                                             or world.get(u.channel_target) is None):
            _release_beam(world, u)
        if u.type == "AdeptPhaseShift" and world.clock >= u.shade_until:
            adept = world.get(u.shade_of or 0)
            if adept is not None:
                adept.x, adept.y = u.x, u.y
                adept.orders = []
                adept.shade = None
            world.remove(u)
    if world.economy:
        for player in (1, 2):
            _income(world, player, econ)


def _finish_item(world: WorldState, producer: Unit, item: list) -> None:
    kind, name = item[0], item[1]
    if kind == "research":
        ps = world.players[producer.owner]
        ps.researching.discard(name)
        ps.tech.add(name)
        world.emit("research-done", name=name, owner=producer.owner)
        return
    ut = world.stats[name]
    off = world.utype(producer).radius + ut.radius + 0.5
    x, y = _free_spot(world, producer.x, producer.y + off)
    unit = world.spawn(name, producer.owner, x, y)
    if not ut.worker:
        rally = world.meta.get("rally", {}).get(str(producer.owner))
        if rally:
            unit.orders = [Order("move", float(rally[0]), float(rally[1]))]


def _free_spot(world: WorldState, x: float, y: float) -> tuple[float, float]:
    for r in range(0, 8):
        for dx, dy in ((0, 0), (0, r), (r, 0), (-r, 0), (0, -r), (r, r), (-r, r), (r, -r), (-r, -r)):
            px = min(max(x + dx, 0.5), world.width - 0.5)
            py = min(max(y + dy, 0.5), world.height - 0.5)
            if world.pathable(px, py):
                return px, py
    return x, y


def _income(world: WorldState, player: int, econ: dict[str, float]) -> None:
    nexus = [u for u in world.units.values() if u.owner == player and u.complete
             and u.type in ("Nexus", "Hatchery")]
    if not nexus:
        return
    workers = [u for u in world.units.values() if u.owner == player and world.utype(u).worker]
    assims = [u for u in world.units.values() if u.owner == player and u.type == "Assimilator" and u.complete]
    cap = econ["workers_per_base"] * len(nexus)
    mining = min(len(workers), cap)
    ps = world.players[player]
    dt = world.stats.tick_seconds
    ps.minerals += econ["mineral_rate_per_worker"] * mining * dt
    # workers beyond mineral saturation harvest gas, three per assimilator
    saturated = min(len(assims), max(0, len(workers) - mining) // 3)
    ps.vespene += econ["vespene_rate_per_assimilator"] * saturated * dt
    if world.auto_workers and player == 1:
        want = cap + 3 * len(assims)
        for n in sorted(nexus, key=lambda u: u.tag):
            if n.type != "Nexus" or n.queue or len(workers) >= want:
                continue
            if ps.minerals >= 50 and world.supply_used(player) + world.supply_queued(player) + 1 <= world.supply_cap(player):
                ps.minerals -= 50
                n.queue.append(["unit", "Probe", world.stats.ticks(world.stats["Probe"].build_time)])
                want -= 1


def _regen_tick(world: WorldState) -> None:
    econ = world.stats.economy
    dt = world.stats.tick_seconds
    delay = world.stats.ticks(econ["shield_regen_delay"])
    for u in world.units.values():
        if not u.alive:
            continue
        if u.max_energy > 0 and u.energy < u.max_energy and u.mode != "pulsar":
            u.energy = min(u.max_energy, u.energy + econ["energy_regen_rate"] * dt)
        if u.max_shield > 0 and u.shield < u.max_shield and world.clock - u.last_damage_tick >= delay:
            gain = min(u.max_shield - u.shield, econ["shield_regen_rate"] * dt)
            u.shield += gain
            u.regen_total += gain


def _effects_tick(world: WorldState) -> None:
    keep = []
    storm_hit: set[int] = set()
    for e in world.effects:
        if e.kind == "guardian":
            src = world.get(e.source or 0)
            if src is None:
                continue
            e.x, e.y = src.x, src.y
        if e.kind == "storm":
            for u in list(world.units.values()):
                if (u.alive and u.loaded_in is None and u.tag not in storm_hit and not world.utype(u).structure
                        and u.lifted_by is None and world.targetable(u)
                        and math.hypot(u.x - e.x, u.y - e.y) <= e.radius + world.utype(u).radius):
                    storm_hit.add(u.tag)
                    _damage_unit(world, u, e.data["per_tick"], e.source, spell=True)
        if e.kind == "nova" and world.clock >= e.until:
            for u in list(world.units.values()):
                if (u.alive and u.loaded_in is None and world.layer(u) == "ground" and world.targetable(u)
                        and not world.utype(u).structure
                        and math.hypot(u.x - e.x, u.y - e.y) <= e.radius + world.utype(u).radius):
                    dmg = e.data["damage"] + (min(e.data["shield_bonus"], u.shield) if u.shield > 0 else 0)
                    _damage_unit(world, u, dmg, e.source, spell=True)
            continue
        if e.kind == "warp" and world.clock >= e.until:
            world.spawn(e.data["type"], e.owner, e.x, e.y)
            continue
        if world.clock >= e.until:
            continue
        keep.append(e)
    world.effects = keep
    # stasis traps
    for trap in [u for u in world.units.values() if u.type == "StasisTrap" and u.complete and u.alive]:
        radius = world.utype(trap).get("stasis_radius", 1.5)
        victims = [u for u in world.units.values()
                   if u.owner not in (trap.owner, 0) and u.alive and world.layer(u) == "ground"
                   and not world.utype(u).structure and math.hypot(u.x - trap.x, u.y - trap.y) <= radius]
        if victims:
            until = world.clock + world.stats.ticks(world.utype(trap).get("stasis_duration", 21))
            for v in victims:
                v.held_until = until
                v.orders = []
            world.remove(trap)


def _damage_unit(world: WorldState, u: Unit, amount: float, source: int | None, spell: bool = False) -> None:
    if amount <= 0 or not u.alive:
        return
    absorbed = min(u.shield, amount)
    u.shield -= absorbed
    rest = min(u.health, amount - absorbed)
    u.health -= rest
    dealt = absorbed + rest
    u.damage_received += dealt
    u.last_damage_tick = world.clock
    if u.health <= 1e-9:
        u.health = 0.0
        u.killer = source
    world.emit("damage-dealt", source=source, target=u.tag, amount=round(dealt, 3),
               **({"spell": True} if spell else {}))


def _guarded(world: WorldState, u: Unit) -> bool:
    for e in world.effects:
        if e.kind == "guardian" and e.owner == u.owner and math.hypot(u.x - e.x, u.y - e.y) <= e.radius:
            return True
    return False


def _units_tick(world: WorldState) -> list[tuple[int, int, float, list[int]]]:
    """Move units and fire weapons.  Returns pending hits (attacker, target, per-hit, hits)."""
    units = [u for u in world.iter_units() if u.alive and u.loaded_in is None]
    if not units:
        return []
    tags = np.array([u.tag for u in units])
    xs = np.array([u.x for u in units])
    ys = np.array([u.y for u in units])
    owners = np.array([u.owner for u in units])
    radii = np.array([world.utype(u).radius for u in units])
    index = {u.tag: i for i, u in enumerate(units)}
    hits: list[tuple[int, int, float, int, float]] = []
    for i, u in enumerate(units):
        for k in range(len(u.cooldowns)):
            if u.cooldowns[k] > 0:
                u.cooldowns[k] -= 1
        if not _can_act(world, u) or u.channel_target is not None:
            continue
        ut = world.utype(u)
        if ut.structure and not ut.weapons:
            continue
        order = u.orders[0] if u.orders else None
        if order is None or order.kind in ("hold", "attack_move"):
            target = _acquire(world, u, units, xs, ys, owners, radii, i,
                              chase=order is not None and order.kind == "attack_move")
            if target is not None:
                if _try_fire(world, u, target, hits):
                    continue
                if order is not None and order.kind == "attack_move" and _mobile(world, u):
                    _move_toward(world, u, target.x, target.y)
                    continue
            if order is not None and order.kind == "attack_move":
                if _move_toward(world, u, order.x, order.y):
                    u.orders.pop(0)
            continue
        if order.kind == "attack":
            target = world.get(order.tag or 0)
            if target is None or not world.targetable(target) or target.held_until > world.clock:
                u.orders.pop(0)
                continue
            if not _try_fire(world, u, target, hits) and _mobile(world, u):
                pick = _weapon_for(world, u, target)
                if pick is None:
                    u.orders.pop(0)
                    continue
                rng = weapon_range(world, u, pick[1])
                if _edge_distance(world, u, target) > rng:
                    _move_toward(world, u, target.x, target.y)
            continue
        if order.kind in ("move", "flee"):
            if _move_toward(world, u, order.x, order.y):
                u.orders.pop(0)
            continue
        if order.kind == "cast":
            skill = world.stats.skills[order.skill]
            tx, ty = order.x, order.y
            if order.tag is not None:
                t = world.get(order.tag)
                if t is None:
                    u.orders.pop(0)
                    continue
                tx, ty = t.x, t.y
            if math.hypot(tx - u.x, ty - u.y) <= skill.get("range", 9.0) + 1e-9:
                u.orders.pop(0)
                _apply_cast(world, u, order)
            elif _mobile(world, u):
                _move_toward(world, u, tx, ty)
            else:
                u.orders.pop(0)
            continue
        if order.kind == "load":
            t = world.get(order.tag or 0)
            if t is None or t.loaded_in is not None or t.owner != u.owner:
                u.orders.pop(0)
                continue
            used = sum(world.utype(world.units[c]).supply for c in u.cargo if c in world.units)
            if used + world.utype(t).supply > world.utype(u).get("cargo", 8):
                u.orders.pop(0)
                world.emit("action-failed", unit=u.tag, category="unavailable", detail="cargo full")
                continue
            if math.hypot(t.x - u.x, t.y - u.y) <= world.stats.skills["Load"]["range"] + radii[i] + radii[index[t.tag]]:
                t.loaded_in = u.tag
                t.orders = []
                u.cargo.append(t.tag)
                u.orders.pop(0)
            else:
                _move_toward(world, u, t.x, t.y)
            continue
        if order.kind == "unload":
            if _move_toward(world, u, order.x, order.y):
                u.orders.pop(0)
                for k, c in enumerate(list(u.cargo)):
                    cu = world.units.get(c)
                    if cu is None:
                        continue
                    ang = 2 * math.pi * k / max(len(u.cargo), 1)
                    cu.x, cu.y = _free_spot(world, u.x + math.cos(ang), u.y + math.sin(ang))
                    cu.loaded_in = None
                u.cargo = []
            continue
    # loaded units ride along
    for u in world.units.values():
        if u.loaded_in is not None:
            carrier = world.units.get(u.loaded_in)
            if carrier is not None:
                u.x, u.y = carrier.x, carrier.y
    hits.sort(key=lambda h: (h[0], h[1]))
    return hits


def _acquire(world: WorldState, u: Unit, units: list[Unit], xs, ys, owners, radii, i: int,
             chase: bool) -> Unit | None:
    ut = world.utype(u)
    if not ut.weapons or (u.type == "Oracle" and u.mode != "pulsar"):
        return None
    d = np.hypot(xs - u.x, ys - u.y) - radii - radii[i]
    enemy = (owners != u.owner) & (owners != 0)
    max_range = max(weapon_range(world, u, w) for w in ut.weapons)
    reach = max(max_range, ACQUIRE_RADIUS) if chase else max_range
    cand = np.nonzero(enemy & (d <= reach + 1e-9))[0]
    if cand.size == 0:
        return None
    best = None
    best_key = None
    for j in cand:
        t = units[j]
        if not world.targetable(t) or t.held_until > world.clock:
            continue
        if _weapon_for(world, u, t) is None:
            continue
        tt = world.utype(t)
        threat = 0 if tt.weapons else 1
        key = (threat, float(d[j]), t.tag)
        if best_key is None or key < best_key:
            best, best_key = t, key
    return best


def _try_fire(world: WorldState, u: Unit, target: Unit, hits: list) -> bool:
    """Fire at ``target`` if in range.  Returns True when in range (fired or cooling down)."""
    pick = _weapon_for(world, u, target)
    if pick is None:
        return False
    k, weapon = pick
    if _edge_distance(world, u, target) > weapon_range(world, u, weapon) + 1e-9:
        return False
    if u.cooldowns[k] > 0:
        return True
    guarded = weapon.range > world.stats.economy["ranged_threshold"] and _guarded(world, target)
    per_hit = hit_damage(world, u, weapon, target, guarded)
    hits.append((u.tag, target.tag, per_hit, weapon.attacks, weapon.splash))
    u.cooldowns[k] = cooldown_ticks(world, u, weapon)
    return True


def _apply_damage(world: WorldState, hits: list) -> None:
    for attacker_tag, target_tag, per_hit, attacks, splash in hits:
        target = world.units.get(target_tag)
        attacker = world.units.get(attacker_tag)
        if target is None or attacker is None:
            continue
        victims = [target]
        if splash > 0:
            layer = world.layer(target)
            for v in world.iter_units(target.owner):
                if v is not target and v.alive and v.loaded_in is None and world.layer(v) == layer \
                        and world.targetable(v) and math.hypot(v.x - target.x, v.y - target.y) <= splash:
                    victims.append(v)
        for v in victims:
            for _ in range(attacks):
                if v.health > 0:
                    _damage_unit(world, v, per_hit, attacker_tag)
        if world.utype(attacker).get("suicide"):
            attacker.health = 0.0


def _reap(world: WorldState) -> None:
    for u in list(world.iter_units()):
        if u.health > 0 or u.tag not in world.units:
            continue
        _kill(world, u)


def _kill(world: WorldState, u: Unit) -> None:
    ut = world.utype(u)
    ps = world.players.get(u.owner)
    if ps is not None and not ut.is_marker:
        ps.lost_value += ut.value
        ps.lost_units += 1
        if ut.worker:
            ps.lost_workers += 1
    world.emit("unit-killed", tag=u.tag, type=u.type, owner=u.owner, value=ut.value,
               killer=u.killer)
    for c in list(u.cargo):
        cu = world.units.get(c)
        if cu is not None:
            cu.health = 0.0
            cu.loaded_in = None
            _kill(world, cu)
    for v in world.units.values():
        if v.lifted_by == u.tag:
            v.lifted_by = None
        if v.channel_target == u.tag:
            v.channel_target = None
    if u.channel_target is not None:
        _release_beam(world, u)
    if u.shade is not None and u.shade in world.units:
        world.remove(world.units[u.shade])
    if u.tag in world.units:
        world.remove(u)


def _blocked_by_field(world: WorldState, u: Unit, x: float, y: float) -> bool:
    for e in world.effects:
        if e.kind == "forcefield":
            inside_now = math.hypot(u.x - e.x, u.y - e.y) < e.radius
            if not inside_now and math.hypot(x - e.x, y - e.y) < e.radius + world.utype(u).radius:
                return True
    return False


def _slow(world: WorldState, u: Unit) -> float:
    for e in world.effects:
        if e.kind == "timewarp" and e.owner != u.owner and math.hypot(u.x - e.x, u.y - e.y) <= e.radius:
            return e.data.get("slow", 0.5)
    return 1.0


def _move_toward(world: WorldState, u: Unit, x: float, y: float) -> bool:
    """Advance one tick toward (x, y).  Returns True on arrival."""
    dx, dy = x - u.x, y - u.y
    dist = math.hypot(dx, dy)
    if dist <= ARRIVE_EPS:
        return True
    if not _mobile(world, u):
        return True
    step_len = speed_of(world, u) * world.stats.tick_seconds * _slow(world, u)
    if step_len >= dist:
        nx, ny = x, y
    else:
        nx, ny = u.x + dx / dist * step_len, u.y + dy / dist * step_len
    ground = world.layer(u) == "ground"

    def ok(px: float, py: float) -> bool:
        if not (0 <= px < world.width and 0 <= py < world.height):
            return False
        if not ground:
            return True
        if not world.pathable(px, py) and world.pathable(u.x, u.y):
            return False
        return not _blocked_by_field(world, u, px, py)

    if ok(nx, ny):
        u.x, u.y = nx, ny
    elif ok(nx, u.y):
        u.x = nx
    elif ok(u.x, ny):
        u.y = ny
    else:
        return False
    return math.hypot(x - u.x, y - u.y) <= ARRIVE_EPS


def run_ticks(world: WorldState, n: int, until: Callable[[WorldState], bool] | None = None) -> list[GameEvent]:
    events: list[GameEvent] = []
    for _ in range(n):
        events.extend(step(world))
        if until is not None and until(world):
            break
    return events
