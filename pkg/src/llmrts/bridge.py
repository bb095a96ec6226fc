"""Declarative action registry and the text-action -> backend-call transform.

The registry is loaded from a JSON manifest.  Each entry names an action, its
argument kinds (``screen``, ``minimap``, ``tag``), an ordered list of call
templates and a list of availability predicates.  A call template keeps the
argument placeholders exactly as the function signature spells them and a
parallel ``bind`` list telling the transform where each value comes from:

    argN           the N-th action argument (a coordinate)
    unitN          screen pixel of the unit whose tag is argument N
    worldN         world position of the unit whose tag is argument N
    rect1:N/rect2:N  corners of a 2x2 pixel box around that unit
    auto:<name>    an automatic resolver (placement, idle building, ...)
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from llmrts.calls import ActionError, AgentContext, BackendCall, ScreenTarget, WorldPoint, WorldTarget
from llmrts.grammar import MinimapCoord, ScreenCoord, TextAction, UnitTag
from llmrts.sim.coords import Camera, camera_at, world_to_screen
from llmrts.sim.world import Unit, WorldState, footprint_cells

ARG_KINDS = ("screen", "minimap", "tag")
LITERALS = ("queued", "now", "select", "add")
RESOLVERS = {
    "place_auto", "place_near", "warp_near", "warp_auto", "idle_world", "idle_rect1", "idle_rect2",
    "army_target", "defend_point", "retreat_point", "scan_target", "scout_world", "scout_rect1",
    "scout_rect2",
}
PREDICATES = {
    "always", "has-team", "team-can-attack", "has-worker", "has-army", "can-build", "can-produce",
    "lacks-tech", "requires-tech", "requires-idle-building", "requires-structure", "requires-unit",
    "requires-units", "requires-player-unit", "easy-mode-only",
}
MAX_RING = 12


class RegistryError(ValueError):
    """The action-space document is inconsistent."""


@dataclass(frozen=True)
class CallTemplate:
    function_id: int
    function_name: str
    args: tuple[str, ...]
    bind: tuple[str | None, ...]


@dataclass(frozen=True)
class BridgeEntry:
    action_name: str
    arg_schema: tuple[str, ...]
    calls: tuple[CallTemplate, ...]
    availability: tuple[str, ...]
    subsets: frozenset[str]
    description: str
    extra: dict[str, Any] = field(default_factory=dict, hash=False, compare=False)

    @property
    def signature(self) -> str:
        return f"<{self.action_name}({', '.join(self.arg_schema)})>"

    def get(self, key: str, default: Any = None) -> Any:
        return self.extra.get(key, default)


class Registry:
    def __init__(self, entries: Iterable[BridgeEntry], functions: dict[int, str]):
        self.entries: dict[str, BridgeEntry] = {}
        for e in entries:
            self.entries[e.action_name] = e
        self.functions = dict(functions)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self.entries

    def __getitem__(self, name: str) -> BridgeEntry:
        return self.entries[name]

    def names(self) -> list[str]:
        return list(self.entries)


# ---------------------------------------------------------------------------
# loading
# ---------------------------------------------------------------------------

def _check_bind(name: str, ref: str, schema: tuple[str, ...]) -> None:
    def index(text: str) -> int:
        try:
            i = int(text)
        except ValueError:
            raise RegistryError(f"{name}: malformed binding {ref!r}") from None
        if not 0 <= i < len(schema):
            raise RegistryError(f"{name}: unbound placeholder {ref!r} (action has {len(schema)} args)")
        return i

    if ref.startswith("auto:"):
        parts = ref.split(":")
        if parts[1] not in RESOLVERS:
            raise RegistryError(f"{name}: unknown resolver {parts[1]!r}")
        if parts[1] in ("place_near", "warp_near"):
            if len(parts) < 3 or schema[index(parts[2])] != "tag":
                raise RegistryError(f"{name}: resolver {parts[1]} needs a tag argument")
        return
    for prefix in ("rect1:", "rect2:"):
        if ref.startswith(prefix):
            if schema[index(ref[len(prefix):])] != "tag":
                raise RegistryError(f"{name}: {ref!r} must refer to a tag argument")
            return
    for prefix in ("unit", "world"):
        if ref.startswith(prefix):
            if schema[index(ref[len(prefix):])] != "tag":
                raise RegistryError(f"{name}: {ref!r} must refer to a tag argument")
            return
    if ref.startswith("arg"):
        if schema[index(ref[3:])] not in ("screen", "minimap"):
            raise RegistryError(f"{name}: {ref!r} must refer to a coordinate argument")
        return
    raise RegistryError(f"{name}: unknown binding {ref!r}")


def load_registry(document: dict[str, Any] | str | Path) -> Registry:
    """Build a registry from a manifest document (dict, JSON text or path)."""
    if isinstance(document, Path) or (isinstance(document, str) and not document.lstrip().startswith("{")):
        document = json.loads(Path(document).read_text())
    elif isinstance(document, str):
        document = json.loads(document)
    functions = {int(k): v for k, v in document.get("functions", {}).items()}
    entries: list[BridgeEntry] = []
    seen: set[str] = set()
    for raw in document["actions"]:
        name = raw.get("name", "?")
        if name in seen:
            raise RegistryError(f"{name}: duplicate action name")
        seen.add(name)
        schema = tuple(raw.get("args", []))
        for kind in schema:
            if kind not in ARG_KINDS:
                raise RegistryError(f"{name}: unknown argument kind {kind!r}")
        calls = []
        for c in raw["calls"]:
            fid = int(c["id"])
            if fid not in functions:
                raise RegistryError(f"{name}: unknown function id {fid}")
            if c.get("fn", functions[fid]) != functions[fid]:
                raise RegistryError(f"{name}: function {fid} is {functions[fid]}, not {c['fn']}")
            args = tuple(c.get("args", []))
            bind = tuple(c.get("bind", [None] * len(args)))
            if len(bind) != len(args):
                raise RegistryError(f"{name}: bind list does not match placeholders of {fid}")
            for placeholder, ref in zip(args, bind):
                if placeholder in LITERALS:
                    if ref is not None:
                        raise RegistryError(f"{name}: literal {placeholder!r} cannot be bound")
                    continue
                if ref is None:
                    raise RegistryError(f"{name}: unbound placeholder {placeholder!r} in call {fid}")
                _check_bind(name, ref, schema)
            calls.append(CallTemplate(fid, functions[fid], args, bind))
        if not calls:
            raise RegistryError(f"{name}: no calls")
        availability = tuple(raw.get("availability", ["always"]))
        for pred in availability:
            if pred.split(":")[0] not in PREDICATES:
                raise RegistryError(f"{name}: unknown availability predicate {pred!r}")
        extra = {k: v for k, v in raw.items()
                 if k not in ("name", "args", "calls", "availability", "subsets", "description")}
        entries.append(BridgeEntry(name, schema, tuple(calls), availability,
                                   frozenset(raw.get("subsets", ["*"])), raw.get("description", ""), extra))
    return Registry(entries, functions)


@lru_cache(maxsize=1)
def protoss_registry() -> Registry:
    text = resources.files("llmrts").joinpath("data/actions_protoss.json").read_text()
    return load_registry(json.loads(text))


# ---------------------------------------------------------------------------
# world queries
# ---------------------------------------------------------------------------

def find_idle_building(type_name: str, owner: int, world: WorldState) -> int | ActionError:
    """Lowest-tag complete structure of ``type_name`` with an empty queue."""
    for u in world.iter_units(owner):
        if u.type == type_name and u.alive and u.complete and not u.queue:
            return u.tag
    return ActionError(None, "no-idle-building", f"no idle {type_name}")


def ring_candidates(near: Unit, size: int, world: WorldState, ring: int) -> list[tuple[int, int]]:
    """Top-left cells of ``size`` footprints at gap ``ring - 1`` around ``near``, clockwise from north."""
    box = max(world.utype(near).footprint, 1)
    xs, ys = footprint_cells(near.x, near.y, box)
    bx, by = xs.start, ys.start
    bx1, by1 = bx + box, by + box
    g = ring - 1
    lo_x, hi_x = bx - g - size, bx1 + g
    lo_y, hi_y = by - g - size, by1 + g
    cells = set()
    for ax in range(lo_x, hi_x + 1):
        cells.add((ax, lo_y))
        cells.add((ax, hi_y))
    for ay in range(lo_y, hi_y + 1):
        cells.add((lo_x, ay))
        cells.add((hi_x, ay))
    cx, cy = bx + box / 2, by + box / 2

    def angle(cell: tuple[int, int]) -> tuple[float, int, int]:
        dx = cell[0] + size / 2 - cx
        dy = cell[1] + size / 2 - cy
        a = math.atan2(dx, -dy) % (2 * math.pi)
        if a > 2 * math.pi - 1e-9:
            a = 0.0
        return (round(a, 12), cell[1], cell[0])

    return sorted(cells, key=angle)


def _ring_scan(near: Unit, size: int, world: WorldState, ok) -> tuple[float, float] | None:
    for ring in range(1, MAX_RING + 1):
        for ax, ay in ring_candidates(near, size, world, ring):
            center = (ax + size / 2, ay + size / 2)
            if ok(*center):
                return center
    return None


def auto_place(near: UnitTag | int, structure: str, world: WorldState, player: int = 1
               ) -> tuple[float, float] | ActionError:
    """First valid centre for ``structure`` in an outward ring scan around ``near``."""
    tag = near.tag if isinstance(near, UnitTag) else int(near)
    unit = world.get(tag)
    if unit is None:
        return ActionError(None, "invalid-target", f"unit 0x{tag:X} does not exist")
    size = max(world.stats[structure].footprint, 1)
    found = _ring_scan(unit, size, world,
                       lambda x, y: world.placement_problem(structure, x, y, player) is None)
    if found is None:
        return ActionError(None, "invalid-position",
                           f"no free position for {structure} within {MAX_RING} cells of 0x{tag:X}")
    return found


def _warp_spot_near(unit: Unit, world: WorldState, player: int) -> tuple[float, float] | None:
    from llmrts.sim.engine import warp_spot_problem

    return _ring_scan(unit, 1, world, lambda x, y: warp_spot_problem(world, x, y, player) is None)


# ---------------------------------------------------------------------------
# availability
# ---------------------------------------------------------------------------

def _team_units(ctx: AgentContext, world: WorldState) -> list[Unit]:
    out = []
    for tag in ctx.team:
        u = world.get(tag)
        if u is not None and u.owner == ctx.player:
            out.append(u)
    return out


def _predicate_failure(pred: str, ctx: AgentContext, world: WorldState, team: list[Unit]) -> ActionError | None:
    kind, _, arg = pred.partition(":")
    p = ctx.player
    ps = world.players[p]

    def fail(detail: str, category: str = "unavailable") -> ActionError:
        return ActionError(None, category, detail)

    if kind == "always":
        return None
    if kind == "has-team":
        return None if team else fail("this agent controls no units")
    if kind == "team-can-attack":
        return None if any(world.utype(u).weapons for u in team) else fail("no unit in the team can attack")
    if kind == "has-worker":
        ok = any(world.utype(u).worker for u in world.iter_units(p))
        return None if ok else fail("no worker available")
    if kind == "has-army":
        ok = any(world.utype(u).combat and not world.utype(u).structure for u in world.iter_units(p))
        return None if ok else fail("no combat units")
    if kind in ("can-build", "can-produce"):
        missing = world.tech_ok(p, arg)
        return None if missing is None else fail(f"{arg} requires {missing}")
    if kind == "lacks-tech":
        if arg in ps.tech:
            return fail(f"{arg} already researched")
        if arg in ps.researching:
            return fail(f"{arg} is being researched")
        return None
    if kind == "requires-tech":
        return None if arg in ps.tech else fail(f"requires {arg} research")
    if kind == "requires-idle-building":
        found = find_idle_building(arg, p, world)
        return found if isinstance(found, ActionError) else None
    if kind == "requires-structure":
        return None if world.has_structure(p, arg) else fail(f"requires a completed {arg}")
    if kind == "requires-unit":
        return None if any(u.type == arg for u in team) else fail(f"no {arg} in this agent's team")
    if kind == "requires-units":
        types, _, count = arg.partition(":")
        wanted = set(types.split("+"))
        n = sum(1 for u in team if u.type in wanted)
        return None if n >= int(count or 1) else fail(f"needs {count} of {'/'.join(sorted(wanted))}")
    if kind == "requires-player-unit":
        ok = any(u.type == arg for u in world.iter_units(p) if u.loaded_in is None)
        return None if ok else fail(f"no {arg} available")
    if kind == "easy-mode-only":
        return None if arg in ctx.modes else fail(f"only available in {arg} mode")
    return fail(f"unknown predicate {pred}")


def _in_subset(entry: BridgeEntry, ctx: AgentContext) -> bool:
    return not ctx.action_subset or "*" in entry.subsets or bool(entry.subsets & ctx.action_subset)


def availability_error(entry: BridgeEntry, ctx: AgentContext, world: WorldState) -> ActionError | None:
    if not _in_subset(entry, ctx):
        return ActionError(None, "unavailable", f"{entry.action_name} is not in this agent's action space")
    team = _team_units(ctx, world)
    for pred in entry.availability:
        err = _predicate_failure(pred, ctx, world, team)
        if err is not None:
            return err
    return None


def valid_actions(ctx: AgentContext, world: WorldState, registry: Registry | None = None
                  ) -> list[tuple[str, str]]:
    """(signature, description) for every entry available to ``ctx`` now, in registry order."""
    reg = registry or protoss_registry()
    out = []
    for entry in reg.entries.values():
        if availability_error(entry, ctx, world) is None:
            out.append((entry.signature, entry.description))
    return out


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

class _Resolve(Exception):
    def __init__(self, category: str, detail: str):
        super().__init__(detail)
        self.category = category
        self.detail = detail


class _Transformer:
    def __init__(self, entry: BridgeEntry, action: TextAction, ctx: AgentContext, world: WorldState):
        self.entry = entry
        self.action = action
        self.ctx = ctx
        self.world = world
        self.camera: Camera = world.camera(ctx.name)
        self._visible: set[int] | None = None
        self._memo: dict[str, Any] = {}

    def visible(self) -> set[int]:
        if self._visible is None:
            self._visible = self.world.visible_tags(self.ctx.player)
        return self._visible

    def unit_arg(self, i: int) -> Unit:
        tag = self.action.args[i].tag
        u = self.world.get(tag)
        if u is None:
            raise _Resolve("invalid-target", f"unit 0x{tag:X} does not exist")
        if u.owner != self.ctx.player and tag not in self.visible():
            raise _Resolve("invalid-target", f"unit 0x{tag:X} is not visible")
        if u.loaded_in is not None:
            raise _Resolve("invalid-target", f"unit 0x{tag:X} is inside a transport")
        return u

    def pixel(self, u: Unit) -> ScreenCoord:
        p = world_to_screen(u.x, u.y, self.camera)
        if not isinstance(p, ScreenCoord):
            raise _Resolve("invalid-target", f"unit 0x{u.tag:X} is not on screen")
        return p

    def rect(self, u: Unit, corner: str) -> ScreenTarget:
        p = self.pixel(u)
        if corner == "rect1":
            return ScreenTarget(max(p.x - 1, 0), max(p.y - 1, 0), u.tag)
        return ScreenTarget(min(p.x + 1, 63), min(p.y + 1, 63), u.tag)

    def resolve(self, ref: str) -> Any:
        if ref.startswith("arg"):
            return self.action.args[int(ref[3:])]
        if ref.startswith("rect1:") or ref.startswith("rect2:"):
            corner, _, idx = ref.partition(":")
            return self.rect(self.unit_arg(int(idx)), corner)
        if ref.startswith("unit"):
            u = self.unit_arg(int(ref[4:]))
            p = self.pixel(u)
            return ScreenTarget(p.x, p.y, u.tag)
        if ref.startswith("world"):
            u = self.unit_arg(int(ref[5:]))
            return WorldTarget(u.x, u.y, u.tag)
        parts = ref.split(":")
        return getattr(self, "auto_" + parts[1])(*parts[2:])

    # -- automatic resolvers -------------------------------------------------

    def _idle(self) -> Unit:
        if "idle" not in self._memo:
            producer = self.entry.get("producer")
            found = find_idle_building(producer, self.ctx.player, self.world)
            if isinstance(found, ActionError):
                raise _Resolve(found.category, found.detail)
            self._memo["idle"] = self.world.units[found]
        return self._memo["idle"]

    def auto_idle_world(self) -> WorldTarget:
        u = self._idle()
        return WorldTarget(u.x, u.y, u.tag)

    def auto_idle_rect1(self) -> ScreenTarget:
        return self.rect(self._idle(), "rect1")

    def auto_idle_rect2(self) -> ScreenTarget:
        return self.rect(self._idle(), "rect2")

    def _scout(self, unit_type: str) -> Unit:
        key = "scout:" + unit_type
        if key not in self._memo:
            pool = [u for u in self.world.iter_units(self.ctx.player)
                    if u.type == unit_type and u.loaded_in is None]
            if not pool:
                raise _Resolve("unavailable", f"no {unit_type} available")
            self._memo[key] = pool[0]
        return self._memo[key]

    def auto_scout_world(self, unit_type: str) -> WorldTarget:
        u = self._scout(unit_type)
        return WorldTarget(u.x, u.y, u.tag)

    def auto_scout_rect1(self, unit_type: str) -> ScreenTarget:
        return self.rect(self._scout(unit_type), "rect1")

    def auto_scout_rect2(self, unit_type: str) -> ScreenTarget:
        return self.rect(self._scout(unit_type), "rect2")

    def auto_scan_target(self) -> WorldPoint:
        return scan_target(self.world, self.ctx.player)

    def _army(self) -> list[Unit]:
        return [u for u in self.world.iter_units(self.ctx.player)
                if self.world.utype(u).combat and u.loaded_in is None]

    def auto_army_target(self) -> WorldPoint:
        w = self.world
        army = self._army()
        if army:
            cx = sum(u.x for u in army) / len(army)
            cy = sum(u.y for u in army) / len(army)
        else:
            cx, cy = w.width / 2, w.height / 2
        enemies = [w.units[t] for t in sorted(self.visible())
                   if t in w.units and w.units[t].owner not in (self.ctx.player, 0) and w.targetable(w.units[t])]
        if enemies:
            e = min(enemies, key=lambda u: (math.hypot(u.x - cx, u.y - cy), u.tag))
            return WorldPoint(e.x, e.y)
        base = w.meta.get("enemy_base")
        if base:
            return WorldPoint(float(base[0]), float(base[1]))
        return WorldPoint(w.width / 2, w.height / 2)

    def _home(self) -> WorldPoint:
        w = self.world
        base = w.meta.get("player_base")
        if base:
            return WorldPoint(float(base[0]), float(base[1]))
        for u in w.iter_units(self.ctx.player):
            if u.type == "Nexus":
                return WorldPoint(u.x, u.y)
        army = self._army()
        if army:
            return WorldPoint(sum(u.x for u in army) / len(army), sum(u.y for u in army) / len(army))
        return WorldPoint(w.width / 2, w.height / 2)

    def auto_defend_point(self) -> WorldPoint:
        return self._home()

    def auto_retreat_point(self) -> WorldPoint:
        return self._home()

    def auto_place_near(self, idx: str) -> WorldPoint:
        u = self.unit_arg(int(idx))
        found = auto_place(u.tag, self.entry.get("builds"), self.world, self.ctx.player)
        if isinstance(found, ActionError):
            raise _Resolve(found.category, found.detail)
        return WorldPoint(*found)

    def auto_place_auto(self) -> WorldPoint:
        found = place_automatically(self.entry.get("builds"), self.world, self.ctx.player)
        if isinstance(found, ActionError):
            raise _Resolve(found.category, found.detail)
        return WorldPoint(*found)

    def auto_warp_near(self, idx: str) -> WorldPoint:
        u = self.unit_arg(int(idx))
        if u.owner != self.ctx.player or not (u.type == "Pylon" or (u.type == "WarpPrism" and u.mode == "phasing")):
            raise _Resolve("invalid-target", f"unit 0x{u.tag:X} does not provide a power field")
        spot = _warp_spot_near(u, self.world, self.ctx.player)
        if spot is None:
            raise _Resolve("invalid-position", f"no free powered position near 0x{u.tag:X}")
        return WorldPoint(*spot)

    def auto_warp_auto(self) -> WorldPoint:
        for u in power_providers(self.world, self.ctx.player):
            spot = _warp_spot_near(u, self.world, self.ctx.player)
            if spot is not None:
                return WorldPoint(*spot)
        raise _Resolve("invalid-position", "no free powered position for warping")

    # -- main ------------------------------------------------------------------

    def run(self) -> list[BackendCall]:
        calls = []
        for tpl in self.entry.calls:
            queueing = next((a for a in tpl.args if a in LITERALS), None)
            resolved = tuple(self.resolve(ref) for ph, ref in zip(tpl.args, tpl.bind) if ph not in LITERALS)
            call = BackendCall(tpl.function_id, tpl.function_name, queueing, resolved)
            if tpl.function_id == 573:
                target = resolved[0]
                self.camera = camera_at(target.x, target.y, self.world.width, self.world.height)
            calls.append(call)
        return calls


def power_providers(world: WorldState, player: int) -> list[Unit]:
    return [u for u in world.iter_units(player)
            if u.complete and (u.type == "Pylon" or (u.type == "WarpPrism" and u.mode == "phasing"
                                                     and u.loaded_in is None))]


def scan_target(world: WorldState, player: int) -> WorldPoint:
    """Centre of the map quadrant this player has seen least recently."""
    history = world.scan_history.get(player, {})
    quadrant = min(range(4), key=lambda q: (history.get(q, -1), q))
    qx, qy = quadrant % 2, quadrant // 2
    return WorldPoint((qx + 0.5) * world.width / 2, (qy + 0.5) * world.height / 2)


def place_automatically(structure: str, world: WorldState, player: int) -> tuple[float, float] | ActionError:
    """Placement used by the no-argument build actions."""
    own = list(world.iter_units(player))
    bases = [u for u in own if u.type == "Nexus"]
    if structure == "Nexus":
        anchor = bases[0] if bases else None
        sites = [u for u in world.iter_units() if u.type == "ExpansionSite"
                 and world.placement_problem("Nexus", u.x, u.y, player) is None]
        if anchor is not None:
            sites.sort(key=lambda s: (math.hypot(s.x - anchor.x, s.y - anchor.y), s.tag))
        if not sites:
            return ActionError(None, "invalid-position", "no free expansion site")
        return sites[0].x, sites[0].y
    if structure == "Assimilator":
        geysers = [g for g in world.iter_units() if g.type == "VespeneGeyser"
                   and world.placement_problem("Assimilator", g.x, g.y, player) is None]
        if bases:
            geysers.sort(key=lambda g: (min(math.hypot(g.x - b.x, g.y - b.y) for b in bases), g.tag))
        if not geysers:
            return ActionError(None, "invalid-position", "no free vespene geyser")
        return geysers[0].x, geysers[0].y
    anchors = bases if not world.stats[structure].power else [u for u in own if u.type == "Pylon" and u.complete]
    if structure == "Pylon" and not anchors:
        anchors = [u for u in own if world.utype(u).structure] or own
    if not anchors:
        return ActionError(None, "invalid-position", f"no powered area to place {structure}")
    for anchor in anchors:
        found = auto_place(anchor.tag, structure, world, player)
        if not isinstance(found, ActionError):
            return found
    return ActionError(None, "invalid-position", f"no free position for {structure}")


def _check_args(entry: BridgeEntry, action: TextAction) -> str | None:
    if len(action.args) != len(entry.arg_schema):
        return f"{entry.action_name} takes {len(entry.arg_schema)} argument(s), got {len(action.args)}"
    expected = {"screen": ScreenCoord, "minimap": MinimapCoord, "tag": UnitTag}
    for i, (kind, arg) in enumerate(zip(entry.arg_schema, action.args)):
        if not isinstance(arg, expected[kind]):
            return f"argument {i + 1} of {entry.action_name} must be a {kind}"
    return None


def transform(action: TextAction, ctx: AgentContext, world: WorldState,
              registry: Registry | None = None) -> list[BackendCall] | ActionError:
    """Resolve ``action`` into backend calls, or explain why it cannot run."""
    reg = registry or protoss_registry()
    entry = reg.entries.get(action.name)
    if entry is None:
        return ActionError(action, "unknown-action", f"{action.name} is not a known action")
    problem = _check_args(entry, action)
    if problem:
        return ActionError(action, "bad-arity", problem)
    err = availability_error(entry, ctx, world)
    if err is not None:
        return ActionError(action, err.category, err.detail)
    try:
        return _Transformer(entry, action, ctx, world).run()
    except _Resolve as exc:
        return ActionError(action, exc.category, exc.detail)
