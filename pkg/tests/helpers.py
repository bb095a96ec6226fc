"""Shared generators and small world builders for the test suite."""

from __future__ import annotations

import random

from llmrts.calls import AgentContext
from llmrts.grammar import (MESSAGE_ACTION, Ident, MinimapCoord, NoneArg, ScreenCoord, Text, TextAction, UnitTag,
                            format_action)
from llmrts.sim.world import WorldState

PROSE_WORDS = (
    "the", "enemy", "army", "is", "near", "our", "base", "so", "we", "should", "retreat", "and", "regroup",
    "Stalkers", "blink", "forward", "(carefully)", "a < b", "x > y", "3 > 2", "[note]", "focus", "fire",
    "on", "Roach", "0x1A3", "minerals: 400", "->", "<", ">", "(", ")", "Actions:", "Analysis:", "'quoted'",
    "e.g.", "no_op", "Move_Screen", "step", "12,", "[20, 30]", "\n", "\n\n", "-", "*",
)
TEXT_WORDS = ("hold", "the", "ramp", "<Attack_Unit(0x1A3)>", "attack", "now", "[12, 40]", "(soon)", "go", "Zealot")


def random_name(rng: random.Random, minimap: bool | None = None) -> str:
    parts = ["Attack", "Move", "Select", "Unit", "Build", "Pylon", "Ability", "Blink", "Warp", "Train", "Scan",
             "Near", "Screen", "Unit2", "X"]
    name = "_".join(rng.choice(parts) for _ in range(rng.randint(1, 4)))
    if minimap is True:
        name += "_Minimap"
    if name == MESSAGE_ACTION:
        name += "_"
    return name


def random_text(rng: random.Random) -> str:
    return " ".join(rng.choice(TEXT_WORDS) for _ in range(rng.randint(0, 6)))


def random_action(rng: random.Random) -> TextAction:
    """Any well-formed action: coordinates, tags, idents, None and free text."""
    if rng.random() < 0.1:
        target = rng.choice(["Commander", "Developer", "CombatGroup4", "Channel"])
        return TextAction(MESSAGE_ACTION, (Ident(target), Text(random_text(rng))))
    minimap = rng.random() < 0.25
    name = random_name(rng, minimap)
    args = []
    for _ in range(rng.randint(0, 3)):
        kind = rng.random()
        if kind < 0.35:
            x, y = rng.randrange(64), rng.randrange(64)
            args.append(MinimapCoord(x, y) if minimap else ScreenCoord(x, y))
        elif kind < 0.7:
            args.append(UnitTag(rng.choice([rng.randint(1, 0xFFFF), rng.randint(1, 2**64 - 1)])))
        elif kind < 0.8:
            args.append(Ident(rng.choice(["Commander", "Builder", "left", "Probe_1"])))
        elif kind < 0.9:
            args.append(NoneArg())
        else:
            args.append(Text(random_text(rng)))
    return TextAction(name, tuple(args))


def random_prose(rng: random.Random, max_words: int = 8) -> str:
    return " ".join(rng.choice(PROSE_WORDS) for _ in range(rng.randint(0, max_words)))


def embed(actions: list[TextAction], rng: random.Random) -> str:
    """Actions in order, separated (and surrounded) by distracting prose."""
    pieces = [random_prose(rng)]
    for action in actions:
        pieces.append(format_action(action))
        pieces.append(random_prose(rng))
    return " ".join(pieces)


def micro_world() -> tuple[WorldState, dict[str, int]]:
    """A small hand-built base and skirmish used by bridge and engine tests."""
    w = WorldState(64, 64, seed=0)
    w.players[1].minerals = 2000
    w.players[1].vespene = 1000
    tags = {}
    for key, (type_name, owner, x, y) in {
        "probe": ("Probe", 1, 20, 20), "nexus": ("Nexus", 1, 14, 14), "pylon": ("Pylon", 1, 24, 14),
        "gateway": ("Gateway", 1, 24, 20), "core": ("CyberneticsCore", 1, 28, 14),
        "stalker1": ("Stalker", 1, 30, 30), "stalker2": ("Stalker", 1, 31, 30), "roach": ("Roach", 2, 34, 30),
        "site": ("ExpansionSite", 0, 44, 44),
    }.items():
        tags[key] = w.spawn(type_name, owner, x, y).tag
    return w, tags


def team_context(tags: tuple[int, ...], name: str = "A", subsets=(), modes=("easy-build",)) -> AgentContext:
    return AgentContext(name, 1, tuple(tags), frozenset(subsets), frozenset(modes))


# -- registry coverage ------------------------------------------------------

def _calls(entry) -> list[tuple[int, str, tuple[str, ...]]]:
    return [(c.function_id, c.function_name, tuple(c.args)) for c in entry.calls]


def registry_diff(expected: dict, errata: dict, registry) -> list[str]:
    """Differences between the registry and the frozen action tables after applying errata."""
    renames = {k: v["to"] for k, v in errata["renames"].items()}
    implicit = set(errata["implicit_selection"]["actions"])
    allowed = set(errata["implicit_selection"]["allowed_ids"])
    problems = []
    table = {renames.get(k, k): v for k, v in expected.items()}
    for name in sorted(set(table) - set(registry.entries)):
        problems.append(f"missing from registry: {name}")
    for name in sorted(set(registry.entries) - set(table)):
        problems.append(f"not in the tables: {name}")
    for name in sorted(set(table) & set(registry.entries)):
        spec = table[name]
        entry = registry[name]
        args = errata["args"].get(name, {}).get("to", spec["args"])
        if tuple(args) != entry.arg_schema:
            problems.append(f"{name}: args {entry.arg_schema} != {tuple(args)}")
        want = [(c[0], c[1], tuple(c[2])) for c in errata["calls"][name]["to"]] if name in errata["calls"] else \
            [(c["id"], c["function"], tuple(c["args"])) for c in spec["calls"]]
        got = _calls(entry)
        if name in implicit:
            k = len(got) - len(want)
            if k <= 0 or any(c[0] not in allowed for c in got[:k]):
                problems.append(f"{name}: expected selection calls before {want}, got {got}")
                continue
            got = got[k:]
        if got != want:
            problems.append(f"{name}: calls {got} != {want}")
    return problems


def stale_errata(expected: dict, errata: dict, registry) -> list[str]:
    """Errata entries whose correction is not actually needed."""
    renames = {k: v["to"] for k, v in errata["renames"].items()}
    table = {renames.get(k, k): v for k, v in expected.items()}
    stale = [f"rename {k}" for k in renames if k not in expected]
    for name, fix in errata["args"].items():
        if tuple(table[name]["args"]) == tuple(fix["to"]):
            stale.append(f"args {name}")
    for name in errata["calls"]:
        if [(c["id"], c["function"], c["args"]) for c in table[name]["calls"]] == \
                [tuple(c) for c in errata["calls"][name]["to"]]:
            stale.append(f"calls {name}")
    for name in errata["implicit_selection"]["actions"]:
        if len(_calls(registry[name])) == len(table[name]["calls"]):
            stale.append(f"implicit selection {name}")
    return stale


def scenario_request(scenario_id: str = "task4-l1", seed: int = 1, agent_index: int = 0):
    """The first query an agent would receive in a scenario."""
    from llmrts.agents import UnitCaches, build_roster
    from llmrts.observation import LastStep, assemble_query, build_observation
    from llmrts.scenarios import get_scenario, load_scenario

    config = get_scenario(scenario_id)
    roster = build_roster(config.roster_mode, config)
    profile = roster[agent_index]
    world = load_scenario(config, seed)
    caches = UnitCaches(roster)
    caches.sync(world)
    focus = caches.focus_point(profile, world)
    if focus is not None:
        world.move_camera(profile.name, *focus)
    obs = build_observation(profile, world, [], LastStep(), ctx=caches.context(profile, world), task=config.task)
    return profile, assemble_query(profile, obs)
