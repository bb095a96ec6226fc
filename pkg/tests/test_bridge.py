from __future__ import annotations

import copy
import json
import math
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import micro_world, registry_diff, stale_errata, team_context
from llmrts.bridge import RegistryError, auto_place, load_registry, protoss_registry, transform, valid_actions
from llmrts.calls import ActionError, ScreenTarget, WorldTarget
from llmrts.grammar import MinimapCoord, ScreenCoord, TextAction, UnitTag, extract_actions
from llmrts.sim import engine

DATA = Path(__file__).parent / "data"
MANIFEST = Path(__file__).parent.parent / "src" / "llmrts" / "data" / "actions_protoss.json"
SCALE = 64 / 24  # screen pixels per world unit for the default camera span


def px(world_coord: float, origin: float) -> int:
    return math.floor((world_coord - origin) * SCALE)


def act(text: str) -> TextAction:
    return extract_actions(text).actions[0]


def calls_of(result):
    assert not isinstance(result, ActionError), result
    return [(c.function_id, c.function_name, c.queueing, c.resolved_args) for c in result]


# -- registry ----------------------------------------------------------------

def test_registry_has_more_than_one_hundred_actions():
    assert len(protoss_registry()) >= 100


def test_registry_matches_the_action_tables():
    expected = json.loads((DATA / "expected_actions.json").read_text())["actions"]
    errata = json.loads((DATA / "action_table_errata.json").read_text())
    assert registry_diff(expected, errata, protoss_registry()) == []
    assert stale_errata(expected, errata, protoss_registry()) == []


def _doc():
    return json.loads(MANIFEST.read_text())


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d["actions"].append(copy.deepcopy(d["actions"][0])), "duplicate"),
    (lambda d: d["actions"][0]["calls"][0].update(id=99999), "unknown function id"),
    (lambda d: d["actions"][6]["calls"][0].update(fn="Attack_minimap"), "not Attack_minimap"),
    (lambda d: d["actions"][6]["calls"][0].update(bind=[None]), "bind list"),
    (lambda d: d["actions"][6]["calls"][0].update(bind=["unit0", "unit0"]), "literal"),
    (lambda d: d["actions"][6]["calls"][0].update(bind=[None, None]), "unbound placeholder"),
    (lambda d: d["actions"][6]["calls"][0].update(bind=[None, "unit3"]), "unbound placeholder"),
    (lambda d: d["actions"][6].update(availability=["made-up"]), "unknown availability"),
])
def test_malformed_manifest_is_rejected(mutate, message):
    doc = _doc()
    assert doc["actions"][6]["name"] == "Attack_Unit"
    mutate(doc)
    with pytest.raises(RegistryError, match=message):
        load_registry(doc)


def test_registry_loads_from_text_and_path():
    assert len(load_registry(MANIFEST)) == len(load_registry(MANIFEST.read_text())) == len(protoss_registry())


# -- spot-checked transforms ------------------------------------------------

@pytest.fixture
def world():
    w, tags = micro_world()
    w.move_camera("A", 30, 30)  # camera origin (18, 18)
    return w, tags


def army(tags):
    return team_context((tags["stalker1"], tags["stalker2"]))


def test_no_operation(world):
    w, tags = world
    assert calls_of(transform(act("<No_Operation()>"), army(tags), w)) == [(0, "no_op", None, ())]


def test_hold_position(world):
    w, tags = world
    assert calls_of(transform(act("<Hold_Position()>"), army(tags), w)) == [(274, "HoldPosition_quick", "queued", ())]


def test_move_screen(world):
    w, tags = world
    assert calls_of(transform(act("<Move_Screen([10, 20])>"), army(tags), w)) == [
        (331, "Move_screen", "queued", (ScreenCoord(10, 20),))]


def test_move_minimap(world):
    w, tags = world
    assert calls_of(transform(act("<Move_Minimap([5, 6])>"), army(tags), w)) == [
        (332, "Move_minimap", "queued", (MinimapCoord(5, 6),))]


def test_attack_unit_uses_the_target_pixel(world):
    w, tags = world
    r = tags["roach"]
    assert calls_of(transform(act(f"<Attack_Unit(0x{r:X})>"), army(tags), w)) == [
        (12, "Attack_screen", "queued", (ScreenTarget(px(34, 18), px(30, 18), r),))]


def test_select_unit_attack_unit_is_two_calls(world):
    w, tags = world
    s, r = tags["stalker1"], tags["roach"]
    c = px(30, 18)
    assert calls_of(transform(act(f"<Select_Unit_Attack_Unit(0x{s:X}, 0x{r:X})>"), army(tags), w)) == [
        (3, "select_rect", "select", (ScreenTarget(c - 1, c - 1, s), ScreenTarget(c + 1, c + 1, s))),
        (12, "Attack_screen", "queued", (ScreenTarget(px(34, 18), px(30, 18), r),)),
    ]


def test_select_unit_move_screen(world):
    w, tags = world
    s = tags["stalker2"]
    x, y = px(31, 18), px(30, 18)
    assert calls_of(transform(act(f"<Select_Unit_Move_Screen(0x{s:X}, [12, 13])>"), army(tags), w)) == [
        (3, "select_rect", "select", (ScreenTarget(x - 1, y - 1, s), ScreenTarget(x + 1, y + 1, s))),
        (331, "Move_screen", "now", (ScreenCoord(12, 13),)),
    ]


def test_build_nexus_near_moves_the_camera_first(world):
    w, tags = world
    site = tags["site"]
    ctx = team_context((tags["probe"],))
    # After centring on (44, 44) the camera origin is (32, 32), so the site sits at the screen centre.
    assert calls_of(transform(act(f"<Build_Nexus_Near(0x{site:X})>"), ctx, w)) == [
        (573, "llm_pysc2_move_camera", None, (WorldTarget(44.0, 44.0, site),)),
        (65, "Build_Nexus_screen", "queued", (ScreenTarget(px(44, 32), px(44, 32), site),)),
    ]


def test_build_pylon_screen(world):
    w, tags = world
    ctx = team_context((tags["probe"],))
    assert calls_of(transform(act("<Build_Pylon_Screen([23, 37])>"), ctx, w)) == [
        (70, "Build_Pylon_screen", "queued", (ScreenCoord(23, 37),))]


def test_train_stalker_selects_an_idle_gateway(world):
    w, tags = world
    g = tags["gateway"]
    c = px(24, 12)  # camera centred on the gateway at (24, 20): origin (12, 8)
    assert calls_of(transform(act("<Train_Stalker()>"), team_context(()), w)) == [
        (573, "llm_pysc2_move_camera", None, (WorldTarget(24.0, 20.0, g),)),
        (3, "select_rect", "select", (ScreenTarget(c - 1, c - 1, g), ScreenTarget(c + 1, c + 1, g))),
        (493, "Train_Stalker_quick", "queued", ()),
    ]


def test_research_warpgate_selects_the_core(world):
    w, tags = world
    core = tags["core"]
    c = px(28, 16)  # camera centred on (28, 14): origin (16, 2); both axes land on pixel 32
    assert c == px(14, 2)
    assert calls_of(transform(act("<Research_WarpGate()>"), team_context(()), w)) == [
        (573, "llm_pysc2_move_camera", None, (WorldTarget(28.0, 14.0, core),)),
        (3, "select_rect", "select", (ScreenTarget(c - 1, c - 1, core), ScreenTarget(c + 1, c + 1, core))),
        (428, "Research_WarpGate_quick", "queued", ()),
    ]


def test_blink_is_immediate(world):
    w, tags = world
    w.players[1].tech.add("Blink")
    assert calls_of(transform(act("<Ability_Blink_Screen([40, 30])>"), army(tags), w)) == [
        (180, "Effect_Blink_screen", "now", (ScreenCoord(40, 30),))]


# -- errors -----------------------------------------------------------------

def category(result) -> str:
    assert isinstance(result, ActionError), result
    return result.category


def test_unknown_action(world):
    w, tags = world
    assert category(transform(act("<Train_Zealots()>"), army(tags), w)) == "unknown-action"


def test_wrong_argument_count_or_kind(world):
    w, tags = world
    assert category(transform(act("<Attack_Unit()>"), army(tags), w)) == "bad-arity"
    assert category(transform(act("<Attack_Unit([1, 2])>"), army(tags), w)) == "bad-arity"


def test_unknown_beats_arity_and_arity_beats_availability(world):
    w, tags = world
    ctx = team_context((), subsets=("train",))
    assert category(transform(act("<Nope(1, 2, 3)>"), ctx, w)) == "unknown-action"
    assert category(transform(act("<Attack_Unit()>"), ctx, w)) == "bad-arity"


def test_action_outside_the_agent_subset_is_unavailable(world):
    w, tags = world
    ctx = team_context((tags["stalker1"],), subsets=("train",))
    assert not isinstance(transform(act("<No_Operation()>"), ctx, w), ActionError)  # in every subset
    assert category(transform(act("<Hold_Position()>"), ctx, w)) == "unavailable"
    assert category(transform(act("<Ability_Blink_Screen([1, 1])>"), ctx, w)) == "unavailable"


def test_missing_tech_is_unavailable(world):
    w, tags = world
    assert category(transform(act("<Ability_Blink_Screen([1, 1])>"), army(tags), w)) == "unavailable"


def test_busy_gateway_gives_no_idle_building(world):
    w, tags = world
    w.units[tags["gateway"]].queue.append(["Zealot", 100])
    assert category(transform(act("<Train_Stalker()>"), team_context(()), w)) == "no-idle-building"


def test_target_outside_vision_is_invalid(world):
    w, tags = world
    far = w.spawn("Roach", 2, 60, 60)
    assert category(transform(act(f"<Attack_Unit(0x{far.tag:X})>"), army(tags), w)) == "invalid-target"


def test_unknown_tag_is_invalid(world):
    w, tags = world
    assert category(transform(act("<Attack_Unit(0xFFFF)>"), army(tags), w)) == "invalid-target"


def test_insufficient_resources_reported_by_the_simulator(world):
    w, tags = world
    w.players[1].minerals = 0
    ctx = team_context((tags["probe"],))
    w.selections["A"] = [tags["probe"]]
    calls = transform(act("<Build_Pylon_Screen([23, 37])>"), ctx, w)
    if isinstance(calls, ActionError):
        assert calls.category == "insufficient-resources"
    else:
        errors = [engine.execute(c, ctx, w) for c in calls]
        assert [e.category for e in errors if e] == ["insufficient-resources"]


# -- availability listing and placement --------------------------------------

def test_valid_actions_respect_subsets(world):
    w, tags = world
    listed = [sig for sig, _ in valid_actions(team_context((tags["stalker1"],), subsets=("basic",)), w)]
    assert "<Attack_Unit(tag)>" in listed
    assert not any(s.startswith("<Train_") for s in listed)


def test_valid_actions_transform_without_availability_errors(world):
    w, tags = world
    ctx = army(tags)
    for sig, _ in valid_actions(ctx, w):
        entry = protoss_registry()[sig[1:sig.index("(")]]
        if entry.arg_schema:
            continue
        result = transform(TextAction(entry.action_name), ctx, w)
        if isinstance(result, ActionError):
            assert result.category not in ("unknown-action", "bad-arity", "unavailable"), (sig, result)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 63), st.integers(0, 63))
def test_auto_place_returns_a_legal_spot(x, y):
    w, tags = micro_world()
    anchor = w.spawn("Pylon", 1, max(3, min(60, x)), max(3, min(60, y)))
    spot = auto_place(anchor.tag, "Gateway", w, 1)
    if isinstance(spot, ActionError):
        assert spot.category == "invalid-position"
    else:
        assert w.placement_problem("Gateway", spot[0], spot[1], 1) is None


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2**64 - 1))
def test_any_tag_resolves_or_reports_an_error(tag):
    w, tags = micro_world()
    w.move_camera("A", 30, 30)
    result = transform(TextAction("Attack_Unit", (UnitTag(tag),)), army(tags), w)
    assert isinstance(result, (list, ActionError))
