from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import micro_world, team_context
from llmrts.agents import AgentProfile, Message, TeamSpec, build_roster
from llmrts.grammar import ScreenCoord
from llmrts.observation import (BLOCK_IDS, LastStep, assemble_query, build_observation, parse_unit_line,
                                render_feature_grid, screen_units, wiki)
from llmrts.sim.coords import pixel_center, world_to_screen
from llmrts.sim.stats import load_stats
from llmrts.sim.world import WorldState

PROFILE = AgentProfile("CombatGroup1", "micro-combat", "CombatGroup", (TeamSpec("Stalker-1", ("Stalker",)),),
                       frozenset({"basic"}))


def observe(world, tags=(), inbox=(), last=None, profile=PROFILE):
    ctx = team_context(tuple(tags), name=profile.name, subsets=profile.action_subset)
    return build_observation(profile, world, list(inbox), last or LastStep(), ctx=ctx, task="win the fight")


def test_all_twelve_blocks_in_order():
    w, tags = micro_world()
    obs = observe(w)
    assert [bid for bid, _ in obs.blocks] == list(BLOCK_IDS)
    assert all(text.strip() for _, text in obs.blocks)


def test_empty_inbox_renders_a_sentinel():
    w, _ = micro_world()
    assert "no messages" in observe(w).block(10)


def test_stalker_line_uses_the_screen_transform():
    w = WorldState(64, 64)
    camera = w.move_camera(PROFILE.name, 30, 30)
    x, y = pixel_center(40, 22, camera)
    s = w.spawn("Stalker", 1, x, y)
    assert world_to_screen(s.x, s.y, camera) == ScreenCoord(40, 22)
    lines = [parse_unit_line(line) for line in observe(w, [s.tag]).block(3).splitlines()]
    parsed = [p for p in lines if p]
    assert parsed == [{"tag": s.tag, "type": "Stalker", "owner": "self", "x": 40, "y": 22, "health": 80,
                       "max_health": 80, "shield": 80, "max_shield": 80, "energy": 0, "max_energy": 0,
                       "status": []}]


def test_last_step_errors_pass_through_verbatim():
    w, _ = micro_world()
    err = "<Train_Zealots()>: unknown-action: no such action; did you mean Train_Zealot?"
    assert err in observe(w, last=LastStep(errors=[err])).block(9)
    assert "no errors" in observe(w).block(9)


def test_inbox_content_shown_in_origin_form():
    w, _ = micro_world()
    content = "use <Ability_Blink_Screen([3,4])>, then retreat"
    assert content in observe(w, inbox=[Message(0, "Commander", PROFILE.name, content)]).block(10)


def test_every_block_three_line_matches_the_world():
    w, tags = micro_world()
    w.units[tags["stalker1"]].health = 41.5
    camera = w.move_camera(PROFILE.name, 30, 30)
    parsed = [p for p in map(parse_unit_line, observe(w).block(3).splitlines()) if p]
    expected = screen_units(w, camera, 1)
    assert [p["tag"] for p in parsed] == [u.tag for u, _ in expected] == sorted(p["tag"] for p in parsed)
    for p, (u, pixel) in zip(parsed, expected):
        assert (p["type"], p["x"], p["y"]) == (u.type, pixel.x, pixel.y)
    assert next(p for p in parsed if p["tag"] == tags["stalker1"])["health"] == 42


def test_observation_is_deterministic():
    w, tags = micro_world()
    assert observe(w).render() == observe(w).render()
    profile = build_roster("ECEB")[0]
    a = assemble_query(profile, observe(w, profile=profile))
    b = assemble_query(profile, observe(w, profile=profile))
    assert a == b and a.digest() == b.digest()


def test_commander_gets_its_rule_block():
    w, _ = micro_world()
    commander = build_roster("ECEB")[0]
    assert commander.name == "Commander"
    request = assemble_query(commander, observe(w, profile=commander))
    assert "Rules for agent Commander" in request.system
    assert request.attachments == ()
    assert request.messages()[-1]["content"] == request.user


def test_every_unit_type_has_a_wiki_entry():
    assert set(load_stats().units) <= set(wiki())


def test_empty_map_has_zero_ownership():
    w = WorldState(64, 64)
    grid = render_feature_grid(w, w.camera("A"))
    assert not grid.channels["ownership"].any()


def test_own_unit_marks_ownership_at_its_pixel():
    w = WorldState(64, 64)
    camera = w.move_camera("A", 32, 32)
    w.spawn("Zealot", 1, *pixel_center(10, 10, camera))
    assert render_feature_grid(w, camera).channels["ownership"][10][10] == 1
    assert "grid 64x64" in render_feature_grid(w, camera).to_text()


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_density_sums_to_the_on_screen_count(seed):
    rng = random.Random(seed)
    w = WorldState(64, 64, seed=seed)
    for _ in range(rng.randint(0, 25)):
        w.spawn(rng.choice(["Zealot", "Stalker", "Probe"]), 1, rng.uniform(1, 63), rng.uniform(1, 63))
    camera = w.move_camera("A", rng.uniform(0, 64), rng.uniform(0, 64))
    grid = render_feature_grid(w, camera)
    assert int(grid.channels["unit-density"].sum()) == len(screen_units(w, camera, 1))
