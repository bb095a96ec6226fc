from __future__ import annotations

import math
import random

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import micro_world
from llmrts.sim import engine
from llmrts.sim.coords import Camera, camera_at, screen_to_world, world_to_screen
from llmrts.sim.stats import load_stats
from llmrts.sim.world import WorldState


def duel(seed: int = 0):
    w = WorldState(32, 32, seed=seed)
    stalker = w.spawn("Stalker", 1, 10, 10)
    roach = w.spawn("Roach", 2, 12, 10)
    return w, stalker, roach


def run_until_dead(w: WorldState, tag: int, limit: int = 400):
    events = []
    while tag in w.units and w.clock < limit:
        events.extend(engine.step(w))
    return events


def test_stalker_kills_roach_on_the_closed_form_tick():
    stats = load_stats()
    stalker, roach = stats["Stalker"], stats["Roach"]
    weapon = stalker.weapons[0]
    per_hit = weapon.damage + weapon.bonus.get("armored", 0) - roach.armor
    hits = math.ceil((roach.health + roach.shield) / per_hit)
    interval = round(weapon.cooldown / stats.tick_seconds)
    kill_tick = (hits - 1) * interval  # first shot lands on tick 0

    w, s, r = duel()
    events = run_until_dead(w, r.tag)
    shots = [e for e in events if e.kind == "damage-dealt" and e.payload["source"] == s.tag]
    killed = [e for e in events if e.kind == "unit-killed" and e.payload["tag"] == r.tag]
    assert killed and len(shots) == hits
    ticks = [e.step for e in shots]
    assert ticks == [i * interval for i in range(hits)]
    assert killed[0].step == kill_tick == 104


def test_same_seed_same_history():
    hashes = []
    for _ in range(2):
        w, tags = micro_world()
        w.spawn("Zealot", 2, 33, 31)
        log = []
        for _ in range(150):
            log.extend((e.step, e.kind, sorted(e.payload.items())) for e in engine.step(w))
        hashes.append((w.state_hash(), repr(log)))
    assert hashes[0] == hashes[1]


def test_state_hash_changes_with_state():
    w, _ = micro_world()
    before = w.state_hash()
    w.players[1].minerals += 1
    assert w.state_hash() != before


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_damage_received_equals_health_shield_and_regen_at_death(seed):
    rng = random.Random(seed)
    w = WorldState(40, 40, seed=seed)
    dead = {}
    for owner, types in ((1, ["Stalker", "Zealot", "Adept"]), (2, ["Roach", "Zergling", "Hydralisk"])):
        for _ in range(rng.randint(1, 4)):
            w.spawn(rng.choice(types), owner, rng.uniform(15, 25), rng.uniform(15, 25))
    for _ in range(300):
        before = {t: u for t, u in w.units.items()}
        for e in engine.step(w):
            if e.kind == "unit-killed":
                dead[e.payload["tag"]] = before[e.payload["tag"]]
    for u in dead.values():
        assert math.isclose(u.damage_received, u.max_health + u.max_shield + u.regen_total, abs_tol=1e-6)


@settings(max_examples=1000, deadline=None)
@given(st.floats(0, 63.999), st.floats(0, 63.999), st.floats(0, 40), st.floats(0, 40))
def test_world_screen_world_error_is_below_one_cell(x, y, cx, cy):
    camera = camera_at(cx, cy, 64, 64)
    x, y = camera.x0 + x * camera.span / 64, camera.y0 + y * camera.span / 64
    p = world_to_screen(x, y, camera)
    bx, by = screen_to_world(p.x, p.y, camera)
    cell = camera.span / 64
    assert abs(x - bx) <= cell and abs(y - by) <= cell


def test_camera_stays_inside_the_map():
    assert camera_at(2, 2, 64, 64) == Camera(0.0, 0.0)
    assert camera_at(63, 63, 64, 64) == Camera(40.0, 40.0)
