from __future__ import annotations

import io
import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llmrts.metrics import (EpisodeResult, ResultsError, format_kd_wr, kd_ratio, load_results, persist, summarize,
                            winning_rate)
from llmrts.scenarios import ScenarioError, check_victory, get_scenario, load_scenario, scenario_ids
from llmrts.sim import engine
from llmrts.sim.stats import load_stats


def test_kd_examples():
    assert kd_ratio(300, 200) == 1.5
    assert math.isinf(kd_ratio(50, 0))
    assert kd_ratio(0, 0) == 0
    assert format_kd_wr(kd_ratio(50, 0), 1.0) == "Inf (100%)"
    with pytest.raises(ValueError):
        kd_ratio(-1, 3)


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.integers(1, 10**6))
def test_kd_is_exact_division(killed, dead):
    assert kd_ratio(killed, dead) == float(Fraction(killed, dead))


@settings(max_examples=100)
@given(st.integers(0, 10**5), st.integers(1, 10**5), st.integers(1, 500))
def test_kd_monotone_in_kills_and_deaths(killed, dead, delta):
    assert kd_ratio(killed + delta, dead) >= kd_ratio(killed, dead)
    assert kd_ratio(killed, dead + delta) <= kd_ratio(killed, dead)


def test_winning_rate():
    assert winning_rate(["win", "lose", "lose", "win"]) == 0.5
    assert winning_rate(["win"] * 20) == 1.0
    with pytest.raises(ValueError):
        winning_rate([])


@settings(max_examples=50)
@given(st.lists(st.sampled_from(["win", "lose", "draw"]), min_size=1, max_size=40))
def test_winning_rate_matches_a_recount(outcomes):
    wins = 0
    for o in outcomes:
        if o == "win":
            wins += 1
    assert winning_rate(outcomes) == wins / len(outcomes)


def test_unit_value_is_mineral_plus_vespene():
    stats = load_stats()
    assert stats.value("Stalker") == 125 + 50
    assert stats.value("Roach") == 75 + 25


# -- scenarios -----------------------------------------------------------------

def test_manifest_is_complete():
    ids = set(scenario_ids())
    tasks = {f"task{t}-l{level}" for t in range(1, 9) for level in (1, 2, 3)}
    assert tasks <= ids
    assert {"ECEB", "SCEB", "ECSB"} <= ids
    assert len(ids - tasks - {"ECEB", "SCEB", "ECSB"}) == 6
    assert len(ids) == 33


def test_unknown_scenario_names_the_valid_ids():
    with pytest.raises(ScenarioError, match="task1-l1"):
        get_scenario("task99")


@pytest.mark.parametrize("scenario_id", scenario_ids())
def test_every_scenario_loads_and_starts_ongoing(scenario_id):
    cfg = get_scenario(scenario_id)
    world = load_scenario(cfg, seed=1)
    assert check_victory(cfg, world) == "ongoing"
    assert load_scenario(cfg, seed=1).state_hash() == world.state_hash()


def kill(world, units):
    for u in units:
        u.health = 0.0
    engine.step(world)


def test_task1_seventh_worker_killed_at_fifty_seconds_wins():
    cfg = get_scenario("task1-l1")
    w = load_scenario(cfg, 1)
    w.clock = 499
    drones = [u for u in w.iter_units(2) if w.utype(u).worker]
    kill(w, drones[:6])
    assert check_victory(cfg, w, 500) == "ongoing"
    kill(w, drones[6:7])
    assert w.clock == 501 and check_victory(cfg, w) == "win"


def test_task4_timeout_with_roaches_alive_loses():
    cfg = get_scenario("task4-l1")
    w = load_scenario(cfg, 1)
    roaches = [u for u in w.iter_units(2) if w.utype(u).combat]
    kill(w, roaches[3:])
    assert check_victory(cfg, w, cfg.max_ticks - 1) == "ongoing"
    assert check_victory(cfg, w, cfg.max_ticks) == "lose"


def test_task8_needs_both_conditions():
    cfg = get_scenario("task8-l1")
    w = load_scenario(cfg, 1)
    kill(w, [u for u in w.iter_units(2) if w.utype(u).combat and not w.utype(u).worker])
    workers = [u for u in w.iter_units(2) if w.utype(u).worker]
    kill(w, workers[:6])
    assert check_victory(cfg, w, 100) == "ongoing"
    assert check_victory(cfg, w, cfg.max_ticks) == "lose"
    kill(w, workers[6:7])
    assert check_victory(cfg, w, 100) == "win"


def test_complete_game_draw_only_on_mutual_destruction():
    cfg = get_scenario("ECEB")
    w = load_scenario(cfg, 1)
    kill(w, [u for u in w.iter_units(1) if w.utype(u).structure])
    assert check_victory(cfg, w) == "lose"
    kill(w, [u for u in w.iter_units(2) if w.utype(u).structure])
    assert check_victory(cfg, w) == "draw"


# -- persistence ---------------------------------------------------------------

def random_result(rng: random.Random, scenario_id: str | None = None) -> EpisodeResult:
    killed, dead = rng.randrange(0, 3000, 25), rng.randrange(0, 3000, 25)
    return EpisodeResult(scenario_id or rng.choice(["task1-l1", "task4-l1"]), rng.randint(1, 20),
                         rng.choice(["win", "lose", "draw"]), kd_ratio(killed, dead), killed, dead,
                         rng.randint(1, 60), rng.randint(10, 600), f"{rng.getrandbits(64):016x}")


def test_persist_then_load_round_trips(tmp_path):
    rng = random.Random(5)
    results = [random_result(rng) for _ in range(100)]
    path = tmp_path / "r.jsonl"
    for r in results:
        persist(r, path)
    assert len(path.read_text().splitlines()) == 100
    assert load_results(path) == results


def test_loaded_stats_equal_in_memory_aggregates(tmp_path):
    rng = random.Random(9)
    results = [random_result(rng) for _ in range(20)]
    sink = io.StringIO()
    for r in results:
        persist(r, sink)
    path = tmp_path / "r.jsonl"
    path.write_text(sink.getvalue())
    assert summarize(load_results(path)) == summarize(results)
    for s in summarize(results):
        mine = [r for r in results if r.scenario_id == s.scenario_id]
        assert s.episodes == len(mine)
        assert s.wr == sum(r.outcome == "win" for r in mine) / len(mine)
        assert s.kd_mean == pytest.approx(sum(r.kd for r in mine) / len(mine))


def test_infinite_kd_survives_persistence(tmp_path):
    r = EpisodeResult("task3-l1", 1, "win", math.inf, 100, 0, 5, 50, "ab")
    path = tmp_path / "r.jsonl"
    persist(r, path)
    assert json.loads(path.read_text())["kd"] == "inf"
    assert load_results(path) == [r]


def test_malformed_record_names_the_line(tmp_path):
    path = tmp_path / "r.jsonl"
    persist(random_result(random.Random(1)), path)
    with open(path, "a") as fh:
        fh.write('{"scenario_id": "x"}\n')
    with pytest.raises(ResultsError, match=":2:"):
        load_results(path)
