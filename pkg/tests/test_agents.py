from __future__ import annotations

import random
import threading

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from llmrts.agents import CHANNEL, Router, RosterError, UnitCaches, build_roster
from llmrts.scenarios import get_scenario
from llmrts.sim.world import WorldState


def test_eceb_has_two_agents():
    assert [a.name for a in build_roster("ECEB")] == ["Commander", "Developer"]


def test_sceb_zealot_team_belongs_to_combat_group_zero():
    roster = {a.name: a for a in build_roster("SCEB")}
    assert roster["CombatGroup0"].teams[0].name == "Zealot-1"
    assert roster["CombatGroup0"].teams[0].types == ("Zealot",)
    assert "easy-build" in roster["Developer"].modes


def test_ecsb_enables_the_builder():
    assert [a.name for a in build_roster("ECSB")] == ["Commander", "Developer", "Builder"]
    assert "easy-build" not in build_roster("ECSB")[1].modes


def test_2s3z_is_one_agent_with_three_teams():
    scenario = get_scenario("2s3z")
    roster = build_roster(scenario.roster_mode, scenario)
    assert len(roster) == 1
    names = [t.name for t in roster[0].teams]
    assert len(names) == 3 and sum(n.startswith("Zealot") for n in names) == 2
    assert sum(n.startswith("Stalker") for n in names) == 1


def test_unknown_mode_is_rejected():
    with pytest.raises(RosterError):
        build_roster("XYZ")


def test_warped_zealot_joins_combat_group_zero_and_dead_stalker_leaves():
    w = WorldState(64, 64)
    caches = UnitCaches(build_roster("SCEB"))
    zealot = w.spawn("Zealot", 1, 10, 10)
    stalker = w.spawn("Stalker", 1, 12, 10)
    caches.sync(w)
    assert caches.team_tags("CombatGroup0") == (zealot.tag,)
    assert caches.team_tags("CombatGroup1") == (stalker.tag,)
    w.remove(stalker)
    caches.sync(w)
    assert caches.team_tags("CombatGroup1") == ()


TYPES = ["Zealot", "Stalker", "Adept", "Probe", "Pylon", "Sentry", "HighTemplar", "Colossus"]


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_caches_match_recomputation_from_the_world(seed):
    rng = random.Random(seed)
    w = WorldState(64, 64, seed=seed)
    roster = build_roster("SCEB")
    caches = UnitCaches(roster)
    for _ in range(rng.randint(1, 12)):
        for _ in range(rng.randint(0, 6)):
            w.spawn(rng.choice(TYPES), 1, rng.uniform(2, 62), rng.uniform(2, 62))
        alive = list(w.iter_units(1))
        for u in rng.sample(alive, k=min(len(alive), rng.randint(0, 3))):
            w.remove(u)
        caches.sync(w)

        living = {u.tag for u in w.iter_units(1) if u.alive}
        fresh = UnitCaches(roster)
        fresh.sync(w)
        for agent in caches.teams:
            assert set(caches.team_tags(agent)) == set(fresh.team_tags(agent))
            for team in caches.teams[agent]:
                assert len(team.tags) <= team.capacity
                assert all(w.units[t].type in team.types for t in team.tags)
        groups = [set(caches.unassigned)] + [set(t.tags) for ts in caches.teams.values() for t in ts]
        assert sum(len(g) for g in groups) == len(living)
        assert set().union(*groups) == living


def test_direct_message_reaches_only_its_recipient():
    router = Router(["Commander", "CombatGroup0", "CombatGroup1"])
    assert router.send(0, "Commander", "CombatGroup1", "attack north") is None
    inbox = router.deliver()
    assert [m.content for m in inbox["CombatGroup1"]] == ["attack north"]
    assert inbox["CombatGroup0"] == [] and inbox["Commander"] == []
    assert router.deliver()["CombatGroup1"] == []  # delivered once


def test_request_and_reply_take_two_steps():
    router = Router(["Developer", "Builder"])
    router.send(0, "Developer", "Builder", "build a pylon")
    first = router.deliver()
    assert [m.sender for m in first["Builder"]] == ["Developer"] and first["Developer"] == []
    router.send(1, "Builder", "Developer", "pylon started")
    second = router.deliver()
    assert [m.content for m in second["Developer"]] == ["pylon started"]


def test_unknown_recipient_returns_a_notice():
    router = Router(["Commander", "CombatGroup0"])
    notice = router.send(0, "Commander", "CombatGroup99", "hi")
    assert notice is not None and notice.category == "unknown-recipient"
    assert "unknown-recipient" in notice.render()
    assert router.deliver() == {"Commander": [], "CombatGroup0": []}


def test_channel_messages_skip_the_sender():
    router = Router(["A", "B", "C"])
    router.send(0, "B", CHANNEL, "regroup")
    inbox = router.deliver()
    assert [len(inbox[a]) for a in "ABC"] == [1, 0, 1]


def test_concurrent_sends_arrive_once_in_sender_order():
    agents = [f"CombatGroup{i}" for i in range(8)]
    router = Router(agents + ["Commander"])
    contents = {a: [f"{a} says {k} <Attack_Unit(0x1)>" for k in range(20)] for a in agents}

    def worker(a):
        for c in contents[a]:
            router.send(3, a, "Commander", c)

    threads = [threading.Thread(target=worker, args=(a,)) for a in reversed(agents)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    got = router.deliver()["Commander"]
    assert [m.sender for m in got] == sorted(m.sender for m in got)
    assert [m.content for m in got] == [c for a in sorted(agents) for c in contents[a]]
