"""Regenerate src/llmrts/data/scenarios/*.json.

Tasks 1-8 at levels 1-3, six small-battle analogs and three complete-game
modes.  Positions are chosen so that an idle player never enters the enemy's
aggro radius (10 map units).
"""
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "llmrts" / "data" / "scenarios"

P, E, N = 1, 2, 0
HOLD = {"stance": "hold", "aggro": 10}


def sp(t, owner, count=1, region=None, at=None, **kw):
    d = {"type": t, "owner": owner, "count": count}
    if region:
        d["region"] = list(region)
    if at:
        d["at"] = list(at)
    d.update(kw)
    return d


def agent(name, **kw):
    return {"name": name, **kw}


def scenario(sid, title, task, spawns, victory, seconds=60, level=1, players=None, opponent=None,
             agents=(), mode="micro", size=64, meta=None, waves=None, roster_mode="task", **kw):
    d = {"id": sid, "title": title, "task": task, "mode": mode, "width": size, "height": size,
         "level": level, "max_seconds": seconds, "victory": victory,
         "players": players or {}, "spawns": spawns, "opponent": opponent or dict(HOLD),
         "agents": list(agents), "roster_mode": roster_mode, "meta": meta or {}}
    if waves:
        d["waves"] = waves
    d.update(kw)
    return d


ZERG_BASE = [
    sp("Hatchery", E, at=(52, 32)),
    sp("Drone", E, 12, region=(44, 26, 47, 38), group="workers"),
]


def harass(n, level):
    queens = [sp("Queen", E, 2, region=(48, 38, 52, 40), group="defense")]
    if n == 1:
        unit, count, upgrade = "Adept", 2, "AdeptResonatingGlaives"
        title = "two Adepts raid a Zerg mineral line"
        extra = [sp("Zergling", E, 4, region=(48, 24, 52, 26), group="defense")] if level >= 2 else []
        region = (8, 30, 11, 34)
    else:
        unit, count, upgrade = "Phoenix", 3, "PhoenixAnionPulseCrystals"
        title = "three Phoenixes raid a Zerg mineral line"
        extra = [sp("SporeCrawler", E, at=(42, 32))] if level >= 2 else []
        region = (8, 29, 12, 35)
    tech = [upgrade] if level <= 2 else []
    task = (f"Kill at least 7 enemy workers within 60 seconds. The enemy Drones mine near minimap "
            f"[45, 32] next to their Hatchery; Queens defend the base. "
            f"{'Your ' + upgrade + ' upgrade is complete.' if tech else 'No upgrades are available.'}")
    group = "CombatGroup7" if n == 1 else "CombatGroup8"
    return scenario(
        f"task{n}-l{level}", title, task,
        [sp(unit, P, count, region=region)] + ZERG_BASE + queens + extra,
        {"kind": "kill_workers", "count": 7}, level=level,
        players={"1": {"tech": tech}}, agents=[agent(group)],
        meta={"enemy_base": [50, 32], "player_base": [10, 32]},
    )


def defend(level):
    spawns = [
        sp("Nexus", P, at=(12.5, 32.5)),
        sp("Probe", P, 12, region=(16, 27, 18, 38), group="workers"),
        sp("Stalker", P, 6, region=(21, 29, 25, 35)),
    ]
    if level <= 2:
        spawns += [sp("Pylon", P, at=(13, 41)), sp("PhotonCannon", P, at=(16, 42))]
    waves = []
    starts = [(30, 6), (30, 58), (34, 10), (34, 54)]
    for i, (sx, sy) in enumerate(starts):
        waves.append({
            "tick": 30 + 100 * i,
            "units": [{"type": "OverlordTransport", "count": 2, "x": sx, "y": sy,
                       "cargo": ["Zergling"] * 4 + ["Baneling"] * 2}],
            "drop_region": [19, 26 if sy < 32 else 34, 23, 30 if sy < 32 else 38],
            "target": [17, 32], "group": f"drop{i}",
        })
    task = ("Four waves of OverlordTransports drop Zerglings and Banelings on your mineral line. "
            "Defend every drop and keep at least 6 Probes alive for 60 seconds. "
            + ("A PhotonCannon helps against air units." if level <= 2 else "No static defense is available."))
    return scenario(
        f"task3-l{level}", "six Stalkers defend a mineral line against drops", task, spawns,
        {"kind": "defend", "count": 6}, level=level,
        players={"2": {"tech": ["OverlordSpeed"] if level >= 2 else []}},
        agents=[agent("CombatGroup1")], waves={"list": waves, "target": [17, 32]},
        meta={"player_base": [12.5, 32.5], "enemy_base": [58, 32], "wave_target": [17, 32]},
    )


def combat(n, level):
    if n == 4:
        player = [sp("Stalker", P, 12, region=(6, 26, 14, 38))]
        roach = 15
        extra = [sp("Ravager", E, level, region=(57, 30, 61, 34))]
        if level >= 2:
            extra.append(sp("Queen", E, level - 1, region=(57, 40, 61, 43)))
        if level == 3:
            extra.append(sp("Overseer", E, at=(57, 26)))
        enemy = [sp("Roach", E, roach, region=(46, 26, 54, 38))] + extra
        agents = [agent("CombatGroup1")]
        title = "twelve Stalkers against a Roach army"
        tech = []
    elif n == 5:
        player = [sp("Colossus", P, 2, region=(4, 28, 8, 36)), sp("Disruptor", P, 3, region=(8, 42, 12, 46)),
                  sp("Sentry", P, 4, region=(10, 18, 14, 22), energy=100),
                  sp("Stalker", P, 12, region=(13, 26, 20, 38))]
        enemy = [sp("Roach", E, 24, region=(42, 22, 52, 42)), sp("Ravager", E, 9, region=(55, 24, 59, 40)),
                 sp("Queen", E, 2, region=(61, 44, 63, 48))]
        if level >= 2:
            enemy.append(sp("Ultralisk", E, at=(58, 46)))
        if level == 3:
            enemy.append(sp("SwarmHost", E, 2, region=(58, 18, 61, 22)))
        agents = [agent("CombatGroup1"), agent("CombatGroup2"), agent("CombatGroup5"), agent("CombatGroup6")]
        title = "Colossus, Disruptor, Sentry and Stalker army against Roaches"
        tech = []
    elif n == 6:
        player = [sp("Archon", P, at=(8, 32)), sp("HighTemplar", P, 6, region=(4, 24, 8, 28), energy=100),
                  sp("Sentry", P, 4, region=(4, 36, 8, 40), energy=100),
                  sp("Stalker", P, 12, region=(11, 26, 18, 38))]
        ultras = 1 if level == 1 else 3
        enemy = [sp("Zergling", E, 64, region=(40, 18, 52, 46)), sp("Baneling", E, 32, region=(54, 22, 60, 42)),
                 sp("Ultralisk", E, ultras, region=(62, 26, 62, 38))]
        if level == 3:
            enemy.append(sp("Queen", E, 4, region=(58, 40, 62, 46)))
        agents = [agent("CombatGroup1"), agent("CombatGroup2"), agent("CombatGroup5"), agent("CombatGroup6")]
        title = "High Templar army against Zerglings and Banelings"
        tech = ["PsiStorm"]
    else:
        player = [sp("Mothership", P, at=(6, 32)), sp("Carrier", P, 3, region=(6, 22, 12, 26)),
                  sp("Tempest", P, 3, region=(4, 38, 10, 42)), sp("VoidRay", P, 6, region=(10, 28, 16, 36)),
                  sp("Stalker", P, 12, region=(14, 24, 20, 40))]
        hydra, corr, brood = (18, 7, 4) if level <= 2 else (21, 9, 6)
        enemy = [sp("Hydralisk", E, hydra, region=(44, 22, 52, 42)), sp("Corruptor", E, corr, region=(52, 24, 58, 40)),
                 sp("BroodLord", E, brood, region=(56, 20, 62, 30)), sp("Viper", E, 3, region=(56, 42, 62, 46))]
        if level >= 2:
            enemy += [sp("Queen", E, 4, region=(58, 32, 62, 40)), sp("Infestor", E, 2, region=(52, 44, 56, 48))]
        agents = [agent("CombatGroup1"), agent("CombatGroup3"), agent("CombatGroup6")]
        title = "capital fleet with Stalkers against a Hydralisk and Brood Lord army"
        tech = []
    task = ("Defeat every enemy combat unit within 60 seconds. The enemy army waits near minimap [50, 32]. "
            "Cooperate with the other agents through messages.")
    return scenario(
        f"task{n}-l{level}", title, task, player + enemy, {"kind": "eliminate"}, level=level,
        players={"1": {"tech": tech}}, agents=agents,
        meta={"enemy_base": [50, 32], "player_base": [10, 32]},
    )


def warp_battle(level):
    prisms = 2 if level <= 2 else 1
    spawns = [
        sp("Nexus", P, at=(4.5, 32.5)),
        sp("Pylon", P, 2, region=(8, 26, 8, 38)),
        sp("WarpGate", P, 8, region=(10, 18, 16, 46)),
        sp("WarpPrism", P, prisms, region=(20, 20, 22, 22)),
        sp("Stalker", P, 12, region=(18, 26, 22, 38)),
    ] + ZERG_BASE + [
        sp("Roach", E, 15, region=(34, 22, 40, 42)), sp("Ravager", E, 3, region=(36, 42, 42, 46)),
        sp("Queen", E, 4, region=(48, 38, 54, 42), group="defense"),
    ]
    if level >= 2:
        spawns.append(sp("SporeCrawler", E, 3, region=(44, 20, 56, 22)))
    task = ("Defeat the enemy army and kill at least 7 enemy workers within 90 seconds. "
            "You have 8 WarpGates, WarpPrisms and 1600 minerals for reinforcements. "
            "The enemy Drones mine near minimap [45, 32].")
    return scenario(
        f"task8-l{level}", "Stalkers with WarpPrism reinforcements against Roaches", task, spawns,
        {"kind": "eliminate_and_kill_workers", "count": 7}, seconds=90, level=level,
        players={"1": {"minerals": 1600, "tech": ["WarpGate"], "supply_bonus": 100}},
        agents=[agent("CombatGroup1"), agent("CombatGroup9"),
                agent("Developer", subsets=["warp", "warp-easy", "train", "research"])],
        meta={"enemy_base": [50, 32], "player_base": [4.5, 32.5]},
    )


SMAC = {
    "2s3z": ({"Stalker": 2, "Zealot": 3}, {"Stalker": 2, "Zealot": 3},
             [("Zealot-1", "Zealot", 2), ("Zealot-2", "Zealot", 1), ("Stalker-1", "Stalker", 2)]),
    "3s5z": ({"Stalker": 3, "Zealot": 5}, {"Stalker": 3, "Zealot": 5},
             [("Zealot-1", "Zealot", 2), ("Zealot-2", "Zealot", 2), ("Zealot-3", "Zealot", 1),
              ("Stalker-1", "Stalker", 3)]),
    "1c3s5z": ({"Colossus": 1, "Stalker": 3, "Zealot": 5}, {"Colossus": 1, "Stalker": 3, "Zealot": 5},
               [("Zealot-1", "Zealot", 2), ("Zealot-2", "Zealot", 2), ("Zealot-3", "Zealot", 1),
                ("Stalker-1", "Stalker", 3), ("Colossus-1", "Colossus", 1)]),
    "3s5z_vs_3s6z": ({"Stalker": 3, "Zealot": 5}, {"Stalker": 3, "Zealot": 6},
                     [("Zealot-1", "Zealot", 2), ("Zealot-2", "Zealot", 2), ("Zealot-3", "Zealot", 1),
                      ("Stalker-1", "Stalker", 3)]),
    "2c_vs_64zg": ({"Colossus": 2}, {"Zergling": 64},
                   [("Colossus-1", "Colossus", 1), ("Colossus-2", "Colossus", 1)]),
    "3s_vs_3z": ({"Stalker": 3}, {"Zealot": 3}, [("Stalker-1", "Stalker", 3)]),
}


def smac(name):
    mine, theirs, teams = SMAC[name]
    spawns = []
    y = 26
    for t, c in mine.items():
        h = 2 + c // 2
        spawns.append(sp(t, P, c, region=(16, y, 20, y + h)))
        y += h + 1
    y = 20
    for t, c in theirs.items():
        h = 2 + c // 3
        spawns.append(sp(t, E, c, region=(40, y, 48, y + h)))
        y += h + 1
    team_docs = [{"name": n, "types": [t], "capacity": cap} for n, t, cap in teams]
    task = "Defeat every enemy unit. The enemy attacks from the east (minimap [44, 32])."
    return scenario(
        name, f"small battle {name}", task, spawns, {"kind": "eliminate"}, seconds=120,
        opponent={"stance": "attack", "aggro": 10, "attack_target": [18, 32]},
        agents=[agent("CombatGroup0", teams=team_docs)],
        meta={"enemy_base": [44, 32], "player_base": [18, 32]},
    )


def complete(mode):
    spawns = [
        sp("Nexus", P, at=(16.5, 16.5)),
        sp("Probe", P, 12, region=(20, 12, 23, 21), group="workers"),
        sp("VespeneGeyser", N, at=(12.5, 24.5)), sp("VespeneGeyser", N, at=(24.5, 10.5)),
        sp("ExpansionSite", N, at=(16.5, 44.5)), sp("ExpansionSite", N, at=(44.5, 16.5)),
        sp("Hatchery", E, at=(79.5, 79.5)),
        sp("Drone", E, 12, region=(72, 75, 75, 84), group="workers"),
        sp("Queen", E, 2, region=(82, 72, 86, 75), group="defense"),
        sp("VespeneGeyser", N, at=(71.5, 85.5)), sp("VespeneGeyser", N, at=(83.5, 71.5)),
        sp("ExpansionSite", N, at=(79.5, 51.5)), sp("ExpansionSite", N, at=(51.5, 79.5)),
    ]
    waves = []
    plan = [(1200, {"Zergling": 8}), (2100, {"Zergling": 12, "Roach": 4}),
            (3000, {"Zergling": 16, "Roach": 8}), (3900, {"Roach": 12, "Ravager": 4}),
            (4800, {"Roach": 16, "Ravager": 6, "Hydralisk": 8})]
    for tick, comp in plan:
        units = [{"type": t, "count": c, "x": 76, "y": 70} for t, c in comp.items()]
        waves.append({"tick": tick, "units": units, "target": [16.5, 16.5]})
    task = ("Complete game on an open map. Grow your economy, build an army and destroy every enemy "
            "structure; the enemy Hatchery is near minimap [53, 53]. Enemy attack waves arrive periodically.")
    return scenario(
        mode, f"complete game ({mode})", task, spawns, {"kind": "destroy_base"}, seconds=1200,
        mode="complete", size=96, players={"1": {"minerals": 50}},
        waves={"list": waves}, roster_mode=mode, economy=True, auto_workers=True,
        meta={"player_base": [16.5, 16.5], "enemy_base": [79.5, 79.5]},
    )


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    docs = []
    for level in (1, 2, 3):
        docs += [harass(1, level), harass(2, level), defend(level)]
        docs += [combat(n, level) for n in (4, 5, 6, 7)]
        docs.append(warp_battle(level))
    docs += [smac(name) for name in SMAC]
    docs += [complete(m) for m in ("ECEB", "SCEB", "ECSB")]
    for d in docs:
        (OUT / f"{d['id']}.json").write_text(json.dumps(d, indent=1) + "\n")
    print(f"wrote {len(docs)} scenarios to {OUT}")


if __name__ == "__main__":
    main()
