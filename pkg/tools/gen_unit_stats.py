"""Regenerate src/llmrts/data/unit_stats.json (kept as data; edit values here)."""
import json
from pathlib import Path

G, A = ["ground"], ["air"]
GA = ["ground", "air"]


def w(damage, cooldown, rng, targets=G, attacks=1, bonus=None, splash=0.0, name="attack"):
    d = {"name": name, "damage": damage, "attacks": attacks, "cooldown": cooldown,
         "range": rng, "targets": targets}
    if bonus:
        d["bonus"] = bonus
    if splash:
        d["splash"] = splash
    return d


def unit(race, m, g, supply, hp, sh, armor, speed, sight, radius, attrs, weapons=(),
         air=False, energy=0, energy_start=0, build_time=0, producer=None, requires=(),
         worker=False, **extra):
    d = {"race": race, "minerals": m, "vespene": g, "supply": supply, "health": hp,
         "shield": sh, "armor": armor, "speed": speed, "sight": sight, "radius": radius,
         "attributes": list(attrs), "weapons": list(weapons), "air": air,
         "structure": False, "worker": worker, "energy": energy,
         "energy_start": energy_start, "build_time": build_time,
         "producer": producer, "requires": list(requires)}
    d.update(extra)
    return d


def structure(race, m, g, hp, sh, armor, footprint, build_time, requires=(), power=True,
              supply_provided=0, weapons=(), sight=9, **extra):
    d = unit(race, m, g, 0, hp, sh, armor, 0.0, sight, footprint / 2,
             ["armored", "structure"], weapons, build_time=build_time, requires=requires)
    d.update({"structure": True, "footprint": footprint, "power": power,
              "supply_provided": supply_provided})
    d.update(extra)
    return d


P, Z, N = "protoss", "zerg", "neutral"
units = {
    # protoss units
    "Probe": unit(P, 50, 0, 1, 20, 20, 0, 3.94, 8, 0.375, ["light", "mechanical"],
                  [w(5, 1.07, 0.1)], worker=True, build_time=12, producer="Nexus"),
    "Zealot": unit(P, 100, 0, 2, 100, 50, 1, 3.15, 9, 0.5, ["light", "biological"],
                   [w(8, 0.86, 0.1, attacks=2)], build_time=27, producer="Gateway"),
    "Stalker": unit(P, 125, 50, 2, 80, 80, 1, 4.13, 10, 0.625, ["armored", "mechanical"],
                    [w(13, 1.34, 6, GA, bonus={"armored": 5})], build_time=30,
                    producer="Gateway", requires=["CyberneticsCore"]),
    "Sentry": unit(P, 50, 100, 2, 40, 40, 1, 3.15, 10, 0.5, ["light", "mechanical", "psionic"],
                   [w(6, 0.71, 5, GA)], energy=200, energy_start=50, build_time=26,
                   producer="Gateway", requires=["CyberneticsCore"]),
    "Adept": unit(P, 100, 25, 2, 70, 70, 1, 3.5, 9, 0.5, ["light", "biological"],
                  [w(10, 1.61, 4, G, bonus={"light": 12})], build_time=27,
                  producer="Gateway", requires=["CyberneticsCore"]),
    "AdeptPhaseShift": unit(P, 0, 0, 0, 1, 0, 0, 5.67, 4, 0.5, ["light"], build_time=0,
                            untargetable=True),
    "HighTemplar": unit(P, 50, 150, 2, 40, 40, 0, 2.62, 10, 0.375,
                        ["light", "biological", "psionic"], [w(4, 1.25, 6)],
                        energy=200, energy_start=50, build_time=39, producer="Gateway",
                        requires=["TemplarArchive"]),
    "DarkTemplar": unit(P, 125, 125, 2, 40, 80, 1, 3.94, 8, 0.375,
                        ["light", "biological", "psionic"], [w(45, 1.21, 0.1)],
                        build_time=39, producer="Gateway", requires=["DarkShrine"]),
    "Archon": unit(P, 175, 275, 4, 10, 350, 0, 3.94, 9, 1.0, ["psionic", "massive"],
                   [w(25, 1.25, 3, GA, bonus={"biological": 10})], build_time=12),
    "Observer": unit(P, 25, 75, 1, 40, 20, 0, 2.63, 11, 0.5, ["light", "mechanical"],
                     air=True, build_time=21, producer="RoboticsFacility", detector=True),
    "WarpPrism": unit(P, 250, 0, 2, 80, 100, 0, 4.13, 10, 0.875, ["armored", "mechanical"],
                      air=True, build_time=36, producer="RoboticsFacility", cargo=8,
                      power_radius=3.75),
    "Immortal": unit(P, 275, 100, 4, 200, 100, 1, 3.15, 9, 0.625, ["armored", "mechanical"],
                     [w(20, 1.04, 6, G, bonus={"armored": 30})], build_time=39,
                     producer="RoboticsFacility"),
    "Colossus": unit(P, 300, 200, 6, 200, 150, 1, 3.15, 10, 1.0,
                     ["armored", "mechanical", "massive"],
                     [w(10, 1.07, 7, G, attacks=2, bonus={"light": 5}, splash=1.0)],
                     build_time=54, producer="RoboticsFacility", requires=["RoboticsBay"],
                     air_targetable=True),
    "Disruptor": unit(P, 150, 150, 3, 100, 100, 1, 3.15, 9, 0.625, ["armored", "mechanical"],
                      build_time=36, producer="RoboticsFacility", requires=["RoboticsBay"]),
    "Phoenix": unit(P, 150, 100, 2, 120, 60, 0, 5.95, 10, 0.75, ["light", "mechanical"],
                    [w(5, 0.79, 5, A, attacks=2, bonus={"light": 5})], air=True,
                    energy=200, energy_start=50, build_time=25, producer="Stargate"),
    "VoidRay": unit(P, 250, 150, 4, 150, 100, 0, 3.85, 10, 1.0, ["armored", "mechanical"],
                    [w(6, 0.36, 6, GA, bonus={"armored": 4})], air=True, build_time=37,
                    producer="Stargate"),
    "Oracle": unit(P, 150, 150, 3, 100, 60, 0, 5.6, 10, 0.75, ["armored", "mechanical"],
                   [w(15, 0.61, 4, G, bonus={"light": 7}, name="pulsar_beam")], air=True,
                   energy=200, energy_start=50, build_time=37, producer="Stargate"),
    "Tempest": unit(P, 250, 175, 5, 200, 100, 2, 3.15, 12, 1.25,
                    ["armored", "mechanical", "massive"],
                    [w(40, 2.36, 10, G), w(30, 2.36, 14, A, bonus={"massive": 22})],
                    air=True, build_time=43, producer="Stargate", requires=["FleetBeacon"]),
    "Carrier": unit(P, 350, 250, 6, 300, 150, 2, 2.62, 12, 1.25,
                    ["armored", "mechanical", "massive"], [w(5, 0.3, 8, GA, attacks=2)],
                    air=True, build_time=64, producer="Stargate", requires=["FleetBeacon"]),
    "Mothership": unit(P, 400, 400, 8, 350, 350, 2, 2.62, 14, 1.375,
                       ["armored", "mechanical", "psionic", "massive"],
                       [w(6, 2.21, 7, GA, attacks=4)], air=True, energy=200,
                       energy_start=50, build_time=79, producer="Nexus",
                       requires=["FleetBeacon"]),
    # zerg units
    "Drone": unit(Z, 50, 0, 1, 40, 0, 0, 3.94, 8, 0.375, ["light", "biological"],
                  [w(5, 1.07, 0.1)], worker=True, build_time=12),
    "Queen": unit(Z, 150, 0, 2, 175, 0, 1, 3.5, 9, 0.875, ["biological", "psionic"],
                  [w(4, 0.71, 5, G, attacks=2), w(9, 0.71, 7, A)], energy=200,
                  energy_start=25, build_time=36),
    "Zergling": unit(Z, 25, 0, 0.5, 35, 0, 0, 4.13, 8, 0.375, ["light", "biological"],
                     [w(5, 0.497, 0.1)], build_time=17),
    "Baneling": unit(Z, 25, 25, 0.5, 30, 0, 0, 3.5, 8, 0.375, ["biological"],
                     [w(16, 1.0, 0.25, G, bonus={"light": 19}, splash=2.2, name="volatile_burst")],
                     build_time=14, suicide=True),
    "Roach": unit(Z, 75, 25, 2, 145, 0, 1, 3.15, 9, 0.625, ["armored", "biological"],
                  [w(16, 1.43, 4)], build_time=19),
    "Ravager": unit(Z, 100, 100, 3, 120, 0, 1, 3.85, 9, 0.75, ["biological"],
                    [w(16, 1.14, 6)], build_time=9),
    "Hydralisk": unit(Z, 100, 50, 2, 90, 0, 0, 3.15, 9, 0.625, ["light", "biological"],
                      [w(12, 0.59, 5, GA)], build_time=24),
    "Ultralisk": unit(Z, 275, 200, 6, 500, 0, 2, 4.13, 9, 1.0,
                      ["armored", "biological", "massive"], [w(35, 0.61, 1, splash=1.0)],
                      build_time=39),
    "Overseer": unit(Z, 150, 50, 0, 200, 0, 1, 2.62, 11, 0.75, ["armored", "biological"],
                     air=True, build_time=12, detector=True),
    "OverlordTransport": unit(Z, 125, 0, 0, 200, 0, 0, 0.902, 11, 1.0,
                              ["armored", "biological"], air=True, build_time=18, cargo=8),
    "Corruptor": unit(Z, 150, 100, 2, 200, 0, 2, 4.725, 10, 0.625, ["armored", "biological"],
                      [w(14, 1.36, 6, A, bonus={"massive": 6})], air=True, build_time=29),
    "BroodLord": unit(Z, 300, 250, 4, 225, 0, 1, 1.97, 12, 1.0,
                      ["armored", "biological", "massive"], [w(20, 1.79, 10)], air=True,
                      build_time=24),
    "Viper": unit(Z, 100, 200, 3, 150, 0, 1, 4.13, 11, 0.75, ["armored", "biological", "psionic"],
                  air=True, build_time=29),
    "Infestor": unit(Z, 100, 150, 2, 90, 0, 0, 3.15, 10, 0.75, ["armored", "biological", "psionic"],
                     build_time=36),
    "SwarmHost": unit(Z, 100, 75, 3, 160, 0, 1, 3.15, 10, 0.875, ["armored", "biological"],
                      build_time=29),
    # protoss structures
    "Nexus": structure(P, 400, 0, 1000, 1000, 1, 5, 71, power=False, supply_provided=15, sight=11),
    "Pylon": structure(P, 100, 0, 200, 200, 1, 2, 18, power=False, supply_provided=8,
                       power_radius=6.5),
    "Assimilator": structure(P, 75, 0, 300, 300, 1, 3, 21, power=False),
    "Gateway": structure(P, 150, 0, 500, 500, 1, 3, 46, requires=["Nexus"]),
    "WarpGate": structure(P, 150, 0, 500, 500, 1, 3, 7, requires=["Nexus"]),
    "Forge": structure(P, 150, 0, 400, 400, 1, 3, 32, requires=["Nexus"]),
    "CyberneticsCore": structure(P, 150, 0, 550, 550, 1, 3, 36, requires=["Gateway"]),
    "PhotonCannon": structure(P, 150, 0, 150, 150, 1, 2, 29, requires=["Forge"],
                              weapons=[w(20, 0.89, 7, GA)], sight=11),
    "ShieldBattery": structure(P, 100, 0, 150, 150, 1, 2, 29, requires=["CyberneticsCore"]),
    "TwilightCouncil": structure(P, 150, 100, 500, 500, 1, 3, 36, requires=["CyberneticsCore"]),
    "TemplarArchive": structure(P, 150, 200, 500, 500, 1, 3, 36, requires=["TwilightCouncil"]),
    "DarkShrine": structure(P, 150, 150, 500, 500, 1, 2, 71, requires=["TwilightCouncil"]),
    "Stargate": structure(P, 150, 150, 600, 600, 1, 3, 43, requires=["CyberneticsCore"]),
    "FleetBeacon": structure(P, 300, 200, 500, 500, 1, 3, 43, requires=["Stargate"]),
    "RoboticsFacility": structure(P, 150, 100, 450, 450, 1, 3, 46, requires=["CyberneticsCore"]),
    "RoboticsBay": structure(P, 150, 150, 500, 500, 1, 3, 46, requires=["RoboticsFacility"]),
    "StasisTrap": structure(P, 0, 0, 30, 0, 0, 1, 0, power=False, sight=4, stasis_radius=1.5,
                            stasis_duration=21, arm_time=4),
    # zerg structures
    "Hatchery": structure(Z, 300, 0, 1500, 0, 1, 5, 71, power=False, supply_provided=6, sight=12),
    "SporeCrawler": structure(Z, 75, 0, 400, 0, 1, 2, 21, power=False,
                              weapons=[w(15, 0.61, 7, A, bonus={"biological": 15})], sight=11),
    # neutral markers
    "VespeneGeyser": structure(N, 0, 0, 10000, 0, 0, 3, 0, power=False, sight=0,
                               invulnerable=True),
    "ExpansionSite": structure(N, 0, 0, 10000, 0, 0, 0, 0, power=False, sight=0,
                               invulnerable=True, marker=True),
}

for name in ("Nexus",):
    units[name]["trains"] = ["Probe", "Mothership"]
units["Gateway"]["trains"] = ["Zealot", "Stalker", "Sentry", "Adept", "HighTemplar", "DarkTemplar"]
units["WarpGate"]["warps"] = ["Zealot", "Stalker", "Sentry", "Adept", "HighTemplar", "DarkTemplar"]
units["Stargate"]["trains"] = ["Phoenix", "Oracle", "VoidRay", "Tempest", "Carrier"]
units["RoboticsFacility"]["trains"] = ["Observer", "WarpPrism", "Immortal", "Colossus", "Disruptor"]
units["Hatchery"]["trains"] = []

research = {
    "WarpGate": {"building": "CyberneticsCore", "minerals": 50, "vespene": 50, "time": 100},
    "ProtossAirArmor": {"building": "CyberneticsCore", "minerals": 100, "vespene": 100, "time": 129},
    "ProtossAirWeapons": {"building": "CyberneticsCore", "minerals": 100, "vespene": 100, "time": 129},
    "ProtossGroundArmor": {"building": "Forge", "minerals": 100, "vespene": 100, "time": 129},
    "ProtossGroundWeapons": {"building": "Forge", "minerals": 100, "vespene": 100, "time": 129},
    "ProtossShields": {"building": "Forge", "minerals": 150, "vespene": 150, "time": 129},
    "Charge": {"building": "TwilightCouncil", "minerals": 100, "vespene": 100, "time": 100},
    "Blink": {"building": "TwilightCouncil", "minerals": 150, "vespene": 150, "time": 121},
    "AdeptResonatingGlaives": {"building": "TwilightCouncil", "minerals": 100, "vespene": 100, "time": 100},
    "PhoenixAnionPulseCrystals": {"building": "FleetBeacon", "minerals": 150, "vespene": 150, "time": 64},
    "ExtendedThermalLance": {"building": "RoboticsBay", "minerals": 150, "vespene": 150, "time": 100},
    "GraviticBooster": {"building": "RoboticsBay", "minerals": 100, "vespene": 100, "time": 57},
    "GraviticDrive": {"building": "RoboticsBay", "minerals": 100, "vespene": 100, "time": 57},
    "PsiStorm": {"building": "TemplarArchive", "minerals": 200, "vespene": 200, "time": 79},
    "ShadowStrike": {"building": "DarkShrine", "minerals": 100, "vespene": 100, "time": 100},
    # zerg-side scenario upgrades (not researchable by agents)
    "OverlordSpeed": {"building": None, "minerals": 100, "vespene": 100, "time": 43},
}

# effect of each completed research on unit statistics
upgrade_effects = {
    "AdeptResonatingGlaives": {"Adept": {"cooldown_mult": 1 / 1.45}},
    "Charge": {"Zealot": {"speed": 4.72}},
    "PhoenixAnionPulseCrystals": {"Phoenix": {"range_bonus": 2}},
    "ExtendedThermalLance": {"Colossus": {"range_bonus": 2}},
    "GraviticBooster": {"Observer": {"speed": 3.94}},
    "GraviticDrive": {"WarpPrism": {"speed": 5.36}},
    "ProtossGroundWeapons": {"*ground": {"damage_bonus": 1}},
    "ProtossGroundArmor": {"*ground": {"armor_bonus": 1}},
    "ProtossAirWeapons": {"*air": {"damage_bonus": 1}},
    "ProtossAirArmor": {"*air": {"armor_bonus": 1}},
    "OverlordSpeed": {"OverlordTransport": {"speed": 2.63}},
}

skills = {
    "Blink": {"caster": "Stalker", "cooldown": 7.0, "range": 8.0, "research": "Blink"},
    "AdeptPhaseShift": {"caster": "Adept", "cooldown": 11.0, "duration": 7.0},
    "ForceField": {"caster": "Sentry", "energy": 50, "range": 9.0, "radius": 1.5, "duration": 11.0},
    "GuardianShield": {"caster": "Sentry", "energy": 75, "radius": 4.5, "duration": 5.5,
                       "reduction": 2},
    "PsiStorm": {"caster": "HighTemplar", "energy": 75, "range": 9.0, "radius": 1.5,
                 "duration": 2.85, "damage": 80, "research": "PsiStorm"},
    "GravitonBeam": {"caster": "Phoenix", "energy": 50, "range": 4.0, "duration": 7.14},
    "PurificationNova": {"caster": "Disruptor", "cooldown": 14.3, "range": 13.0, "delay": 2.1,
                         "radius": 1.5, "damage": 145, "shield_bonus": 55},
    "PulsarBeam": {"caster": "Oracle", "energy": 25, "drain": 1.96},
    "OracleRevelation": {"caster": "Oracle", "energy": 25, "range": 9.0, "radius": 6.0,
                         "duration": 20.0},
    "StasisTrap": {"caster": "Oracle", "energy": 50, "range": 9.0},
    "ShadowStride": {"caster": "DarkTemplar", "cooldown": 14.0, "range": 8.0,
                     "research": "ShadowStrike"},
    "TimeWarp": {"caster": "Mothership", "energy": 100, "range": 9.0, "radius": 3.5,
                 "duration": 7.14, "slow": 0.5},
    "ArchonMorph": {"caster": "HighTemplar", "time": 12.0},
    "SurveillanceMode": {"caster": "Observer", "sight": 13.75},
    "PhasingMode": {"caster": "WarpPrism", "power_radius": 3.75},
    "Load": {"caster": "WarpPrism", "range": 1.5},
    "Warp": {"time": 3.6, "gate_cooldown": 20.0},
}

economy = {
    "mineral_rate_per_worker": 0.92,
    "workers_per_base": 16,
    "vespene_rate_per_assimilator": 1.9,
    "shield_regen_delay": 10.0,
    "shield_regen_rate": 2.0,
    "energy_regen_rate": 0.7875,
    "power_radius": 6.5,
    "min_damage": 0.5,
    "ranged_threshold": 1.0,
}

doc = {"version": 1, "tick_seconds": 0.1, "units": units, "research": research,
       "upgrade_effects": upgrade_effects, "skills": skills, "economy": economy}
out = Path(__file__).resolve().parents[1] / "src" / "llmrts" / "data" / "unit_stats.json"
out.write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")
print(f"wrote {out} ({len(units)} unit types)")
