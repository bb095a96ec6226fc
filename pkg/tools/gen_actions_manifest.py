"""Regenerate src/llmrts/data/actions_protoss.json.

The manifest is the shipped data; this script only keeps it tidy.  Every
call lists its argument placeholders verbatim (``queued``, ``screen``,
``screen_tag`` ...) plus a parallel ``bind`` list saying where each
non-literal placeholder gets its value.
"""
import json
from pathlib import Path

FUNCTIONS = {
    0: "no_op", 3: "select_rect", 7: "select_army", 8: "select_warp_gates",
    12: "Attack_screen", 13: "Attack_minimap", 274: "HoldPosition_quick",
    331: "Move_screen", 332: "Move_minimap", 573: "llm_pysc2_move_camera",
    65: "Build_Nexus_screen", 40: "Build_Assimilator_screen", 70: "Build_Pylon_screen",
    57: "Build_Gateway_screen", 48: "Build_CyberneticsCore_screen", 55: "Build_Forge_screen",
    69: "Build_PhotonCannon_screen", 525: "Build_ShieldBattery_screen",
    101: "Build_TwilightCouncil_screen", 100: "Build_TemplarArchive_screen",
    49: "Build_DarkShrine_screen", 88: "Build_Stargate_screen", 54: "Build_FleetBeacon_screen",
    81: "Build_RoboticsBay_screen", 82: "Build_RoboticsFacility_screen",
    90: "Build_StasisTrap_screen",
    381: "Research_ProtossAirArmor_quick", 385: "Research_ProtossAirWeapons_quick",
    428: "Research_WarpGate_quick", 389: "Research_ProtossGroundArmor_quick",
    393: "Research_ProtossGroundWeapons_quick", 397: "Research_ProtossShields_quick",
    359: "Research_Charge_quick", 356: "Research_Blink_quick",
    351: "Research_AdeptResonatingGlaives_quick", 379: "Research_PhoenixAnionPulseCrystals_quick",
    364: "Research_ExtendedThermalLance_quick", 366: "Research_GraviticBooster_quick",
    367: "Research_GraviticDrive_quick", 401: "Research_PsiStorm_quick",
    404: "Research_ShadowStrike_quick",
    541: "Train_Mothership_quick", 457: "Train_Adept_quick", 465: "Train_DarkTemplar_quick",
    471: "Train_HighTemplar_quick", 491: "Train_Sentry_quick", 493: "Train_Stalker_quick",
    503: "Train_Zealot_quick", 482: "Train_Oracle_quick", 484: "Train_Phoenix_quick",
    500: "Train_VoidRay_quick", 495: "Train_Tempest_quick", 461: "Train_Carrier_quick",
    481: "Train_Observer_quick", 501: "Train_WarpPrism_quick", 473: "Train_Immortal_quick",
    462: "Train_Colossus_quick", 466: "Train_Disruptor_quick",
    505: "TrainWarp_Adept_screen", 506: "TrainWarp_DarkTemplar_screen",
    507: "TrainWarp_HighTemplar_screen", 508: "TrainWarp_Sentry_screen",
    509: "TrainWarp_Stalker_screen", 510: "TrainWarp_Zealot_screen",
    547: "Effect_AdeptPhaseShift_minimap", 177: "Effect_AdeptPhaseShift_screen",
    141: "Cancel_AdeptPhaseShift_quick", 180: "Effect_Blink_screen",
    193: "Effect_ForceField_screen", 197: "Effect_GuardianShield_quick",
    218: "Effect_PsiStorm_screen", 296: "Morph_Archon_quick", 182: "Effect_ShadowStride_screen",
    538: "Morph_SurveillanceMode_quick", 535: "Morph_ObserverMode_quick",
    219: "Effect_PurificationNova_screen", 38: "Behavior_PulsarBeamOn_quick",
    214: "Effect_OracleRevelation_screen", 196: "Effect_GravitonBeam_screen", 140: "Cancel_quick",
    329: "Morph_WarpPrismPhasingMode_quick", 287: "Load_screen", 516: "UnloadAllAt_screen",
    330: "Morph_WarpPrismTransportMode_quick", 241: "Effect_TimeWarp_screen",
}

BUILD_IDS = {
    "Nexus": 65, "Assimilator": 40, "Pylon": 70, "Gateway": 57, "CyberneticsCore": 48,
    "Forge": 55, "PhotonCannon": 69, "ShieldBattery": 525, "TwilightCouncil": 101,
    "TemplarArchive": 100, "DarkShrine": 49, "Stargate": 88, "FleetBeacon": 54,
    "RoboticsBay": 81, "RoboticsFacility": 82,
}
SCREEN_BUILDINGS = ["Pylon", "Gateway", "CyberneticsCore", "Forge", "PhotonCannon", "ShieldBattery",
                    "TwilightCouncil", "TemplarArchive", "DarkShrine", "Stargate", "FleetBeacon",
                    "RoboticsBay", "RoboticsFacility"]
RESEARCH = [
    ("ProtossAirArmor", 381, "CyberneticsCore", "+1 armor for air units"),
    ("ProtossAirWeapons", 385, "CyberneticsCore", "+1 damage for air units"),
    ("WarpGate", 428, "CyberneticsCore", "Gateways become WarpGates; enables warp actions"),
    ("ProtossGroundArmor", 389, "Forge", "+1 armor for ground units"),
    ("ProtossGroundWeapons", 393, "Forge", "+1 damage for ground units"),
    ("ProtossShields", 397, "Forge", "+1 shield armor"),
    ("Charge", 359, "TwilightCouncil", "Zealot movement speed"),
    ("Blink", 356, "TwilightCouncil", "enables Stalker Blink"),
    ("AdeptResonatingGlaives", 351, "TwilightCouncil", "Adept attack speed +45%"),
    ("PhoenixAnionPulseCrystals", 379, "FleetBeacon", "Phoenix attack range +2"),
    ("ExtendedThermalLance", 364, "RoboticsBay", "Colossus attack range +2"),
    ("GraviticBooster", 366, "RoboticsBay", "Observer movement speed"),
    ("GraviticDrive", 367, "RoboticsBay", "WarpPrism movement speed"),
    ("PsiStorm", 401, "TemplarArchive", "enables HighTemplar PsiStorm"),
    ("ShadowStrike", 404, "DarkShrine", "enables DarkTemplar ShadowStride"),
]
TRAIN = [
    ("Mothership", 541, "Nexus"),
    ("Adept", 457, "Gateway"), ("DarkTemplar", 465, "Gateway"), ("HighTemplar", 471, "Gateway"),
    ("Sentry", 491, "Gateway"), ("Stalker", 493, "Gateway"), ("Zealot", 503, "Gateway"),
    ("Oracle", 482, "Stargate"), ("Phoenix", 484, "Stargate"), ("VoidRay", 500, "Stargate"),
    ("Tempest", 495, "Stargate"), ("Carrier", 461, "Stargate"),
    ("Observer", 481, "RoboticsFacility"), ("WarpPrism", 501, "RoboticsFacility"),
    ("Immortal", 473, "RoboticsFacility"), ("Colossus", 462, "RoboticsFacility"),
    ("Disruptor", 466, "RoboticsFacility"),
]
WARP_IDS = {"Adept": 505, "DarkTemplar": 506, "HighTemplar": 507, "Sentry": 508, "Stalker": 509,
            "Zealot": 510}

SELECT = {"id": 3, "args": ["select", "screen1_tag", "screen2_tag"], "bind": [None, "rect1:0", "rect2:0"]}


def call(fid, args=(), bind=None):
    args = list(args)
    if bind is None:
        bind = [None] * len(args)
    return {"id": fid, "fn": FUNCTIONS[fid], "args": args, "bind": list(bind)}


def sel(tag_index=0, mode="select"):
    suffix = "2" if tag_index else ""
    return call(3, [mode, f"screen1_tag{suffix}", f"screen2_tag{suffix}"],
                [None, f"rect1:{tag_index}", f"rect2:{tag_index}"])


def article(name: str) -> str:
    return "an" if name[0] in "AEIOU" else "a"


def entry(name, args, calls, desc, subsets, availability=("always",), **extra):
    d = {"name": name, "args": list(args), "calls": calls, "availability": list(availability),
         "subsets": list(subsets), "description": desc}
    d.update(extra)
    return d


A = []

# --- basic unit control ------------------------------------------------------
BASIC = ["basic"]
A += [
    entry("No_Operation", [], [call(0)], "do nothing this step", ["*"]),
    entry("Hold_Position", [], [call(274, ["queued"])], "selected team holds position", BASIC,
          ["has-team"]),
    entry("Move_Screen", ["screen"], [call(331, ["queued", "screen"], [None, "arg0"])],
          "move the team to a screen position", BASIC, ["has-team"]),
    entry("Move_Minimap", ["minimap"], [call(332, ["queued", "minimap"], [None, "arg0"])],
          "move the team to a minimap position", BASIC, ["has-team"]),
    entry("Select_Unit_Move_Screen", ["tag", "screen"],
          [sel(), call(331, ["now", "screen"], [None, "arg1"])],
          "move one unit (tag) to a screen position", BASIC, ["has-team"]),
    entry("Select_Unit_Move_Minimap", ["tag", "minimap"],
          [sel(), call(332, ["queued", "minimap"], [None, "arg1"])],
          "move one unit (tag) to a minimap position", BASIC, ["has-team"]),
    entry("Attack_Unit", ["tag"], [call(12, ["queued", "screen_tag"], [None, "unit0"])],
          "team attacks the enemy unit with this tag", BASIC, ["team-can-attack"]),
    entry("Select_Unit_Attack_Unit", ["tag", "tag"],
          [sel(), call(12, ["queued", "screen_tag"], [None, "unit1"])],
          "one unit (first tag) attacks an enemy unit (second tag)", BASIC, ["team-can-attack"]),
]

# --- building ------------------------------------------------------------------
STD, NEAR, EASY = "standard-build", "easy-build-near", "easy-build"
for b in ("Nexus", "Assimilator"):
    A.append(entry(
        f"Build_{b}_Near", ["tag"],
        [call(573, ["world_tag"], ["world0"]), call(BUILD_IDS[b], ["queued", "screen_tag"], [None, "unit0"])],
        f"build {article(b)} {b} on the site/geyser with this tag", [STD, NEAR],
        ["has-worker", f"can-build:{b}"], builds=b))
for b in ("Nexus", "Assimilator"):
    A.append(entry(
        f"Build_{b}_Screen", ["screen"],
        [call(BUILD_IDS[b], ["queued", "screen_tag"], [None, "arg0"])],
        f"build {article(b)} {b} at a screen position", [STD], ["has-worker", f"can-build:{b}"], builds=b))
for b in SCREEN_BUILDINGS:
    A.append(entry(
        f"Build_{b}_Screen", ["screen"], [call(BUILD_IDS[b], ["queued", "screen"], [None, "arg0"])],
        f"build {article(b)} {b} at a screen position", [STD], ["has-worker", f"can-build:{b}"], builds=b))
A.append(entry("Lock_Nexus_Near", ["tag"], [call(70, ["queued", "screen_tag"], [None, "unit0"])],
               "build a Pylon on the expansion site with this tag to deny it", [STD, NEAR],
               ["has-worker", "can-build:Pylon"], builds="Pylon"))
A.append(entry("Lock_Assimilator_Near", ["tag"], [call(40, ["queued", "screen_tag"], [None, "unit0"])],
               "build an Assimilator on the geyser with this tag to deny it", [STD, NEAR],
               ["has-worker", "can-build:Assimilator"], builds="Assimilator"))
for b in SCREEN_BUILDINGS:
    A.append(entry(
        f"Build_{b}_Near", ["tag"], [call(BUILD_IDS[b], ["queued", "screen_tag"], [None, "auto:place_near:0"])],
        f"build {article(b)} {b} at a free position near the unit with this tag", [NEAR],
        ["has-worker", f"can-build:{b}"], builds=b))
for b in ["Nexus", "Assimilator"] + SCREEN_BUILDINGS:
    A.append(entry(
        f"Build_{b}", [], [call(BUILD_IDS[b], ["queued", "auto"], [None, "auto:place_auto"])],
        f"build {article(b)} {b} at an automatically chosen position", [EASY],
        ["has-worker", f"can-build:{b}"], builds=b))

# --- research ------------------------------------------------------------------
IDLE_PREFIX = [call(573, ["world_tag"], ["auto:idle_world"]),
               call(3, ["select", "screen1_tag", "screen2_tag"], [None, "auto:idle_rect1", "auto:idle_rect2"])]
for name, fid, building, desc in RESEARCH:
    A.append(entry(
        f"Research_{name}", [], IDLE_PREFIX + [call(fid, ["queued"])],
        f"research {name} ({desc}) at an idle {building}", ["research"],
        [f"lacks-tech:{name}", f"requires-idle-building:{building}"], researches=name, producer=building))

# --- training ------------------------------------------------------------------
for unit, fid, building in TRAIN:
    A.append(entry(
        f"Train_{unit}", [], IDLE_PREFIX + [call(fid, ["queued"])],
        f"train a {unit} at an idle {building}", ["train"],
        [f"can-produce:{unit}", f"requires-idle-building:{building}"], trains=unit, producer=building))

# --- warping -------------------------------------------------------------------
for unit in ["Adept", "DarkTemplar", "HighTemplar", "Sentry", "Stalker", "Zealot"]:
    A.append(entry(
        f"Warp_{unit}_Near", ["tag"],
        [call(8, ["select"]), call(573, ["world_tag"], ["world0"]),
         call(WARP_IDS[unit], ["queued", "screen_tag"], [None, "auto:warp_near:0"])],
        f"warp in a {unit} inside the power field of the unit with this tag", ["warp"],
        ["requires-tech:WarpGate", "requires-structure:WarpGate", f"can-produce:{unit}"], warps=unit))
for unit in ["Zealot", "Stalker", "Sentry", "Adept", "HighTemplar", "DarkTemplar"]:
    A.append(entry(
        f"Warp_{unit}", [], [call(WARP_IDS[unit], ["queued", "auto"], [None, "auto:warp_auto"])],
        f"warp in a {unit} at an automatically chosen powered position", ["warp-easy"],
        ["requires-tech:WarpGate", "requires-structure:WarpGate", f"can-produce:{unit}"], warps=unit))

# --- easy control --------------------------------------------------------------
EC = ["easy-control"]
A += [
    entry("All_Units_Attack", [], [call(7, ["select"]), call(13, ["auto"], ["auto:army_target"])],
          "all combat units attack-move toward the known enemy", EC, ["has-army"]),
    entry("All_Units_Defend", [], [call(7, ["select"]), call(331, ["queued", "auto"], [None, "auto:defend_point"])],
          "all combat units gather at the home base", EC, ["has-army"]),
    entry("All_Units_Retreat", [], [call(7, ["select"]), call(331, ["now", "auto"], [None, "auto:retreat_point"])],
          "all combat units retreat to the home base immediately", EC, ["has-army"]),
]
for scout, unit in [("Worker", "Probe"), ("Zealot", "Zealot"), ("Adept", "Adept"), ("Phoenix", "Phoenix"),
                    ("Oracle", "Oracle"), ("Observer", "Observer")]:
    A.append(entry(
        f"{scout}_Scan", [],
        [call(573, ["world_tag"], [f"auto:scout_world:{unit}"]),
         call(3, ["select", "screen1_tag", "screen2_tag"],
              [None, f"auto:scout_rect1:{unit}", f"auto:scout_rect2:{unit}"]),
         call(332, ["queued", "auto"], [None, "auto:scan_target"])],
        f"send one {unit} to scout the least recently seen map quadrant", EC,
        [f"requires-player-unit:{unit}"], scout=unit))

# --- unit skills (team) --------------------------------------------------------
SK = ["skills"]
A += [
    entry("Ability_AdeptPhaseShift_Minimap", ["minimap"], [call(547, ["now", "minimap"], [None, "arg0"])],
          "Adepts send shades to a minimap position; Adepts teleport there after 7 s", SK,
          ["requires-unit:Adept"], units=["Adept"]),
    entry("Ability_AdeptPhaseShift_Screen", ["screen"], [call(177, ["now", "screen"], [None, "arg0"])],
          "Adepts send shades to a screen position; Adepts teleport there after 7 s", SK,
          ["requires-unit:Adept"], units=["Adept"]),
    entry("Ability_CancelPhaseShift", [], [call(141, ["now"])],
          "cancel active Adept shades (Adepts stay in place)", SK, ["requires-unit:Adept"], units=["Adept"]),
    entry("Ability_Blink_Screen", ["screen"], [call(180, ["now", "screen"], [None, "arg0"])],
          "Stalkers teleport to a screen position within range 8", SK,
          ["requires-unit:Stalker", "requires-tech:Blink"], units=["Stalker"]),
    entry("Ability_ForceField_Screen", ["screen"], [call(193, ["queued", "screen"], [None, "arg0"])],
          "Sentry creates a force field (radius 1.5, 11 s) blocking ground units", SK,
          ["requires-unit:Sentry"], units=["Sentry"]),
    entry("Ability_GuardianShield", [], [call(197, ["queued"])],
          "Sentry shield aura: -2 ranged damage to allies within 4.5", SK,
          ["requires-unit:Sentry"], units=["Sentry"]),
    entry("Ability_PsiStorm_Screen", ["screen"], [call(218, ["queued", "screen"], [None, "arg0"])],
          "HighTemplar storm: 80 damage over 2.85 s in radius 1.5 (hits allies too)", SK,
          ["requires-unit:HighTemplar", "requires-tech:PsiStorm"], units=["HighTemplar"]),
    entry("Ability_PsiStorm_Attack_Unit", ["tag"], [call(218, ["queued", "screen_tag"], [None, "unit0"])],
          "HighTemplar casts PsiStorm on the unit with this tag", SK,
          ["requires-unit:HighTemplar", "requires-tech:PsiStorm"], units=["HighTemplar"]),
    entry("Morph_Archon", [], [call(296, ["queued"])],
          "two selected templars merge into an Archon", SK, ["requires-units:HighTemplar+DarkTemplar:2"],
          units=["HighTemplar", "DarkTemplar"]),
    entry("Select_Two_Units_Morph_Archon", ["tag", "tag"],
          [sel(0), sel(1, "add"), call(296, ["queued"])],
          "merge the two templars with these tags into an Archon", SK + ["single-unit"],
          ["requires-units:HighTemplar+DarkTemplar:2"], units=["HighTemplar", "DarkTemplar"]),
    entry("Ability_ShadowStride_Unit", ["tag"], [call(182, ["queued", "screen_tag"], [None, "unit0"])],
          "DarkTemplar teleports next to the unit with this tag", SK,
          ["requires-unit:DarkTemplar", "requires-tech:ShadowStrike"], units=["DarkTemplar"]),
    entry("Morph_SurveillanceMode", [], [call(538, ["queued"])],
          "Observer stops and gains sight range", SK, ["requires-unit:Observer"], units=["Observer"]),
    entry("Morph_ObserverMode", [], [call(535, ["queued"])],
          "Observer returns to mobile mode", SK, ["requires-unit:Observer"], units=["Observer"]),
    entry("Ability_PurificationNova_Attack", ["tag"], [call(219, ["queued", "screen_tag"], [None, "unit0"])],
          "Disruptor shot detonating after 2.1 s at the unit's position (145 damage, radius 1.5)", SK,
          ["requires-unit:Disruptor"], units=["Disruptor"]),
    entry("Ability_PulsarBeamOn", [], [call(38, ["queued"])],
          "Oracle weapon on (drains energy)", SK, ["requires-unit:Oracle"], units=["Oracle"]),
    entry("Ability_OracleRevelation_Screen", ["screen"], [call(214, ["queued", "screen"], [None, "arg0"])],
          "Oracle reveals enemy units around a screen position", SK, ["requires-unit:Oracle"], units=["Oracle"]),
    entry("Build_StasisTrap_Screen", ["screen"], [call(90, ["queued", "screen"], [None, "arg0"])],
          "Oracle places a stasis trap freezing ground enemies for 21 s", SK,
          ["requires-unit:Oracle"], units=["Oracle"]),
    entry("Ability_GravitonBeam_Unit", ["tag"], [call(196, ["queued", "screen_tag"], [None, "unit0"])],
          "Phoenix lifts the ground unit with this tag (it cannot act while lifted)", SK,
          ["requires-unit:Phoenix"], units=["Phoenix"]),
    entry("Cancel_GravitonBeam_For_All", [], [call(140, ["now"])],
          "all Phoenixes release their graviton beams", SK, ["requires-unit:Phoenix"], units=["Phoenix"]),
    entry("Morph_WarpPrismPhasingMode", [], [call(329, ["queued"])],
          "WarpPrism stops and projects a power field (radius 3.75)", SK,
          ["requires-unit:WarpPrism"], units=["WarpPrism"]),
    entry("Load_Unit", ["tag"], [call(287, ["queued", "screen_tag"], [None, "unit0"])],
          "WarpPrism picks up the friendly unit with this tag", SK,
          ["requires-unit:WarpPrism"], units=["WarpPrism"]),
    entry("Unload_Screen", ["screen"], [call(516, ["queued", "screen"], [None, "arg0"])],
          "WarpPrism unloads all cargo at a screen position", SK,
          ["requires-unit:WarpPrism"], units=["WarpPrism"]),
    entry("Morph_WarpPrismTransportMode", [], [call(330, ["queued"])],
          "WarpPrism returns to mobile transport mode", SK, ["requires-unit:WarpPrism"], units=["WarpPrism"]),
    entry("Ability_TimeWarp_Attack", ["tag"], [call(241, ["queued", "screen_tag"], [None, "unit0"])],
          "Mothership slows enemies around the unit with this tag", SK,
          ["requires-unit:Mothership"], units=["Mothership"]),
    entry("Ability_TimeWarp_Screen", ["screen"], [call(241, ["queued", "screen"], [None, "arg0"])],
          "Mothership slows enemies around a screen position", SK,
          ["requires-unit:Mothership"], units=["Mothership"]),
]

# --- unit skills (single unit) -------------------------------------------------
SU = ["single-unit"]
A += [
    entry("Select_Unit_Ability_AdeptPhaseShift_Minimap", ["tag", "minimap"],
          [sel(), call(547, ["now", "minimap"], [None, "arg1"])],
          "one Adept (tag) sends its shade to a minimap position", SU, ["requires-unit:Adept"], units=["Adept"]),
    entry("Select_Unit_Ability_AdeptPhaseShift_Screen", ["tag", "screen"],
          [sel(), call(177, ["now", "screen"], [None, "arg1"])],
          "one Adept (tag) sends its shade to a screen position", SU, ["requires-unit:Adept"], units=["Adept"]),
    entry("Select_Unit_Ability_CancelPhaseShift", ["tag"], [sel(), call(141, ["now"])],
          "cancel the shade of one Adept (tag)", SU, ["requires-unit:Adept"], units=["Adept"]),
    entry("Select_Unit_Blink_Screen", ["tag", "screen"], [sel(), call(180, ["now", "screen"], [None, "arg1"])],
          "one Stalker (tag) blinks to a screen position", SU,
          ["requires-unit:Stalker", "requires-tech:Blink"], units=["Stalker"]),
    entry("Select_Unit_Ability_ForceField_Screen", ["tag", "screen"],
          [sel(), call(193, ["queued", "screen"], [None, "arg1"])],
          "one Sentry (tag) casts a force field at a screen position", SU,
          ["requires-unit:Sentry"], units=["Sentry"]),
    entry("Select_Unit_Ability_GuardianShield", ["tag"], [sel(), call(197, ["queued"])],
          "one Sentry (tag) casts GuardianShield", SU, ["requires-unit:Sentry"], units=["Sentry"]),
    entry("Select_Unit_Ability_PsiStorm_Screen", ["tag", "screen"],
          [sel(), call(218, ["queued", "screen"], [None, "arg1"])],
          "one HighTemplar (tag) casts PsiStorm at a screen position", SU,
          ["requires-unit:HighTemplar", "requires-tech:PsiStorm"], units=["HighTemplar"]),
    entry("Select_Unit_Ability_PsiStorm_Attack_Unit", ["tag", "tag"],
          [sel(), call(218, ["queued", "screen_tag"], [None, "unit1"])],
          "one HighTemplar (first tag) storms the unit with the second tag", SU,
          ["requires-unit:HighTemplar", "requires-tech:PsiStorm"], units=["HighTemplar"]),
    entry("Select_Unit_Ability_PurificationNova_Attack", ["tag", "tag"],
          [sel(), call(219, ["queued", "screen_tag"], [None, "unit1"])],
          "one Disruptor (first tag) fires a nova at the unit with the second tag", SU,
          ["requires-unit:Disruptor"], units=["Disruptor"]),
    entry("Select_Unit_Ability_PulsarBeamOn", ["tag"], [sel(), call(38, ["queued"])],
          "one Oracle (tag) turns on its weapon", SU, ["requires-unit:Oracle"], units=["Oracle"]),
    entry("Select_Unit_OracleRevelation_Screen", ["tag", "screen"],
          [sel(), call(214, ["queued", "screen"], [None, "arg1"])],
          "one Oracle (tag) casts Revelation at a screen position", SU, ["requires-unit:Oracle"], units=["Oracle"]),
    entry("Select_Unit_Build_StasisTrap_Screen", ["tag", "screen"],
          [sel(), call(90, ["queued", "screen"], [None, "arg1"])],
          "one Oracle (tag) places a stasis trap at a screen position", SU,
          ["requires-unit:Oracle"], units=["Oracle"]),
    entry("Select_Phoenix_Ability_GravitonBeam_Unit", ["tag", "tag"],
          [sel(), call(196, ["queued", "screen_tag2"], [None, "unit1"])],
          "one Phoenix (first tag) lifts the unit with the second tag", SU,
          ["requires-unit:Phoenix"], units=["Phoenix"]),
    entry("Cancel_GravitonBeam_For_Phoenix", ["tag"], [sel(), call(140, ["now"])],
          "one Phoenix (tag) releases its graviton beam", SU, ["requires-unit:Phoenix"], units=["Phoenix"]),
]

doc = {
    "version": 1,
    "race": "protoss",
    "functions": {str(k): v for k, v in sorted(FUNCTIONS.items())},
    "actions": A,
}
out = Path(__file__).resolve().parents[1] / "src" / "llmrts" / "data" / "actions_protoss.json"
out.write_text(json.dumps(doc, indent=1) + "\n")
print(f"wrote {len(A)} actions to {out}")
