"""Regenerate src/llmrts/data/wiki.json from unit_stats.json plus curated notes."""
import json
from pathlib import Path

DATA = Path(__file__).resolve().parent.parent / "src" / "llmrts" / "data"

NOTES = {
    "Adept": ("Light ground attacker strong against light units; can project a shade that it later teleports to.",
              ["Zergling", "Drone", "Probe"], ["Roach", "Stalker", "Queen"]),
    "AdeptPhaseShift": ("Untargetable shade of an Adept; the Adept teleports to it when the shift ends.", [], []),
    "Archon": ("Durable splash attacker formed by merging two templars; bonus damage against biological units.",
               ["Zergling", "Mutalisk", "Hydralisk"], ["Ultralisk", "Immortal", "BroodLord"]),
    "Assimilator": ("Refinery built on a vespene geyser.", [], []),
    "Baneling": ("Suicide unit that explodes for area damage, deadly against clumped light units.",
                 ["Zealot", "Adept", "Probe"], ["Stalker", "Colossus", "Archon"]),
    "BroodLord": ("Slow air siege unit that attacks ground targets from long range.",
                  ["Stalker", "Zealot", "Colossus"], ["VoidRay", "Tempest", "Corruptor"]),
    "Carrier": ("Capital ship that attacks through many small interceptors.",
                ["Hydralisk", "Zealot", "Stalker"], ["Corruptor", "Tempest", "Viper"]),
    "Colossus": ("Tall walker that sweeps a line of ground units with long-range splash; can be hit by anti-air.",
                 ["Zergling", "Hydralisk", "Zealot"], ["Corruptor", "Immortal", "VoidRay"]),
    "Corruptor": ("Anti-air flyer with bonus damage against massive air units.",
                  ["Carrier", "Tempest", "Colossus"], ["Stalker", "Phoenix", "Archon"]),
    "CyberneticsCore": ("Tech structure; unlocks Stalker, Sentry, Adept and WarpGate research.", [], []),
    "DarkShrine": ("Tech structure; unlocks Dark Templar and Shadow Stride research.", [], []),
    "DarkTemplar": ("Cloaked melee assassin with high damage per strike.",
                    ["Drone", "Probe", "Hydralisk"], ["Observer", "Overseer", "PhotonCannon"]),
    "Disruptor": ("Robotic caster that launches a delayed purification nova for heavy area damage.",
                  ["Hydralisk", "Roach", "Zergling"], ["Stalker", "Ultralisk", "BroodLord"]),
    "Drone": ("Zerg worker that gathers resources and morphs into structures.", [], ["Adept", "Phoenix", "Oracle"]),
    "ExpansionSite": ("Free base location where a Nexus can be built.", [], []),
    "FleetBeacon": ("Tech structure; unlocks capital ships and air upgrades.", [], []),
    "Forge": ("Tech structure; researches ground upgrades and enables Photon Cannons.", [], []),
    "Gateway": ("Production structure for ground units; becomes a WarpGate after research.", [], []),
    "Hatchery": ("Zerg main base structure.", [], []),
    "HighTemplar": ("Fragile caster; Psionic Storm deals heavy area damage over time.",
                    ["Hydralisk", "Zergling", "Mutalisk"], ["Ultralisk", "Roach", "DarkTemplar"]),
    "Hydralisk": ("Ranged Zerg attacker that hits ground and air.",
                  ["VoidRay", "Phoenix", "Zealot"], ["Colossus", "Archon", "Disruptor"]),
    "Immortal": ("Armored robot with bonus damage against armored targets.",
                 ["Roach", "Stalker", "Ultralisk"], ["Zergling", "Zealot", "Hydralisk"]),
    "Infestor": ("Zerg caster that can disable and harass enemy groups.", ["Stalker", "VoidRay"], ["HighTemplar", "Observer"]),
    "Mothership": ("Flagship with cloaking field and Time Warp to slow enemies in an area.",
                   ["Hydralisk", "Zealot"], ["Corruptor", "Viper", "Tempest"]),
    "Nexus": ("Protoss main base; trains Probes and provides supply.", [], []),
    "Observer": ("Cloaked flying detector used for scouting; surveillance mode extends sight.", [], ["Overseer", "PhotonCannon"]),
    "Oracle": ("Fast harassment flyer; pulsar beam shreds light ground units, can reveal and place stasis traps.",
               ["Drone", "Probe", "Zergling"], ["Phoenix", "Queen", "Hydralisk"]),
    "OverlordTransport": ("Slow Zerg flyer that carries units and drops them behind lines.", [], ["Stalker", "Phoenix", "PhotonCannon"]),
    "Overseer": ("Flying Zerg detector.", [], ["Stalker", "Phoenix"]),
    "Phoenix": ("Fast air superiority fighter; Graviton Beam lifts a ground unit so it can be attacked from the air.",
                ["Mutalisk", "Oracle", "Drone"], ["Carrier", "Corruptor", "Hydralisk"]),
    "PhotonCannon": ("Static defense that hits ground and air and detects cloaked units.", [], []),
    "Probe": ("Protoss worker that gathers resources and warps in structures.", [], ["Adept", "Zergling", "Oracle"]),
    "Pylon": ("Provides supply and a power field for other Protoss structures and warping.", [], []),
    "Queen": ("Zerg defensive caster with ranged ground and air attacks.",
              ["Phoenix", "Oracle", "Adept"], ["Stalker", "Immortal", "Colossus"]),
    "Ravager": ("Zerg artillery unit morphed from a Roach.", ["Sentry", "Stalker"], ["Immortal", "Stalker"]),
    "Roach": ("Armored Zerg ranged attacker that regenerates quickly.",
              ["Zealot", "Adept", "Zergling"], ["Immortal", "Stalker", "VoidRay"]),
    "RoboticsBay": ("Tech structure; unlocks Colossus and Disruptor.", [], []),
    "RoboticsFacility": ("Production structure for robotic units.", [], []),
    "Sentry": ("Support caster; Force Field blocks ground movement and Guardian Shield reduces ranged damage.",
               ["Zergling", "Roach"], ["Ravager", "Hydralisk"]),
    "ShieldBattery": ("Static structure that restores shields of nearby units.", [], []),
    "SporeCrawler": ("Zerg static anti-air defense and detector.", ["Phoenix", "Oracle", "VoidRay"], ["Stalker", "Immortal"]),
    "Stalker": ("Mobile ranged unit that hits ground and air; Blink teleports it a short distance.",
                ["Phoenix", "Mutalisk", "Oracle"], ["Zergling", "Immortal", "Zealot"]),
    "Stargate": ("Production structure for air units.", [], []),
    "StasisTrap": ("Hidden trap that freezes enemy ground units that walk over it.", [], []),
    "SwarmHost": ("Zerg siege unit that spawns short-lived locusts.", ["Stalker"], ["Colossus", "Phoenix"]),
    "Tempest": ("Very long-range capital ship, strong against massive air.",
                ["BroodLord", "Carrier", "Ultralisk"], ["Corruptor", "VoidRay", "Hydralisk"]),
    "TemplarArchive": ("Tech structure; unlocks High Templar and Psionic Storm.", [], []),
    "TwilightCouncil": ("Tech structure; researches Blink, Charge and Resonating Glaives.", [], []),
    "Ultralisk": ("Massive Zerg melee unit with cleave damage.", ["Zealot", "Stalker", "Archon"], ["Immortal", "VoidRay", "Tempest"]),
    "VespeneGeyser": ("Neutral gas resource; build an Assimilator on it.", [], []),
    "Viper": ("Zerg caster that pulls units and blinds ranged attacks.", ["Colossus", "Tempest"], ["Phoenix", "Stalker"]),
    "VoidRay": ("Flyer whose beam excels against armored targets.",
                ["Roach", "Corruptor", "BroodLord"], ["Hydralisk", "Phoenix", "Stalker"]),
    "WarpGate": ("Upgraded Gateway that warps units into any power field.", [], []),
    "WarpPrism": ("Transport; phasing mode projects a power field for warping reinforcements.", [], ["Phoenix", "Stalker"]),
    "Zealot": ("Melee warrior with high shields; Charge closes distance quickly.",
               ["Zergling", "Adept", "HighTemplar"], ["Baneling", "Colossus", "Roach"]),
    "Zergling": ("Fast cheap Zerg melee swarm unit.", ["Stalker", "Immortal", "HighTemplar"], ["Adept", "Baneling", "Colossus"]),
}


def stat_lines(name, u):
    lines = [f"cost: {u['minerals']} minerals, {u['vespene']} vespene, {u['supply']} supply"]
    lines.append(f"health: {u['health']}, shield: {u['shield']}, armor: {u['armor']}")
    if not u["structure"]:
        lines.append(f"speed: {u['speed']}, sight: {u['sight']}")
    for w in u["weapons"]:
        bonus = ", ".join(f"+{v} vs {k}" for k, v in sorted(w.get("bonus", {}).items()))
        hits = f"{w['damage']}x{w['attacks']}" if w["attacks"] > 1 else str(w["damage"])
        lines.append(f"weapon: {hits} damage{' (' + bonus + ')' if bonus else ''}, range {w['range']}, "
                     f"cooldown {w['cooldown']} s, targets {'/'.join(w['targets'])}")
    if u["attributes"]:
        lines.append(f"attributes: {', '.join(u['attributes'])}")
    return lines


def main():
    stats = json.loads((DATA / "unit_stats.json").read_text())["units"]
    missing = sorted(set(stats) - set(NOTES))
    if missing:
        raise SystemExit(f"no wiki notes for: {', '.join(missing)}")
    entries = {}
    for name in sorted(stats):
        desc, good, bad = NOTES[name]
        entries[name] = {"description": desc, "stats": stat_lines(name, stats[name]),
                         "strong_against": good, "weak_against": bad}
    (DATA / "wiki.json").write_text(json.dumps({"version": 1, "entries": entries}, indent=1) + "\n")
    print(f"wrote {len(entries)} wiki entries")


if __name__ == "__main__":
    main()
