"""Freeze the action tables of the source write-up into tests/data/expected_actions.json.

Independent of gen_actions_manifest.py: this reads the LaTeX table rows
directly, so the coverage test compares the shipped registry against the
document rather than against itself.  Cells wrap across physical lines, so
rows are split on the LaTeX row terminator and the action and call columns
are accumulated until the next action starts.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
CALL_RE = re.compile(r"\((\d+),\s*F\.([A-Za-z0-9_]+)\s*,\s*\(([^)]*)\)\)")
NAME_RE = re.compile(r"([A-Za-z_]+)(?:\(([^)]*)\)?)?")


def clean(s: str) -> str:
    return s.replace("\\_", "_")


def finish(actions: dict, name_text: str, call_text: str, table: str) -> None:
    compact = re.sub(r"\s+", "", name_text.replace("<", "").replace(">", "")).replace("((", "(")
    m = NAME_RE.fullmatch(compact)
    if not m:
        raise SystemExit(f"cannot read action cell {name_text!r}")
    name = m.group(1)
    args = [a for a in (m.group(2) or "").split(",") if a]
    calls = [{"id": int(fid), "function": fn,
              "args": [a.strip().strip("'") for a in fargs.split(",") if a.strip()]}
             for fid, fn, fargs in CALL_RE.findall(re.sub(r"\s+", " ", call_text))]
    entry = actions.get(name)
    if entry is None:
        actions[name] = {"args": args, "calls": calls, "tables": [table]}
    elif table not in entry["tables"]:
        entry["tables"].append(table)


def main(src: Path) -> None:
    text = clean(src.read_text(encoding="utf-8"))
    actions: dict[str, dict] = {}
    for block in re.findall(r"\\caption\{([^}]*Protoss Action Space[^}]*)\}(.*?)\\end\{tabular\}", text, re.S):
        table, body = block
        body = body.split("\\midrule", 1)[1] if "\\midrule" in body else body
        body = re.sub(r"\\(midrule|bottomrule|toprule)", "", body)
        name_text = call_text = None
        for row in body.split("\\\\"):
            if "&" not in row and "<" not in row:
                continue
            cells = row.split("&")
            call = cells[-1]
            act = "".join(cells[:-1]) if len(cells) <= 2 else "".join(cells[1:-1])
            if "<" in act:
                if name_text is not None:
                    finish(actions, name_text, call_text, table)
                name_text, call_text = act[act.index("<"):], call
            elif name_text is not None:
                name_text += act if not name_text.rstrip().endswith(">") else ""
                call_text += " " + call
        if name_text is not None:
            finish(actions, name_text, call_text, table)
    out = ROOT / "tests" / "data" / "expected_actions.json"
    out.write_text(json.dumps({"source": "Protoss action space tables", "actions": actions}, indent=1,
                              sort_keys=True) + "\n")
    print(f"wrote {len(actions)} actions to {out}", file=sys.stderr)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("source", type=Path, help="markdown/LaTeX document containing the action tables")
    main(parser.parse_args().source)
