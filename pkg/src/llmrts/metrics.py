"""Kill/death ratio, winning rate and line-delimited result persistence."""

from __future__ import annotations

import hashlib
import json
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import IO, Iterable

INF = math.inf


def kd_ratio(killed_value: float, dead_value: float) -> float:
    """Value killed over value lost; x/0 is infinite for x > 0 and 0/0 is 0."""
    if killed_value < 0 or dead_value < 0:
        raise ValueError("unit values must be non-negative")
    if dead_value == 0:
        return INF if killed_value > 0 else 0.0
    return killed_value / dead_value


def winning_rate(outcomes: Iterable[str]) -> float:
    """Fraction of ``"win"`` outcomes."""
    items = list(outcomes)
    if not items:
        raise ValueError("winning rate of an empty result list is undefined")
    return sum(1 for o in items if o == "win") / len(items)


def format_kd(kd: float) -> str:
    return "Inf" if math.isinf(kd) else f"{kd:.2f}"


def format_kd_wr(kd: float, wr: float) -> str:
    """``"1.50 (100%)"`` style cell."""
    return f"{format_kd(kd)} ({wr * 100:.0f}%)"


@dataclass
class EpisodeResult:
    scenario_id: str
    seed: int
    outcome: str
    kd: float
    killed_value: int
    dead_value: int
    steps: int
    ticks: int
    state_hash: str
    trace_path: str | None = None
    fallbacks: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["kd"] = "inf" if math.isinf(self.kd) else self.kd
        return d

    @classmethod
    def from_dict(cls, d: dict) -> EpisodeResult:
        names = {f.name for f in fields(cls)}
        missing = {f.name for f in fields(cls) if f.name not in d} - {"trace_path", "fallbacks"}
        if missing:
            raise ValueError(f"missing fields: {', '.join(sorted(missing))}")
        args = {k: v for k, v in d.items() if k in names}
        args["kd"] = INF if args["kd"] == "inf" else float(args["kd"])
        return cls(**args)

    def result_hash(self) -> str:
        """Digest of everything except where the trace was written."""
        d = self.to_dict()
        d.pop("trace_path")
        blob = json.dumps(d, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def persist(result: EpisodeResult, sink: str | Path | IO[str]) -> None:
    """Append one JSON line for ``result``."""
    line = json.dumps(result.to_dict(), sort_keys=True) + "\n"
    if isinstance(sink, (str, Path)):
        with open(sink, "a", encoding="utf-8") as fh:
            fh.write(line)
    else:
        sink.write(line)


class ResultsError(ValueError):
    pass


def load_results(path: str | Path) -> list[EpisodeResult]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                out.append(EpisodeResult.from_dict(json.loads(line)))
            except (ValueError, TypeError, KeyError) as exc:
                raise ResultsError(f"{path}:{lineno}: malformed result record ({exc})") from exc
    return out


@dataclass
class Summary:
    scenario_id: str
    episodes: int
    kd_mean: float
    wr: float

    def cell(self) -> str:
        return format_kd_wr(self.kd_mean, self.wr)


def summarize(results: Iterable[EpisodeResult]) -> list[Summary]:
    """Per-scenario mean KD and winning rate, in first-seen scenario order."""
    groups: dict[str, list[EpisodeResult]] = defaultdict(list)
    for r in results:
        groups[r.scenario_id].append(r)
    out = []
    for sid, rs in groups.items():
        kd = sum(r.kd for r in rs) / len(rs)
        out.append(Summary(sid, len(rs), kd, winning_rate(r.outcome for r in rs)))
    return out


def format_summary(summaries: list[Summary]) -> str:
    width = max([len("scenario")] + [len(s.scenario_id) for s in summaries])
    lines = [f"{'scenario':<{width}}  episodes  KD (WR)"]
    for s in summaries:
        lines.append(f"{s.scenario_id:<{width}}  {s.episodes:>8}  {s.cell()}")
    return "\n".join(lines)
