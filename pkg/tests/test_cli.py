from __future__ import annotations

import json
from pathlib import Path

import pytest

from llmrts.cli import main, parse_seeds
from llmrts.metrics import EpisodeResult, load_results, persist, summarize

DATA = Path(__file__).parent / "data"
RESPONSES = sorted((DATA / "responses").glob("*.txt"))


def test_seed_lists():
    assert parse_seeds("1..20") == list(range(1, 21))
    assert parse_seeds("3") == [3]
    assert parse_seeds("1,4,9") == [1, 4, 9]


def test_run_twenty_seeds_writes_twenty_results_and_a_summary(tmp_path, capsys):
    out = tmp_path / "runs"
    code = main(["run", "--scenario", "task1-l1", "--client", "mock:focus-fire", "--mock-delay", "0",
                 "--seeds", "1..20", "--out", str(out)])
    text = capsys.readouterr().out
    assert code == 0
    results = load_results(out / "results.jsonl")
    assert [r.seed for r in results] == list(range(1, 21))
    assert len(list(out.glob("task1-l1-seed*.trace.jsonl"))) == 20
    assert sum(line.startswith("task1-l1 seed ") for line in text.splitlines()) == 20
    assert summarize(results)[0].cell() in text


def test_unknown_scenario_exits_with_the_valid_ids(tmp_path, capsys):
    assert main(["run", "--scenario", "task99", "--out", str(tmp_path)]) == 2
    err = capsys.readouterr().err
    assert "task99" in err and "task1-l1" in err


def test_bad_client_exits_nonzero(tmp_path, capsys):
    assert main(["run", "--scenario", "task1-l1", "--client", "mock:nope", "--out", str(tmp_path)]) == 2
    assert main(["run", "--scenario", "task1-l1", "--client", f"replay:{tmp_path}/missing.jsonl",
                 "--out", str(tmp_path)]) == 2


def test_parallel_episodes_match_sequential_ones(tmp_path, capsys):
    args = ["run", "--scenario", "task4-l1", "--client", "mock:random-valid-action", "--mock-delay", "0",
            "--seeds", "1..3"]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b"), "--parallel-episodes", "3"]) == 0
    a, b = (load_results(tmp_path / d / "results.jsonl") for d in "ab")
    assert [r.result_hash() for r in a] == [r.result_hash() for r in b]


def test_replay_command_and_replay_client_reproduce_the_recording(tmp_path, capsys):
    out = tmp_path / "rec"
    assert main(["run", "--scenario", "task4-l1", "--client", "mock:random-valid-action", "--mock-delay", "0",
                 "--seeds", "5", "--out", str(out)]) == 0
    recorded = load_results(out / "results.jsonl")[0]
    trace = out / "task4-l1-seed5.trace.jsonl"
    assert main(["replay", str(trace)]) == 0
    assert "replay matches" in capsys.readouterr().out
    again = tmp_path / "again"
    assert main(["run", "--scenario", "task4-l1", "--client", f"replay:{trace}", "--seeds", "5",
                 "--out", str(again)]) == 0
    assert load_results(again / "results.jsonl")[0].result_hash() == recorded.result_hash()


def test_replay_detects_a_tampered_trace(tmp_path, capsys):
    out = tmp_path / "rec"
    main(["run", "--scenario", "task4-l1", "--client", "mock:focus-fire", "--mock-delay", "0", "--seeds", "2",
          "--out", str(out)])
    trace = out / "task4-l1-seed2.trace.jsonl"
    records = [json.loads(line) for line in trace.read_text().splitlines()]
    for r in records:
        if r["type"] == "query":
            r["response"] = "<No_Operation()>"
    trace.write_text("".join(json.dumps(r) + "\n" for r in records))
    assert main(["replay", str(trace)]) == 1


@pytest.mark.parametrize("path", RESPONSES, ids=lambda p: p.stem)
def test_example_responses_validate(path, capsys):
    assert main(["validate", str(path)]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert all(line.startswith("ok ") for line in lines[:-1]) and lines[-1].endswith(" 0 rejected")


def test_example_corpus_is_nonempty():
    assert len(RESPONSES) >= 6


def test_typo_is_an_unknown_action(capsys):
    assert main(["validate", str(DATA / "typo_response.txt")]) == 1
    assert "<Train_Zealots()>: unknown-action" in capsys.readouterr().out


def test_wrong_argument_kind_reports_the_signature(capsys):
    assert main(["validate", str(DATA / "bad_arity_response.txt")]) == 1
    assert "bad-arity (expected <Attack_Unit(tag)>)" in capsys.readouterr().out


def test_validate_unreadable_file(tmp_path, capsys):
    assert main(["validate", str(tmp_path / "nope.txt")]) == 2


def test_stats_single_win(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    persist(EpisodeResult("task2-l1", 1, "win", 1.5, 300, 200, 10, 100, "x"), path)
    assert main(["stats", str(path)]) == 0
    assert "1.50 (100%)" in capsys.readouterr().out


def test_stats_empty_and_malformed(tmp_path, capsys):
    empty = tmp_path / "e.jsonl"
    empty.write_text("")
    assert main(["stats", str(empty)]) == 1
    assert "no results" in capsys.readouterr().out
    bad = tmp_path / "b.jsonl"
    bad.write_text("{oops\n")
    assert main(["stats", str(bad)]) == 2


def test_stats_on_a_mixed_file_matches_a_recount(tmp_path, capsys):
    path = tmp_path / "r.jsonl"
    outcomes = ["win", "lose"] * 5 + ["win"] * 5 + ["draw"] * 5
    for i, outcome in enumerate(outcomes):
        persist(EpisodeResult("task1-l1" if i % 2 else "task4-l1", i, outcome, i / 4, i, 4, 3, 30, "h"), path)
    assert main(["stats", str(path)]) == 0
    text = capsys.readouterr().out
    for sid in ("task1-l1", "task4-l1"):
        rows = [(i, o) for i, o in enumerate(outcomes) if (sid == "task1-l1") == bool(i % 2)]
        kd = sum(i / 4 for i, _ in rows) / len(rows)
        wr = sum(o == "win" for _, o in rows) / len(rows)
        assert f"{sid}  {len(rows):>8}  {kd:.2f} ({wr * 100:.0f}%)" in text
