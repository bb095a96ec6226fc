from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import embed, random_action
from llmrts.grammar import (Ident, MinimapCoord, NoneArg, ScreenCoord, Text, TextAction, UnitTag,
                            extract_actions, extract_message_actions, format_action, validate_action)


def test_single_action_recognised():
    report = extract_actions("Analysis...\nActions:\n<Attack_Unit(0x1A3)>\n")
    assert report.actions == [TextAction("Attack_Unit", (UnitTag(0x1A3),))]
    assert report.rejected == []


def test_screen_and_minimap_frames_follow_the_name():
    report = extract_actions("<Move_Screen([3, 4])> <Move_Minimap([5, 6])>")
    assert report.actions[0].args == (ScreenCoord(3, 4),)
    assert report.actions[1].args == (MinimapCoord(5, 6),)


def test_decimal_and_hex_tags_are_the_same_value():
    a, b = extract_actions("<Attack_Unit(419)> <Attack_Unit(0x1a3)>").actions
    assert a == b


def test_empty_args_and_none():
    report = extract_actions("<No_Operation()> <Foo(None)>")
    assert report.actions == [TextAction("No_Operation"), TextAction("Foo", (NoneArg(),))]


@pytest.mark.parametrize("text,reason", [
    ("<Move_Screen([64, 3])>", "coordinate-out-of-frame"),
    ("<Attack_Unit(0)>", "bad-tag"),
    ("<Attack_Unit(0x)>", "bad-tag"),
    ("<Move_Screen([1, 2)>", "unbalanced"),
    ("<Move_Screen([1 2])>", "bad-coordinate"),
    ("<Attack_Unit(,)>", "empty-argument"),
    ("<Attack_Unit(12)", "unbalanced"),
])
def test_malformed_candidates_are_rejected_with_reason(text, reason):
    report = extract_actions(text)
    assert report.actions == []
    assert [r for _, r in report.rejected] == [reason]


def test_message_content_is_not_executed():
    text = "<MessageTo(Commander, '''I will <Attack_Unit(0x1A3)> soon''')> <Hold_Position()>"
    report = extract_actions(text)
    assert [a.name for a in report.actions] == ["MessageTo", "Hold_Position"]
    messages, rejected = extract_message_actions(text)
    assert messages == [("Commander", "I will <Attack_Unit(0x1A3)> soon")]
    assert rejected == []


def test_message_without_triple_quotes_is_rejected():
    messages, rejected = extract_message_actions("<MessageTo(Commander, 'hi')>")
    assert messages == []
    assert rejected[0][1] == "missing-triple-quote"


def test_never_raises_on_garbage():
    for text in ["<", "<<(>)>", "<A(", "'''", "<A(''')>", "\x00<B([1,2])>"]:
        extract_actions(text)


def test_spans_point_at_the_action_text():
    text = "pre <Hold_Position()> mid <Move_Screen([1, 2])> post"
    report = extract_actions(text)
    assert [text[s:e] for s, e in report.spans] == ["<Hold_Position()>", "<Move_Screen([1, 2])>"]


def test_validate_rejects_unformattable_actions():
    with pytest.raises(ValueError):
        validate_action(TextAction("Move_Screen", (MinimapCoord(1, 1),)))
    with pytest.raises(ValueError):
        validate_action(TextAction("Say", (Text("a''' b"),)))
    with pytest.raises(ValueError):
        validate_action(TextAction("Go", (Ident("None"),)))


# -- properties -------------------------------------------------------------

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_format_then_extract_round_trips(seed):
    action = random_action(random.Random(seed))
    validate_action(action)
    assert extract_actions(format_action(action)).actions == [action]


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=30))
def test_embedded_actions_recovered_in_order(seed, n):
    rng = random.Random(seed)
    actions = [random_action(rng) for _ in range(n)]
    report = extract_actions(embed(actions, rng))
    assert report.actions == actions
    assert report.rejected == []


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=200))
def test_arbitrary_text_never_raises_and_accepts_only_valid(text):
    report = extract_actions(text)
    for action in report.actions:
        validate_action(action)
        assert extract_actions(format_action(action)).actions == [action]
