"""Text-action grammar: recognise ``<Name(args)>`` segments in LLM output.

Accepted argument shapes::

    [x, y]          coordinate (screen, or minimap when the action name
                    contains "Minimap")
    123 / 0x7B      unit tag, decimal or hex, nonzero
    '''text'''      free text (communication actions)
    Commander       bare identifier (message targets)
    None            explicit empty argument

Message actions (``<MessageTo(Target, '''content''')>``) are extracted
first and their spans masked, so action text quoted inside a message is
never executed.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

SCREEN_SIZE = 64
MINIMAP_SIZE = 64
MAX_TAG = 2**64 - 1

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_CANDIDATE_RE = re.compile(r"<([A-Za-z][A-Za-z0-9_]*)\(")
_MESSAGE_START_RE = re.compile(r"<MessageTo\(")
_MESSAGE_RE = re.compile(
    r"<MessageTo\(\s*([A-Za-z][A-Za-z0-9_]*)\s*,\s*'''(.*?)'''\s*\)>", re.DOTALL
)
_COORD_RE = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]\Z")
_TAG_RE = re.compile(r"(0[xX][0-9A-Fa-f]+|\d+)\Z")
_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

MESSAGE_ACTION = "MessageTo"


@dataclass(frozen=True)
class ScreenCoord:
    x: int
    y: int


@dataclass(frozen=True)
class MinimapCoord:
    x: int
    y: int


@dataclass(frozen=True)
class UnitTag:
    tag: int


@dataclass(frozen=True)
class Text:
    content: str


@dataclass(frozen=True)
class Ident:
    name: str


@dataclass(frozen=True)
class NoneArg:
    pass


ArgValue = Union[ScreenCoord, MinimapCoord, UnitTag, Text, Ident, NoneArg]


@dataclass(frozen=True)
class TextAction:
    name: str
    args: tuple[ArgValue, ...] = ()

    def __post_init__(self) -> None:
        if not NAME_RE.match(self.name):
            raise ValueError(f"invalid action name {self.name!r}")
        object.__setattr__(self, "args", tuple(self.args))

    def __str__(self) -> str:
        return format_action(self)


@dataclass
class ParseReport:
    actions: list[TextAction] = field(default_factory=list)
    rejected: list[tuple[str, str]] = field(default_factory=list)
    # (start offset, end offset) for each accepted action, same order as ``actions``.
    spans: list[tuple[int, int]] = field(default_factory=list)


class ArgError(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


def uses_minimap(name: str) -> bool:
    return "minimap" in name.lower()


def _format_arg(arg: ArgValue) -> str:
    if isinstance(arg, (ScreenCoord, MinimapCoord)):
        return f"[{arg.x}, {arg.y}]"
    if isinstance(arg, UnitTag):
        return f"0x{arg.tag:X}"
    if isinstance(arg, Text):
        return f"'''{arg.content}'''"
    if isinstance(arg, Ident):
        return arg.name
    if isinstance(arg, NoneArg):
        return "None"
    raise TypeError(f"not an argument value: {arg!r}")


def format_action(action: TextAction) -> str:
    """Canonical serialisation; ``extract_actions`` recovers the same action."""
    return f"<{action.name}({', '.join(_format_arg(a) for a in action.args)})>"


def validate_action(action: TextAction) -> None:
    """Raise ValueError if ``action`` could not survive a format/parse round trip."""
    minimap = uses_minimap(action.name)
    for arg in action.args:
        if isinstance(arg, (ScreenCoord, MinimapCoord)):
            if isinstance(arg, MinimapCoord) != minimap:
                raise ValueError(f"{action.name}: coordinate frame does not match name")
            size = MINIMAP_SIZE if minimap else SCREEN_SIZE
            if not (0 <= arg.x < size and 0 <= arg.y < size):
                raise ValueError(f"{action.name}: coordinate outside frame")
        elif isinstance(arg, UnitTag):
            if not 0 < arg.tag <= MAX_TAG:
                raise ValueError("unit tag must be a nonzero 64-bit value")
        elif isinstance(arg, Text):
            if "'''" in arg.content:
                raise ValueError("text content may not contain triple quotes")
        elif isinstance(arg, Ident):
            if not _IDENT_RE.match(arg.name) or arg.name == "None":
                raise ValueError(f"invalid identifier {arg.name!r}")


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _parse_arg(raw: str, minimap: bool) -> ArgValue:
    token = raw.strip()
    if not token:
        raise ArgError("empty-argument")
    if token.startswith("'''"):
        if len(token) < 6 or not token.endswith("'''"):
            raise ArgError("missing-triple-quote")
        return Text(token[3:-3])
    if token.startswith("["):
        m = _COORD_RE.match(token)
        if not m:
            raise ArgError("bad-coordinate")
        x, y = int(m.group(1)), int(m.group(2))
        size = MINIMAP_SIZE if minimap else SCREEN_SIZE
        if x >= size or y >= size:
            raise ArgError("coordinate-out-of-frame")
        return MinimapCoord(x, y) if minimap else ScreenCoord(x, y)
    if token[0].isdigit():
        if not _TAG_RE.match(token):
            raise ArgError("bad-tag")
        value = int(token, 0) if token.lower().startswith("0x") else int(token)
        if value == 0 or value > MAX_TAG:
            raise ArgError("bad-tag")
        return UnitTag(value)
    if token == "None":
        return NoneArg()
    if _IDENT_RE.match(token):
        return Ident(token)
    raise ArgError("bad-argument")


def _split_args(body: str) -> list[str]:
    """Split on top-level commas; brackets and triple-quoted text are opaque."""
    parts: list[str] = []
    depth = 0
    start = 0
    i = 0
    while i < len(body):
        if body.startswith("'''", i):
            end = body.find("'''", i + 3)
            if end < 0:
                raise ArgError("missing-triple-quote")
            i = end + 3
            continue
        ch = body[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ArgError("unbalanced")
        elif ch == "," and depth == 0:
            parts.append(body[start:i])
            start = i + 1
        i += 1
    if depth != 0:
        raise ArgError("unbalanced")
    tail = body[start:]
    if parts or tail.strip():
        parts.append(tail)
    return parts


def parse_args(name: str, body: str) -> tuple[ArgValue, ...]:
    minimap = uses_minimap(name)
    return tuple(_parse_arg(p, minimap) for p in _split_args(body))


# ---------------------------------------------------------------------------
# segment scanning
# ---------------------------------------------------------------------------

def _scan_candidate(text: str, start: int, body_start: int) -> tuple[int, str | None]:
    """Find where the candidate beginning at ``start`` ends.

    Returns ``(end, reason)``: ``reason`` is None for a closed ``(...)>``
    segment, otherwise the rejection reason for ``text[start:end]``.
    """
    depth = 0
    i = body_start
    n = len(text)
    while i < n:
        if text.startswith("'''", i):
            close = text.find("'''", i + 3)
            if close < 0:
                nl = text.find("\n", i)
                return (n if nl < 0 else nl), "missing-triple-quote"
            i = close + 3
            continue
        ch = text[i]
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == ")" and depth <= 0:
            if i + 1 < n and text[i + 1] == ">":
                return i + 2, None
            return i + 1, "unbalanced"
        elif ch == ">":
            return i + 1, "unbalanced"
        elif ch == "<" and _CANDIDATE_RE.match(text, i):
            return i, "unbalanced"
        elif ch == "\n" and depth <= 0:
            return i, "unbalanced"
        i += 1
    return n, "unbalanced"


def _extract_messages(text: str) -> tuple[list[tuple[int, int, TextAction]], list[tuple[int, int, str, str]]]:
    accepted: list[tuple[int, int, TextAction]] = []
    rejected: list[tuple[int, int, str, str]] = []
    pos = 0
    while True:
        m = _MESSAGE_START_RE.search(text, pos)
        if m is None:
            break
        start = m.start()
        full = _MESSAGE_RE.match(text, start)
        if full is not None:
            target, content = full.group(1), full.group(2)
            accepted.append((start, full.end(), TextAction(MESSAGE_ACTION, (Ident(target), Text(content)))))
            pos = full.end()
            continue
        end = text.find(")>", m.end())
        end = len(text) if end < 0 else end + 2
        segment = text[start:end]
        if not re.match(r"<MessageTo\(\s*[A-Za-z][A-Za-z0-9_]*\s*,", segment):
            reason = "bad-target"
        elif segment.count("'''") < 2:
            reason = "missing-triple-quote"
        else:
            reason = "bad-message"
        rejected.append((start, end, segment, reason))
        pos = end
    return accepted, rejected


def extract_actions(response_text: str) -> ParseReport:
    """Recognise every ``<Name(args)>`` segment in ``response_text``.

    Never raises; malformed candidates land in ``rejected`` with a reason.
    """
    text = response_text if isinstance(response_text, str) else str(response_text)
    msg_ok, msg_bad = _extract_messages(text)

    masked = list(text)
    for start, end, *_ in msg_ok + msg_bad:
        masked[start:end] = " " * (end - start)
    scan = "".join(masked)

    found: list[tuple[int, int, TextAction | None, str, str]] = []
    for start, end, action in msg_ok:
        found.append((start, end, action, text[start:end], ""))
    for start, end, segment, reason in msg_bad:
        found.append((start, end, None, segment, reason))

    pos = 0
    while True:
        m = _CANDIDATE_RE.search(scan, pos)
        if m is None:
            break
        start = m.start()
        end, reason = _scan_candidate(scan, start, m.end())
        segment = text[start:end]
        name = m.group(1)
        if reason is None:
            try:
                args = parse_args(name, scan[m.end():end - 2])
                found.append((start, end, TextAction(name, args), segment, ""))
            except ArgError as exc:
                found.append((start, end, None, segment, exc.reason))
        else:
            found.append((start, end, None, segment, reason))
        pos = max(end, start + 1)

    found.sort(key=lambda item: item[0])
    report = ParseReport()
    for start, end, action, segment, reason in found:
        if action is not None:
            report.actions.append(action)
            report.spans.append((start, end))
        else:
            report.rejected.append((segment, reason))
    return report


def extract_message_actions(response_text: str) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """Return ``(messages, rejected)``; each message is ``(target, content)``."""
    accepted, rejected = _extract_messages(str(response_text))
    messages = [(a.args[0].name, a.args[1].content) for _, _, a in accepted]
    return messages, [(seg, reason) for _, _, seg, reason in rejected]
