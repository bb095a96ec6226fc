"""Types shared by the bridge (which produces calls) and the simulator (which runs them)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

from llmrts.grammar import MinimapCoord, ScreenCoord, TextAction

ERROR_CATEGORIES = (
    "unknown-action",
    "bad-arity",
    "unavailable",
    "invalid-target",
    "invalid-position",
    "insufficient-resources",
    "no-idle-building",
)


@dataclass(frozen=True)
class ScreenTarget:
    """Screen pixel of a specific unit (the ``screen_tag`` argument shape)."""

    x: int
    y: int
    tag: int


@dataclass(frozen=True)
class WorldTarget:
    """World position of a specific unit (``world_tag``)."""

    x: float
    y: float
    tag: int


@dataclass(frozen=True)
class WorldPoint:
    """A position chosen by an automatic resolver (``auto``)."""

    x: float
    y: float


ResolvedArg = Union[str, ScreenCoord, MinimapCoord, ScreenTarget, WorldTarget, WorldPoint]


@dataclass(frozen=True)
class BackendCall:
    function_id: int
    function_name: str
    queueing: str | None
    resolved_args: tuple[ResolvedArg, ...] = ()

    def key(self) -> tuple:
        return (self.function_id, self.function_name, self.resolved_args)


@dataclass(frozen=True)
class ActionError:
    action: TextAction | None
    category: str
    detail: str

    def __post_init__(self) -> None:
        if self.category not in ERROR_CATEGORIES:
            raise ValueError(f"unknown error category {self.category!r}")

    def render(self) -> str:
        name = str(self.action) if self.action is not None else "-"
        return f"{name}: {self.category}: {self.detail}"


class CallError(Exception):
    """Raised inside the simulator when a call cannot be applied."""

    def __init__(self, category: str, detail: str):
        super().__init__(f"{category}: {detail}")
        self.category = category
        self.detail = detail


@dataclass
class AgentContext:
    """What the bridge needs to know about the acting agent."""

    name: str
    player: int = 1
    team: tuple[int, ...] = ()
    action_subset: frozenset[str] = field(default_factory=frozenset)
    modes: frozenset[str] = field(default_factory=frozenset)
