"""Affine maps between world, screen and minimap frames.

The screen is a 64x64 pixel grid over the camera's 24x24 world rectangle;
the minimap is a 64x64 grid over the whole map.  Pixel ``(i, j)`` covers the
world cell whose top-left corner is ``screen_to_world(i, j)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from llmrts.grammar import MINIMAP_SIZE, SCREEN_SIZE, MinimapCoord, ScreenCoord

CAMERA_SPAN = 24.0


@dataclass(frozen=True)
class Camera:
    x0: float
    y0: float
    span: float = CAMERA_SPAN

    @property
    def center(self) -> tuple[float, float]:
        return self.x0 + self.span / 2, self.y0 + self.span / 2

    def contains(self, x: float, y: float) -> bool:
        return self.x0 <= x < self.x0 + self.span and self.y0 <= y < self.y0 + self.span


@dataclass(frozen=True)
class OutOfFrame:
    """A conversion result outside the target frame (never clamped)."""

    x: int
    y: int


def camera_at(cx: float, cy: float, width: float, height: float, span: float = CAMERA_SPAN) -> Camera:
    """Camera centred on (cx, cy), shifted to stay inside the map."""
    x0 = min(max(cx - span / 2, 0.0), max(width - span, 0.0))
    y0 = min(max(cy - span / 2, 0.0), max(height - span, 0.0))
    return Camera(x0, y0, span)


def world_to_screen(x: float, y: float, camera: Camera) -> ScreenCoord | OutOfFrame:
    scale = SCREEN_SIZE / camera.span
    px = math.floor((x - camera.x0) * scale + 1e-9)
    py = math.floor((y - camera.y0) * scale + 1e-9)
    if 0 <= px < SCREEN_SIZE and 0 <= py < SCREEN_SIZE:
        return ScreenCoord(px, py)
    return OutOfFrame(px, py)


def screen_to_world(px: float, py: float, camera: Camera) -> tuple[float, float]:
    scale = camera.span / SCREEN_SIZE
    return camera.x0 + px * scale, camera.y0 + py * scale


def world_to_minimap(x: float, y: float, width: float, height: float) -> MinimapCoord | OutOfFrame:
    px = math.floor(x * MINIMAP_SIZE / width + 1e-9)
    py = math.floor(y * MINIMAP_SIZE / height + 1e-9)
    if 0 <= px < MINIMAP_SIZE and 0 <= py < MINIMAP_SIZE:
        return MinimapCoord(px, py)
    return OutOfFrame(px, py)


def minimap_to_world(px: float, py: float, width: float, height: float) -> tuple[float, float]:
    return px * width / MINIMAP_SIZE, py * height / MINIMAP_SIZE


def pixel_center(px: int, py: int, camera: Camera) -> tuple[float, float]:
    """World position of the centre of screen pixel (px, py)."""
    return screen_to_world(px + 0.5, py + 0.5, camera)


def minimap_center(px: int, py: int, width: float, height: float) -> tuple[float, float]:
    return minimap_to_world(px + 0.5, py + 0.5, width, height)
