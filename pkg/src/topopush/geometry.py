"""Planar primitives shared by the planner and the simulator.

Shelf frame: x runs along the depth of the shelf (x = 0 is the open mouth),
y runs across it with wall S at y = 0 and wall N at y = width.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "GeometryError",
    "Point2",
    "Pose2",
    "Rect",
    "Workspace",
    "rotate",
    "dist_point_to_walls",
    "dist_point_to_line_through_origin",
    "incidence_angle",
    "incidence_frame",
    "aabb",
]

BISECTION_TOL = 1e-12


class GeometryError(ValueError):
    """Raised for inputs outside an operation's geometric domain."""


class Point2(NamedTuple):
    x: float
    y: float


class Pose2(NamedTuple):
    position: Point2
    heading: float = 0.0


class Rect(NamedTuple):
    lo: Point2
    hi: Point2

    @property
    def center(self) -> Point2:
        return Point2(0.5 * (self.lo.x + self.hi.x), 0.5 * (self.lo.y + self.hi.y))

    @property
    def width(self) -> float:
        return self.hi.x - self.lo.x

    @property
    def height(self) -> float:
        return self.hi.y - self.lo.y

    def contains(self, p: Sequence[float], tol: float = 0.0) -> bool:
        return (self.lo.x - tol <= p[0] <= self.hi.x + tol
                and self.lo.y - tol <= p[1] <= self.hi.y + tol)


@dataclass(frozen=True)
class Workspace:
    """Rectangular shelf plus the dimensions of the arm and the objects.

    ``arm_width`` is the corridor half-width ``w`` used by the path region.
    """

    depth: float = 0.6
    width: float = 0.6
    arm_width: float = 0.12
    gripper_width: float = 0.06
    object_radius: float = 0.03

    def __post_init__(self) -> None:
        for name in ("depth", "width", "arm_width", "gripper_width", "object_radius"):
            value = getattr(self, name)
            if not math.isfinite(value) or value <= 0.0:
                raise GeometryError(f"workspace.{name} must be finite and > 0, got {value!r}")
        if self.arm_width >= self.width:
            raise GeometryError("workspace.arm_width must be smaller than workspace.width")
        if 2.0 * self.object_radius >= self.width:
            raise GeometryError("objects do not fit across the shelf")
        # a target within w of both walls has no defined incidence angle
        if 2.0 * self.arm_width >= self.width:
            raise GeometryError("shelf narrower than twice the arm width is not supported")

    @property
    def center(self) -> Point2:
        return Point2(0.5 * self.depth, 0.5 * self.width)


def rotate(p: Sequence[float], angle: float) -> Point2:
    """Rotate ``p`` counterclockwise about the origin."""
    if not math.isfinite(angle):
        raise GeometryError(f"rotation angle must be finite, got {angle!r}")
    c, s = math.cos(angle), math.sin(angle)
    return Point2(c * p[0] - s * p[1], s * p[0] + c * p[1])


def dist_point_to_walls(p: Sequence[float], ws: Workspace) -> float:
    if not 0.0 <= p[1] <= ws.width:
        raise GeometryError(f"y={p[1]!r} lies outside the shelf [0, {ws.width}]")
    return min(p[1], ws.width - p[1])


def dist_point_to_line_through_origin(p: Sequence[float], theta: float) -> float:
    return abs(p[0] * math.sin(theta) - p[1] * math.cos(theta))


def _tangent_angle(p: Point2, w: float) -> float:
    # f(theta) = signed distance of p above the line at angle theta; strictly
    # decreasing on (0, pi/2) for p in the open first quadrant.
    def f(theta: float) -> float:
        return p.y * math.cos(theta) - p.x * math.sin(theta) - w

    lo, hi = 0.0, 0.5 * math.pi
    if p.x <= 0.0 or not (f(lo) > 0.0 > f(hi)):
        raise GeometryError(
            f"no acute tangent line at distance {w} from target ({p.x}, {p.y})"
        )
    while hi - lo > BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def incidence_frame(target: Sequence[float], ws: Workspace) -> tuple[float, Point2]:
    """Return ``(angle, pivot)`` of the line ``l`` for a near-wall target.

    Near N the line passes through the mouth corner (0, 0) at angle +phi with
    the target above it.  Near S the construction is mirrored through the
    shelf midline, so the line passes through (0, width) at angle -phi with the
    target below it.
    """
    p = Point2(float(target[0]), float(target[1]))
    w = ws.arm_width
    if dist_point_to_walls(p, ws) > w:
        raise GeometryError("target is farther than the arm width from both walls")
    if ws.width - p.y <= p.y:
        return _tangent_angle(p, w), Point2(0.0, 0.0)
    mirrored = Point2(p.x, ws.width - p.y)
    return -_tangent_angle(mirrored, w), Point2(0.0, ws.width)


def incidence_angle(target: Sequence[float], ws: Workspace) -> float:
    return incidence_frame(target, ws)[0]


def aabb(points: Iterable[Sequence[float]], inflate: float = 0.0) -> Rect:
    pts = list(points)
    if not pts:
        raise GeometryError("bounding box of an empty point set")
    if inflate < 0.0:
        raise GeometryError("inflate must be >= 0")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    return Rect(
        Point2(min(xs) - inflate, min(ys) - inflate),
        Point2(max(xs) + inflate, max(ys) + inflate),
    )
