"""Configurations and the corridor the arm must clear to reach the target."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import (
    GeometryError,
    Point2,
    Pose2,
    Rect,
    Workspace,
    dist_point_to_walls,
    incidence_frame,
    rotate,
)

__all__ = [
    "FEASIBILITY_TOL",
    "InfeasibleConfiguration",
    "Configuration",
    "PathRegion",
    "check_feasible",
    "is_feasible",
    "path_region",
    "is_cleared",
]

FEASIBILITY_TOL = 1e-9


class InfeasibleConfiguration(GeometryError):
    pass


@dataclass(frozen=True)
class Configuration:
    """Obstacle centers, target center and gripper pose on one shelf."""

    obstacles: tuple[Point2, ...]
    target: Point2
    gripper: Pose2
    ws: Workspace

    def with_obstacles(self, obstacles: Sequence[Point2]) -> "Configuration":
        return Configuration(tuple(obstacles), self.target, self.gripper, self.ws)


def check_feasible(config: Configuration, tol: float = FEASIBILITY_TOL) -> None:
    """Raise InfeasibleConfiguration naming the first violation found."""
    ws = config.ws
    rho = ws.object_radius
    objects = list(config.obstacles) + [config.target]
    names = [f"obstacles[{i}]" for i in range(len(config.obstacles))] + ["target"]
    for name, p in zip(names, objects):
        if not (math.isfinite(p[0]) and math.isfinite(p[1])):
            raise InfeasibleConfiguration(f"{name} has non-finite coordinates {tuple(p)}")
        if not (rho - tol <= p[0] <= ws.depth - rho + tol
                and rho - tol <= p[1] <= ws.width - rho + tol):
            raise InfeasibleConfiguration(f"{name} at {tuple(p)} is not inside the shelf")
    min_gap = 2.0 * rho - tol
    for i in range(len(objects)):
        for j in range(i + 1, len(objects)):
            if math.dist(objects[i], objects[j]) < min_gap:
                raise InfeasibleConfiguration(f"{names[i]} and {names[j]} overlap")


def is_feasible(config: Configuration, tol: float = FEASIBILITY_TOL) -> bool:
    try:
        check_feasible(config, tol)
    except InfeasibleConfiguration:
        return False
    return True


@dataclass(frozen=True)
class PathRegion:
    """Corridor between gripper and target, expressed in its own frame.

    Frame coordinates are ``rotate(p - pivot, -angle)``; for targets away from
    the walls ``angle == 0`` and the frame is the shelf frame.
    """

    angle: float
    pivot: Point2
    corridor: Rect
    members: tuple[int, ...]
    target: Point2  # frame coordinates
    gripper: Point2  # frame coordinates

    @property
    def rotated(self) -> bool:
        return self.angle != 0.0

    def to_frame(self, p: Sequence[float]) -> Point2:
        if not self.rotated:
            return Point2(float(p[0]), float(p[1]))
        return rotate((p[0] - self.pivot.x, p[1] - self.pivot.y), -self.angle)

    def to_world(self, q: Sequence[float]) -> Point2:
        if not self.rotated:
            return Point2(float(q[0]), float(q[1]))
        p = rotate(q, self.angle)
        return Point2(p.x + self.pivot.x, p.y + self.pivot.y)

    def direction_to_world(self, v: Sequence[float]) -> Point2:
        """Rotate a frame vector into the shelf frame (no translation)."""
        if not self.rotated:
            return Point2(float(v[0]), float(v[1]))
        return rotate(v, self.angle)

    @property
    def is_empty(self) -> bool:
        return not self.members


def path_region(config: Configuration, check: bool = True) -> PathRegion:
    if check:
        check_feasible(config)
    ws = config.ws
    w = ws.arm_width
    if dist_point_to_walls(config.target, ws) > w:
        angle, pivot = 0.0, Point2(0.0, 0.0)
    else:
        angle, pivot = incidence_frame(config.target, ws)
    region = PathRegion(angle, pivot, Rect(pivot, pivot), (), pivot, pivot)
    t = region.to_frame(config.target)
    g = region.to_frame(config.gripper.position)
    members = []
    for i, o in enumerate(config.obstacles):
        q = region.to_frame(o)
        if t.y - w <= q.y <= t.y + w and g.x <= q.x < t.x:
            members.append(i)
    corridor = Rect(Point2(g.x, t.y - w), Point2(t.x, t.y + w))
    return PathRegion(angle, pivot, corridor, tuple(members), t, g)


def is_cleared(config: Configuration) -> bool:
    return path_region(config).is_empty
