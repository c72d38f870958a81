"""Deterministic quasi-static sweeps.

The arm is a straight front moving along the +y (or -y) axis of the path
region frame.  Discs whose centers lie in the swath are carried ahead of the
front; carried discs push any disc they touch.  Everything translates along
the push axis only, so a push is a 1-D compaction problem: each disc ends at
``max(y, front + offset)`` where ``offset`` is the length of the contact
chain linking it to the front.  Walls and the target are immovable and stop
the front when a chain is pressed against them.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

from .geometry import GeometryError, Point2, Pose2, Rect, rotate
from .path_region import Configuration, PathRegion

__all__ = [
    "DEFAULT_PUSH_SPEED",
    "START_GAP",
    "Direction",
    "BlockedApproach",
    "SweepAction",
    "SweepOutcome",
    "plan_sweep",
    "execute_sweep",
    "approach_distance",
]

DEFAULT_PUSH_SPEED = 0.1  # m/s
START_GAP = 1e-3  # m between the front and the first disc at the start
_EPS_DIR = 1e-15
SHIFT_TOL = 1e-12  # m; smaller displacements are float noise, not motion


class Direction(str, enum.Enum):
    BOTTOM_TO_TOP = "BottomToTop"
    TOP_TO_BOTTOM = "TopToBottom"

    @property
    def sign(self) -> int:
        return 1 if self is Direction.BOTTOM_TO_TOP else -1


class BlockedApproach(GeometryError):
    """The sweep would drive the arm through the target."""


@dataclass(frozen=True)
class SweepAction:
    angle: float
    pivot: Point2
    swath: tuple[float, float]
    direction: Direction
    front_start: float
    front_end: float

    def to_frame(self, p) -> Point2:
        if self.angle == 0.0:
            return Point2(float(p[0]), float(p[1]))
        return rotate((p[0] - self.pivot.x, p[1] - self.pivot.y), -self.angle)

    def to_world(self, q) -> Point2:
        if self.angle == 0.0:
            return Point2(float(q[0]), float(q[1]))
        p = rotate(q, self.angle)
        return Point2(p.x + self.pivot.x, p.y + self.pivot.y)

    @property
    def start_point(self) -> Point2:
        """Middle of the front at the start of the sweep, shelf frame."""
        return self.to_world((0.5 * (self.swath[0] + self.swath[1]), self.front_start))

    def to_dict(self) -> dict[str, Any]:
        return {
            "angle": self.angle,
            "pivot": list(self.pivot),
            "swath": list(self.swath),
            "direction": self.direction.value,
            "front_start": self.front_start,
            "front_end": self.front_end,
        }


@dataclass(frozen=True)
class SweepOutcome:
    config_after: Configuration
    time: float
    moved: tuple[int, ...]
    jammed: bool
    front_stop: float
    pushed_by_arm: tuple[int, ...] = field(default=())


def plan_sweep(
    config: Configuration,
    rect: Rect,
    region: PathRegion,
    direction: Direction,
    nu: float = 0.015,
    clearance: float | None = None,
) -> SweepAction:
    """Lay out the sweep that carries everything in ``rect`` out of the corridor.

    ``rect`` is in the region frame and already inflated by the object radius.
    The front stops ``rho + clearance`` past the exit side of the corridor
    (``clearance`` defaults to nu / 2) so carried discs end strictly outside.
    """
    rho = config.ws.object_radius
    c = 0.5 * nu if clearance is None else clearance
    swath = (rect.lo.x - rho, rect.hi.x + rho)
    if direction is Direction.BOTTOM_TO_TOP:
        start = rect.lo.y - rho - START_GAP
        end = region.corridor.hi.y + rho + c
    else:
        start = rect.hi.y + rho + START_GAP
        end = region.corridor.lo.y - rho - c

    t = region.to_frame(config.target)
    lo_y, hi_y = min(start, end), max(start, end)
    if (t.x - rho < swath[1] and t.x + rho > swath[0]
            and t.y - rho < hi_y and t.y + rho > lo_y):
        raise BlockedApproach(
            f"swath [{swath[0]:.4f}, {swath[1]:.4f}] crosses the target disc"
        )
    return SweepAction(region.angle, region.pivot, swath, direction, start, end)


def approach_distance(gripper: Pose2, action: SweepAction) -> float:
    return math.dist(gripper.position, action.start_point)


def travel_limit(p: Point2, d: Point2, lo: Point2, hi: Point2) -> float:
    """Distance ``p`` can travel along unit ``d`` while staying in [lo, hi]."""
    limit = math.inf
    for pc, dc, lc, hc in ((p.x, d.x, lo.x, hi.x), (p.y, d.y, lo.y, hi.y)):
        if dc > _EPS_DIR:
            limit = min(limit, (hc - pc) / dc)
        elif dc < -_EPS_DIR:
            limit = min(limit, (pc - lc) / -dc)
    return max(0.0, limit)


def execute_sweep(
    config: Configuration,
    action: SweepAction,
    push_speed: float = DEFAULT_PUSH_SPEED,
) -> SweepOutcome:
    ws = config.ws
    rho = ws.object_radius
    s = action.direction.sign
    axis = rotate((0.0, 1.0), action.angle) if action.angle != 0.0 else Point2(0.0, 1.0)
    d = Point2(s * axis.x, s * axis.y)
    box_lo = Point2(rho, rho)
    box_hi = Point2(ws.depth - rho, ws.width - rho)

    # index n is the target: it takes part in contact chains but cannot move
    world = list(config.obstacles) + [config.target]
    n = len(config.obstacles)
    frame = [action.to_frame(p) for p in world]
    u = [s * q.y for q in frame]
    u_max = [u[i] + travel_limit(world[i], d, box_lo, box_hi) for i in range(n)] + [u[n]]
    u0, u1 = s * action.front_start, s * action.front_end
    x_lo, x_hi = action.swath

    order = sorted(range(n + 1), key=lambda i: (u[i], i))
    offset: dict[int, float] = {}
    by_arm = []
    for pos, j in enumerate(order):
        best = -math.inf
        if j < n and x_lo <= frame[j].x <= x_hi and u[j] > u0:
            best = rho
            by_arm.append(j)
        for k in order[:pos]:
            if k not in offset:
                continue
            dx = abs(frame[j].x - frame[k].x)
            if dx < 2.0 * rho:
                best = max(best, offset[k] + math.sqrt(4.0 * rho * rho - dx * dx))
        if best > -math.inf:
            offset[j] = best

    stop = u1
    for j, a in offset.items():
        stop = min(stop, u_max[j] - a)
    jammed = stop < u1
    if stop < u0:
        # a chain is already pressed against a wall: the arm cannot advance
        offset, stop, by_arm = {}, u0, []

    new_obstacles = list(config.obstacles)
    moved = []
    for j, a in offset.items():
        if j == n:
            continue
        shift = stop + a - u[j]
        if shift <= SHIFT_TOL:
            continue
        p = world[j]
        q = Point2(p.x + shift * d.x, p.y + shift * d.y)
        new_obstacles[j] = Point2(
            min(max(q.x, box_lo.x), box_hi.x), min(max(q.y, box_lo.y), box_hi.y)
        )
        moved.append(j)
    moved.sort()

    after = config.with_obstacles(new_obstacles) if moved else config
    travel = stop - u0
    t = (travel + approach_distance(config.gripper, action)) / push_speed
    return SweepOutcome(
        after, t, tuple(moved), jammed, s * stop,
        tuple(sorted(j for j in by_arm if j in moved)),
    )
