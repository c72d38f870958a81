"""Push planners driven by zero-dimensional persistence.

* ``phia`` greedily pushes the closest component at the smallest persistent
  radius until the corridor is clear.
* ``phis`` expands every persistent radius level by level and returns the
  successful branch with the least total push time.
* ``ooa`` is ``phia`` with a fixed tiny radius, i.e. one obstacle at a time.
"""

from __future__ import annotations

import enum
import math
import time
from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from .geometry import GeometryError, Point2, Pose2, Rect, Workspace, aabb
from .path_region import Configuration, PathRegion, path_region
from .persistence import (
    closest_component,
    components_at,
    persistent_radii,
    zero_dim_persistence,
)
from .push_sim import (
    DEFAULT_PUSH_SPEED,
    BlockedApproach,
    Direction,
    SweepAction,
    SweepOutcome,
    execute_sweep,
    plan_sweep,
)

__all__ = [
    "DEFAULT_NU",
    "DEFAULT_H",
    "OOA_RADIUS",
    "Outcome",
    "ActionInfeasible",
    "PushStep",
    "PushPlan",
    "PlanTree",
    "crccc",
    "closest_group",
    "sweep_direction",
    "choose_direction",
    "push_step",
    "push_action",
    "radii_for",
    "phia",
    "phis",
    "ooa",
]

DEFAULT_NU = 0.015
DEFAULT_H = 0.08
OOA_RADIUS = 0.01


class Outcome(str, enum.Enum):
    SUCCESS = "success"
    FAILURE = "failure"
    TIMEOUT = "timeout"


class ActionInfeasible(GeometryError):
    pass


@dataclass(frozen=True)
class PushStep:
    """One executed push: the radius, the group it targeted and the sweep."""

    radius: float
    group: tuple[int, ...]
    rect: Rect
    action: SweepAction
    outcome: SweepOutcome

    @property
    def time(self) -> float:
        return self.outcome.time

    def to_dict(self) -> dict[str, Any]:
        out = self.action.to_dict()
        out.update(
            radius=self.radius,
            group=list(self.group),
            moved=list(self.outcome.moved),
            jammed=self.outcome.jammed,
            front_stop=self.outcome.front_stop,
            time=self.outcome.time,
        )
        return out


@dataclass
class PlanTree:
    configs: list[Configuration] = field(default_factory=list)
    edges: list[tuple[int, int, float, float]] = field(default_factory=list)
    labels: list[str] = field(default_factory=list)

    def add(self, config: Configuration, label: str = "open") -> int:
        self.configs.append(config)
        self.labels.append(label)
        return len(self.configs) - 1


@dataclass
class PushPlan:
    algorithm: str
    outcome: Outcome
    steps: list[PushStep]
    configs: list[Configuration]
    wall_time: float = 0.0
    tree: Optional[PlanTree] = None

    @property
    def actions(self) -> list[SweepAction]:
        return [s.action for s in self.steps]

    @property
    def radii(self) -> list[float]:
        return [s.radius for s in self.steps]

    @property
    def action_count(self) -> int:
        return len(self.steps)

    @property
    def total_time(self) -> float:
        total = 0.0
        for s in self.steps:
            total += s.time
        return total

    @property
    def final(self) -> Configuration:
        return self.configs[-1]

    def to_dict(self, scenario_id: str = "") -> dict[str, Any]:
        return {
            "scenario_id": scenario_id,
            "algorithm": self.algorithm,
            "outcome": self.outcome.value,
            "action_count": self.action_count,
            "total_time": self.total_time,
            "planning_wall_time": self.wall_time,
            "actions": [s.to_dict() for s in self.steps],
        }


def _region(config: Configuration, region: Optional[PathRegion]) -> PathRegion:
    return path_region(config) if region is None else region


def closest_group(
    config: Configuration, r: float, region: Optional[PathRegion] = None
) -> tuple[tuple[int, ...], Rect]:
    """Obstacle indices of the closest component at ``r`` and its frame rectangle."""
    region = _region(config, region)
    if region.is_empty:
        raise GeometryError("path region is empty")
    members = region.members
    # distances on shelf coordinates so radii match the diagram exactly
    pts = [config.obstacles[i] for i in members]
    partition = components_at(pts, r)
    local = closest_component(partition, pts, config.gripper)
    group = tuple(members[i] for i in local)
    rect = aabb((region.to_frame(config.obstacles[i]) for i in group), config.ws.object_radius)
    return group, rect


def crccc(config: Configuration, r: float, region: Optional[PathRegion] = None) -> Rect:
    return closest_group(config, r, region)[1]


def sweep_direction(c_rect: float, c_region: float, c_ws: float) -> Direction:
    if c_rect > c_region:
        return Direction.BOTTOM_TO_TOP
    if c_rect < c_region:
        return Direction.TOP_TO_BOTTOM
    if c_rect <= c_ws:
        return Direction.TOP_TO_BOTTOM
    return Direction.BOTTOM_TO_TOP


def choose_direction(rect: Rect, region: PathRegion, ws: Workspace) -> Direction:
    return sweep_direction(
        rect.center.y, region.corridor.center.y, region.to_frame(ws.center).y
    )


def push_step(
    config: Configuration,
    r: float,
    nu: float = DEFAULT_NU,
    push_speed: float = DEFAULT_PUSH_SPEED,
    region: Optional[PathRegion] = None,
) -> PushStep:
    region = _region(config, region)
    group, rect = closest_group(config, r, region)
    direction = choose_direction(rect, region, config.ws)
    try:
        action = plan_sweep(config, rect, region, direction, nu=nu)
    except BlockedApproach as exc:
        raise ActionInfeasible(str(exc)) from exc
    outcome = execute_sweep(config, action, push_speed)
    return PushStep(r, group, rect, action, outcome)


def push_action(
    config: Configuration,
    r: float,
    nu: float = DEFAULT_NU,
    push_speed: float = DEFAULT_PUSH_SPEED,
) -> tuple[Configuration, float]:
    step = push_step(config, r, nu, push_speed)
    return step.outcome.config_after, step.outcome.time


def radii_for(config: Configuration, region: PathRegion, nu: float, h: float) -> tuple[float, ...]:
    pts = [config.obstacles[i] for i in region.members]
    return persistent_radii(zero_dim_persistence(pts), nu, h).radii


def _greedy(
    algorithm: str,
    config0: Configuration,
    pick,
    nu: float,
    max_actions: int,
    time_cap_s: Optional[float],
    push_speed: float,
) -> PushPlan:
    started = time.perf_counter()
    config = config0
    steps: list[PushStep] = []
    configs = [config0]

    def done(outcome: Outcome) -> PushPlan:
        return PushPlan(algorithm, outcome, steps, configs, time.perf_counter() - started)

    while True:
        region = path_region(config)
        if region.is_empty:
            return done(Outcome.SUCCESS)
        if time_cap_s is not None and time.perf_counter() - started >= time_cap_s:
            return done(Outcome.TIMEOUT)
        if len(steps) >= max_actions:
            return done(Outcome.TIMEOUT)
        r = pick(config, region)
        try:
            step = push_step(config, r, nu, push_speed, region)
        except ActionInfeasible:
            return done(Outcome.FAILURE)
        if step.outcome.config_after == config:
            return done(Outcome.FAILURE)
        config = step.outcome.config_after
        steps.append(step)
        configs.append(config)


def phia(
    config0: Configuration,
    nu: float = DEFAULT_NU,
    h: float = DEFAULT_H,
    max_actions: int = 50,
    time_cap_s: Optional[float] = None,
    push_speed: float = DEFAULT_PUSH_SPEED,
) -> PushPlan:
    def pick(config, region):
        return radii_for(config, region, nu, h)[0]

    return _greedy("phia", config0, pick, nu, max_actions, time_cap_s, push_speed)


def ooa(
    config0: Configuration,
    max_actions: int = 50,
    radius: float = OOA_RADIUS,
    nu: float = DEFAULT_NU,
    time_cap_s: Optional[float] = None,
    push_speed: float = DEFAULT_PUSH_SPEED,
) -> PushPlan:
    return _greedy("ooa", config0, lambda c, reg: radius, nu, max_actions, time_cap_s, push_speed)


@dataclass
class _Node:
    index: int
    config: Configuration
    parent: Optional["_Node"]
    step: Optional[PushStep]
    depth: int
    cost: float

    def path(self) -> list["_Node"]:
        out = []
        node: Optional[_Node] = self
        while node is not None:
            out.append(node)
            node = node.parent
        return out[::-1]

    def rank(self) -> tuple:
        return (self.cost, self.depth, [n.step.radius for n in self.path()[1:]])


def phis(
    config0: Configuration,
    nu: float = DEFAULT_NU,
    h: float = DEFAULT_H,
    max_depth: int = 6,
    time_cap_s: Optional[float] = None,
    push_speed: float = DEFAULT_PUSH_SPEED,
) -> PushPlan:
    """Level-order search over all persistent radii.

    A configuration already reached at no greater cost and depth is not
    expanded again, and branches whose accumulated time already reaches the
    best success are cut; neither changes the optimum within ``max_depth``.
    """
    started = time.perf_counter()
    tree = PlanTree()
    root = _Node(tree.add(config0), config0, None, None, 0, 0.0)
    best: Optional[_Node] = None
    seen: dict[Configuration, tuple[float, int]] = {config0: (0.0, 0)}
    timed_out = False

    def consider(node: _Node) -> None:
        nonlocal best
        tree.labels[node.index] = "success"
        if best is None or node.rank() < best.rank():
            best = node

    frontier = [root]
    if path_region(config0).is_empty:
        consider(root)
        frontier = []

    while frontier and not timed_out:
        nxt: list[_Node] = []
        for node in frontier:
            if time_cap_s is not None and time.perf_counter() - started >= time_cap_s:
                timed_out = True
                break
            if node.depth >= max_depth or (best is not None and node.cost >= best.cost):
                continue
            region = path_region(node.config)
            for r in sorted(set(radii_for(node.config, region, nu, h))):
                try:
                    step = push_step(node.config, r, nu, push_speed, region)
                except ActionInfeasible:
                    tree.labels[node.index] = "fail"
                    continue
                child_config = step.outcome.config_after
                if child_config == node.config:
                    tree.labels[node.index] = "fail"
                    continue
                cost = node.cost + step.time
                depth = node.depth + 1
                prev = seen.get(child_config)
                if prev is not None and prev[0] <= cost and prev[1] <= depth:
                    continue
                seen[child_config] = (cost, depth)
                child = _Node(tree.add(child_config), child_config, node, step, depth, cost)
                tree.edges.append((node.index, child.index, r, step.time))
                if path_region(child_config).is_empty:
                    consider(child)
                else:
                    nxt.append(child)
        frontier = nxt

    if timed_out:
        outcome = Outcome.TIMEOUT
    elif best is None:
        outcome = Outcome.FAILURE
    else:
        outcome = Outcome.SUCCESS
    chain = best.path() if best is not None else [root]
    return PushPlan(
        "phis",
        outcome,
        [n.step for n in chain[1:]],
        [n.config for n in chain],
        time.perf_counter() - started,
        tree,
    )
