"""Scenes: file format and seeded generators for the experiment families."""

from __future__ import annotations

import enum
import json
import math
import random
from dataclasses import dataclass
from typing import Any, Optional

import jsonschema

from .geometry import GeometryError, Point2, Pose2, Workspace
from .path_region import Configuration, InfeasibleConfiguration, check_feasible, path_region
from .push_sim import travel_limit

__all__ = [
    "SCHEMA_VERSION",
    "SCENE_SCHEMA",
    "Family",
    "Scene",
    "SceneError",
    "GenerationError",
    "default_gripper",
    "generate_simple",
    "generate_random_deep",
    "generate",
    "scene_to_dict",
    "scene_from_dict",
    "save_scene",
    "load_scene",
    "exit_space_ok",
]

SCHEMA_VERSION = 1
MAX_REJECTIONS = 10_000
# keeps corridor obstacles far enough in front of the target that their sweep
# does not cross the target disc
TARGET_STANDOFF = 0.005

_point = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
SCENE_SCHEMA: dict[str, Any] = {
    "type": "object",
    "required": ["version", "id", "family", "seed", "workspace", "obstacles", "target", "gripper"],
    "properties": {
        "version": {"const": SCHEMA_VERSION},
        "id": {"type": "string"},
        "family": {"enum": ["Manual", "Simple4", "RandomDeep"]},
        "seed": {"type": "integer", "minimum": 0},
        "workspace": {
            "type": "object",
            "required": ["depth", "width", "arm_width", "gripper_width", "object_radius"],
            "properties": {
                k: {"type": "number"}
                for k in ("depth", "width", "arm_width", "gripper_width", "object_radius")
            },
            "additionalProperties": False,
        },
        "obstacles": {"type": "array", "items": _point},
        "target": _point,
        "gripper": {
            "type": "object",
            "required": ["x", "y", "heading"],
            "properties": {k: {"type": "number"} for k in ("x", "y", "heading")},
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}


class Family(str, enum.Enum):
    MANUAL = "Manual"
    SIMPLE4 = "Simple4"
    RANDOM_DEEP = "RandomDeep"


class SceneError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class Scene:
    ws: Workspace
    config: Configuration
    id: str
    family: Family = Family.MANUAL
    seed: int = 0


def default_gripper(ws: Workspace) -> Pose2:
    """Gripper waiting at the middle of the shelf mouth, facing in."""
    return Pose2(Point2(0.0, 0.5 * ws.width), 0.0)


def _pair_ok(p: Point2, others: list[Point2], min_d: float) -> bool:
    return all(math.dist(p, q) >= min_d for q in others)


def exit_space_ok(config: Configuration) -> bool:
    """Every corridor obstacle has one side with room to be swept out.

    For each member, the discs sharing its push column (frame |dx| < 2 rho)
    must fit, stacked, between the corridor edge and the wall on at least
    one side.
    """
    region = path_region(config)
    ws = config.ws
    rho = ws.object_radius
    box_lo, box_hi = Point2(rho, rho), Point2(ws.depth - rho, ws.width - rho)
    frame = [region.to_frame(o) for o in config.obstacles]
    for m in region.members:
        xm = frame[m].x
        fits = False
        for sign, edge in ((1, region.corridor.hi.y), (-1, region.corridor.lo.y)):
            start = region.to_world((xm, edge + sign * rho))
            if not (box_lo.x <= start.x <= box_hi.x and box_lo.y <= start.y <= box_hi.y):
                continue
            d = region.direction_to_world((0.0, float(sign)))
            room = travel_limit(start, d, box_lo, box_hi) + 2.0 * rho
            column = sum(
                1 for q in frame
                if abs(q.x - xm) < 2.0 * rho and sign * q.y >= sign * frame[m].y
            )
            if column * 2.0 * rho < room:
                fits = True
                break
        if not fits:
            return False
    return True


def _standoff_ok(config: Configuration) -> bool:
    region = path_region(config)
    limit = region.target.x - 3.0 * config.ws.object_radius - TARGET_STANDOFF
    return all(region.to_frame(config.obstacles[i]).x < limit for i in region.members)


def generate_simple(seed: int, ws: Optional[Workspace] = None) -> Scene:
    """Four obstacles, all farther than arm width plus radius from the walls."""
    ws = ws or Workspace()
    rng = random.Random(seed)
    rho = ws.object_radius
    margin = ws.arm_width + rho
    if ws.width - 2.0 * margin <= 0.0:
        raise GenerationError("shelf too narrow for the simple family")
    gripper = default_gripper(ws)
    for _ in range(MAX_REJECTIONS):
        target = Point2(
            rng.uniform(max(0.5 * ws.depth, rho) + 1e-9, ws.depth - rho),
            rng.uniform(margin + 1e-9, ws.width - margin),
        )
        obstacles: list[Point2] = []
        for _ in range(MAX_REJECTIONS):
            if len(obstacles) == 4:
                break
            p = Point2(rng.uniform(rho, ws.depth - rho), rng.uniform(margin + 1e-9, ws.width - margin))
            if _pair_ok(p, obstacles + [target], 2.0 * rho):
                obstacles.append(p)
        if len(obstacles) < 4:
            continue
        config = Configuration(tuple(obstacles), target, gripper, ws)
        if _standoff_ok(config) and exit_space_ok(config):
            return Scene(ws, config, f"simple-{seed:04d}", Family.SIMPLE4, seed)
    raise GenerationError(f"no feasible simple scene after {MAX_REJECTIONS} attempts (seed {seed})")


def generate_random_deep(seed: int, n_obstacles: int = 8, ws: Optional[Workspace] = None) -> Scene:
    """Target deep in the shelf with at least one obstacle in its corridor."""
    if n_obstacles < 1:
        raise ValueError("n_obstacles must be >= 1")
    ws = ws or Workspace()
    rng = random.Random(seed)
    rho = ws.object_radius
    gripper = default_gripper(ws)
    for _ in range(MAX_REJECTIONS):
        target = Point2(
            rng.uniform(0.75 * ws.depth + 1e-9, ws.depth - rho),
            rng.uniform(rho, ws.width - rho),
        )
        try:
            empty = path_region(Configuration((), target, gripper, ws))
        except GeometryError:
            continue
        obstacles: list[Point2] = []
        # first obstacle goes into the corridor so the scene is never trivially clear
        c = empty.corridor
        x_hi = empty.target.x - 3.0 * rho - TARGET_STANDOFF
        if x_hi <= c.lo.x:
            continue
        q = Point2(rng.uniform(c.lo.x, x_hi), rng.uniform(c.lo.y, c.hi.y))
        p = empty.to_world(q)
        if not (rho <= p.x <= ws.depth - rho and rho <= p.y <= ws.width - rho):
            continue
        if not _pair_ok(p, [target], 2.0 * rho):
            continue
        obstacles.append(p)
        for _ in range(MAX_REJECTIONS):
            if len(obstacles) == n_obstacles:
                break
            p = Point2(rng.uniform(rho, 0.75 * ws.depth), rng.uniform(rho, ws.width - rho))
            if _pair_ok(p, obstacles + [target], 2.0 * rho):
                obstacles.append(p)
        if len(obstacles) < n_obstacles:
            continue
        config = Configuration(tuple(obstacles), target, gripper, ws)
        if path_region(config).members and _standoff_ok(config) and exit_space_ok(config):
            return Scene(ws, config, f"random-deep-{seed:04d}", Family.RANDOM_DEEP, seed)
    raise GenerationError(f"no feasible random-deep scene after {MAX_REJECTIONS} attempts (seed {seed})")


def generate(family: Family | str, seed: int, ws: Optional[Workspace] = None, **kwargs) -> Scene:
    family = Family(family)
    if family is Family.SIMPLE4:
        return generate_simple(seed, ws)
    if family is Family.RANDOM_DEEP:
        return generate_random_deep(seed, ws=ws, **kwargs)
    raise GenerationError("manual scenes are written by hand, not generated")


def scene_to_dict(scene: Scene) -> dict[str, Any]:
    ws = scene.ws
    g = scene.config.gripper
    return {
        "version": SCHEMA_VERSION,
        "id": scene.id,
        "family": scene.family.value,
        "seed": scene.seed,
        "workspace": {
            "depth": ws.depth,
            "width": ws.width,
            "arm_width": ws.arm_width,
            "gripper_width": ws.gripper_width,
            "object_radius": ws.object_radius,
        },
        "obstacles": [[p.x, p.y] for p in scene.config.obstacles],
        "target": [scene.config.target.x, scene.config.target.y],
        "gripper": {"x": g.position.x, "y": g.position.y, "heading": g.heading},
    }


def _finite(value: float, path: str) -> float:
    if not math.isfinite(value):
        raise SceneError(path, f"non-finite number {value!r}")
    return float(value)


def scene_from_dict(doc: Any) -> Scene:
    try:
        jsonschema.validate(doc, SCENE_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SceneError(path, exc.message) from None

    w = doc["workspace"]
    try:
        ws = Workspace(**{k: _finite(v, f"workspace/{k}") for k, v in w.items()})
    except GeometryError as exc:
        raise SceneError("workspace", str(exc)) from None
    obstacles = tuple(
        Point2(_finite(x, f"obstacles/{i}/0"), _finite(y, f"obstacles/{i}/1"))
        for i, (x, y) in enumerate(doc["obstacles"])
    )
    target = Point2(_finite(doc["target"][0], "target/0"), _finite(doc["target"][1], "target/1"))
    g = doc["gripper"]
    gripper = Pose2(
        Point2(_finite(g["x"], "gripper/x"), _finite(g["y"], "gripper/y")),
        _finite(g["heading"], "gripper/heading"),
    )
    if not -math.pi < gripper.heading <= math.pi:
        raise SceneError("gripper/heading", "heading must lie in (-pi, pi]")
    config = Configuration(obstacles, target, gripper, ws)
    try:
        check_feasible(config)
    except InfeasibleConfiguration as exc:
        raise SceneError("obstacles", str(exc)) from None
    return Scene(ws, config, doc["id"], Family(doc["family"]), doc["seed"])


def save_scene(scene: Scene) -> str:
    return json.dumps(scene_to_dict(scene), indent=2) + "\n"


def load_scene(text: str) -> Scene:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError("<root>", f"invalid JSON: {exc}") from None
    return scene_from_dict(doc)
