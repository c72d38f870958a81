"""Command line entry point: gen, solve, batch, render, diagram.

Exit codes: 0 success, 1 usage or input error, 2 planning failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .batch import ALGORITHMS, PlannerSettings, records_to_csv, run_batch, solve
from .geometry import GeometryError, Point2, Workspace
from .path_region import path_region
from .persistence import diagram_to_csv, zero_dim_persistence
from .planners import DEFAULT_H, DEFAULT_NU, Outcome
from .push_sim import DEFAULT_PUSH_SPEED
from .render import render_svg
from .scenario import (
    Family,
    GenerationError,
    SceneError,
    generate,
    load_scene,
    save_scene,
    scene_from_dict,
    scene_to_dict,
)

OUT_DIR_ENV = "TOPOPUSH_OUT_DIR"
EXIT_OK, EXIT_INPUT, EXIT_PLANNING = 0, 1, 2

FAMILY_NAMES = {"simple": Family.SIMPLE4, "random-deep": Family.RANDOM_DEEP}


class CliError(Exception):
    pass


def _default_out_dir() -> Path:
    return Path(os.environ.get(OUT_DIR_ENV, "."))


def _h_value(text: str) -> Optional[float]:
    if text == "auto":
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--h expects a number or 'auto', got {text!r}")


def _read_workspace(path: Optional[str]) -> Optional[Workspace]:
    if path is None:
        return None
    try:
        doc = json.loads(Path(path).read_text())
        return Workspace(**doc.get("workspace", doc))
    except (OSError, ValueError, TypeError) as exc:
        raise CliError(f"{path}: cannot read workspace: {exc}")


def _read_scene(path: str):
    try:
        return load_scene(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}")
    except SceneError as exc:
        raise CliError(f"{path}: {exc}")


def _write(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    try:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
    except OSError as exc:
        raise CliError(f"{out}: {exc.strerror or exc}")


def _settings(args) -> PlannerSettings:
    return PlannerSettings(
        nu=args.nu,
        h=args.h,
        time_cap_s=args.time_cap_s,
        push_speed=args.push_speed,
        max_actions=args.max_actions,
        max_depth=args.max_depth,
    )


def cmd_gen(args) -> int:
    ws = _read_workspace(args.workspace)
    out_dir = Path(args.out_dir) if args.out_dir else _default_out_dir()
    family = FAMILY_NAMES[args.family]
    extra = {"n_obstacles": args.n_obstacles} if family is Family.RANDOM_DEEP else {}
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"{out_dir}: {exc.strerror or exc}")
    for seed in range(args.seed, args.seed + args.count):
        try:
            scene = generate(family, seed, ws, **extra)
        except GenerationError as exc:
            raise CliError(str(exc))
        path = out_dir / f"{scene.id}.json"
        try:
            path.write_text(save_scene(scene))
        except OSError as exc:
            raise CliError(f"{path}: {exc.strerror or exc}")
    print(f"wrote {args.count} scenes to {out_dir}", file=sys.stderr)
    return EXIT_OK


def cmd_solve(args) -> int:
    scene = _read_scene(args.scene)
    plan = solve(scene, args.algorithm, _settings(args))
    doc = plan.to_dict(scene.id)
    if not args.wall_time:
        del doc["planning_wall_time"]
    doc["final_obstacles"] = [list(p) for p in plan.final.obstacles]
    doc["scene"] = scene_to_dict(scene)
    _write(json.dumps(doc, indent=2) + "\n", args.output)
    return EXIT_OK if plan.outcome is Outcome.SUCCESS else EXIT_PLANNING


def cmd_batch(args) -> int:
    scene_dir = Path(args.scene_dir)
    paths = sorted(scene_dir.glob("*.json"))
    if not paths:
        raise CliError(f"{scene_dir}: no scene files")
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    for a in algorithms:
        if a not in ALGORITHMS:
            raise CliError(f"unknown algorithm {a!r}")
    records = run_batch(paths, algorithms, _settings(args), workers=args.workers)
    _write(records_to_csv(records, wall_time=args.wall_time), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    try:
        doc = json.loads(Path(args.input).read_text())
    except OSError as exc:
        raise CliError(f"{args.input}: {exc.strerror or exc}")
    except ValueError as exc:
        raise CliError(f"{args.input}: invalid JSON: {exc}")
    steps, final = [], None
    try:
        if isinstance(doc, dict) and "scene" in doc and "actions" in doc:
            scene = scene_from_dict(doc["scene"])
            steps = doc["actions"]
            if "final_obstacles" in doc:
                final = scene.config.with_obstacles([Point2(*p) for p in doc["final_obstacles"]])
        else:
            scene = scene_from_dict(doc)
    except SceneError as exc:
        raise CliError(f"{args.input}: {exc}")
    svg = render_svg(scene.config, args.radius, steps, final, title=scene.id)
    _write(svg, args.output)
    return EXIT_OK


def cmd_diagram(args) -> int:
    scene = _read_scene(args.scene)
    region = path_region(scene.config)
    if region.is_empty:
        print(f"{args.scene}: path region is empty, no diagram", file=sys.stderr)
        return EXIT_PLANNING
    pts = [scene.config.obstacles[i] for i in region.members]
    _write(diagram_to_csv(zero_dim_persistence(pts)), args.output)
    return EXIT_OK


def _planner_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--nu", type=float, default=DEFAULT_NU, help="persistence margin (m)")
    p.add_argument("--h", type=_h_value, default=DEFAULT_H,
                   help="minimum persistent radius (m), or 'auto' for 1.1*gripper + 2*radius")
    p.add_argument("--time-cap-s", type=float, default=300.0, help="planning wall-clock cap")
    p.add_argument("--push-speed", type=float, default=DEFAULT_PUSH_SPEED, help="m/s")
    p.add_argument("--max-actions", type=int, default=50)
    p.add_argument("--max-depth", type=int, default=6, help="search depth for phis")
    p.add_argument("--wall-time", action="store_true",
                   help="include planning wall time (makes output run-dependent)")
    p.add_argument("-o", "--output", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topopush", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate seeded scenes")
    p.add_argument("family", choices=sorted(FAMILY_NAMES))
    p.add_argument("count", type=int)
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--n-obstacles", type=int, default=8)
    p.add_argument("--workspace", help="JSON file with workspace dimensions")
    p.add_argument("--out-dir", help=f"defaults to ${OUT_DIR_ENV} or the current directory")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="plan pushes for one scene")
    p.add_argument("scene")
    p.add_argument("-a", "--algorithm", choices=ALGORITHMS, default="phia")
    _planner_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("batch", help="run planners over a scene directory")
    p.add_argument("scene_dir")
    p.add_argument("--algorithms", default=",".join(ALGORITHMS))
    p.add_argument("--workers", type=int, default=1)
    _planner_flags(p)
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("render", help="draw a scene or plan as SVG")
    p.add_argument("input", help="scene JSON or plan JSON from solve")
    p.add_argument("--radius", type=float, default=0.0, help="component radius for coloring")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("diagram", help="persistence diagram of the path region as CSV")
    p.add_argument("scene")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_diagram)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except (CliError, GeometryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
