"""Run planners over a directory of scenes and tabulate the results."""

from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .path_region import is_cleared
from .persistence import gripper_clearance_h
from .planners import DEFAULT_H, DEFAULT_NU, Outcome, PushPlan, ooa, phia, phis
from .push_sim import DEFAULT_PUSH_SPEED
from .scenario import Scene, SceneError, load_scene

__all__ = ["ALGORITHMS", "PlannerSettings", "RunRecord", "solve", "run_batch", "records_to_csv", "summarize"]

ALGORITHMS = ("phia", "phis", "ooa")


@dataclass(frozen=True)
class PlannerSettings:
    nu: float = DEFAULT_NU
    h: Optional[float] = DEFAULT_H  # None: derive from the workspace
    time_cap_s: Optional[float] = 300.0
    push_speed: float = DEFAULT_PUSH_SPEED
    max_actions: int = 50
    max_depth: int = 6
    ooa_radius: float = 0.01


@dataclass(frozen=True)
class RunRecord:
    scenario_id: str
    algorithm: str
    outcome: str
    action_count: int
    total_time: float
    planning_wall_time: float = 0.0


def solve(scene: Scene, algorithm: str, settings: PlannerSettings = PlannerSettings()) -> PushPlan:
    h = gripper_clearance_h(scene.ws) if settings.h is None else settings.h
    config = scene.config
    if algorithm == "phia":
        plan = phia(config, settings.nu, h, settings.max_actions, settings.time_cap_s, settings.push_speed)
    elif algorithm == "phis":
        plan = phis(config, settings.nu, h, settings.max_depth, settings.time_cap_s, settings.push_speed)
    elif algorithm == "ooa":
        plan = ooa(config, settings.max_actions, settings.ooa_radius, settings.nu,
                   settings.time_cap_s, settings.push_speed)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    if plan.outcome is Outcome.SUCCESS and not is_cleared(plan.final):
        raise AssertionError(f"{algorithm} reported success on an uncleared configuration")
    return plan


def _run_one(job: tuple[str, str, PlannerSettings]) -> list[RunRecord]:
    path, algorithms, settings = job
    try:
        scene = load_scene(Path(path).read_text())
    except (OSError, SceneError):
        return [RunRecord(Path(path).stem, a, "error", 0, 0.0) for a in algorithms.split(",")]
    out = []
    for algorithm in algorithms.split(","):
        plan = solve(scene, algorithm, settings)
        out.append(RunRecord(scene.id, algorithm, plan.outcome.value, plan.action_count,
                             plan.total_time, plan.wall_time))
    return out


def run_batch(
    scene_paths: Iterable[Path],
    algorithms: Sequence[str] = ALGORITHMS,
    settings: PlannerSettings = PlannerSettings(),
    workers: int = 1,
) -> list[RunRecord]:
    """Solve every scene with every algorithm; rows ordered by scene id then algorithm."""
    jobs = [(str(p), ",".join(algorithms), settings) for p in sorted(scene_paths)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_one, jobs))
    else:
        chunks = [_run_one(j) for j in jobs]
    rank = {a: i for i, a in enumerate(algorithms)}
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.scenario_id, rank.get(r.algorithm, len(rank))))
    return records


def summarize(records: Sequence[RunRecord]) -> list[dict]:
    """Per-algorithm success rate, mean actions and mean push time over all runs."""
    rows = []
    for algorithm in dict.fromkeys(r.algorithm for r in records):
        runs = [r for r in records if r.algorithm == algorithm and r.outcome != "error"]
        n = len(runs)
        rows.append({
            "algorithm": algorithm,
            "runs": n,
            "success_rate": sum(r.outcome == "success" for r in runs) / n if n else 0.0,
            "mean_actions": sum(r.action_count for r in runs) / n if n else 0.0,
            "mean_total_time": sum(r.total_time for r in runs) / n if n else 0.0,
        })
    return rows


def records_to_csv(records: Sequence[RunRecord], wall_time: bool = False) -> str:
    """Result rows, a blank line, then the per-algorithm summary block.

    Wall-clock planning time is opt-in because it differs between runs.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["scenario_id", "algorithm", "outcome", "action_count", "total_time"]
    if wall_time:
        header.append("planning_wall_time")
    writer.writerow(header)
    for r in records:
        row = [r.scenario_id, r.algorithm, r.outcome, r.action_count, repr(r.total_time)]
        if wall_time:
            row.append(repr(r.planning_wall_time))
        writer.writerow(row)
    buf.write("\n")
    writer.writerow(["algorithm", "runs", "success_rate", "mean_actions", "mean_total_time"])
    for s in summarize(records):
        writer.writerow([s["algorithm"], s["runs"], repr(s["success_rate"]),
                         repr(s["mean_actions"]), repr(s["mean_total_time"])])
    return buf.getvalue()

