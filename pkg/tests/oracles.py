"""Independent reference computations used by the tests."""

from __future__ import annotations

import math
from itertools import combinations

from topopush.geometry import rotate
from topopush.path_region import path_region
from topopush.planners import ActionInfeasible, push_step, radii_for


def kruskal_brute(points):
    """O(n^3) Kruskal: repeatedly take the shortest edge between two labels."""
    n = len(points)
    label = list(range(n))
    deaths = []
    for _ in range(n - 1):
        best = None
        for i, j in combinations(range(n), 2):
            if label[i] == label[j]:
                continue
            d = math.dist(points[i], points[j])
            if best is None or d < best[0]:
                best = (d, i, j)
        d, i, j = best
        old, new = label[j], label[i]
        label = [new if l == old else l for l in label]
        deaths.append(d)
    return sorted(deaths)


def chain_components(points, r):
    """Components by exhaustive reachability over pairs at distance <= r."""
    n = len(points)
    seen, out = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = {s}, [s]
        while stack:
            a = stack.pop()
            for b in range(n):
                if b not in comp and math.dist(points[a], points[b]) <= r:
                    comp.add(b)
                    stack.append(b)
        seen |= comp
        out.append(tuple(sorted(comp)))
    return sorted(out)


def tangent_angle_closed_form(p, w):
    """Line through the origin at angle theta is at distance w below p."""
    return math.atan2(p[1], p[0]) - math.asin(w / math.hypot(p[0], p[1]))


def exhaustive_min_time(config, nu, h, depth, push_speed=0.1):
    """Minimum total push time over every radius sequence of length <= depth.

    Returns (best_time or None, max distinct radii seen at any node, whether
    every branch resolved to success or failure within ``depth``).
    """
    stats = {"width": 0, "resolved": True}

    def rec(cfg, remaining, acc):
        region = path_region(cfg)
        if region.is_empty:
            return acc
        if remaining == 0:
            stats["resolved"] = False
            return None
        radii = sorted(set(radii_for(cfg, region, nu, h)))
        stats["width"] = max(stats["width"], len(radii))
        best = None
        for r in radii:
            try:
                step = push_step(cfg, r, nu, push_speed, region)
            except ActionInfeasible:
                continue
            nxt = step.outcome.config_after
            if nxt == cfg:
                continue
            got = rec(nxt, remaining - 1, acc + step.time)
            if got is not None and (best is None or got < best):
                best = got
        return best

    best = rec(config, depth, 0.0)
    return best, stats["width"], stats["resolved"]


def manual_members(config, angle, pivot):
    """Rotate everything by hand, then apply the axis-aligned corridor test."""
    w = config.ws.arm_width

    def f(p):
        return rotate((p[0] - pivot[0], p[1] - pivot[1]), -angle)

    t, g = f(config.target), f(config.gripper.position)
    return tuple(
        i for i, o in enumerate(config.obstacles)
        if t.y - w <= f(o).y <= t.y + w and g.x <= f(o).x < t.x
    )
