import math
import random

import pytest

from oracles import manual_members
from topopush.path_region import (
    InfeasibleConfiguration,
    check_feasible,
    is_cleared,
    is_feasible,
    path_region,
)


def test_unrotated_corridor(make_config):
    region = path_region(make_config([], target=(0.5, 0.3)))
    assert region.angle == 0.0
    assert region.corridor.lo == pytest.approx((0.0, 0.18))
    assert region.corridor.hi == pytest.approx((0.5, 0.42))
    assert region.members == ()


def test_membership_bounds(make_config):
    # closed y bounds, half-open x bound at the target
    cfg = make_config(
        [(0.2, 0.3), (0.2, 0.18), (0.2, 0.42), (0.2, 0.12), (0.5, 0.38), (0.56, 0.2)],
        target=(0.5, 0.30),
    )
    assert path_region(cfg).members == (0, 1, 2)


def test_object_at_target_x_is_excluded(make_config):
    cfg = make_config([(0.5, 0.38)], target=(0.5, 0.3))
    assert is_cleared(cfg)
    assert not is_cleared(make_config([(0.25, 0.3)], target=(0.5, 0.3)))
    assert is_cleared(make_config([], target=(0.5, 0.3)))


def test_gripper_x_bounds_corridor(make_config):
    cfg = make_config([(0.1, 0.3), (0.3, 0.3)], target=(0.5, 0.3), gripper=(0.2, 0.3))
    assert path_region(cfg).members == (1,)


def test_rotated_region_example(make_config):
    cfg = make_config([(0.2, 0.3), (0.3, 0.45), (0.1, 0.5)], target=(0.4, 0.55))
    region = path_region(cfg)
    assert region.angle == pytest.approx(0.7646, abs=1e-4)
    assert region.target.y == pytest.approx(cfg.ws.arm_width, abs=1e-9)
    assert region.members == manual_members(cfg, region.angle, region.pivot)


def test_corridor_height_is_twice_arm_width(make_config):
    for target in [(0.5, 0.3), (0.45, 0.55), (0.5, 0.05)]:
        c = path_region(make_config([], target=target)).corridor
        assert c.hi.y - c.lo.y == pytest.approx(2 * 0.12, abs=1e-12)


def test_random_rotated_membership_and_relabel(make_config):
    rng = random.Random(7)
    checked = 0
    while checked < 40:
        near_n = rng.random() < 0.5
        ty = 0.6 - rng.uniform(0.03, 0.12) if near_n else rng.uniform(0.03, 0.12)
        target = (rng.uniform(0.3, 0.57), ty)
        obs = []
        while len(obs) < 8:
            p = (rng.uniform(0.03, 0.57), rng.uniform(0.03, 0.57))
            if all(math.dist(p, q) >= 0.06 for q in obs + [target]):
                obs.append(p)
        cfg = make_config(obs, target=target)
        region = path_region(cfg)
        assert region.rotated
        assert region.members == manual_members(cfg, region.angle, region.pivot)
        perm = list(range(len(obs)))
        rng.shuffle(perm)
        shuffled = make_config([obs[i] for i in perm], target=target)
        assert sorted(perm[i] for i in path_region(shuffled).members) == list(region.members)
        checked += 1


def test_infeasible_rejected(make_config):
    with pytest.raises(InfeasibleConfiguration, match=r"obstacles\[0\] and obstacles\[1\]"):
        check_feasible(make_config([(0.2, 0.3), (0.23, 0.3)]))
    with pytest.raises(InfeasibleConfiguration):
        path_region(make_config([(0.2, 0.01)]))
    assert not is_feasible(make_config([(0.2, 0.3)], target=(0.21, 0.3)))
    assert is_feasible(make_config([(0.2, 0.3), (0.26, 0.3)]))
