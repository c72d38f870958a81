import csv
import io
import json
import re

import pytest

from topopush.cli import main
from topopush.scenario import generate_simple, scene_to_dict


@pytest.fixture
def scenes(tmp_path):
    d = tmp_path / "scenes"
    assert main(["gen", "random-deep", "10", "--seed", "0", "--out-dir", str(d)]) == 0
    return d


def _csv_blocks(text):
    rows, summary = text.split("\n\n")
    return list(csv.DictReader(io.StringIO(rows))), list(csv.DictReader(io.StringIO(summary)))


def test_gen_count_and_bytes(tmp_path, scenes):
    files = sorted(scenes.glob("*.json"))
    assert [f.name for f in files] == [f"random-deep-{i:04d}.json" for i in range(10)]
    again = tmp_path / "again"
    main(["gen", "random-deep", "10", "--out-dir", str(again)])
    for f in files:
        assert (again / f.name).read_bytes() == f.read_bytes()


def test_gen_uses_env_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("TOPOPUSH_OUT_DIR", str(tmp_path / "env"))
    assert main(["gen", "simple", "2", "--seed", "7"]) == 0
    assert sorted(p.name for p in (tmp_path / "env").iterdir()) == ["simple-0007.json", "simple-0008.json"]


def test_solve_cleared_scene(tmp_path, capsys):
    doc = scene_to_dict(generate_simple(0))
    doc["obstacles"] = [[0.1, 0.05]]
    path = tmp_path / "clear.json"
    path.write_text(json.dumps(doc))
    assert main(["solve", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["outcome"] == "success" and out["action_count"] == 0
    assert "planning_wall_time" not in out


def test_solve_writes_plan(tmp_path, scenes):
    out = tmp_path / "plan.json"
    code = main(["solve", str(scenes / "random-deep-0001.json"), "-a", "phis", "-o", str(out)])
    plan = json.loads(out.read_text())
    assert code == (0 if plan["outcome"] == "success" else 2)
    assert plan["algorithm"] == "phis"
    assert len(plan["actions"]) == plan["action_count"]
    assert plan["total_time"] == pytest.approx(sum(a["time"] for a in plan["actions"]))


def test_solve_time_cap_zero_times_out(tmp_path, scenes, capsys):
    code = main(["solve", str(scenes / "random-deep-0000.json"), "--time-cap-s", "0"])
    assert code == 2
    assert json.loads(capsys.readouterr().out)["outcome"] == "timeout"


def test_solve_invalid_scene(tmp_path, capsys):
    doc = scene_to_dict(generate_simple(0))
    doc["obstacles"][1] = doc["obstacles"][0]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert main(["solve", str(bad)]) == 1
    assert "obstacles[0] and obstacles[1]" in capsys.readouterr().err
    assert main(["solve", str(tmp_path / "missing.json")]) == 1
    assert main(["solve"]) == 1


def test_batch_rows_and_summary(tmp_path, scenes):
    out = tmp_path / "r.csv"
    assert main(["batch", str(scenes), "-o", str(out)]) == 0
    rows, summary = _csv_blocks(out.read_text())
    assert len(rows) == 30
    assert [r["algorithm"] for r in rows[:3]] == ["phia", "phis", "ooa"]
    for s in summary:
        mine = [r for r in rows if r["algorithm"] == s["algorithm"]]
        assert int(s["runs"]) == len(mine) == 10
        assert float(s["success_rate"]) == sum(r["outcome"] == "success" for r in mine) / 10
        assert float(s["mean_actions"]) == pytest.approx(sum(int(r["action_count"]) for r in mine) / 10)
        assert float(s["mean_total_time"]) == pytest.approx(sum(float(r["total_time"]) for r in mine) / 10)


def test_batch_parallel_matches_sequential(tmp_path, scenes):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    main(["batch", str(scenes), "-o", str(a)])
    main(["batch", str(scenes), "--workers", "2", "-o", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_batch_bad_inputs(tmp_path, scenes):
    assert main(["batch", str(tmp_path / "nothing")]) == 1
    assert main(["batch", str(scenes), "--algorithms", "phia,magic"]) == 1


def test_batch_marks_broken_scene(tmp_path, scenes, capsys):
    (scenes / "zz-broken.json").write_text("{")
    main(["batch", str(scenes), "--algorithms", "phia"])
    rows, _ = _csv_blocks(capsys.readouterr().out)
    assert rows[-1]["scenario_id"] == "zz-broken" and rows[-1]["outcome"] == "error"


def test_render_empty_scene(tmp_path, capsys):
    doc = scene_to_dict(generate_simple(0))
    doc["obstacles"] = []
    p = tmp_path / "empty.json"
    p.write_text(json.dumps(doc))
    assert main(["render", str(p)]) == 0
    svg = capsys.readouterr().out
    assert svg.startswith("<svg") and 'class="target"' in svg
    assert 'class="obstacle' not in svg and 'class="corridor"' not in svg


def test_render_colors_and_determinism(tmp_path, scenes, capsys):
    p = scenes / "random-deep-0002.json"
    main(["render", str(p), "--radius", "0"])
    first = capsys.readouterr().out
    main(["render", str(p), "--radius", "0"])
    assert capsys.readouterr().out == first
    fills = re.findall(r'class="obstacle[^"]*"[^>]*fill="(#[0-9a-f]{6})"', first)
    assert len(fills) == 8 and len(set(fills)) == 8
    main(["render", str(p), "--radius", "10"])
    fills = re.findall(r'class="obstacle[^"]*"[^>]*fill="(#[0-9a-f]{6})"', capsys.readouterr().out)
    assert len(set(fills)) == 1


def test_render_plan(tmp_path, scenes, capsys):
    plan = tmp_path / "plan.json"
    main(["solve", str(scenes / "random-deep-0003.json"), "-a", "ooa", "-o", str(plan)])
    n = json.loads(plan.read_text())["action_count"]
    assert main(["render", str(plan)]) == 0
    svg = capsys.readouterr().out
    assert svg.count('class="sweep"') == n
    assert main(["render", str(tmp_path / "nope.json")]) == 1


def test_diagram(tmp_path, scenes, capsys):
    from topopush.path_region import path_region
    from topopush.scenario import load_scene

    p = scenes / "random-deep-0004.json"
    n = len(path_region(load_scene(p.read_text()).config).members)
    assert main(["diagram", str(p)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "birth,death"
    body = [l.split(",") for l in lines[1:]]
    assert len(body) == n
    deaths = [float(d) for _, d in body[:-1]]
    assert deaths == sorted(deaths) and body[-1] == ["0.0", "inf"]
    assert all(b == "0.0" for b, _ in body)


def test_diagram_empty_region(tmp_path):
    doc = scene_to_dict(generate_simple(0))
    doc["obstacles"] = [[0.1, 0.05]]
    p = tmp_path / "c.json"
    p.write_text(json.dumps(doc))
    assert main(["diagram", str(p)]) == 2


def test_help_exit_zero(capsys):
    assert main(["--help"]) == 0
    assert main(["solve", "x.json", "--h", "wide"]) == 1
