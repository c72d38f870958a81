import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from topopush.geometry import Point2, Pose2, Workspace  # noqa: E402
from topopush.path_region import Configuration  # noqa: E402

from acceptance_log import RESULTS as ACCEPTANCE_RESULTS  # noqa: E402


@pytest.fixture
def ws():
    return Workspace()


@pytest.fixture
def make_config(ws):
    def make(obstacles, target=(0.55, 0.3), gripper=(0.0, 0.3), workspace=None):
        return Configuration(
            tuple(Point2(*p) for p in obstacles),
            Point2(*target),
            Pose2(Point2(*gripper), 0.0),
            workspace or ws,
        )

    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
