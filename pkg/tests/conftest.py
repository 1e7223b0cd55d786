import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from diffmv.scene import BUNDLED, parse_scene  # noqa: E402


@pytest.fixture(scope="session")
def scenes():
    return {name: parse_scene(name) for name in BUNDLED}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
