import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from cospectral_trees.fixtures import hub_tree, spider_tree  # noqa: E402


@pytest.fixture
def spider():
    return spider_tree()


@pytest.fixture
def hub():
    return hub_tree()


@pytest.fixture
def data_dir():
    return Path(__file__).resolve().parents[1] / "data"


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def verdict():
    """Record one summary line per acceptance criterion."""

    def record(name: str, ok: bool, detail: str) -> bool:
        ACCEPTANCE_LINES.append(f"{name} {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
