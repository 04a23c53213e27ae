import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from frobkit.rings import registry_ring  # noqa: E402


@pytest.fixture(scope="session")
def A1():
    return registry_ring("A1", 3)


@pytest.fixture(scope="session")
def quadric():
    return registry_ring("quadric3", 2)


_criteria: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, name): acceptance criterion")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when not in ("setup", "call"):
        return
    cid, name = mark.args
    failed = call.excinfo is not None and not call.excinfo.errisinstance(pytest.skip.Exception)
    if call.when == "call" or failed:
        _criteria[cid] = (name, not failed)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria):
        name, ok = _criteria[cid]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {cid:2d} {name}")
