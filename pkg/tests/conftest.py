import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("repo", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")

_CRITERIA: list[str] = []


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    old = os.environ.get("PIERI_RANK_CACHE")
    os.environ["PIERI_RANK_CACHE"] = str(tmp_path_factory.mktemp("artifact-cache"))
    yield
    if old is None:
        os.environ.pop("PIERI_RANK_CACHE", None)
    else:
        os.environ["PIERI_RANK_CACHE"] = old


@pytest.fixture
def report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def _report(label: str, ok: bool, detail: str = "") -> bool:
        line = f"[{'PASS' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else "")
        _CRITERIA.append(line)
        print(line)
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA:
            terminalreporter.write_line(line)
