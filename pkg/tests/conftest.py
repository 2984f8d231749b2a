import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_acceptance: list[tuple[str, str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        _acceptance.append((marker.args[0], marker.kwargs.get("title", item.name), rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    # one line per criterion; a criterion passes only if every test tagged with it passed
    merged: dict[str, tuple[str, bool]] = {}
    for num, title, outcome in _acceptance:
        prev_title, prev_ok = merged.get(num, (title, True))
        merged[num] = (prev_title, prev_ok and outcome == "passed")
    terminalreporter.section("acceptance criteria")
    for num in sorted(merged, key=int):
        title, ok = merged[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title}")
