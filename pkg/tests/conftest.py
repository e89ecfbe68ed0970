import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        num, text = marker.args
        detail = dict(item.user_properties).get("detail")
        if detail:
            text = f"{text} [{detail}]"
        prev = _criteria.get(num, (True, text))
        _criteria[num] = (prev[0] and rep.passed, text)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        ok, text = _criteria[num]
        terminalreporter.write_line(f"AC{num:<3}{'PASS' if ok else 'FAIL'}  {text}")
