import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_makereport(item, call):
    if call.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.kwargs.get("label") or marker.args[0] if marker.args else item.name
    outcome = "PASS" if call.excinfo is None else "FAIL"
    _ACCEPTANCE_RESULTS.append((label, outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for label, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{outcome}: {label}")
