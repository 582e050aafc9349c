_ACCEPTANCE_RESULTS: list[tuple[str, str]] = []


def pytest_runtest_makereport(item, call):
    if call.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0] if marker.args else item.name
    _ACCEPTANCE_RESULTS.append((label, "PASS" if call.excinfo is None else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.write_sep("=", "adapter conformance")
    for label, outcome in _ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{outcome}: {label}")
