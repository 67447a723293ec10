import pytest

_results: dict[int, str] = {}
_names: dict[int, str] = {}

def pytest_runtest_logreport(report):
    marker = getattr(report, "criterion", None)
    if marker is None:
        return
    n, name = marker
    _names[n] = name
    if report.failed:
        _results[n] = "FAIL"
    elif report.when == "call" and n not in _results:
        _results[n] = "PASS"

@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = (m.args[0], item.name)

def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        terminalreporter.write_line(f"{_results[n]}  criterion {n:2d}  {_names[n]}")
