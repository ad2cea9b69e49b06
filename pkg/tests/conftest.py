import pytest

_CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_logreport(report):
    crit = getattr(report, "_criterion", None)
    if crit is None or not (report.when == "call" or report.failed):
        return
    n, title = crit
    before = _CRITERIA.get(n, (True, title))[0]
    _CRITERIA[n] = (before and report.passed, title)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is not None:
        report._criterion = tuple(m.args)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        passed, title = _CRITERIA[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if passed else 'FAIL'}  {title}")
