import pytest

CRITERIA = {
    1: "oracle equivalence, n in {4,6,8,9,12,16,18,24}, |A| <= 4",
    2: "good orders 12, 16, 36, 30, 60 have no aperiodic pairs",
    3: "Z_72 counts 3 (1) and reverse 6 (2)",
    4: "Z_120 counts 8 (2) and reverse 18 (4)",
    5: "Coven-Meyerowitz T1/T2 on every produced pair",
    6: "cyclotomic identities for n <= 200",
    7: "n = 1050 has no aperiodic complement; n = 27225 LP export",
    8: "byte-identical JSON for criteria 1 and 3",
    9: "n = 180 per-iteration CSV, >= 10 positive times",
}

_results: dict[int, list[bool]] = {}


@pytest.fixture
def criterion(request):
    """Mark the test as evidence for an acceptance criterion; recorded on teardown."""
    marker = request.node.get_closest_marker("criterion")
    number = marker.args[0]
    yield number
    call = getattr(request.node, "_call_report", None)
    _results.setdefault(number, []).append(call is not None and call.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call":
        item._call_report = report


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion evidenced by the test")


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number, label in CRITERIA.items():
        runs = _results.get(number)
        if runs is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {number}: {label}")
