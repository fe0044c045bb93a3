import pytest

from socineff.axioms import arrow_context
from socineff.matching import make_problem


@pytest.fixture
def arrow():
    return arrow_context()


@pytest.fixture
def identical():
    # both individuals rank a over b
    return make_problem(["a", "b"], [[1, 0], [1, "9/10"]])


@pytest.fixture
def opposed():
    return make_problem(["a", "b"], [[1, 0], [0, 1]])


ACCEPTANCE_LINES = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when not in ("setup", "call"):
        return
    if rep.when == "setup" and rep.passed:
        return
    number, label = marker.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    verdict = "PASS" if rep.passed else "FAIL"
    line = f"criterion {number:>2}: {verdict}  {label} [{rep.duration:.1f}s]"
    ACCEPTANCE_LINES[number] = line + (f"  {detail}" if detail else "")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
