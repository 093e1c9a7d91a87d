import pytest

# (criterion, passed) pairs recorded by test_acceptance.py
ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion(request):
    """Record the enclosing acceptance test's outcome under its docstring."""
    name = request.node.function.__doc__.strip().splitlines()[0]
    yield
    call = getattr(request.node, "rep_call", None)
    ACCEPTANCE_RESULTS.append((name, call is not None and call.passed))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}")
