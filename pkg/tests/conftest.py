import os

import pytest

_criteria: dict = {}


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        type=int,
        default=int(os.environ.get("GORSIMP_TEST_SEED", "20240617")),
        help="seed for randomized property tests",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "property: standalone property suites")
    config.addinivalue_line("markers", "acceptance: acceptance criteria")


def pytest_report_header(config):
    return f"gorsimp test seed: {config.getoption('--seed')}"


@pytest.fixture
def seed(request):
    return request.config.getoption("--seed")


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1]
    if report.when == "call" or report.outcome != "passed":
        prev = _criteria.get(name)
        if prev is None or prev[0] == "PASS":
            _criteria[name] = ("PASS" if report.outcome == "passed" else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_criteria, key=lambda n: int(n.split("_")[2])):
        status, dur = _criteria[name]
        terminalreporter.write_line(f"{status}  {name}  ({dur:.2f}s)")
