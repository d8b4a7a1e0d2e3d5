import re

import pytest

from lpagrade.graph import Graph, LadderGraph, ladder_instantiate


def make_loop():
    return Graph.from_edges(["v"], [("e", "v", "v")])


def make_l2():
    return Graph.from_edges(["v"], [("e", "v", "v"), ("f", "v", "v")])


def make_chain():
    return Graph.from_edges(["v", "w"], [("e", "v", "w")])


def make_c2():
    return Graph.from_edges(["a", "b"], [("e1", "a", "b"), ("e2", "b", "a")])


@pytest.fixture
def loop():
    return make_loop()


@pytest.fixture
def l2():
    return make_l2()


@pytest.fixture
def chain():
    return make_chain()


@pytest.fixture
def c2():
    return make_c2()


@pytest.fixture
def ladder1():
    return LadderGraph((), 1, 0)


@pytest.fixture
def ladder2():
    return LadderGraph((), 2, 0)


@pytest.fixture
def ladder4():
    return ladder_instantiate(LadderGraph((), 2, 0), 4)


# one summary line per acceptance criterion

_ACCEPTANCE: dict[int, list[str]] = {}
_CRITERION = re.compile(r"test_criterion_(\d+)[a-z]?_")


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    m = _CRITERION.search(report.nodeid)
    if not m:
        return
    n = int(m.group(1))
    if report.when == "call" or report.failed:
        _ACCEPTANCE.setdefault(n, []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        outcomes = _ACCEPTANCE[n]
        ok = all(o == "passed" for o in outcomes)
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'} ({len(outcomes)} checks)")
