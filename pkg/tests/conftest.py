import pytest

from metric_genesis.finite_topology import build_space

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _acceptance_markers.get(report.nodeid)
    if marker:
        number, title = marker
        previous = _acceptance.get(number, (title, True))[1]
        _acceptance[number] = (title, previous and report.passed)


_acceptance_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            _acceptance_markers[item.nodeid] = m.args


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, ok = _acceptance[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.fixture
def three_point():
    """Opens {}, {a}, {b,c}, X on {a,b,c}."""
    return build_space("abc", [set(), {"a"}, {"b", "c"}, {"a", "b", "c"}])


@pytest.fixture
def discrete3():
    return build_space("abc", [set(s) for s in ["", "a", "b", "c", "ab", "ac", "bc", "abc"]])


@pytest.fixture
def partition_tree_spec():
    return {
        "universe": ["x", "y", "z", "w"],
        "root": {"members": ["x", "y", "z", "w"], "children": [
            {"members": ["x", "y"], "children": [{"members": ["x"]}, {"members": ["y"]}]},
            {"members": ["z", "w"], "children": [{"members": ["z"]}, {"members": ["w"]}]},
        ]},
    }


@pytest.fixture
def overlap_tree_spec():
    return {
        "universe": ["x", "y", "z"],
        "root": {"members": ["x", "y", "z"],
                 "children": [{"members": ["x", "y"]}, {"members": ["y", "z"]}]},
    }
