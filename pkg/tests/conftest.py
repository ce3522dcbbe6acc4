import itertools
import os

import pytest

from batchcodes.bigraph import BiGraph
from batchcodes.constructions import gq_incidence, lazebnik, split_left, zigzag

# x1 x2 x3 with parities c4 = x1+x2, c5 = x1, c6 = x2+x3, c7 = x1+x3, c8 = x1+x2+x3
EXAMPLE_ADJ = [[0, 1, 3, 4], [0, 2, 4], [2, 3, 4]]


@pytest.fixture
def example_graph():
    return BiGraph(3, 5, EXAMPLE_ADJ)


def complete_bipartite(a, b):
    return BiGraph(a, b, [list(range(b)) for _ in range(a)])


CONSTRUCTED = {
    "zigzag(2,2)": lambda: zigzag(2, 2),
    "zigzag(2,3)": lambda: zigzag(2, 3),
    "zigzag(3,2)": lambda: zigzag(3, 2),
    "zigzag(3,3)": lambda: zigzag(3, 3),
    "zigzag(5,2)": lambda: zigzag(5, 2),
    "zigzag(5,3)": lambda: zigzag(5, 3),
    "lazebnik(3,1,1)": lambda: lazebnik(3, 1, 1),
    "lazebnik(3,1,2)": lambda: lazebnik(3, 1, 2),
    "W(2)": lambda: gq_incidence("W", 2),
    "W(3)": lambda: gq_incidence("W", 3),
    "Q5(2)": lambda: gq_incidence("Q5", 2),
    "split(W(3),2)": lambda: split_left(gq_incidence("W", 3), 2),
}

_cache = {}


def constructed(name):
    if name not in _cache:
        _cache[name] = CONSTRUCTED[name]()
    return _cache[name]


# -- acceptance summary ----------------------------------------------------------

_acceptance = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    passed = call.excinfo is None
    prev = _acceptance.get(number, (title, True))
    _acceptance[number] = (title, prev[1] and passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, ok = _acceptance[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}")
