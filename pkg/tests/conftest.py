import sys

import pytest

from dfc.codes import CodeSpec
from dfc.gf import make_field
from dfc.sums import SumSpec


@pytest.fixture(scope="session")
def field_cache():
    cache = {}

    def get(p, m):
        if (p, m) not in cache:
            cache[p, m] = make_field(p, m)
        return cache[p, m]

    return get


@pytest.fixture(scope="session")
def code(field_cache):
    def build(family, p, m, l=1):
        return CodeSpec(family, field_cache(p, m), l)

    return build


@pytest.fixture(scope="session")
def sum_spec(field_cache):
    def build(p, m, l=1):
        return SumSpec(field_cache(p, m), l)

    return build


def pytest_terminal_summary(terminalreporter):
    lines = []
    for mod in list(sys.modules.values()):
        lines.extend(getattr(mod, "ACCEPTANCE_LINES", []))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(set(lines), key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
