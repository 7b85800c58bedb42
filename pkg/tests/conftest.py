from __future__ import annotations

import sys
from collections import defaultdict
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from hyperchain import DiscreteSystem, euclidean_1d_space, zero_one_space  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def make(image, labels=None, coords=None):
    labels = labels or [str(i) for i in range(len(image))]
    space = zero_one_space(labels) if coords is None else euclidean_1d_space(labels, coords)
    return DiscreteSystem(space, image)


@pytest.fixture
def three_point():
    # a -> b -> a, c -> a on the zero-one metric
    return make([1, 0, 0], ["a", "b", "c"])


@pytest.fixture
def line():
    return make([1, 2, 2])


@pytest.fixture
def uv():
    return make([0, 1], ["u", "v"])


def identity(n, labels=None):
    return make(list(range(n)), labels)


@st.composite
def systems(draw, max_n=6, min_n=1):
    n = draw(st.integers(min_n, max_n))
    image = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    if draw(st.booleans()):
        return make(image)
    coords = sorted(draw(st.lists(st.integers(0, 1000), min_size=n, max_size=n, unique=True)))
    return make(image, coords=np.array(coords) / 1000)


# ---- acceptance summary: one line per criterion

_criteria: dict[int, list[str]] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion this test belongs to")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.user_properties.append(("criterion", m.args[0]))
            _titles[m.args[0]] = m.args[1]


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _criteria[crit].append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_criteria):
        outcomes = _criteria[crit]
        verdict = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {crit} [PRIMARY] {_titles[crit]}: {verdict}")
