import logging

import numpy as np
import pytest

from hyperchain import DomainError, IntervalMapSpec, builtin, discretize, fixed_point_oracle, sinpi, table, tent


def test_sinpi_small_grid():
    g = discretize(sinpi(), 3)
    assert g.system.image == (0, 0, 2, 0)
    assert [g.grid[j] for j in g.system.image] == pytest.approx([0, 0, 2 / 3, 0])


def test_tent_small_grid():
    assert discretize(tent(2.0), 2).system.image == (0, 2, 0)


@pytest.mark.parametrize("n", [2, 7, 50])
def test_identity_table(n):
    assert discretize(builtin("identity"), n).system.image == tuple(range(n + 1))


def test_nearest_rounds_halves_down():
    spec = table([(0, 0.25), (1, 0.25)])
    g = discretize(spec, 2)
    assert g.nearest(0.25) == 0
    assert g.nearest(0.26) == 1
    assert g.system.image == (0, 0, 0)


def test_escaping_map_rejected():
    spec = IntervalMapSpec("up", 0.0, 1.0, lambda x: x + 0.5)
    with pytest.raises(DomainError):
        discretize(spec, 4)
    with pytest.raises(DomainError):
        builtin("nope")
    with pytest.raises(DomainError):
        table([(0, 0), (0, 1)])


def test_oracle_identity(caplog):
    with caplog.at_level(logging.INFO, logger="hyperchain.discretize"):
        roots = fixed_point_oracle(builtin("identity"), scan=1000)
    assert len(roots) == 1001
    assert "identity detected" in caplog.text


def test_oracle_tent_and_logistic():
    assert fixed_point_oracle(tent(2.0)) == pytest.approx([0, 2 / 3], abs=1e-9)
    assert fixed_point_oracle(builtin("logistic:4")) == pytest.approx([0, 0.75], abs=1e-9)


def test_oracle_sinpi_roots():
    roots = np.array(fixed_point_oracle(sinpi(), 1e-10))
    assert roots[0] == 0
    assert roots[-1] == pytest.approx(2 / 3, abs=1e-9)
    for k in range(1, 60):
        assert np.min(np.abs(roots - 2 / (2 * k + 1))) < 1e-9
    # the points 1/(2k+1) are mapped to 0, not fixed
    assert sinpi().value_at(np.array([1 / 3, 1 / 5, 1 / 7])) == pytest.approx(0, abs=1e-15)
    assert np.min(np.abs(roots - 1 / 3)) > 1e-3


def test_grid_labels_and_space():
    g = discretize(sinpi(), 1000)
    assert g.step == pytest.approx(1e-3)
    assert g.default_eps == pytest.approx(2e-3)
    assert g.system.labels[1] == "0.001"
    assert g.system.space.min_gap == pytest.approx(1e-3)
