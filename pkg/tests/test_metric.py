import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from oracles import hausdorff_inf, hausdorff_maxmin

from hyperchain import (
    FiniteMetricSpace,
    MetricError,
    PointSet,
    eps_neighborhood,
    euclidean_1d_space,
    hausdorff_distance,
    validate_metric,
    zero_one_space,
)
from hyperchain.errors import DomainError
from hyperchain.metric import below


def test_zero_one_is_valid():
    assert validate_metric(1 - np.eye(3)).ok


def test_asymmetry_reported():
    report = validate_metric([[0, 1], [2, 0]])
    assert [v.indices for v in report.of_kind("symmetry")] == [(0, 1)]


def test_triangle_violation_found_by_triple_loop():
    d = np.abs(np.subtract.outer([0, 0.4, 1], [0, 0.4, 1]))
    d[0, 2] = d[2, 0] = 0.1
    tri = validate_metric(d).of_kind("triangle")
    assert tri
    assert {tuple(sorted(v.indices)) for v in tri} == {(0, 1, 2)}
    for v in tri:
        i, j, k = v.indices
        assert d[i, k] > d[i, j] + d[j, k]


def test_other_violations():
    kinds = {v.kind for v in validate_metric([[1, 0], [0, -1]]).violations}
    assert {"diagonal", "zero_off_diagonal", "negative"} <= kinds
    with pytest.raises(MetricError):
        validate_metric([[0, 1]])


def test_space_rejects_bad_matrix():
    with pytest.raises(MetricError):
        FiniteMetricSpace(["a", "b"], [[0, 1], [2, 0]])


def test_neighbourhoods_zero_one():
    X = zero_one_space("abc")
    A = X.points("a")
    assert eps_neighborhood(A, 0.5).labels == ["a"]
    assert eps_neighborhood(A, 1.5) == X.whole()


def test_neighbourhood_is_strict():
    X = euclidean_1d_space(["0", "0.5", "1"], [0, 0.5, 1])
    assert eps_neighborhood(X.points("0"), 0.6).labels == ["0", "0.5"]
    assert eps_neighborhood(X.points("0"), 0.5).labels == ["0"]


def test_hausdorff_examples():
    X = euclidean_1d_space(["0", "0.5", "1"], [0, 0.5, 1])
    A = X.points("0", "1")
    assert hausdorff_distance(A, A) == 0
    assert hausdorff_distance(X.points("0"), X.points("1")) == 1.0
    assert hausdorff_distance(A, X.points("0.5")) == 0.5


def test_hausdorff_needs_one_space():
    with pytest.raises(DomainError):
        hausdorff_distance(zero_one_space("ab").whole(), zero_one_space("ab").whole())


def test_spaces():
    assert zero_one_space("abc").min_gap == 1
    assert euclidean_1d_space(["p", "q"], [0, 1]).distance(0, 1) == 1
    assert euclidean_1d_space(list("pqr"), [0, 0.25, 1]).min_gap == 0.25
    with pytest.raises(MetricError):
        euclidean_1d_space(["p", "q"], [0, 0])


def test_point_set_validation():
    X = zero_one_space("ab")
    with pytest.raises(DomainError):
        PointSet(X, frozenset())
    with pytest.raises(DomainError):
        PointSet(X, frozenset({5}))


def test_below_treats_near_ties_as_ties():
    assert below(0.1, 0.2)
    assert not below(0.2, 0.2)
    assert not below(0.30000000000000004, 0.3)


coords = st.lists(st.integers(0, 1000), min_size=2, max_size=7, unique=True)


@given(coords, st.data())
def test_hausdorff_matches_both_definitions(cs, data):
    X = euclidean_1d_space([str(c) for c in cs], np.array(cs) / 1000)
    n = len(cs)
    pick = st.frozensets(st.integers(0, n - 1), min_size=1)
    A, B, C = data.draw(pick), data.draw(pick), data.draw(pick)
    pa, pb, pc = (PointSet(X, S) for S in (A, B, C))
    d = X.dist.tolist()
    dab = hausdorff_distance(pa, pb)
    assert dab == pytest.approx(hausdorff_maxmin(d, A, B), abs=1e-12)
    assert dab == pytest.approx(hausdorff_inf(d, A, B), abs=1e-12)
    assert dab == pytest.approx(hausdorff_distance(pb, pa), abs=1e-12)
    assert (dab == 0) == (A == B)
    assert hausdorff_distance(pa, pc) <= dab + hausdorff_distance(pb, pc) + 1e-12


@given(coords, st.floats(0.001, 2.0))
def test_neighbourhood_contains_set_and_is_monotone(cs, eps):
    X = euclidean_1d_space([str(c) for c in cs], np.array(cs) / 1000)
    A = X.points(str(cs[0]))
    N = eps_neighborhood(A, eps)
    assert A <= N
    assert N <= eps_neighborhood(A, eps * 2)
