import numpy as np
import pytest
from conftest import identity, make, systems
from hypothesis import given
from oracles import chain_recurrent, closure, eps_arcs

from hyperchain import (
    EXACT,
    DiscreteSystem,
    Eps,
    chain_components,
    chain_graph,
    chain_reachable,
    chain_recurrent_set,
    exists_chain_within,
    forward_orbit,
    iterate,
    omega_limit,
    zero_one_space,
)
from hyperchain.errors import DomainError
from hyperchain.graph import strongly_connected_components


def test_map_must_be_total():
    with pytest.raises(DomainError):
        DiscreteSystem(zero_one_space("ab"), [0, 2])
    with pytest.raises(DomainError):
        DiscreteSystem(zero_one_space("ab"), [0])


def test_iterate(three_point):
    assert iterate(three_point, 0, 2) == 0
    assert iterate(three_point, 1, 0) == 1
    assert iterate(three_point, 2, 1) == 0


def test_orbits(three_point, line):
    o = forward_orbit(three_point, 2)
    assert (o.tail, o.cycle) == ((2,), (0, 1))
    assert forward_orbit(identity(3), 1).cycle == (1,)
    assert forward_orbit(identity(3), 1).preperiod == 0
    o = forward_orbit(line, 0)
    assert (o.preperiod, o.cycle) == (2, (2,))


def test_omega(three_point, line):
    assert omega_limit(three_point, {2}).labels == ["a", "b"]
    assert omega_limit(identity(4), {1, 3}).members == {1, 3}
    assert omega_limit(line, {0, 1, 2}).members == {2}


def test_chain_graph(three_point):
    assert chain_graph(three_point, Eps(0.5)) == ((1,), (0,), (0,))
    assert sum(map(len, chain_graph(three_point, Eps(1.5)))) == 9
    assert chain_graph(three_point, EXACT) == chain_graph(three_point, Eps(0.5))


def test_reachable(three_point):
    assert chain_reachable(three_point, EXACT, 0) == {0, 1}
    assert chain_reachable(three_point, EXACT, 2) == {0, 1}
    assert chain_reachable(three_point, Eps(1.5), 2) == {0, 1, 2}


def test_recurrent_sets(three_point, line):
    assert chain_recurrent_set(three_point).labels == ["a", "b"]
    assert chain_recurrent_set(identity(5)).members == set(range(5))
    assert chain_recurrent_set(line).members == {2}


def test_components():
    assert [P.labels for P in chain_components(make([1, 0, 0], list("abc"))).components] == [["a", "b"]]
    assert len(chain_components(identity(3)).components) == 3
    two = make([1, 0, 3, 2], coords=[0, 0.1, 0.9, 1])
    assert [sorted(P.members) for P in chain_components(two, Eps(0.05)).components] == [[0, 1], [2, 3]]


def test_exists_chain_within(three_point):
    assert exists_chain_within(three_point, EXACT, 0, 1, {0, 1})
    assert exists_chain_within(three_point, EXACT, 1, 0, {0, 1})
    assert not exists_chain_within(three_point, EXACT, 0, 2, {0, 1, 2})


def test_condensation_order_direction():
    # fixed points p=0 and q=0.55; q reaches p through t=0.5 at eps=0.1, never the reverse
    sys = make([0, 0, 2], ["p", "t", "q"], coords=[0, 0.5, 0.55])
    a = chain_components(sys, Eps(0.1))
    assert [P.labels for P in a.components] == [["p"], ["q"]]
    assert a.order == (frozenset({1}), frozenset())
    assert a.downstream(1) == {0}


def test_tarjan_against_closure():
    rng = np.random.default_rng(1)
    for _ in range(50):
        n = int(rng.integers(1, 12))
        succ = [sorted(set(rng.integers(0, n, size=int(rng.integers(0, 3))).tolist())) for _ in range(n)]
        sccs, comp = strongly_connected_components(succ)
        reach = closure([set(s) for s in succ])
        for x in range(n):
            for y in range(n):
                same = x == y or (y in reach[x] and x in reach[y])
                assert (comp[x] == comp[y]) == same
        # sinks first: no arc leaves a component into a later one
        for x in range(n):
            for y in succ[x]:
                assert comp[y] <= comp[x]


@given(systems(max_n=7))
def test_recurrent_matches_closure_oracle(sys):
    f, d = list(sys.image), sys.space.dist.tolist()
    assert chain_recurrent_set(sys).members == chain_recurrent(f, d)
    eps = float(np.median(sys.space.dist)) + 1e-3
    assert chain_recurrent_set(sys, Eps(eps)).members == chain_recurrent(f, d, eps)


@given(systems(max_n=7))
def test_components_partition_recurrent_set(sys):
    a = chain_components(sys)
    union = set()
    for P in a.components:
        assert not (P.members & union)
        union |= P.members
    assert union == a.recurrent.members
    reach = closure(eps_arcs(list(sys.image), None, None))
    for P in a.components:
        for x in P:
            assert P.members <= reach[x]


@given(systems(max_n=7))
def test_recurrent_set_is_invariant_and_omega_inside(sys):
    C = chain_recurrent_set(sys).members
    assert sys.apply(C) == C
    assert omega_limit(sys, range(len(sys))).members <= C


@given(systems(max_n=7))
def test_eps_recurrence_grows_with_eps(sys):
    C = chain_recurrent_set(sys).members
    prev = C
    for eps in sorted((0.5 * min(sys.space.min_gap, 1.0), 0.3, 0.7, 2.0)):
        cur = chain_recurrent_set(sys, Eps(eps)).members
        assert prev <= cur
        prev = cur
