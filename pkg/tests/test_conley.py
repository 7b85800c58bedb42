import pytest
from conftest import identity, make, systems
from hypothesis import given
from oracles import attractor, chain_recurrent, orbit_dual, trapping_sets

from hyperchain import (
    EXACT,
    Eps,
    PreconditionError,
    ResourceLimitError,
    attractor_of,
    chain_components,
    conley_intersection,
    enumerate_attractors,
    is_trapping,
    repellor_dual,
)
from hyperchain.conley import lower_sets


def attractors(sys, sem=EXACT, mode="condensation"):
    return [r.attractor.labels for r in enumerate_attractors(sys, sem, mode)]


def test_is_trapping(three_point):
    assert is_trapping(three_point, EXACT, {0, 1})
    assert not is_trapping(three_point, EXACT, {0, 2})
    assert is_trapping(three_point, EXACT, {0, 1, 2})


def test_attractor_of(three_point, uv, line):
    r = attractor_of(three_point, EXACT, {0, 1, 2})
    assert (r.attractor.labels, r.dual) == (["a", "b"], frozenset())
    r = attractor_of(uv, EXACT, {0})
    assert (r.attractor.labels, r.dual) == (["u"], frozenset({1}))
    r = attractor_of(line, EXACT, {1, 2})
    assert (r.attractor.members, r.dual) == ({2}, frozenset())


def test_attractor_of_needs_trap(three_point):
    with pytest.raises(PreconditionError, match="a->b"):
        attractor_of(three_point, EXACT, {0, 2})


def test_repellor_dual(three_point, uv):
    assert repellor_dual(uv, EXACT, {0}) == {1}
    assert repellor_dual(three_point, EXACT, {0, 1}) == frozenset()
    assert repellor_dual(three_point, EXACT, {0, 1, 2}) == frozenset()


@pytest.mark.parametrize("mode", ["brute", "condensation"])
def test_enumeration_examples(three_point, uv, mode):
    assert attractors(three_point, mode=mode) == [["a", "b"]]
    assert attractors(uv, mode=mode) == [["u"], ["v"], ["u", "v"]]
    swap = make([1, 0, 2], ["u", "v", "w"])
    assert attractors(swap, mode=mode) == [["w"], ["u", "v"], ["u", "v", "w"]]


def test_conley_examples(three_point, uv, line):
    assert conley_intersection(three_point, EXACT).labels == ["a", "b"]
    assert conley_intersection(uv, EXACT).labels == ["u", "v"]
    assert conley_intersection(line, EXACT).members == {2}


def test_caps():
    with pytest.raises(ResourceLimitError):
        enumerate_attractors(identity(17), EXACT, "brute")
    with pytest.raises(ResourceLimitError):
        enumerate_attractors(identity(21), EXACT, "condensation")
    with pytest.raises(ResourceLimitError):
        list(lower_sets(chain_components(identity(5)), cap=8))


def test_eps_dual_keeps_points_with_an_avoiding_chain():
    # x is fixed but also chains into the trap {s, r}; the loop at x avoids it forever
    sys = make([0, 2, 2], ["x", "s", "r"], coords=[0.3, 0.42, 0.6])
    sem = Eps(0.15)
    rec = attractor_of(sys, sem, {1, 2})
    assert rec.attractor.labels == ["r"]
    assert rec.dual == {0}
    assert conley_intersection(sys, sem).labels == ["x", "r"]


@given(systems(max_n=7))
def test_brute_and_condensation_agree(sys):
    key = lambda rs: [(r.attractor.members, r.trap.members, r.dual) for r in rs]  # noqa: E731
    assert key(enumerate_attractors(sys, EXACT, "brute")) == key(enumerate_attractors(sys, EXACT, "condensation"))


@given(systems(max_n=7))
def test_attractor_matches_oracles(sys):
    f, d = list(sys.image), sys.space.dist.tolist()
    for U in trapping_sets(f, d):
        r = attractor_of(sys, EXACT, U)
        assert r.attractor.members == attractor(f, d, U)
        assert r.dual == orbit_dual(f, U)
        assert not (r.attractor.members & r.dual)
        assert sys.apply(r.attractor.members) == r.attractor.members


@given(systems(max_n=7))
def test_conley_formula_both_semantics(sys):
    f, d = list(sys.image), sys.space.dist.tolist()
    assert conley_intersection(sys, EXACT).members == chain_recurrent(f, d)
    for eps in (0.05, 0.3, 1.5):
        assert conley_intersection(sys, Eps(eps)).members == chain_recurrent(f, d, eps)


@given(systems(max_n=6))
def test_eps_dual_is_forward_consistent(sys):
    sem = Eps(0.2)
    for r in enumerate_attractors(sys, sem):
        edges = chain_components(sys, sem).edges
        # every dual point has a chain step that stays in the dual
        assert all(set(edges[x]) & r.dual for x in r.dual)
        assert not (r.dual & r.trap.members)


@given(systems(max_n=6))
def test_exact_dual_is_backward_trapping(sys):
    for r in enumerate_attractors(sys, EXACT):
        assert all(sys.image[x] in r.dual for x in range(len(sys)) if x in r.dual)
        assert all(x in r.dual for x in range(len(sys)) if sys.image[x] in r.dual)
