from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from skewcat.closure import ClosureBounds, skew_closure
from skewcat.partitions import (
    CAP, CUP, EMPTY, IDENTITY, PRIMARY, ArityError, all_partitions, coarsenings, compose,
    involution, ker, tensor,
)
from skewcat.skew import (
    BlockPairing, IncompatibleError, compatible, conditioned_compose, connected_tensor,
    enumerate_connected_conditioned_compositions, enumerate_connected_tensors, loop_factors,
    partial_matchings,
)

from test_partitions import partitions

# the three diagrams of the compatibility figure
P1 = ker((1, 1, 2), (2, 2))
P2 = ker((1, 1), (1,))
P3 = ker((1, 2), (2,))


def small(max_points):
    return [p for m in range(max_points + 1) for k in range(m + 1)
            for p in all_partitions(k, m - k)]


def test_connected_tensor_examples():
    assert connected_tensor(P1, P2, [(1, 1)]) == ker((1, 1, 2, 1, 1), (2, 2, 1))
    assert connected_tensor(P1, P2, []) == tensor(P1, P2)
    # cap joined to the cup of (| (x) cup) gives the primary partition
    assert connected_tensor(CAP, tensor(IDENTITY, CUP), [(1, 2)]) == PRIMARY


def test_pairing_validation():
    with pytest.raises(ValueError):
        BlockPairing([(1, 1), (1, 2)])
    with pytest.raises(ValueError):
        BlockPairing([(1, 2), (2, 2)])
    with pytest.raises(ValueError):
        connected_tensor(IDENTITY, IDENTITY, [(1, 2)])
    assert BlockPairing.from_json(BlockPairing([(2, 1), (1, 3)]).to_json()) == {(1, 3), (2, 1)}


def test_enumerate_connected_tensor_examples():
    assert enumerate_connected_tensors(IDENTITY, IDENTITY) == {ker((1, 2), (1, 2)),
                                                              ker((1, 1), (1, 1))}
    assert enumerate_connected_tensors(EMPTY, PRIMARY) == {PRIMARY}


@settings(max_examples=60)
@given(partitions(4), partitions(4))
def test_connected_tensor_count_matches_matchings(p, q):
    expected = sum(factorial(k) * comb(p.blocks, k) * comb(q.blocks, k)
                   for k in range(min(p.blocks, q.blocks) + 1))
    pairings = list(partial_matchings(range(1, p.blocks + 1), range(1, q.blocks + 1)))
    assert len(pairings) == expected
    # distinct pairings give distinct kernels
    assert len(enumerate_connected_tensors(p, q)) == expected


def test_compatibility_examples():
    assert compatible(CUP, CAP)
    assert not compatible(tensor(IDENTITY, IDENTITY), CAP)
    assert compatible(P1, P2)
    assert not compatible(P1, P3)
    with pytest.raises(ArityError):
        compatible(IDENTITY, CAP)


def test_compatibility_is_symmetric_under_involution():
    parts = small(4)
    for p in parts:
        for q in parts:
            if p.l == q.k:
                assert compatible(p, q) == compatible(involution(q), involution(p))


def test_conditioned_compose():
    assert conditioned_compose(CAP, CUP) == (EMPTY, 1)
    assert conditioned_compose(IDENTITY, IDENTITY) == (IDENTITY, 0)
    assert conditioned_compose(P2, P1) == compose(P2, P1)
    with pytest.raises(IncompatibleError):
        conditioned_compose(P3, P1)
    with pytest.raises(ArityError):
        conditioned_compose(CAP, IDENTITY)


def test_m_examples():
    assert enumerate_connected_conditioned_compositions(CAP, CUP) == {EMPTY}
    assert enumerate_connected_conditioned_compositions(IDENTITY, IDENTITY) == {IDENTITY}
    # two upper-only blocks and one lower-only block: 1 + 2 joinings
    p = ker((1, 2, 3), (3,))
    q = ker((1,), (1, 2))
    m = enumerate_connected_conditioned_compositions(q, p)
    assert m == {ker((1, 2, 3), (3, 4)), ker((1, 2, 3), (3, 1)), ker((1, 2, 3), (3, 2))}
    with pytest.raises(IncompatibleError):
        enumerate_connected_conditioned_compositions(P3, P1)


def test_m_contains_qp_and_lies_in_its_coarsenings():
    parts = small(4)
    for p in parts:
        for q in parts:
            if p.l == q.k and compatible(p, q):
                r, _ = conditioned_compose(q, p)
                m = enumerate_connected_conditioned_compositions(q, p)
                assert r in m
                assert m <= coarsenings(r)


def test_loop_factors():
    assert loop_factors(CAP, CUP) == (0, 1)
    assert loop_factors(IDENTITY, IDENTITY) == (1, 1)
    assert loop_factors(P2, P1) == (1, 1)


def _reachable(p, q):
    m = enumerate_connected_conditioned_compositions(q, p)
    bound = max(5, p.points, q.points, *(r.points for r in m))
    return m <= skew_closure([p, q], ClosureBounds(bound)).elements


def test_m_is_reachable_by_skew_operations():
    pairs = [(ker((1, 2, 3), (3,)), ker((1,), (1, 2))), (P1, P2),
             (ker((1,), (2,)), ker((1,), (2,)))]
    for p, q in pairs:
        assert _reachable(p, q)


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_m_is_reachable_for_random_pairs(data):
    k, mid, l2 = (data.draw(st.integers(0, 2)) for _ in range(3))
    lab = st.integers(1, 3)
    p = ker(data.draw(st.lists(lab, min_size=k, max_size=k)),
            data.draw(st.lists(lab, min_size=mid, max_size=mid)))
    # force compatibility by reusing the block structure of p's lower row
    q = ker(p.lower, data.draw(st.lists(st.integers(1, 5), min_size=l2, max_size=l2)))
    assert _reachable(p, q)
