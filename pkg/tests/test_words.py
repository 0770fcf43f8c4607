import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from skewcat.partitions import CORNERS, EMPTY, IDENTITY, PRIMARY, rotate
from skewcat.symmetric import (
    H3, R, nontrivial_generators, sign_oracle, star_oracle,
)
from skewcat.verify import n2_oracle
from skewcat.words import (
    QuotientOracle, SearchOracle, Verdict, Word, apply_map, canonical_word, conj,
    elementary_merges, emit_presentation_relations, inv, is_strongly_invariant, lift_member,
    member, mul, oracle_from_json, partition_of_word, reduce, relation_families,
    sandwich_n1_n2, transpositions, word_of_partition,
)

from test_partitions import partitions

letters = st.lists(st.integers(1, 4), max_size=12)
words = letters.map(reduce)


def naive_reduce(seq, rng):
    """Cancel a random adjacent equal pair until none is left."""
    seq = list(seq)
    while True:
        spots = [i for i in range(len(seq) - 1) if seq[i] == seq[i + 1]]
        if not spots:
            return tuple(seq)
        i = rng.choice(spots)
        del seq[i:i + 2]


def test_reduce_examples():
    assert reduce((1, 1, 2, 1, 1, 2)) == Word()
    assert inv(reduce((1, 2, 3))) == reduce((3, 2, 1))
    with pytest.raises(ValueError):
        Word((1, 1))


@given(letters, st.integers(0, 1000))
def test_reduce_is_confluent_and_idempotent(seq, seed):
    w = reduce(seq)
    assert reduce(w.letters) == w
    assert naive_reduce(seq, random.Random(seed)) == w.letters


@given(words, words, words)
def test_group_laws(u, v, w):
    assert mul(mul(u, v), w) == mul(u, mul(v, w))
    assert mul(u, Word()) == u == mul(Word(), u)
    assert mul(u, inv(u)) == Word() == mul(inv(u), u)
    assert conj(u, v) == mul(mul(v, u), inv(v))


def test_apply_map_examples():
    r = reduce((1, 2, 1, 3) * 2)
    assert apply_map(r, {3: 2}) == reduce((1, 2) * 4)
    assert apply_map(r, {}) == r
    assert apply_map(reduce((1, 2)), {1: 2, 2: 1}) == reduce((2, 1))
    with pytest.raises(ValueError):
        apply_map(r, lambda x: 0)


@given(words)
def test_bijective_maps_preserve_length(w):
    for s in transpositions(4):
        assert len(apply_map(w, s)) == len(w)


def test_word_partition_bridge():
    assert word_of_partition(PRIMARY) == Word()
    assert word_of_partition(H3) == reduce((1, 2) * 3)
    assert word_of_partition(IDENTITY) == Word()
    assert partition_of_word(reduce((1, 2) * 3)) == H3
    assert partition_of_word(Word()) == EMPTY
    assert partition_of_word(reduce((1, 2, 1, 3) * 2)) == R
    assert canonical_word(reduce((5, 7) * 3)) == reduce((1, 2) * 3)


def test_star_oracle_membership():
    ns = star_oracle(4)
    assert member(ns, reduce((1, 2) * 3)) is Verdict.IN
    assert member(ns, reduce((1, 2) * 4)) is Verdict.NOT_IN
    assert member(ns, Word()) is Verdict.IN
    with pytest.raises(ValueError):
        member(ns, reduce((1, 5)))


def test_quotient_oracle_validation():
    with pytest.raises(ValueError):
        QuotientOracle(((1, 2, 0),))   # a 3-cycle is not an involution
    with pytest.raises(ValueError):
        QuotientOracle(((1, 0), (0, 1, 2)))
    with pytest.raises(ValueError):
        oracle_from_json({"type": "quotient", "degree": 3, "images": [[1, 0]]})
    with pytest.raises(ValueError):
        oracle_from_json({"type": "nope"})


def test_lift_member():
    ns = star_oracle(4)
    assert lift_member(ns, reduce((5, 7) * 3)) is Verdict.IN
    assert lift_member(ns, Word()) is Verdict.IN
    search = SearchOracle(nontrivial_generators(3), 3)
    assert lift_member(search, reduce((1, 2, 3, 4))) is Verdict.UNKNOWN
    with pytest.raises(ValueError):
        lift_member(ns, Word(), lift="X")


@settings(max_examples=80)
@given(partitions(6))
def test_rotation_preserves_membership(p):
    ns = star_oracle(4)
    if p.blocks > 4:
        return
    v = lift_member(ns, word_of_partition(p))
    for corner in CORNERS:
        if p.upper if corner.startswith("upper") else p.lower:
            assert lift_member(ns, word_of_partition(rotate(p, corner))) is v


def test_search_oracle():
    gens = nontrivial_generators(3)
    search = SearchOracle(gens, 3)
    assert search.member(reduce((2, 3) * 3)) is Verdict.IN
    assert search.member(conj(reduce((1, 2) * 3), reduce((3,)))) is Verdict.IN
    assert search.member(reduce((1, 2) * 4)) is Verdict.UNKNOWN
    assert search.bounds == {"maxLength": 16, "maxDepth": 6, "maxNodes": 20000}
    with pytest.raises(ValueError):
        SearchOracle(gens, 3, max_depth=0)
    with pytest.raises(ValueError):
        SearchOracle((reduce((1,)),), 3, separator=sign_oracle(3))


def test_search_oracle_not_in_needs_separator():
    search = SearchOracle(nontrivial_generators(3), 3, separator=star_oracle(3))
    assert search.member(reduce((1, 2) * 4)) is Verdict.NOT_IN
    assert search.member(reduce((1, 2) * 3)) is Verdict.IN


def test_oracle_json_round_trip():
    for oracle in (star_oracle(3), SearchOracle(nontrivial_generators(3), 3, max_length=12),
                   SearchOracle(nontrivial_generators(3), 3, separator=star_oracle(3))):
        again = oracle_from_json(oracle.to_json())
        assert again.to_json() == oracle.to_json()
    data = {"type": "search", "generators": [[1, 2, 1, 2, 1, 2]], "maxLength": 10,
            "maxDepth": 3}
    o = oracle_from_json(data)
    assert (o.rank, o.max_length, o.max_depth) == (2, 10, 3)
    assert Word.from_json([1, 1, 2]) == reduce((2,))


def test_star_oracle_is_not_strongly_invariant():
    res = is_strongly_invariant(star_oracle(4), nontrivial_generators(4))
    assert res.verdict is Verdict.NOT_IN
    r = reduce((1, 2, 1, 3) * 2)
    assert any(g == r and phi == {3: 2} and im == reduce((1, 2) * 4)
               for g, phi, im in res.witnesses)


def test_relations_only_subgroup_is_strongly_invariant():
    # <<a_i^2>> is trivial in Z2^{*n}: no normal generators beyond the identity
    res = is_strongly_invariant(SearchOracle((), 3), [reduce((i, i)) for i in (1, 2, 3)])
    assert res.verdict is Verdict.IN


def test_n2_is_strongly_invariant():
    n2 = n2_oracle(3)
    assert is_strongly_invariant(n2, n2.generators).verdict is Verdict.IN


def test_invariance_check_matches_brute_force_over_all_self_maps():
    n = 3
    all_maps = [dict(zip((1, 2, 3), v)) for v in product((1, 2, 3), repeat=n)]
    assert len(all_maps) == 27
    assert len(transpositions(n)) + len(elementary_merges(n)) == 3 + 6
    cases = [
        (star_oracle(n), nontrivial_generators(n)),
        (sign_oracle(n), [reduce((1, 2))]),
        (QuotientOracle(((1, 0), (1, 0), (0, 1))), [reduce((1, 2)), reduce((3,))]),
    ]
    for oracle, gens in cases:
        brute = all(oracle.member(apply_map(g, phi)) is Verdict.IN
                    for g in gens for phi in all_maps)
        assert (is_strongly_invariant(oracle, gens).verdict is Verdict.IN) == brute


def test_sandwich():
    ns = star_oracle(4)
    n1, n2_gens = sandwich_n1_n2(ns, nontrivial_generators(4))
    assert n1(Word()) is Verdict.IN
    assert n1(reduce((1, 2, 1, 3) * 6)) is Verdict.IN
    assert n1(reduce((1, 2, 1, 3) * 2)) is Verdict.NOT_IN
    assert reduce((1, 2) * 4) in n2_gens
    assert n2_oracle(4).member(reduce((1, 2))) is Verdict.IN


def test_presentation_relations():
    rels = emit_presentation_relations([(1, 2, 1, 2, 1, 2)], 2)
    gen = [d for d in rels if d["kind"] == "generator"]
    assert gen[0]["indices"] == [1, 2, 1, 2, 1, 2]
    assert "u[f1,1] u[f2,2]" in gen[0]["relation"]
    standing = emit_presentation_relations([], 3)
    assert all(d["kind"] == "standing" for d in standing) and len(standing) == 2
    assert relation_families(rels) == {(1, 2, 1, 2, 1, 2): 1}
    with pytest.raises(ValueError):
        emit_presentation_relations([(1, 4)], 3)
