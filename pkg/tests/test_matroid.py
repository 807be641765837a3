import itertools

import pytest
from hypothesis import given, settings, strategies as st

from chowlab.matroid import (CapacityError, MatroidError, bits, boolean_matroid, contraction,
                             direct_sum, from_flats, from_json, is_coloop, lattice_of_flats,
                             minor, relabelled, restriction, to_json, to_mask, uniform_matroid)


def flat_sets(M):
    return {frozenset(bits(F)) for F in M.flats}


def test_boolean_small():
    B1 = boolean_matroid(1)
    assert flat_sets(B1) == {frozenset(), frozenset({0})}
    assert B1.rk(1) == 1
    B2 = boolean_matroid(2)
    assert len(B2.flats) == 4 and B2.rank == 2
    B3 = boolean_matroid(3)
    assert len(B3.flats) == 8
    assert sum(1 for F in B3.flats if B3.rk(F) == 1) == 3


def test_boolean_capacity():
    with pytest.raises(CapacityError):
        boolean_matroid(21)


def test_uniform():
    assert flat_sets(uniform_matroid(1, 3)) == {frozenset(), frozenset({0, 1, 2})}
    U23 = uniform_matroid(2, 3)
    assert flat_sets(U23) == {frozenset(), frozenset({0}), frozenset({1}), frozenset({2}),
                              frozenset({0, 1, 2})}
    assert uniform_matroid(3, 3) == boolean_matroid(3)
    with pytest.raises(MatroidError):
        uniform_matroid(4, 3)


def test_from_flats_valid():
    assert from_flats(2, [0, 1, 2, 3]) == boolean_matroid(2)
    assert from_flats(2, [0, 3]) == uniform_matroid(1, 2)


def test_from_flats_cover_partition_failure():
    with pytest.raises(MatroidError, match="axiom 3"):
        from_flats(2, [to_mask([]), to_mask([0]), to_mask([0, 1])])


@pytest.mark.parametrize("flats, axiom", [
    ([0b01, 0b11], "loop"),                   # empty set missing
    ([0, 0b01], "ground"),                     # full set missing
    ([0, 0b011, 0b110, 0b111], "intersection"),
])
def test_from_flats_other_axioms(flats, axiom):
    with pytest.raises(MatroidError):
        from_flats(3 if max(flats) > 3 else 2, flats)


def test_direct_sum():
    assert direct_sum(boolean_matroid(1), boolean_matroid(1)) == boolean_matroid(2)
    S = direct_sum(uniform_matroid(2, 3), uniform_matroid(1, 2))
    assert len(S.flats) == 10 and S.rank == 3
    M = uniform_matroid(2, 4)
    assert len(direct_sum(M, uniform_matroid(1, 1)).flats) == 2 * len(M.flats)


def test_restriction_and_contraction():
    B3 = boolean_matroid(3)
    assert relabelled(restriction(B3, 0b011)) == boolean_matroid(2)
    assert relabelled(contraction(B3, 0b001)) == boolean_matroid(2)
    C = contraction(B3, B3.full)
    assert C.ground_size == 0 and C.flats == (0,) and C.rank == 0
    with pytest.raises(MatroidError):
        restriction(uniform_matroid(2, 3), 0b011)


def test_minor_commutes():
    # (M^G)_F and (M_F)^{G minus F} have the same flats
    M = direct_sum(uniform_matroid(2, 3), boolean_matroid(2))
    for F, G in itertools.product(M.flats, repeat=2):
        if F & G != F:
            continue
        a = minor(M, F, G)
        C = contraction(M, F)
        local = {C.lift(K): K for K in C.flats}[G]
        b = restriction(C, local)
        assert a.flats == b.flats
        assert {a.lift(K) for K in a.flats} == {b.lift(K) for K in b.flats}


def test_lift_tracks_root_labels():
    S = direct_sum(boolean_matroid(2), uniform_matroid(2, 3))
    C = contraction(S, 0b00011)
    assert {C.lift(K) for K in C.flats} == {K for K in S.flats if K & 0b11 == 0b11}


def test_coloops():
    B3 = boolean_matroid(3)
    assert all(is_coloop(B3, i) for i in range(3))
    assert not any(is_coloop(uniform_matroid(2, 3), i) for i in range(3))
    assert is_coloop(uniform_matroid(1, 1), 0)


def test_lattice():
    L = lattice_of_flats(boolean_matroid(2))
    assert len(L.elements) == 4
    assert len(list(L.comparable_pairs())) == 9
    assert [len(c) for c in lattice_of_flats(uniform_matroid(1, 1)).maximal_chains()] == [2]
    chains = lattice_of_flats(boolean_matroid(3)).maximal_chains()
    assert len(chains) == 6 and all(len(c) == 4 for c in chains)


def test_lattice_of_sum_is_product():
    M, N = uniform_matroid(2, 3), boolean_matroid(2)
    S = direct_sum(M, N)
    m = M.ground_size
    pairs = {(F, G): F | G << m for F in M.flats for G in N.flats}
    assert sorted(pairs.values()) == sorted(S.flats)
    for (F1, G1), K1 in pairs.items():
        for (F2, G2), K2 in pairs.items():
            assert (K1 & K2 == K1) == (F1 & F2 == F1 and G1 & G2 == G1)
            if K1 & K2 == K1:
                assert S.rk(K2) - S.rk(K1) == M.rk(F2) - M.rk(F1) + N.rk(G2) - N.rk(G1)


def test_json_roundtrip():
    for M in (boolean_matroid(3), uniform_matroid(2, 4)):
        assert from_json(to_json(M)) == M
    assert from_json({"ground": 3, "kind": "boolean"}) == boolean_matroid(3)
    assert from_json({"ground": 4, "kind": "uniform", "r": 2}) == uniform_matroid(2, 4)
    with pytest.raises(MatroidError):
        from_json({"ground": 2, "kind": "weird"})


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.integers(1, n), st.just(n))))
def test_uniform_revalidates(rn):
    r, n = rn
    M = uniform_matroid(r, n)
    assert from_flats(n, M.flats) == M
    assert M.rank == r


@settings(max_examples=20, deadline=None)
@given(st.sampled_from([(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 4)]),
       st.sampled_from([(1, 1), (1, 3), (2, 3), (3, 3)]))
def test_direct_sum_counts(a, b):
    M, N = uniform_matroid(*a), uniform_matroid(*b)
    S = direct_sum(M, N)
    assert len(S.flats) == len(M.flats) * len(N.flats)
    assert S.rank == M.rank + N.rank
    assert from_flats(S.ground_size, S.flats) == S
