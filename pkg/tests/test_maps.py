import pytest

from chowlab import linalg, maps
from chowlab.chow import AUGMENTED, CHOW, build_model
from chowlab.matroid import boolean_matroid, direct_sum, uniform_matroid

B1, B2 = boolean_matroid(1), boolean_matroid(2)


def test_iota_unit_and_generator():
    s, target = maps.iota(B1, B1)
    assert s.images[0] == [list(target.one().coords)]
    s, target = maps.iota(uniform_matroid(2, 3), B1)
    # x_{0} (x) 1 goes to x_{0} + x_{0,3}
    model_m, model_n = (f.model for f in s.factors)
    coords = s.domain.coords_of([model_m.x(0b001), model_n.one()])
    image = [sum(c * s.images[1][k][r] for k, c in coords.items()) for r in range(target.dim(1))]
    assert image == list((target.x(0b0001) + target.x(0b1001)).coords)


@pytest.mark.parametrize("M, N", [(B1, B1), (B2, B1), (uniform_matroid(2, 3), B1)])
@pytest.mark.parametrize("kind", [CHOW, AUGMENTED])
def test_iota_injective_and_multiplicative(M, N, kind):
    S = direct_sum(M, N)
    s = maps.iota_summand(S, M.ground_size, kind)
    target = build_model(S, kind)
    maps.evaluate(s, target)
    assert maps.relation_defects(s, target) == []
    for k in range(s.domain.top + 1):
        assert linalg.rank(s.images[k], target.dim(k)) == s.domain.dim(k)


def test_psi_unit_is_x_e():
    S = direct_sum(B1, B1)
    for E in S.proper_flats(nonempty=True):
        psi, target = maps.psi_pushforward(S, E)
        assert psi.images[0] == [list(target.x(E).coords)]


def test_psi_image_in_ideal():
    S = direct_sum(B1, B1)
    assert all(maps.image_in_ideal(S, E) for E in S.proper_flats(nonempty=True))
    assert all(maps.image_in_ideal(S, E, AUGMENTED) for E in S.proper_flats())


def test_projection_formula_b2_b1():
    S = direct_sum(B2, B1)
    for F in S.proper_flats(nonempty=True):
        out = maps.projection_formula_check(S, F)
        assert out["relations_killed"] and out["composition_matches"], out


@pytest.mark.parametrize("variant", maps.VARIANTS)
def test_b1_b1_isomorphism(variant):
    A = maps.assemble_phi(B1, B1, variant)
    assert A.is_isomorphism
    assert A.report()["isomorphism"]


def test_u12_b1_thm1():
    A = maps.assemble_phi(uniform_matroid(1, 2), B1, "thm1")
    assert A.hilbert_equal and A.full_rank


def test_summand_counts():
    # thm1: iota + nonempty pairs; thm2 and aug: iota + proper pairs
    M, N = uniform_matroid(2, 3), B2
    assert len(maps.summands(M, N, "thm1")[1]) == 1 + 4 * 3
    assert len(maps.summands(M, N, "thm2")[1]) == 1 + 4 * 3
    with pytest.raises(ValueError):
        maps.summands(M, N, "nope")


@pytest.mark.parametrize("M, N", [(B1, B1), (B2, B1)])
@pytest.mark.parametrize("variant", ["thm1", "aug"])
def test_orthogonality(M, N, variant):
    A = maps.assemble_phi(M, N, variant)
    assert maps.orthogonality_violations(A) == []


def test_orthogonality_is_not_vacuous():
    A = maps.assemble_phi(B2, B1, "thm1")
    pairs = [(U, V) for U in A.summands for V in A.summands
             if U is not V and maps.must_be_orthogonal(A, U, V)]
    assert pairs
    # the inclusion does pair with the summand for the full flats, and no lemma forbids it
    assert ("iota", "u[{0,1}|{2}]") in maps.cross_gram_nonzero(A)


@pytest.mark.parametrize("M, N", [(B1, B1), (B2, B1), (B2, B2), (uniform_matroid(2, 3), B2)])
@pytest.mark.parametrize("variant", ["thm1", "aug"])
def test_pairing_sign(M, N, variant):
    A = maps.assemble_phi(M, N, variant)
    full_m = (1 << M.ground_size) - 1
    full_n = A.matroid.full & ~full_m
    for s in A.summands:
        c = maps.pairing_constant(A, s)
        if s.name == "iota":
            assert c == (1 if variant == "aug" else None)
            continue
        F, G = s.flats
        if variant == "aug" or (F not in (0, full_m) and G not in (0, full_n)):
            assert c == -1, s.name
        else:
            assert c in (None, -1), s.name
