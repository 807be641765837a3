from fractions import Fraction

import pytest

from chowlab import linalg
from chowlab.chow import (AUGMENTED, CHOW, GradedRingModel, ModelError, RingElement, TensorModel,
                          build_model, degree_map, multiply, poincare_matrix, summary)
from chowlab.matroid import CapacityError, boolean_matroid, direct_sum, uniform_matroid
from chowlab.poly import IntPolynomial
from chowlab.poset import aug_chow_polynomial, chow_polynomial

CORPUS = {
    "B1": boolean_matroid(1), "B2": boolean_matroid(2), "B3": boolean_matroid(3),
    "B4": boolean_matroid(4), "U12": uniform_matroid(1, 2), "U23": uniform_matroid(2, 3),
    "U24": uniform_matroid(2, 4), "U34": uniform_matroid(3, 4),
}


def test_spec_examples():
    assert build_model(boolean_matroid(2), CHOW).hilbert_vector() == [1, 1]
    assert build_model(uniform_matroid(1, 1), AUGMENTED).hilbert_vector() == [1, 1]
    assert build_model(boolean_matroid(3), CHOW).hilbert_vector() == [1, 4, 1]
    assert build_model(uniform_matroid(2, 3), CHOW).hilbert() == IntPolynomial([1, 1])


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("kind", [CHOW, AUGMENTED])
def test_hilbert_matches_incidence_algebra(name, kind):
    M = CORPUS[name]
    expect = chow_polynomial(M) if kind == CHOW else aug_chow_polynomial(M)
    model = build_model(M, kind)
    assert model.hilbert() == expect
    v = model.hilbert_vector()
    assert v[0] == 1 and v[-1] == 1 and v == v[::-1]


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("kind", [CHOW, AUGMENTED])
def test_every_maximal_flag_has_degree_one(name, kind):
    model = build_model(CORPUS[name], kind)
    for flag in model.maximal_flags():
        assert degree_map(model.monomial(model.flag_monomial(flag))) == 1


def test_augmented_y_times_flag():
    # y_I x_{F_r} ... x_{F_{d-1}} with I a basis of F_r also has degree one
    M = uniform_matroid(3, 4)
    model = build_model(M, AUGMENTED)
    for flag in model.maximal_flags():
        chain = flag[1:]
        F1 = chain[0]
        i = [k for k in range(M.ground_size) if F1 >> k & 1][0]
        mono = (model.gen(("y", i)),) + tuple(model.gen(("x", F)) for F in chain)
        assert degree_map(model.monomial(mono)) == 1


def test_multiplication_basics():
    model = build_model(boolean_matroid(3), CHOW)
    one = model.one()
    a = model.x(0b001)
    assert multiply(one, a) == a
    assert model.x(0b001) * model.x(0b010) == model.zero(2)
    top = model.x(0b001) * model.x(0b011)
    assert degree_map(top) == 1
    assert degree_map(a) == 0
    with pytest.raises(ModelError):
        multiply(top, a)
    with pytest.raises(ModelError):
        RingElement(model, 1, [1])


def test_linear_relations_hold():
    M = uniform_matroid(2, 4)
    model = build_model(M, CHOW)
    for i in range(M.ground_size):
        lhs = sum((model.x(F) for F in M.proper_flats(True) if not F >> i & 1), model.zero(1))
        rhs = sum((model.x(F) for F in M.proper_flats(True) if not F & 1), model.zero(1))
        assert lhs == rhs
    aug = build_model(M, AUGMENTED)
    for i in range(M.ground_size):
        xs = sum((aug.x(F) for F in M.proper_flats() if not F >> i & 1), aug.zero(1))
        assert aug.y(i) == xs
        for F in M.proper_flats():
            if not F >> i & 1:
                assert (aug.y(i) * aug.x(F)).is_zero()


def test_augmented_b1_ring():
    # span{1, x_empty}, x_empty^2 = 0
    model = build_model(uniform_matroid(1, 1), AUGMENTED)
    assert model.hilbert_vector() == [1, 1]
    assert model.x(0) == model.y(0)
    assert model.multiply(model.x(0), model.x(0), strict=False).coords == ()


@pytest.mark.parametrize("name", sorted(CORPUS))
@pytest.mark.parametrize("kind", [CHOW, AUGMENTED])
def test_poincare_pairing_nondegenerate(name, kind):
    model = build_model(CORPUS[name], kind)
    for k in range(model.top + 1):
        P = poincare_matrix(model, k)
        assert len(P) == model.dim(k)
        assert linalg.rank(P, model.dim(model.top - k)) == model.dim(k) == model.dim(model.top - k)


def test_poincare_b3_degree_one_full_rank():
    P = poincare_matrix(build_model(boolean_matroid(3), CHOW), 1)
    assert len(P) == 4 and linalg.rank(P, 4) == 4
    assert any(poincare_matrix(build_model(boolean_matroid(3), CHOW), 0)[0])


def test_capacity():
    with pytest.raises(CapacityError):
        GradedRingModel(boolean_matroid(4), AUGMENTED, max_monomials=10)


def test_tensor_model():
    a, b = build_model(boolean_matroid(3), CHOW), build_model(uniform_matroid(2, 4), AUGMENTED)
    T = TensorModel([a, b])
    assert T.hilbert() == a.hilbert() * b.hilbert()
    for k in range(T.top + 1):
        assert linalg.rank(T.poincare_matrix(k), T.dim(T.top - k)) == T.dim(k)


def test_summary_and_cache():
    M = boolean_matroid(2)
    assert build_model(M, CHOW) is build_model(M, CHOW)
    s = summary(build_model(M, AUGMENTED), with_basis=True)
    assert s["hilbert"] == {"0": 1, "1": 3, "2": 1}
    assert len(s["basis"]["1"]) == 3


def test_sum_model_matches():
    S = direct_sum(uniform_matroid(2, 4), uniform_matroid(2, 4))
    assert build_model(S, AUGMENTED).hilbert_vector() == [1, 35, 93, 35, 1]
    assert build_model(S, CHOW).hilbert_vector() == [1, 27, 27, 1]


def test_degree_map_is_linear():
    model = build_model(boolean_matroid(3), CHOW)
    a = model.x(0b001) * model.x(0b011)
    b = model.x(0b010) * model.x(0b110)
    assert degree_map(a.scaled(Fraction(3, 2)) + b) == Fraction(5, 2)
