from fractions import Fraction

import pytest

from canalg.bounds import (
    BelowThreshold,
    NotBaseForm,
    base_bound,
    base_family,
    bound_5_2,
    bound_5_5,
    bound_5_6,
    in_frakO,
    in_frakOprime,
    is_base_form,
    lemma_bound_5_5,
    prop_predicts_strict,
    reduce_pair,
    threshold_triples,
    verify_lemma_grid,
)
from canalg.core import CanonicalType, DimVector, e_alpha, ringel_form, special_vector_e, special_vector_h
from canalg.geometry import enumerate_splits, regular_vectors
from canalg.witnesses import witness_n3

T5 = CanonicalType((2, 2, 2, 2, 2))
THRESHOLD_TYPES = [(2, 2, 2), (4, 4, 4), (2, 2, 3, 3), (2, 2, 2, 3), (2, 2, 2, 2, 2), (3, 3, 3), (2, 3, 6)]


def test_lemma_5_5_example():
    assert lemma_bound_5_5(4, 1, 3, (2, 1, 1)) == (Fraction(4), Fraction(13, 3))


def test_lemma_5_5_q_zero_is_lemma_5_2():
    for d in range(0, 9):
        for m in range(2, 6):
            assert bound_5_5(d, 0, m) == bound_5_2(d, m)


def test_lemma_5_5_equality_branch():
    d, q, m = 5, 1, 3
    deltas = [Fraction(d + q, m)] * (m - 1) + [Fraction(d - (m - 1) * q, m)]
    lhs, rhs = lemma_bound_5_5(d, q, m, deltas)
    assert lhs == rhs


def test_lemma_5_5_validation():
    with pytest.raises(ValueError):
        lemma_bound_5_5(4, 1, 3, (1, 1, 1))
    with pytest.raises(ValueError):
        lemma_bound_5_5(4, 3, 3, (2, 1, 1))


def test_bound_5_6_value():
    assert bound_5_6(6, 2) == Fraction(16)


@pytest.mark.parametrize("lemma", ["5.2", "5.3", "5.4", "5.5", "5.6", "5.7"])
def test_grids_small(lemma):
    rep = verify_lemma_grid(lemma, max_total=8, max_m=5)
    assert rep.passed and rep.instances > 0, rep.to_json()
    assert rep.equality_instances > 0


def test_threshold_triples():
    triples = threshold_triples(6)
    assert (2, 2, 2) in triples and (4, 4, 4) in triples and (2, 3, 6) in triples
    assert (5, 5, 5) not in triples


def test_base_family():
    assert base_family(CanonicalType((3, 4, 6))) == "N3"
    assert base_family(CanonicalType((2, 5, 2, 2))) == "Type222m"
    assert base_family(CanonicalType((3, 2, 3, 2))) == "Type2233"
    assert base_family(T5) == "Type22222"
    for arms in [(5, 5, 5), (2, 2, 3, 4), (2, 2, 2, 2, 3)]:
        with pytest.raises(BelowThreshold):
            base_family(CanonicalType(arms))


def _pair_22222():
    d = special_vector_e(T5, 5, 2) * 2
    dp = DimVector(2, ((1,), (1,), (1,), (1,), (0,)), 0)
    return d, dp


def test_base_bound_22222():
    d, dp = _pair_22222()
    assert is_base_form(T5, d, dp)
    b = base_bound(T5, d, dp)
    assert b.value == 0 and b.bound == 0 and b.conclusion == "NonPositive"
    assert in_frakO(T5, d, dp) and in_frakOprime(T5, d, dp)


def test_base_bound_444_witness():
    w = witness_n3(4, 4, 4, minimal=True)
    b = base_bound(w.type, w.d, w.dprime)
    assert b.value == 0 and b.conclusion == "NonPositive"


def test_base_bound_rejects_non_base():
    t = CanonicalType((2, 2, 2))
    d = special_vector_h(t) * 2
    dp = DimVector(2, ((1,), (1,), (1,)), 1)
    assert not is_base_form(t, d, dp)
    with pytest.raises(NotBaseForm):
        base_bound(t, d, dp)


def test_base_bound_strict_when_p_positive():
    t = CanonicalType((2, 2, 3, 3))
    for d in regular_vectors(t, 2):
        for s in enumerate_splits(t, d):
            if s.dprime.is_zero() or not is_base_form(t, d, s.dprime):
                continue
            if prop_predicts_strict(t, d):
                assert base_bound(t, d, s.dprime).conclusion == "StrictlyNegative"


def test_certificate_222_h():
    t = CanonicalType((2, 2, 2))
    cert = reduce_pair(t, special_vector_h(t), e_alpha(t))
    # the pair is already in base form, so no reduction step is needed
    assert cert.steps == []
    assert cert.conclusion == "StrictlyNegative" and cert.value == -2
    assert cert.value == ringel_form(t, special_vector_h(t) - e_alpha(t), e_alpha(t))


def test_certificate_22222():
    d, dp = _pair_22222()
    cert = reduce_pair(T5, d, dp)
    assert cert.conclusion == "NonPositive" and cert.base_value == 0 and cert.value == 0
    assert cert.consistent and cert.base_tag.in_frakO


def test_certificate_below_threshold():
    t = CanonicalType((5, 5, 5))
    with pytest.raises(BelowThreshold):
        reduce_pair(t, special_vector_h(t), e_alpha(t))


def _check_certificate(t, d, dp, value):
    cert = reduce_pair(t, d, dp)
    assert cert.value == value == ringel_form(t, d - dp, dp)
    prev_d, prev_dp, prev_v = d, dp, value
    for step in cert.steps:
        assert step.value_before == prev_v == ringel_form(t, prev_d - prev_dp, prev_dp)
        assert step.value_after == ringel_form(t, step.d - step.dprime, step.dprime)
        assert step.value_after >= step.value_before
        prev_d, prev_dp, prev_v = step.d, step.dprime, step.value_after
    assert cert.base_value == prev_v
    assert prev_v <= cert.base_majorant
    assert value <= 0
    if cert.conclusion == "StrictlyNegative":
        assert value < 0
    else:
        assert cert.conclusion == "NonPositive"
    assert cert.consistent
    return cert


# long three-arm types have far more splits per vector; bound 1 keeps them quick
SOUNDNESS_BOUND = {(4, 4, 4): 1, (3, 3, 3): 1, (2, 3, 6): 1}


@pytest.mark.parametrize("arms", THRESHOLD_TYPES)
def test_certificates_sound_small(arms):
    t = CanonicalType(arms)
    count = 0
    for d in regular_vectors(t, SOUNDNESS_BOUND.get(arms, 2)):
        for s in enumerate_splits(t, d):
            if s.dprime.is_zero():
                continue
            _check_certificate(t, d, s.dprime, s.value)
            count += 1
    assert count > 0
