from fractions import Fraction

import pytest

from canalg.classify import canonical_presentation, in_R
from canalg.core import CanonicalType, ringel_form, special_vector_e, special_vector_h, threshold, vector_sum
from canalg.witnesses import (
    NotApplicable,
    sincere_lift,
    witness_for,
    witness_n3,
    witness_n4,
    witness_n5plus,
)

BELOW_OR_AT = [(4, 4, 4), (5, 5, 5), (3, 4, 7), (2, 2, 3, 3), (2, 2, 3, 4), (3, 3, 3, 3), (2, 2, 2, 2, 2), (2, 2, 2, 2, 3), (2, 2, 2, 2, 2, 2)]


def test_n3_values():
    assert witness_n3(4, 4, 4).predicted_value == 0
    w = witness_n3(5, 5, 5)
    assert w.value == w.predicted_value > 0
    assert witness_n3(CanonicalType((4, 4, 4))).d == witness_n3(4, 4, 4).d


@pytest.mark.parametrize("arms", [(4, 4, 4), (5, 5, 5), (3, 4, 7)])
def test_n3_sum_identity(arms):
    w = witness_n3(*arms)
    t = w.type
    total = vector_sum(t, (special_vector_e(t, i, m) * (w.scale // (m - 1)) for i, m in enumerate(arms, 1)))
    assert w.d == total


def test_n3_above_threshold():
    with pytest.raises(NotApplicable):
        witness_n3(3, 4, 5)
    with pytest.raises(NotApplicable):
        witness_n3(2, 2, 2)


def test_n4_values():
    w = witness_n4((2, 2, 3, 3))
    assert w.scale == 8 and w.predicted_value == 0 == w.value
    w = witness_n4((2, 2, 3, 4))
    assert w.scale == 16 and w.predicted_value == 16 == w.value
    assert w.predicted_value == (Fraction(3, 4) - Fraction(1, 4) - Fraction(1, 4) - Fraction(1, 8) - Fraction(1, 16)) * 256


def test_n4_reorders_longest_arms_last():
    w = witness_n4((4, 2, 3, 2))
    assert w.order[2:] == (2, 0)
    assert w.value == w.predicted_value and all(w.checks().values())


def test_n5plus_values():
    w = witness_n5plus((2, 2, 2, 2, 2))
    assert w.scale == 16 and w.predicted_value == 0 == w.value
    w = witness_n5plus((2, 2, 2, 2, 3))
    assert w.scale == 24 and w.predicted_value == 48 == w.value
    assert 4 in w.order[:4]


@pytest.mark.parametrize("arms", [(2, 2, 2, 2, 2), (2, 2, 2, 2, 3), (3, 2, 2, 2, 2)])
def test_n5plus_sum_identity(arms):
    w = witness_n5plus(arms)
    last = w.order[-1] + 1
    assert w.d == special_vector_e(w.type, last, arms[last - 1]) * w.scale


@pytest.mark.parametrize("arms", BELOW_OR_AT)
@pytest.mark.parametrize("minimal", [False, True])
def test_generated_pairs_valid(arms, minimal):
    t = CanonicalType(arms)
    w = witness_for(t, minimal=minimal)
    assert all(w.checks().values()), w.to_json()
    assert w.value == ringel_form(t, w.dsecond, w.dprime) >= 0
    crit, _ = threshold(t)
    assert (w.value == 0) if crit == 0 else (w.value > 0)


def test_minimal_scales():
    assert witness_n3(4, 4, 4, minimal=True).scale == 3
    assert witness_n4((2, 2, 3, 4), minimal=True).scale == 4
    assert witness_n5plus((2, 2, 2, 2, 2), minimal=True).scale == 2


def test_witness_for_above_threshold():
    with pytest.raises(NotApplicable):
        witness_for(CanonicalType((2, 2, 2, 3)))


@pytest.mark.parametrize("arms", [(5, 5, 5), (2, 2, 3, 4), (2, 2, 2, 2, 3)])
def test_sincere_lift(arms):
    t = CanonicalType(arms)
    w = witness_for(t, minimal=True)
    lift = sincere_lift(t, w.dprime, w.dsecond)
    h = special_vector_h(t)
    q = lift.q
    assert lift.value == ringel_form(t, lift.dsecond, lift.dprime) > 0
    assert lift.value == q * q * w.value + q * ringel_form(t, w.dsecond, h)
    d = lift.dprime + lift.dsecond
    assert in_R(t, d) and canonical_presentation(t, d).p > 0 and d.is_sincere()


def test_sincere_lift_needs_positive_value():
    w = witness_n3(4, 4, 4)
    with pytest.raises(ValueError):
        sincere_lift(w.type, w.dprime, w.dsecond)
