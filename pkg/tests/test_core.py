from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from canalg.core import (
    CanonicalType,
    DimVector,
    a_dim,
    build_quiver,
    e_alpha,
    e_omega,
    gl_dim,
    ringel_form,
    special_vector_e,
    special_vector_h,
    threshold,
    vector_sum,
)

TYPES = [(2, 2, 2), (2, 3, 5), (3, 3, 3), (2, 2, 3, 4), (2, 2, 2, 2, 2)]


@pytest.mark.parametrize(
    "arms, counts",
    [((2, 2, 2), (5, 6, 1)), ((2, 3, 5), (9, 10, 1)), ((2, 2, 2, 2, 2), (7, 10, 3))],
)
def test_quiver_counts(arms, counts):
    t = CanonicalType(arms)
    q = build_quiver(t)
    assert (t.num_vertices, t.num_arrows, t.num_relations) == counts
    assert (len(q.vertices), len(q.arrows), len(q.relations)) == counts
    assert len(q.topological_order()) == t.num_vertices


def test_type_validation():
    with pytest.raises(ValueError):
        CanonicalType((2, 2))
    with pytest.raises(ValueError):
        CanonicalType((1, 2, 2))
    assert CanonicalType.parse("2, 3,4").arms == (2, 3, 4)


def vectors(t, hi=4):
    return st.lists(st.integers(0, hi), min_size=t.num_vertices, max_size=t.num_vertices).map(
        lambda v: DimVector.from_flat(t, v)
    )


@pytest.mark.parametrize("arms", TYPES)
def test_flat_roundtrip_and_json(arms):
    t = CanonicalType(arms)
    d = DimVector.from_flat(t, range(t.num_vertices))
    assert DimVector.from_flat(t, d.flat()) == d
    assert DimVector.from_json(d.to_json()) == d


def test_ringel_hand_example():
    t = CanonicalType((2, 2, 2))
    d1 = DimVector(0, ((1,), (1,), (1,)), 1)
    d2 = DimVector(1, ((0,), (0,), (0,)), 0)
    assert ringel_form(t, d1, d2) == -2


@pytest.mark.parametrize("arms", TYPES)
@settings(max_examples=40, deadline=None)
@given(data=st.data())
def test_ringel_identities(arms, data):
    t = CanonicalType(arms)
    d = data.draw(vectors(t))
    h = special_vector_h(t)
    assert ringel_form(t, h, d) == d.omega - d.alpha == -ringel_form(t, d, h)
    for i, m in enumerate(t.arms, 1):
        for j in range(1, m + 1):
            assert ringel_form(t, special_vector_e(t, i, j), d) == d.at(i, j) - d.at(i, j - 1)
    assert a_dim(t, d) == gl_dim(d) - ringel_form(t, d, d)


@pytest.mark.parametrize("arms", TYPES)
@settings(max_examples=30, deadline=None)
@given(data=st.data(), c=st.integers(-3, 3))
def test_ringel_bilinear(arms, data, c):
    t = CanonicalType(arms)
    d1, d2, d3 = (data.draw(vectors(t)) for _ in range(3))
    assert ringel_form(t, d1 * c + d2, d3) == c * ringel_form(t, d1, d3) + ringel_form(t, d2, d3)
    assert ringel_form(t, d3, d1 * c + d2) == c * ringel_form(t, d3, d1) + ringel_form(t, d3, d2)


def test_a_dim_examples():
    t = CanonicalType((2, 2, 2))
    assert a_dim(t, special_vector_h(t)) == 5
    assert a_dim(t, DimVector.zero(t)) == 0


def test_special_vectors():
    t = CanonicalType((2, 2, 2))
    assert special_vector_h(t) == DimVector(1, ((1,), (1,), (1,)), 1)
    assert special_vector_e(t, 1, 2) == DimVector(1, ((0,), (1,), (1,)), 1)
    assert special_vector_e(t, 1, 0) == special_vector_e(t, 1, 2)
    for arms in TYPES:
        t = CanonicalType(arms)
        for i, m in enumerate(arms, 1):
            assert vector_sum(t, (special_vector_e(t, i, j) for j in range(1, m + 1))) == special_vector_h(t)
    with pytest.raises(IndexError):
        special_vector_e(t, 1, 3)


def test_units():
    t = CanonicalType((2, 3, 4))
    assert e_alpha(t).flat() == (1,) + (0,) * 7
    assert e_omega(t).flat() == (0,) * 7 + (1,)


@pytest.mark.parametrize(
    "arms, crit, tame",
    [
        ((2, 2, 2, 2, 2), Fraction(0), Fraction(-1, 2)),
        ((4, 4, 4), Fraction(0), Fraction(-1, 4)),
        ((2, 3, 6), Fraction(7, 10), Fraction(0)),
    ],
)
def test_threshold_examples(arms, crit, tame):
    assert threshold(CanonicalType(arms)) == (crit, tame)
