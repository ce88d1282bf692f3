import csv
import itertools
from collections import Counter

import pytest

from canalg.classify import in_P, in_RQ
from canalg.core import CanonicalType, DimVector, a_dim, e_alpha, ringel_form, special_vector_e, special_vector_h
from canalg.geometry import (
    NotRegular,
    decide,
    enumerate_splits,
    nontrivial_dprimes,
    nontrivial_max,
    regular_vectors,
    scan_family,
    split_count,
    split_profile,
    theorem_predictions,
)
from canalg.witnesses import witness_n3, witness_n4

T222 = CanonicalType((2, 2, 2))
T5 = CanonicalType((2, 2, 2, 2, 2))


def _multiset(t, d, mode):
    return Counter((s.dprime.flat(), s.value) for s in enumerate_splits(t, d, mode=mode))


def test_splits_of_h():
    h = special_vector_h(T222)
    splits = {s.dprime.flat(): s for s in enumerate_splits(T222, h)}
    assert splits[DimVector.zero(T222).flat()].value == 0
    assert splits[e_alpha(T222).flat()].value == -2
    assert splits[e_alpha(T222).flat()].dsecond == h - e_alpha(T222)
    assert max(s.value for s in splits.values()) == 0
    for s in splits.values():
        assert in_P(T222, s.dprime) and in_RQ(T222, s.dsecond)
        assert s.value == ringel_form(T222, s.dsecond, s.dprime)


def test_zero_has_one_split():
    z = DimVector.zero(T222)
    splits = list(enumerate_splits(T222, z))
    assert len(splits) == 1 and splits[0].value == 0 and splits[0].dprime == z


@pytest.mark.parametrize("t", [T222, T5, CanonicalType((2, 3, 3))])
def test_pruned_equals_naive_small(t):
    for flat in itertools.product(range(3), repeat=t.num_vertices):
        d = DimVector.from_flat(t, flat)
        pruned = _multiset(t, d, "pruned")
        assert pruned == _multiset(t, d, "naive")
        prof = split_profile(t, d)
        assert prof == Counter(v for (_, v), c in pruned.items() for _ in range(c))
        assert split_count(t, d) == sum(pruned.values())
        nt = [v for (dp, v) in pruned.elements() if any(dp)]
        assert nontrivial_max(t, d) == (max(nt) if nt else None)
        assert sorted(nontrivial_dprimes(t, d)) == sorted(dp for dp, _ in pruned.elements() if any(dp))


def test_profile_floor_matches_full():
    t = CanonicalType((3, 3, 3))
    for d in regular_vectors(t, 2):
        full = split_profile(t, d)
        for floor in (-4, 0):
            assert split_profile(t, d, floor=floor) == Counter({k: v for k, v in full.items() if k >= floor})


def test_decide_h():
    v = decide(T222, special_vector_h(T222))
    assert (v.is_complete_intersection, v.is_irreducible, v.is_normal) == (True, True, True)
    assert v.dim == 5 and v.a == 5 and v.max_value == 0 and v.equality_pair_count == 1


def test_decide_2e52():
    d = special_vector_e(T5, 5, 2) * 2
    v = decide(T5, d)
    assert v.is_complete_intersection and not v.is_normal
    assert v.equality_pair_count >= 2
    dp = DimVector(2, ((1,), (1,), (1,), (1,), (0,)), 0)
    assert any(w.dprime == dp and w.dsecond == DimVector(0, ((1,), (1,), (1,), (1,), (0,)), 2) for w in v.witnesses)
    assert v.dim == a_dim(T5, d)


def test_decide_witness_444():
    w = witness_n3(4, 4, 4, minimal=True)
    v = decide(w.type, w.d)
    assert v.is_complete_intersection and not v.is_normal and v.max_value == 0


def test_decide_witness_2234():
    w = witness_n4((2, 2, 3, 4))
    v = decide(w.type, w.d)
    assert w.scale == 16 and v.max_value == 16 and not v.is_complete_intersection
    assert v.dim == v.a + 16
    assert all(s.value == 16 for s in v.witnesses)


def test_decide_rejects_nonregular():
    with pytest.raises(NotRegular):
        decide(T222, e_alpha(T222))
    assert decide(T222, e_alpha(T222), relaxed=True).max_value == 0


def test_scan_222_and_sincere_22222(tmp_path):
    r = scan_family(T222, 3, "regular")
    assert r.complete and r.consistent and r.ci_failures == 0 and r.normal_failures == 0
    r = scan_family(T5, 3, "sincere_regular")
    assert r.consistent and r.normal_failures == 0
    path = tmp_path / "scan.csv"
    r = scan_family(T5, 2, "regular", csv_path=str(path))
    assert r.normal_failures >= 1 and r.consistent
    rows = list(csv.DictReader(path.open()))
    assert sum(int(row["weight"]) for row in rows) == r.vectors
    assert {"d", "weight", "max_value", "complete_intersection", "normal"} <= set(rows[0])


@pytest.mark.parametrize("arms, family", [((3, 3, 3), "regular"), ((2, 2, 2, 2, 2), "sincere_regular"), ((2, 2, 3, 3), "rprime")])
def test_symmetric_scan_matches_full(arms, family):
    t = CanonicalType(arms)
    a = scan_family(t, 2, family, symmetric=True)
    b = scan_family(t, 2, family, symmetric=False)
    assert (a.vectors, a.ci_failures, a.normal_failures) == (b.vectors, b.ci_failures, b.normal_failures)
    assert b.vectors == sum(1 for _ in regular_vectors(t, 2, family))


def test_parallel_scan_matches_serial():
    t = CanonicalType((2, 2, 3, 3))
    a = scan_family(t, 3, "regular", jobs=1)
    b = scan_family(t, 3, "regular", jobs=2)
    assert (a.vectors, a.ci_failures, a.normal_failures) == (b.vectors, b.ci_failures, b.normal_failures)


def test_predictions():
    assert theorem_predictions(T5, "sincere_regular") == {"ci_for_all": True, "normal_for_all": True}
    assert theorem_predictions(T5, "regular") == {"ci_for_all": True, "normal_for_all": False}
    assert theorem_predictions(CanonicalType((5, 5, 5)), "rprime") == {"ci_for_all": False, "normal_for_all": False}
