import numpy as np
import pytest

from canalg.core import ALPHA, OMEGA, CanonicalType, DimVector, TubeParams, a_dim, arm_vertex, ringel_form, special_vector_h
from canalg.repcalc import (
    DegenerateTube,
    RelationError,
    RepMismatch,
    Rep,
    build_arm_regular,
    build_extension,
    build_homogeneous,
    build_simple,
    direct_sum,
    euler_check,
    euler_test,
    ext1_dim,
    ext1_spot_check,
    ext2_dim,
    hom_dim,
    nonsingular_probe,
    random_z,
    sample_point,
    semicontinuity_probe,
    tube_point,
    z_contains,
    z_dim,
    ZElement,
)

TYPES = [(2, 2, 2), (2, 3, 4), (3, 3, 3), (2, 2, 2, 2, 2)]


@pytest.fixture(params=TYPES, ids=lambda a: ",".join(map(str, a)))
def setup(request):
    t = CanonicalType(request.param)
    return t, TubeParams.default(t, 32003)


def test_simples(setup):
    t, P = setup
    sa, sw = build_simple(t, ALPHA, P), build_simple(t, OMEGA, P)
    assert hom_dim(sa, sa) == 1 and hom_dim(sa, sw) == 0
    assert ext1_dim(sa, sa) == 0 and ext2_dim(sa, sa) == 0
    assert ext2_dim(sw, sa) == t.n - 2 == ringel_form(t, sw.dim, sa.dim)


def test_homogeneous(setup):
    t, P = setup
    r, s = build_homogeneous(t, 2, 7, P), build_homogeneous(t, 3, 7, P)
    assert hom_dim(r, r) == 1 and ext1_dim(r, r) == 1 and ext2_dim(r, r) == 0
    assert hom_dim(r, s) == 0 and hom_dim(s, r) == 0


def test_exceptional_points_rejected(setup):
    t, P = setup
    for i in range(1, t.n + 1):
        a, b = tube_point(P, i)
        with pytest.raises(DegenerateTube):
            build_homogeneous(t, a, b, P)


def test_arm_regulars(setup):
    t, P = setup
    for i, m in enumerate(t.arms, 1):
        for j in range(1, m + 1):
            r = build_arm_regular(t, i, j, P)
            assert hom_dim(r, r) == 1 and ext2_dim(r, r) == 0
            if j < m:
                assert r.dim.flat() == build_simple(t, arm_vertex(t, i, j), P).dim.flat()
    with pytest.raises(IndexError):
        build_arm_regular(t, 1, t.arms[0] + 1, P)


def test_relation_check():
    t = CanonicalType((2, 2, 2))
    P = TubeParams.default(t)
    h = special_vector_h(t)
    mats = {(k, j): np.array([[1]]) for k in (1, 2, 3) for j in (1, 2)}
    with pytest.raises(RelationError):
        Rep(t, P, h, mats)  # 1 + lambda_3 * 1 != 1
    with pytest.raises(RelationError):
        Rep(t, P, h, {(1, 1): np.zeros((2, 2))})


def test_mismatch():
    t = CanonicalType((2, 2, 2))
    a = build_simple(t, ALPHA, TubeParams.default(t, 32003))
    b = build_simple(t, ALPHA, TubeParams.default(t, 101))
    with pytest.raises(RepMismatch):
        hom_dim(a, b)


def test_extensions(setup):
    t, P = setup
    r = build_homogeneous(t, 2, 7, P)
    split = direct_sum(r, r)
    assert split.dim == r.dim * 2
    assert hom_dim(split, r) == 2 and ext1_dim(split, split) == 4
    z = random_z(r, r, seed=5)
    assert z_contains(r, r, z)
    e = build_extension(r, r, z)
    assert e.dim == r.dim * 2 and not e.relation_defects()
    assert hom_dim(e, r) == 1 and hom_dim(r, e) == 1


def test_extension_rejects_bad_z():
    t = CanonicalType((2, 2, 2))
    P = TubeParams.default(t)
    sa, sw = build_simple(t, ALPHA, P), build_simple(t, OMEGA, P)
    # Z(S_omega, S_alpha) has no arrow slots, so any z is the zero element
    assert z_dim(sw, sa) == 0
    r = build_homogeneous(t, 1, 1, P)
    bad = ZElement({(1, 2): np.array([[1]])})
    assert not z_contains(r, r, bad)
    with pytest.raises(RelationError):
        build_extension(r, r, bad)


def test_sample_point(setup):
    t, P = setup
    h = special_vector_h(t)
    m = sample_point(t, P, h, seed=11)
    assert m is not None and not m.relation_defects()
    assert m.identical(sample_point(t, P, h, seed=11))
    assert ext2_dim(m, m) == 0 and z_dim(m, m) == a_dim(t, h)
    for k in (2, 3):
        m = sample_point(t, P, h * k, seed=k)
        assert nonsingular_probe(m)["holds"]


def test_sample_point_absent_reported():
    t = CanonicalType((2, 2, 2))
    P = TubeParams.default(t)
    # alpha and omega two dimensional, every arm one dimensional: the three
    # composites have rank <= 1 but must span a pencil, impossible generically
    d = DimVector(2, ((1,), (1,), (1,)), 2)
    m = sample_point(t, P, d, seed=1, retries=3)
    assert m is None or not m.relation_defects()


def test_euler_on_constructions(setup):
    t, P = setup
    reps = [build_simple(t, ALPHA, P), build_simple(t, OMEGA, P), build_homogeneous(t, 4, 9, P)]
    reps += [build_arm_regular(t, i, j, P) for i, m in enumerate(t.arms, 1) for j in range(1, m + 1)]
    for a in reps:
        for b in reps:
            assert euler_check(a, b)["holds"]


def test_euler_test_report(setup):
    t, P = setup
    rep = euler_test(t, P, pairs=30, seed=3)
    assert rep.passed and rep.pairs == 30


def test_semicontinuity(setup):
    t, P = setup
    h = special_vector_h(t)
    for seed in range(3):
        a, b = sample_point(t, P, h, seed=seed), sample_point(t, P, h * 2, seed=seed + 10)
        assert semicontinuity_probe(a, b)["holds"]


def test_ext1_spot_check_matches_form():
    t = CanonicalType((3, 3, 3))
    dp = DimVector(1, ((1, 0), (0, 0), (0, 0)), 0)
    ds = DimVector(1, ((1, 2), (2, 2), (2, 2)), 2)
    res = ext1_spot_check(t, dp, ds, samples=20, seed=1)
    assert res["absent"] == 0 and res["matches"] and res["predicted"] == -ringel_form(t, ds, dp)
