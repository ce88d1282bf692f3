"""Representations of a canonical algebra over F_p and their Hom/Ext dimensions.

A representation assigns to the arrow gamma_{i,j} : (i,j) -> (i,j-1) a matrix
of size d_{i,j-1} x d_{i,j}.  The composite of arm k is
C_k = M_{k,1} M_{k,2} ... M_{k,m_k}, a d_alpha x d_omega matrix, and the
relations read C_1 + lambda_r C_2 - C_r = 0 for r in [3, n].

Dimensions are exact ranks over F_p.  For generic tube parameters they agree
with the characteristic 0 values; callers pin the prime and seeds.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional

import numpy as np

from . import linalg
from .core import (
    ALPHA,
    OMEGA,
    CanonicalType,
    DimVector,
    TubeParams,
    Vertex,
    a_dim,
    arm_vertex,
    ringel_form,
    special_vector_e,
    special_vector_h,
    unit_vector,
)

PRIME_ENV = "CANALG_PRIME"
RETRIES_ENV = "CANALG_SAMPLE_RETRIES"
DEFAULT_RETRIES = 20


def default_prime() -> int:
    return int(os.environ.get(PRIME_ENV, linalg.DEFAULT_PRIME))


class RepMismatch(ValueError):
    """Two representations do not share type, prime and tube parameters."""


class RelationError(ValueError):
    """The matrices violate a relation or have the wrong shape."""


class DegenerateTube(ValueError):
    """The point (a:b) lies on an exceptional tube."""


Key = tuple[int, int]  # (arm i, position j) of the arrow gamma_{i,j}


def _arrow_keys(t: CanonicalType) -> list[Key]:
    return [(i, j) for i, m in enumerate(t.arms, 1) for j in range(1, m + 1)]


def _pencil(params: TubeParams, k: int) -> tuple[int, int]:
    """(x_k, y_k) with C_k = x_k C_1 + y_k C_2 on every representation."""
    if k == 1:
        return 1, 0
    if k == 2:
        return 0, 1
    return 1, params.coefficient(k)


@dataclass(frozen=True, eq=False)
class Rep:
    type: CanonicalType
    params: TubeParams
    dim: DimVector
    mats: Mapping[Key, np.ndarray]

    def __post_init__(self):
        t, d, p = self.type, self.dim, self.prime
        d.check(t)
        if not d.is_nonnegative():
            raise RelationError(f"negative dimension vector {d}")
        fixed = {}
        for i, j in _arrow_keys(t):
            shape = (d.at(i, j - 1), d.at(i, j))
            raw = self.mats.get((i, j))
            mat = np.zeros(shape, dtype=np.int64) if raw is None else linalg.as_mod(raw, p)
            if mat.shape != shape:
                raise RelationError(f"gamma_{i},{j} has shape {mat.shape}, expected {shape}")
            mat.setflags(write=False)
            fixed[(i, j)] = mat
        extra = set(self.mats) - set(fixed)
        if extra:
            raise RelationError(f"unknown arrows {sorted(extra)}")
        object.__setattr__(self, "mats", fixed)
        bad = self.relation_defects()
        if bad:
            raise RelationError(f"relations {bad} do not vanish")

    @property
    def prime(self) -> int:
        return self.params.prime

    def arm_path(self, k: int, lo: int, hi: int) -> np.ndarray:
        """M_{k,lo} ... M_{k,hi}; the identity on d_{k,lo-1} when lo > hi."""
        p = self.prime
        out = np.eye(self.dim.at(k, lo - 1), dtype=np.int64)
        for j in range(lo, hi + 1):
            out = linalg.matmul(out, self.mats[(k, j)], p)
        return out

    def composite(self, k: int) -> np.ndarray:
        return self.arm_path(k, 1, self.type.arms[k - 1])

    def relation_defects(self) -> list[int]:
        p = self.prime
        c1, c2 = self.composite(1), self.composite(2)
        bad = []
        for r in range(3, self.type.n + 1):
            lam = self.params.coefficient(r)
            if ((c1 + lam * c2 - self.composite(r)) % p).any():
                bad.append(r)
        return bad

    def same_algebra(self, other: "Rep") -> None:
        if self.type != other.type or self.params != other.params:
            raise RepMismatch("representations of different algebras or primes")

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "prime": self.prime,
            "lambdas": list(self.params.lambdas),
            "dim": self.dim.to_json(),
            "mats": {f"{i},{j}": self.mats[(i, j)].tolist() for i, j in _arrow_keys(self.type)},
        }

    def identical(self, other: "Rep") -> bool:
        return (
            self.type == other.type
            and self.params == other.params
            and self.dim == other.dim
            and all(np.array_equal(self.mats[k], other.mats[k]) for k in self.mats)
        )


# ---- systems --------------------------------------------------------------

def _vertex_offsets(t: CanonicalType, rows: DimVector, cols: DimVector) -> tuple[dict, int]:
    """Flat offset of the unknown block Hom(k^{cols_x}, k^{rows_x}) per vertex."""
    offs, pos = {}, 0
    verts = [ALPHA] + [arm_vertex(t, i, j) for i, m in enumerate(t.arms, 1) for j in range(1, m)] + [OMEGA]
    for v in verts:
        offs[v] = pos
        pos += rows.value(v) * cols.value(v)
    return offs, pos


def _hom_system(a: Rep, b: Rep) -> tuple[np.ndarray, int]:
    """Equations f_t A_g - B_g f_s = 0 in the unknowns f_x : A_x -> B_x."""
    t, p = a.type, a.prime
    offs, total = _vertex_offsets(t, b.dim, a.dim)
    blocks = []
    for i, j in _arrow_keys(t):
        s, tg = arm_vertex(t, i, j), arm_vertex(t, i, j - 1)
        ag, bg = a.mats[(i, j)], b.mats[(i, j)]
        rows = b.dim.value(tg) * a.dim.value(s)
        if rows == 0:
            continue
        eq = np.zeros((rows, total), dtype=np.int64)
        # row-major vec(L X R) = (L kron R^T) vec(X)
        nt = b.dim.value(tg) * a.dim.value(tg)
        ns = b.dim.value(s) * a.dim.value(s)
        if nt:
            eq[:, offs[tg]:offs[tg] + nt] += np.kron(np.eye(b.dim.value(tg), dtype=np.int64), ag.T)
        if ns:
            eq[:, offs[s]:offs[s] + ns] -= np.kron(bg, np.eye(a.dim.value(s), dtype=np.int64))
        blocks.append(eq % p)
    mat = np.concatenate(blocks) if blocks else np.zeros((0, total), dtype=np.int64)
    return mat, total


def _arrow_offsets(t: CanonicalType, top: Rep, sub: Rep) -> tuple[dict, int]:
    offs, pos = {}, 0
    for i, j in _arrow_keys(t):
        offs[(i, j)] = pos
        pos += sub.dim.at(i, j - 1) * top.dim.at(i, j)
    return offs, pos


def _z_system(top: Rep, sub: Rep) -> tuple[np.ndarray, int]:
    """The linearized relations on Z in A(dim sub, dim top).

    Z_g : k^{top_s} -> k^{sub_t}; the derivative of arm k's composite is
    sum_j sub_{k,1..j-1} Z_{k,j} top_{k,j+1..m_k}.
    """
    t, p = top.type, top.prime
    offs, total = _arrow_offsets(t, top, sub)
    da, dw = sub.dim.alpha, top.dim.omega
    if da * dw == 0 or t.n < 3:
        return np.zeros((0, total), dtype=np.int64), total

    def derivative(k: int) -> np.ndarray:
        m = t.arms[k - 1]
        out = np.zeros((da * dw, total), dtype=np.int64)
        for j in range(1, m + 1):
            size = sub.dim.at(k, j - 1) * top.dim.at(k, j)
            if size == 0:
                continue
            left = sub.arm_path(k, 1, j - 1)
            right = top.arm_path(k, j + 1, m)
            out[:, offs[(k, j)]:offs[(k, j)] + size] = np.kron(left, right.T) % p
        return out

    d1, d2 = derivative(1), derivative(2)
    blocks = []
    for r in range(3, t.n + 1):
        lam = top.params.coefficient(r)
        blocks.append((d1 + lam * d2 - derivative(r)) % p)
    return np.concatenate(blocks), total


def _sum_products(x: DimVector, y: DimVector) -> int:
    return sum(u * v for u, v in zip(x.flat(), y.flat()))


def hom_dim(a: Rep, b: Rep) -> int:
    a.same_algebra(b)
    mat, total = _hom_system(a, b)
    return total - linalg.rank(mat, a.prime)


def z_dim(msecond: Rep, mprime: Rep) -> int:
    """dim Z(M'', M') with Z in A(d', d'')."""
    msecond.same_algebra(mprime)
    mat, total = _z_system(msecond, mprime)
    return total - linalg.rank(mat, msecond.prime)


def ext1_dim(msecond: Rep, mprime: Rep) -> int:
    """dim Ext^1(M'', M')."""
    value = z_dim(msecond, mprime) - _sum_products(mprime.dim, msecond.dim) + hom_dim(msecond, mprime)
    if value < 0:
        raise AssertionError("negative Ext^1 dimension")
    return value


def ext2_dim(mprime: Rep, msecond: Rep) -> int:
    """dim Ext^2(M', M''): the cokernel of the linearized relations."""
    mprime.same_algebra(msecond)
    t = mprime.type
    mat, total = _z_system(mprime, msecond)
    zd = total - linalg.rank(mat, mprime.prime)
    value = zd - total + (t.n - 2) * mprime.dim.omega * msecond.dim.alpha
    if value < 0:
        raise AssertionError("negative Ext^2 dimension")
    return value


def euler_check(a: Rep, b: Rep) -> dict:
    h, e1, e2 = hom_dim(a, b), ext1_dim(a, b), ext2_dim(a, b)
    form = ringel_form(a.type, a.dim, b.dim)
    return {"hom": h, "ext1": e1, "ext2": e2, "ringel_form": form, "holds": h - e1 + e2 == form}


# ---- Z elements and extensions -------------------------------------------

@dataclass(frozen=True, eq=False)
class ZElement:
    mats: Mapping[Key, np.ndarray]


def z_contains(msecond: Rep, mprime: Rep, z: ZElement) -> bool:
    msecond.same_algebra(mprime)
    t, p = msecond.type, msecond.prime
    offs, total = _arrow_offsets(t, msecond, mprime)
    vec = np.zeros(total, dtype=np.int64)
    for (i, j), off in offs.items():
        shape = (mprime.dim.at(i, j - 1), msecond.dim.at(i, j))
        raw = z.mats.get((i, j))
        mat = np.zeros(shape, dtype=np.int64) if raw is None else linalg.as_mod(raw, p)
        if mat.shape != shape:
            return False
        vec[off:off + mat.size] = mat.reshape(-1)
    mat, _ = _z_system(msecond, mprime)
    return not linalg.matmul(mat, vec.reshape(-1, 1), p).any()


def random_z(msecond: Rep, mprime: Rep, seed: int) -> ZElement:
    """A seeded uniformly random element of Z(M'', M')."""
    msecond.same_algebra(mprime)
    t, p = msecond.type, msecond.prime
    mat, total = _z_system(msecond, mprime)
    basis = linalg.nullspace(mat, p) if mat.shape[0] else np.eye(total, dtype=np.int64)
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, p, size=(1, basis.shape[0]), dtype=np.int64)
    vec = linalg.matmul(coeffs, basis, p).reshape(-1) if basis.shape[0] else np.zeros(total, dtype=np.int64)
    offs, _ = _arrow_offsets(t, msecond, mprime)
    mats = {}
    for (i, j), off in offs.items():
        shape = (mprime.dim.at(i, j - 1), msecond.dim.at(i, j))
        mats[(i, j)] = vec[off:off + shape[0] * shape[1]].reshape(shape)
    return ZElement(mats)


def build_extension(mprime: Rep, msecond: Rep, z: Optional[ZElement] = None) -> Rep:
    """The middle term with blocks [[M'_g, Z_g], [0, M''_g]]; z = None splits."""
    mprime.same_algebra(msecond)
    t = mprime.type
    if z is not None and not z_contains(msecond, mprime, z):
        raise RelationError("z is not in Z(M'', M')")
    mats = {}
    for i, j in _arrow_keys(t):
        top = mprime.mats[(i, j)]
        bottom = msecond.mats[(i, j)]
        zr = (
            np.zeros((top.shape[0], bottom.shape[1]), dtype=np.int64)
            if z is None or (i, j) not in z.mats
            else linalg.as_mod(z.mats[(i, j)], mprime.prime)
        )
        upper = np.concatenate([top, zr], axis=1)
        lower = np.concatenate([np.zeros((bottom.shape[0], top.shape[1]), dtype=np.int64), bottom], axis=1)
        mats[(i, j)] = np.concatenate([upper, lower], axis=0)
    return Rep(t, mprime.params, mprime.dim + msecond.dim, mats)


def direct_sum(a: Rep, b: Rep) -> Rep:
    return build_extension(a, b, None)


# ---- constructors --------------------------------------------------------

def _params(t: CanonicalType, params: Optional[TubeParams]) -> TubeParams:
    return params if params is not None else TubeParams.default(t, default_prime())


def zero_rep(t: CanonicalType, d: DimVector, params: Optional[TubeParams] = None) -> Rep:
    """The semisimple representation: every arrow is zero."""
    return Rep(t, _params(t, params), d, {})


def build_simple(t: CanonicalType, x: Vertex, params: Optional[TubeParams] = None) -> Rep:
    return zero_rep(t, unit_vector(t, x), params)


def _scalar_rep(t: CanonicalType, params: TubeParams, d: DimVector, composites: dict[int, int]) -> Rep:
    """All arms one dimensional; arm k's outermost arrow carries C_k."""
    mats = {}
    for k, m in enumerate(t.arms, 1):
        for j in range(1, m + 1):
            shape = (d.at(k, j - 1), d.at(k, j))
            if 0 in shape:
                continue
            mats[(k, j)] = np.array([[composites[k] if j == m else 1]], dtype=np.int64)
    return Rep(t, params, d, mats)


def homogeneous_composites(t: CanonicalType, params: TubeParams, a: int, b: int) -> dict[int, int]:
    """C_1 = a, C_2 = b, C_r = a + lambda_r b, reduced mod p."""
    p = params.prime
    out = {}
    for k in range(1, t.n + 1):
        x, y = _pencil(params, k)
        out[k] = (x * a + y * b) % p
    return out


def build_homogeneous(t: CanonicalType, a: int, b: int, params: Optional[TubeParams] = None) -> Rep:
    """The simple regular of dimension h at the point (a:b).

    Exceptional points are a = 0, b = 0 and a = -lambda_r b.
    """
    params = _params(t, params)
    comps = homogeneous_composites(t, params, a, b)
    zeros = [k for k, c in comps.items() if c == 0]
    if zeros:
        raise DegenerateTube(f"({a}:{b}) lies on the exceptional tube of arm {zeros[0]}")
    return _scalar_rep(t, params, special_vector_h(t), comps)


def tube_point(params: TubeParams, i: int) -> tuple[int, int]:
    """(a:b) of the exceptional tube attached to arm i."""
    if i == 1:
        return 0, 1
    if i == 2:
        return 1, 0
    return (-params.coefficient(i)) % params.prime, 1


def build_arm_regular(t: CanonicalType, i: int, j: int, params: Optional[TubeParams] = None) -> Rep:
    """The simple regular of dimension e_{i,j} in the exceptional tube of arm i."""
    params = _params(t, params)
    if not 1 <= i <= t.n:
        raise IndexError(f"arm {i} out of range")
    m = t.arms[i - 1]
    if not 1 <= j <= m:
        raise IndexError(f"position {j} out of range [1, {m}]")
    if j < m:
        return build_simple(t, arm_vertex(t, i, j), params)
    a, b = tube_point(params, i)
    comps = homogeneous_composites(t, params, a, b)
    return _scalar_rep(t, params, special_vector_e(t, i, m), comps)


# ---- sampling ------------------------------------------------------------

def _free_arms(t: CanonicalType, d: DimVector) -> tuple[int, int]:
    """The two arms with the widest bottleneck (earliest on ties)."""
    width = {k: min((d.at(k, j) for j in range(0, m + 1)), default=0) for k, m in enumerate(t.arms, 1)}
    order = sorted(width, key=lambda k: (-width[k], k))
    return order[0], order[1]


def sample_point(
    t: CanonicalType,
    params: Optional[TubeParams],
    d: DimVector,
    seed: int,
    retries: Optional[int] = None,
) -> Optional[Rep]:
    """A seeded random point of the representation variety, or None.

    Two free arms are sampled uniformly.  Every other arm k is sampled except
    one arrow, solved from C_k = x_k C_1 + y_k C_2; the innermost arrow is
    tried first, then the next ones outward.
    """
    params = _params(t, params)
    p = params.prime
    retries = int(os.environ.get(RETRIES_ENV, DEFAULT_RETRIES)) if retries is None else retries
    d.check(t)
    rng = np.random.default_rng(seed)
    fa, fb = _free_arms(t, d)
    xa, ya = _pencil(params, fa)
    xb, yb = _pencil(params, fb)
    inv = pow((xa * yb - xb * ya) % p, p - 2, p)

    def draw(k: int, j: int) -> np.ndarray:
        return rng.integers(0, p, size=(d.at(k, j - 1), d.at(k, j)), dtype=np.int64)

    def product(mats: list) -> np.ndarray:
        out = mats[0]
        for x in mats[1:]:
            out = linalg.matmul(out, x, p)
        return out

    for _ in range(max(1, retries)):
        mats = {}
        for k in (fa, fb):
            for j in range(1, t.arms[k - 1] + 1):
                mats[(k, j)] = draw(k, j)
        ca = product([mats[(fa, j)] for j in range(1, t.arms[fa - 1] + 1)])
        cb = product([mats[(fb, j)] for j in range(1, t.arms[fb - 1] + 1)])
        # C_1 and C_2 from the free pair by inverting the 2x2 pencil matrix
        c1 = (inv * ((yb * ca - ya * cb) % p)) % p
        c2 = (inv * ((xa * cb - xb * ca) % p)) % p
        ok = True
        for k in range(1, t.n + 1):
            if k in (fa, fb):
                continue
            x, y = _pencil(params, k)
            target = (x * c1 + y * c2) % p
            m = t.arms[k - 1]
            drawn = {j: draw(k, j) for j in range(1, m + 1)}
            for j in range(1, m + 1):
                left = product([np.eye(d.alpha, dtype=np.int64)] + [drawn[i] for i in range(1, j)])
                right = product([np.eye(d.at(k, j), dtype=np.int64)] + [drawn[i] for i in range(j + 1, m + 1)])
                rows, cols = d.at(k, j - 1), d.at(k, j)
                # row-major vec(L X R) = (L kron R^T) vec(X)
                system = np.kron(left, right.T) % p
                sol = linalg.solve(system, target.reshape(-1), p, rng)
                if sol is not None:
                    drawn[j] = sol.reshape(rows, cols)
                    break
            else:
                ok = False
                break
            for j in range(1, m + 1):
                mats[(k, j)] = drawn[j]
        if ok:
            return Rep(t, params, d, mats)
    return None


# ---- probes --------------------------------------------------------------

def nonsingular_probe(rep: Rep) -> dict:
    """z_dim(M, M) = a(dim M) + ext2_dim(M, M)."""
    z = z_dim(rep, rep)
    a = a_dim(rep.type, rep.dim)
    e2 = ext2_dim(rep, rep)
    return {"z_dim": z, "a": a, "ext2": e2, "holds": z == a + e2}


def semicontinuity_probe(a: Rep, b: Rep) -> dict:
    """hom_dim of (a, b) against the semisimple pair of the same dimensions."""
    generic = hom_dim(a, b)
    special = hom_dim(zero_rep(a.type, a.dim, a.params), zero_rep(b.type, b.dim, b.params))
    return {"hom": generic, "hom_semisimple": special, "holds": generic <= special}


def ext1_spot_check(
    t: CanonicalType,
    dprime: DimVector,
    dsecond: DimVector,
    samples: int = 20,
    seed: int = 0,
    params: Optional[TubeParams] = None,
) -> dict:
    """Minimum observed ext1_dim(M'', M') over sampled pairs against -<d'', d'>."""
    params = _params(t, params)
    observed = []
    absent = 0
    for k in range(samples):
        mp = sample_point(t, params, dprime, seed=seed * 1_000_003 + 2 * k)
        ms = sample_point(t, params, dsecond, seed=seed * 1_000_003 + 2 * k + 1)
        if mp is None or ms is None:
            absent += 1
            continue
        observed.append(ext1_dim(ms, mp))
    predicted = -ringel_form(t, dsecond, dprime)
    low = min(observed) if observed else None
    return {
        "samples": samples,
        "absent": absent,
        "min_ext1": low,
        "predicted": predicted,
        "matches": low == predicted,
    }


def random_pairs(t: CanonicalType, params: TubeParams, dims: list[DimVector], count: int, seed: int) -> Iterator[tuple[Rep, Rep]]:
    """Seeded pairs of sampled representations drawn from ``dims``."""
    rng = np.random.default_rng(seed)
    made = 0
    attempts = 0
    while made < count and attempts < 20 * count:
        attempts += 1
        i, j = rng.integers(0, len(dims), size=2)
        s = int(rng.integers(0, 2**31))
        a = sample_point(t, params, dims[i], seed=s)
        b = sample_point(t, params, dims[j], seed=s + 1)
        if a is None or b is None:
            continue
        made += 1
        yield a, b


@dataclass
class EulerReport:
    type: CanonicalType
    prime: int
    seed: int
    pairs: int = 0
    euler_failures: int = 0
    sampled: int = 0
    nonsingular_failures: int = 0
    regular_checked: int = 0
    regular_ext2_failures: int = 0
    absent: int = 0
    failures: list = None

    @property
    def passed(self) -> bool:
        return (self.pairs > 0 and not self.euler_failures
                and not self.nonsingular_failures and not self.regular_ext2_failures)

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "prime": self.prime,
            "seed": self.seed,
            "pairs": self.pairs,
            "euler_failures": self.euler_failures,
            "sampled": self.sampled,
            "nonsingular_failures": self.nonsingular_failures,
            "regular_checked": self.regular_checked,
            "regular_ext2_failures": self.regular_ext2_failures,
            "absent": self.absent,
            "failures": self.failures or [],
            "passed": self.passed,
        }


def _constructed(t: CanonicalType, params: TubeParams) -> list[tuple[str, Rep, bool]]:
    """(label, rep, is a regular construction) for simples and tube simples."""
    out = [("simple:alpha", build_simple(t, ALPHA, params), False),
           ("simple:omega", build_simple(t, OMEGA, params), False)]
    for i, m in enumerate(t.arms, 1):
        for j in range(1, m + 1):
            out.append((f"arm:{i},{j}", build_arm_regular(t, i, j, params), True))
    for a, b in ((1, 1), (2, 5), (7, 3)):
        try:
            out.append((f"homog:{a},{b}", build_homogeneous(t, a, b, params), True))
        except DegenerateTube:
            continue
    return out


def euler_test(
    t: CanonicalType,
    params: Optional[TubeParams] = None,
    pairs: int = 100,
    seed: int = 0,
    max_entry: int = 3,
) -> EulerReport:
    """Seeded random pairs from constructed and sampled representations.

    Checks hom - ext1 + ext2 = <dim A, dim B> on every pair,
    z_dim(M, M) = a(dim M) + ext2(M, M) on every sampled M, and
    ext2(A, B) = 0 whenever A is a regular construction.
    """
    params = _params(t, params)
    rng = np.random.default_rng(seed)
    pool = _constructed(t, params)
    report = EulerReport(t, params.prime, seed, failures=[])
    size = t.num_vertices

    def draw() -> tuple[str, Rep, bool]:
        while True:
            if rng.random() < 0.5:
                return pool[int(rng.integers(0, len(pool)))]
            d = DimVector.from_flat(t, rng.integers(0, max_entry + 1, size=size).tolist())
            rep = sample_point(t, params, d, seed=int(rng.integers(0, 2**31)))
            if rep is None:
                report.absent += 1
                continue
            report.sampled += 1
            probe = nonsingular_probe(rep)
            if not probe["holds"]:
                report.nonsingular_failures += 1
                report.failures.append({"check": "nonsingular", "dim": d.to_json(), **probe})
            return f"sample:{d}", rep, False

    for _ in range(pairs):
        (la, a, reg_a), (lb, b, _) = draw(), draw()
        res = euler_check(a, b)
        report.pairs += 1
        if not res["holds"]:
            report.euler_failures += 1
            report.failures.append({"check": "euler", "a": la, "b": lb, **res})
        if reg_a:
            report.regular_checked += 1
            if res["ext2"] != 0:
                report.regular_ext2_failures += 1
                report.failures.append({"check": "regular_ext2", "a": la, "b": lb, **res})
    return report


__all__ = [
    "Rep",
    "ZElement",
    "RepMismatch",
    "RelationError",
    "DegenerateTube",
    "default_prime",
    "hom_dim",
    "z_dim",
    "ext1_dim",
    "ext2_dim",
    "euler_check",
    "z_contains",
    "random_z",
    "build_extension",
    "direct_sum",
    "zero_rep",
    "build_simple",
    "build_homogeneous",
    "build_arm_regular",
    "tube_point",
    "homogeneous_composites",
    "sample_point",
    "nonsingular_probe",
    "semicontinuity_probe",
    "ext1_spot_check",
    "random_pairs",
    "EulerReport",
    "euler_test",
]
