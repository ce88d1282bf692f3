"""Inequality ladder bounding <d - d', d'> for threshold types.

Three layers:

* closed-form right-hand sides of the elementary inequalities on
  nonnegative tuples (delta_1, ..., delta_m) and exhaustive grid checks of
  them, including their equality characterizations;
* the majorant of <d - d', d'> for pairs in base form (d'_alpha = d_alpha,
  d'_omega = 0, every interior coefficient p^d_{i,j} = 0);
* a reduction engine that walks an arbitrary pair (d, d') down to base form
  through value-nondecreasing moves and records every step.
"""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional

import numpy as np

from .classify import canonical_presentation, in_P, in_R, in_RQ
from .core import (
    CanonicalType,
    DimVector,
    ringel_form,
    threshold,
)

BASE_FAMILIES = ("N3", "Type222m", "Type2233", "Type22222")
STEP_KINDS = ("SubtractHFromDPrime", "SubtractEijFromD", "SubtractEijFromBoth", "SubtractEimiFromD")
LEMMA_IDS = ("5.2", "5.3", "5.4", "5.5", "5.6", "5.7")


class BelowThreshold(ValueError):
    """The type has sum 1/(m_i - 1) < 2n - 5; no majorant applies."""


class NotBaseForm(ValueError):
    pass


class ReductionFailure(RuntimeError):
    """A reduction step violated its own guarantees (an implementation bug)."""


# ---------------------------------------------------------------------------
# elementary inequalities


def _pair_sum(deltas) -> int:
    s = sum(deltas)
    return (s * s - sum(x * x for x in deltas)) // 2


def bound_5_2(d, m: int) -> Fraction:
    return Fraction(m - 1, 2 * m) * d * d


def bound_5_3(d, dprime, m: int) -> Fraction:
    if m <= 2:
        raise ValueError("needs m > 2")
    return Fraction(1, 4) * (d + dprime) ** 2 - Fraction(m - 1, 2 * (m - 2)) * dprime**2


def bound_5_4(d, q, m: int) -> Fraction:
    if m * q <= d:
        return Fraction(m - 1, 2 * m) * d * d
    return Fraction((d - q) ** 2) - Fraction(m - 1, 2 * (m - 2)) * (d - 2 * q) ** 2


def bound_5_5(d, q, m: int) -> Fraction:
    if (m - 1) * q <= d:
        return -d * q + Fraction(m - 1, 2 * m) * (d + q) ** 2
    if m == 2:
        raise ValueError("q > d cannot occur for m = 2")
    return -d * q + d * d - Fraction(m - 1, 2 * (m - 2)) * (d - q) ** 2


def bound_5_6(d, q) -> Fraction:
    return Fraction(d * d - q * q, 2)


def g_m(d, q, m: int) -> Fraction:
    """The per-arm term of f: bound_5_5 shifted by d*q."""
    return bound_5_5(d, q, m) + d * q


def f_base(d, p, ps, ms) -> Fraction:
    """f(p, p_1, p_2, p_3) = sum g_{m_i}(p_i) on p + sum p_i = d."""
    if p + sum(ps) != d:
        raise ValueError("p + sum p_i must equal d")
    return sum((g_m(d, q, m) for q, m in zip(ps, ms)), Fraction(0))


def lemma_bound_5_5(d, q, m: int, deltas) -> tuple[Fraction, Fraction]:
    """(lhs, rhs) of -delta_m q + sum_{i<j} delta_i delta_j <= rhs."""
    deltas = [Fraction(x) for x in deltas]
    if m < 2 or len(deltas) != m:
        raise ValueError(f"need exactly m >= 2 deltas, got m={m}, {len(deltas)} deltas")
    if any(x < 0 for x in deltas) or q < 0:
        raise ValueError("deltas and q must be nonnegative")
    if sum(deltas) != d:
        raise ValueError("deltas must sum to d")
    if deltas[0] < q:
        raise ValueError("first delta must be >= q")
    s = sum(deltas)
    lhs = -deltas[-1] * q + (s * s - sum(x * x for x in deltas)) / 2
    rhs = bound_5_5(Fraction(d), Fraction(q), m)
    assert lhs <= rhs, (lhs, rhs)
    return lhs, rhs


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative integer tuples of the given length summing to total."""
    for cuts in itertools.combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


@dataclass
class VerificationReport:
    lemma: str
    max_total: int
    instances: int = 0
    equality_instances: int = 0
    counterexamples: list = field(default_factory=list)
    equality_mismatches: list = field(default_factory=list)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return not self.counterexamples and not self.equality_mismatches

    def to_json(self) -> dict:
        return {
            "lemma": self.lemma,
            "max_total": self.max_total,
            "instances": self.instances,
            "equality_instances": self.equality_instances,
            "counterexamples": self.counterexamples[:16],
            "equality_mismatches": self.equality_mismatches[:16],
            "passed": self.passed,
            "notes": self.notes,
        }


def _record(rep: VerificationReport, bad: bool, eq: bool, expected_eq: bool, case) -> None:
    rep.instances += 1
    if bad:
        rep.counterexamples.append(case)
    if eq:
        rep.equality_instances += 1
    if eq != expected_eq:
        rep.equality_mismatches.append(case)


def _grid_5_2(rep, max_total, max_m):
    for m in range(1, max_m + 1):
        for d in range(max_total + 1):
            rhs = bound_5_2(d, m)
            for ds in _compositions(d, m):
                lhs = _pair_sum(ds)
                _record(rep, lhs > rhs, lhs == rhs, all(m * x == d for x in ds), (m, d, ds))


def _grid_5_3(rep, max_total, max_m):
    for m in range(3, max_m + 1):
        for d in range(max_total + 1):
            for ds in _compositions(d, m):
                dp = sum(ds[1:-1])
                lhs = _pair_sum(ds)
                rhs = bound_5_3(d, dp, m)
                expected = 2 * ds[0] == d - dp and 2 * ds[-1] == d - dp and all(
                    (m - 2) * x == dp for x in ds[1:-1]
                )
                _record(rep, lhs > rhs, lhs == rhs, expected, (m, d, ds))


def _grid_5_4(rep, max_total, max_m):
    for m in range(2, max_m + 1):
        for d in range(max_total + 1):
            for q in range(d // 2 + 1):
                rhs = bound_5_4(d, q, m)
                for ds in _compositions(d, m):
                    if ds[0] < q or ds[-1] < q:
                        continue
                    lhs = _pair_sum(ds)
                    if m * q <= d:
                        expected = all(m * x == d for x in ds)
                    else:
                        expected = ds[0] == q and ds[-1] == q and all((m - 2) * x == d - 2 * q for x in ds[1:-1])
                    _record(rep, lhs > rhs, lhs == rhs, expected, (m, d, q, ds))


def _grid_5_5(rep, max_total, max_m, corollary: bool):
    for m in range(2, max_m + 1):
        for d in range(max_total + 1):
            for q in range(d + 1):
                rhs = bound_5_6(d, q) if corollary else bound_5_5(d, q, m)
                for ds in _compositions(d, m):
                    if ds[0] < q:
                        continue
                    lhs = -ds[-1] * q + _pair_sum(ds)
                    if corollary:
                        expected = q == d
                    elif (m - 1) * q <= d:
                        expected = all(m * x == d + q for x in ds[:-1]) and m * ds[-1] == d - (m - 1) * q
                    else:
                        expected = ds[0] == q and ds[-1] == 0 and all((m - 2) * x == d - q for x in ds[1:-1])
                    _record(rep, lhs > rhs, lhs == rhs, expected, (m, d, q, ds))


def threshold_triples(max_m: int) -> list[tuple[int, int, int]]:
    """Sorted (m1, m2, m3), 2 <= m_i <= max_m, with sum 1/(m_i - 1) >= 1."""
    return [
        ms
        for ms in itertools.combinations_with_replacement(range(2, max_m + 1), 3)
        if sum(Fraction(1, m - 1) for m in ms) >= 1
    ]


def _f_scaled(D: int, P: np.ndarray, ms, L: int) -> np.ndarray:
    """L * f at integer points P (rows (p, p1, p2, p3)) for total D."""
    out = np.zeros(len(P), dtype=np.int64)
    for k, m in enumerate(ms):
        q = P[:, k + 1]
        first = (m - 1) * q <= D
        a = (L // (2 * m)) * (m - 1) * (D + q) ** 2
        if m > 2:
            b = L * D * D - (L // (2 * (m - 2))) * (m - 1) * (D - q) ** 2
        else:
            b = a
        out += np.where(first, a, b)
    return out


def _lemma_5_7_equality_points(D: int, ms) -> set:
    """Points the equality clause describes, restricted to integer coordinates."""
    if sum(Fraction(1, m - 1) for m in ms) != 1:
        return set()
    pts = set()
    for i, mi in enumerate(ms):
        for pi in range(D + 1):
            lam = Fraction(mi - 1, mi) * (pi + D)
            if not (Fraction(mi - 1, mi) * D <= lam <= D):
                continue
            ps = []
            for j, mj in enumerate(ms):
                ps.append(pi if j == i else D - Fraction(mj - 2, mj - 1) * lam)
            if all(x.denominator == 1 if isinstance(x, Fraction) else True for x in ps) and sum(ps) == D:
                pts.add((0, *(int(x) for x in ps)))
    return pts


def _grid_5_7(rep, max_total, max_m, denominators=(1, 2, 3, 4)):
    # f is homogeneous of degree 2 in (d, p, p_i): the grid with step 1/k at
    # total d is the integer grid at total k*d.
    totals = sorted({k * d for k in denominators for d in range(1, max_total + 1)})
    for ms in threshold_triples(max_m):
        L = math.lcm(*[2 * m for m in ms], *[2 * (m - 2) for m in ms if m > 2])
        for D in totals:
            P = np.array(list(_compositions(D, 4)), dtype=np.int64)
            vals = _f_scaled(D, P, ms, L)
            cap = 2 * L * D * D
            rep.instances += len(P)
            for row in P[vals > cap]:
                rep.counterexamples.append((ms, D, tuple(int(x) for x in row)))
            found = {tuple(int(x) for x in row) for row in P[vals == cap]}
            rep.equality_instances += len(found)
            expected = _lemma_5_7_equality_points(D, ms)
            for pt in found ^ expected:
                rep.equality_mismatches.append((ms, D, pt))
    rep.notes = f"denominators {list(denominators)} via homogeneity; m_i <= {max_m}"


def verify_lemma_grid(lemma_id: str, max_total: int = 12, max_m: int = 6, budget: int = 50_000_000) -> VerificationReport:
    """Exhaustive integer check of one inequality and its equality clause.

    Sizes: lemmas 5.2-5.6 visit sum_m sum_d C(d+m-1, m-1) tuples (times d
    for the q-dependent ones); lemma 5.7 visits C(D+3, 3) points per total
    D = k*d, k <= 4, for each threshold triple.
    """
    lemma_id = str(lemma_id)
    if lemma_id not in LEMMA_IDS:
        raise ValueError(f"unknown lemma {lemma_id!r}; expected one of {LEMMA_IDS}")
    est = sum(math.comb(d + max_m - 1, max_m - 1) for d in range(max_total + 1)) * (max_total + 1) * max_m
    if lemma_id == "5.7":
        est = len(threshold_triples(max_m)) * sum(math.comb(4 * d + 3, 3) * 4 for d in range(max_total + 1))
    if est > budget:
        raise ValueError(f"grid of about {est} instances exceeds budget {budget}")
    rep = VerificationReport(lemma_id, max_total)
    if lemma_id == "5.2":
        _grid_5_2(rep, max_total, max_m)
    elif lemma_id == "5.3":
        _grid_5_3(rep, max_total, max_m)
    elif lemma_id == "5.4":
        _grid_5_4(rep, max_total, max_m)
    elif lemma_id == "5.5":
        _grid_5_5(rep, max_total, max_m, corollary=False)
    elif lemma_id == "5.6":
        _grid_5_5(rep, max_total, max_m, corollary=True)
    else:
        _grid_5_7(rep, max_total, max_m)
    return rep


# ---------------------------------------------------------------------------
# flat-tuple kernels
#
# The reduction engine runs millions of times in the acceptance scans, so
# it works on flat integer tuples (alpha, arm 1, ..., arm n, omega).  The
# DimVector-level functions below are thin wrappers.


@dataclass(frozen=True)
class Layout:
    arms: tuple[int, ...]
    n: int
    size: int
    offsets: tuple[int, ...]  # flat index of (i, 1), 0-based arm i

    def pos(self, i: int, j: int) -> int:
        """Flat index of (i, j), 1-based arm, j in [0, m_i]."""
        m = self.arms[i - 1]
        if j == 0:
            return 0
        if j == m:
            return self.size - 1
        return self.offsets[i - 1] + j - 1


@lru_cache(maxsize=None)
def layout(t: CanonicalType) -> Layout:
    offs, pos = [], 1
    for m in t.arms:
        offs.append(pos)
        pos += m - 1
    return Layout(t.arms, t.n, pos + 1, tuple(offs))


@lru_cache(maxsize=1 << 20)
def _fpres(L: Layout, x: tuple) -> Optional[tuple[tuple[int, ...], int, int]]:
    """(q_i per arm, p, p_omega) of the presentation, or None outside R+Q."""
    if min(x) < 0:
        return None
    a = x[0]
    pw = x[-1] - a
    if pw < 0:
        return None
    qs = []
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        lo = min(x[o : o + m - 1])
        qs.append(a - lo if lo < a else 0)
    p = a - sum(qs)
    if p < 0:
        return None
    return tuple(qs), p, pw


@lru_cache(maxsize=1 << 18)
def _fin_P(L: Layout, x: tuple) -> bool:
    if min(x) < 0:
        return False
    if not any(x):
        return True
    if x[0] <= x[-1]:
        return False
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        prev = x[0]
        for v in x[o : o + m - 1]:
            if v > prev:
                return False
            prev = v
        if x[-1] > prev:
            return False
    return True


@lru_cache(maxsize=1 << 18)
def _finterior_zero(L: Layout, x: tuple, qs: tuple) -> bool:
    a = x[0]
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        c = qs[k] - a
        if any(v + c for v in x[o : o + m - 1]):
            return False
    return True


def _fform(L: Layout, x, y) -> int:
    total = sum(u * v for u, v in zip(x, y))
    last = L.size - 1
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        prev = 0  # flat index of (k, j-1)
        for j in range(1, m):
            total -= x[o + j - 1] * y[prev]
            prev = o + j - 1
        total -= x[last] * y[prev]
    return total + (L.n - 2) * x[last] * y[0]


def _sub(x, y):
    return tuple(u - v for u, v in zip(x, y))


def _fbase(L: Layout, d, dp) -> bool:
    pres = _fpres(L, d)
    return (
        pres is not None
        and pres[2] == 0
        and dp[0] == d[0]
        and dp[-1] == 0
        and _finterior_zero(L, d, pres[0])
    )


def _ffrakO(L: Layout, d, dp) -> bool:
    pres = _fpres(L, d)
    if pres is None or pres[2] != 0 or pres[1] != 0 or not _finterior_zero(L, d, pres[0]):
        return False
    if dp[-1] != 0 or not _fin_P(L, dp) or any(u < v for u, v in zip(d, dp)):
        return False
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        prev = dp[0]
        for v in dp[o : o + m - 1]:
            if v >= prev:
                return False
            prev = v
    return True


def _ffrakOprime(L: Layout, d, dp) -> bool:
    if L.n != 5 or any(m != 2 for m in L.arms):
        return False
    if not _ffrakO(L, d, dp):
        return False
    c = d[0]
    arm = d[1:6]
    if c <= 0 or d[-1] != c or arm.count(0) != 1 or arm.count(c) != 4:
        return False
    i = arm.index(0)
    if not 1 <= dp[0] <= c or dp[-1] != 0 or dp[1 + i] != 0:
        return False
    return all(2 * dp[1 + k] == dp[0] for k in range(5) if k != i)


@lru_cache(maxsize=None)
def _h_flat(L: Layout) -> tuple[int, ...]:
    return (1,) * L.size


@lru_cache(maxsize=None)
def _e_flat(L: Layout, i: int, j: int) -> tuple[int, ...]:
    m = L.arms[i - 1]
    if j < m:
        v = [0] * L.size
        v[L.pos(i, j)] = 1
        return tuple(v)
    v = [1] * L.size
    o = L.offsets[i - 1]
    for k in range(o, o + m - 1):
        v[k] = 0
    return tuple(v)


def _flat_moves(L: Layout, d, dp):
    """Applicable moves in priority order: (kind, i, j, new_d, new_dp).

    Priority: h from d' while d'_omega > 0; then e_{i,j} from d; then e_{i,j}
    from both; then e_{i,m_i} from d.  Lowest arm first, then highest j.
    """
    if dp[-1] > 0:
        yield "SubtractHFromDPrime", None, None, d, _sub(dp, _h_flat(L))
        return
    pd = _fpres(L, d)
    dd = _sub(d, dp)
    pdd = _fpres(L, dd)
    a, b = d[0], dd[0]
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        for j in range(m - 1, 0, -1):
            x = o + j - 1
            if d[x] - a + pd[0][k] > 0 and dd[x] - b + pdd[0][k] > 0:
                yield "SubtractEijFromD", k + 1, j, _sub(d, _e_flat(L, k + 1, j)), dp
    for k, m in enumerate(L.arms):
        o = L.offsets[k]
        # the highest j with a positive coefficient is the only candidate
        for j in range(m - 1, 0, -1):
            x = o + j - 1
            if d[x] - a + pd[0][k] > 0:
                if dd[x] - b + pdd[0][k] == 0:
                    e = _e_flat(L, k + 1, j)
                    yield "SubtractEijFromBoth", k + 1, j, _sub(d, e), _sub(dp, e)
                break
    if dp[0] < a and _finterior_zero(L, d, pd[0]):
        for k, m in enumerate(L.arms):
            e = _e_flat(L, k + 1, m)
            nd = _sub(d, e)
            pn = _fpres(L, nd)
            if pn is not None and pn[2] == 0 and _fpres(L, _sub(nd, dp)) is not None:
                yield "SubtractEimiFromD", k + 1, m, nd, dp


def _fcheck_pair(L: Layout, d, dp) -> None:
    pd = _fpres(L, d)
    if pd is None or pd[2] != 0:
        raise ReductionFailure(f"{d} left R")
    if not any(dp) or not _fin_P(L, dp):
        raise ReductionFailure(f"{dp} left P or became zero")
    if _fpres(L, _sub(d, dp)) is None:
        raise ReductionFailure("difference left R+Q")


def _fstep(L: Layout, kind, i, j, d, dp, nd, ndp, before: int):
    """Apply one move with full checks; returns (after, predicted_strict)."""
    _fcheck_pair(L, nd, ndp)
    after = _fform(L, _sub(nd, ndp), ndp)
    if kind == "SubtractHFromDPrime":
        expected, strict = 0, False
    elif kind == "SubtractEijFromD":
        expected = dp[L.pos(i, j - 1)] - dp[L.pos(i, j)]
        strict = _ffrakO(L, nd, ndp)
    elif kind == "SubtractEijFromBoth":
        expected = (d[L.pos(i, j + 1)] - dp[L.pos(i, j + 1)]) - (d[L.pos(i, j)] - dp[L.pos(i, j)])
        strict = j == L.arms[i - 1] - 1 or _ffrakO(L, nd, ndp)
    else:
        expected = dp[L.pos(i, j - 1)]
        strict = _ffrakOprime(L, nd, ndp) and not _ffrakOprime(L, d, dp)
    if after - before != expected or expected < 0:
        raise ReductionFailure(f"{kind} at ({i},{j}): change {after - before}, expected {expected} >= 0")
    if strict and after <= before:
        raise ReductionFailure(f"{kind} at ({i},{j}) predicted strict but value did not increase")
    return after, strict


def _fgreedy(L: Layout, d, dp, max_steps: int):
    steps = []
    value = _fform(L, _sub(d, dp), dp)
    while not _fbase(L, d, dp):
        if len(steps) >= max_steps:
            return None
        move = next(_flat_moves(L, d, dp), None)
        if move is None:
            return None
        kind, i, j, nd, ndp = move
        after, strict = _fstep(L, kind, i, j, d, dp, nd, ndp, value)
        steps.append((kind, i, j, value, after, nd, ndp, strict))
        d, dp, value = nd, ndp, after
    return steps


def _fbfs(L: Layout, d, dp, max_states: int):
    start = (d, dp)
    parent = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if _fbase(L, *cur):
            path = []
            while parent[cur] is not None:
                prev, move = parent[cur]
                path.append((prev, move))
                cur = prev
            steps = []
            value = _fform(L, _sub(d, dp), dp)
            for (pd, pdp), (kind, i, j, nd, ndp) in reversed(path):
                after, strict = _fstep(L, kind, i, j, pd, pdp, nd, ndp, value)
                steps.append((kind, i, j, value, after, nd, ndp, strict))
                value = after
            return steps
        for move in _flat_moves(L, *cur):
            nxt = (move[3], move[4])
            if nxt not in parent:
                parent[nxt] = (cur, move)
                queue.append(nxt)
                if len(parent) > max_states:
                    return None
    return None


@lru_cache(maxsize=1 << 16)
def _fmajorant(L: Layout, family: str, d: tuple) -> tuple[Fraction, bool]:
    """(majorant, strict) for a base pair; depends on d only."""
    qs, p, _ = _fpres(L, d)
    D = d[0]
    maj = Fraction(-D * D - D * p)
    strict = False
    long_arm = max(range(L.n), key=lambda k: (L.arms[k], k)) if family == "Type222m" else -1
    for k, (q, m) in enumerate(zip(qs, L.arms)):
        if k == long_arm:
            maj += bound_5_6(D, q)
            strict = strict or q < D
        else:
            maj += bound_5_5(D, q, m)
    return maj, strict or maj < 0


# ---------------------------------------------------------------------------
# base form


def base_family(t: CanonicalType) -> str:
    crit, _ = threshold(t)
    if crit < 0:
        raise BelowThreshold(f"type {t} is below the threshold")
    s = sorted(t.arms)
    if t.n == 3:
        return "N3"
    if t.n == 4 and s[:3] == [2, 2, 2]:
        return "Type222m"
    if t.n == 4 and s == [2, 2, 3, 3]:
        return "Type2233"
    if t.n == 5 and s == [2] * 5:
        return "Type22222"
    raise BelowThreshold(f"no base family for type {t}")  # unreachable for threshold types


def is_base_form(t: CanonicalType, d: DimVector, dprime: DimVector) -> bool:
    return _fbase(layout(t), d.flat(), dprime.flat())


def _check_pair(t: CanonicalType, d: DimVector, dprime: DimVector) -> None:
    d.check(t)
    dprime.check(t)
    if not in_R(t, d):
        raise ValueError(f"{d} is not in R")
    if not in_P(t, dprime) or dprime.is_zero():
        raise ValueError(f"{dprime} is not a nonzero element of P")
    if not in_RQ(t, d - dprime):
        raise ValueError(f"{d - dprime} is not in R+Q")


def arm_deltas(dprime: DimVector, i: int) -> list[int]:
    """delta_{i,j} = d'_{i,j-1} - d'_{i,j} for j in [1, m_i] (1-based arm i)."""
    seq = (dprime.alpha,) + dprime.arms[i - 1] + (dprime.omega,)
    return [a - b for a, b in zip(seq, seq[1:])]


def arm_terms(t: CanonicalType, d: DimVector, dprime: DimVector) -> list[int]:
    """S_i = -delta_{i,m_i} p_i + sum_{j<l} delta_{i,j} delta_{i,l} for a base pair."""
    pres = canonical_presentation(t, d)
    return [
        -arm_deltas(dprime, i)[-1] * pres.p_arm[i - 1][-1] + _pair_sum(arm_deltas(dprime, i))
        for i in range(1, t.n + 1)
    ]


@dataclass(frozen=True)
class BaseBound:
    family: str
    majorant: Fraction
    strict: bool
    value: int
    arm_terms: tuple[int, ...]

    @property
    def bound(self) -> int:
        """Integer bound; the form is integral so the floor is still valid."""
        return math.floor(self.majorant)

    @property
    def conclusion(self) -> str:
        return "StrictlyNegative" if self.strict else "NonPositive"

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "majorant": str(self.majorant),
            "bound": self.bound,
            "value": self.value,
            "arm_terms": list(self.arm_terms),
            "conclusion": self.conclusion,
        }


def base_bound(t: CanonicalType, d: DimVector, dprime: DimVector) -> BaseBound:
    """Closed-form majorant of <d - d', d'> for a pair in base form.

    Every family uses <d - d', d'> = -d^2 - d p + sum_i S_i with S_i bounded
    per arm by the shifted pair-sum inequality; on the long arm of (2,2,2,m)
    the weaker bound (d^2 - p_4^2)/2 is used, which is strict unless p_4 = d.
    The conclusion is StrictlyNegative when the majorant is negative or that
    strictness applies.
    """
    family = base_family(t)
    _check_pair(t, d, dprime)
    if not is_base_form(t, d, dprime):
        raise NotBaseForm(f"({d}, {dprime}) is not in base form")
    D, p = d.alpha, canonical_presentation(t, d).p
    terms = arm_terms(t, d, dprime)
    value = ringel_form(t, d - dprime, dprime)
    if value != -D * D - D * p + sum(terms):
        raise ReductionFailure("arm decomposition of the form does not match ringel_form")
    maj, strict = _fmajorant(layout(t), family, d.flat())
    if value > maj or (strict and value >= 0):
        raise ReductionFailure(f"majorant {maj} does not dominate value {value}")
    return BaseBound(family, maj, strict, value, tuple(terms))


# ---------------------------------------------------------------------------
# the sets O and O'


def in_frakO(t: CanonicalType, d: DimVector, dprime: DimVector) -> bool:
    """Base-type pairs with p^d = 0 and d' strictly decreasing along every
    arm up to position m_i - 1, d'_omega = 0 and d' <= d."""
    return _ffrakO(layout(t), d.flat(), dprime.flat())


def in_frakOprime(t: CanonicalType, d: DimVector, dprime: DimVector) -> bool:
    """For (2,2,2,2,2): pairs in O with d = c e_{i,2}, d'_{i,1} = 0 and the
    other arms of d' at d'_alpha / 2."""
    return _ffrakOprime(layout(t), d.flat(), dprime.flat())


@dataclass(frozen=True)
class BaseClassTag:
    in_frakO: bool
    in_frakOprime: bool

    def to_json(self) -> dict:
        return {"in_frakO": self.in_frakO, "in_frakOprime": self.in_frakOprime}


def base_class_tag(t: CanonicalType, d: DimVector, dprime: DimVector) -> BaseClassTag:
    return BaseClassTag(in_frakO(t, d, dprime), in_frakOprime(t, d, dprime))


# ---------------------------------------------------------------------------
# reduction engine


@dataclass(frozen=True)
class ReductionStep:
    kind: str
    i: Optional[int]
    j: Optional[int]
    value_before: int
    value_after: int
    d: DimVector
    dprime: DimVector
    predicted_strict: bool = False

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "i": self.i,
            "j": self.j,
            "value_before": self.value_before,
            "value_after": self.value_after,
            "predicted_strict": self.predicted_strict,
            "d": self.d.to_json(),
            "dprime": self.dprime.to_json(),
        }


@dataclass
class Certificate:
    type: CanonicalType
    d: DimVector
    dprime: DimVector
    value: int
    steps: list[ReductionStep]
    base_case_family: str
    base_bound_value: int
    base_majorant: Fraction
    base_value: int
    base_tag: BaseClassTag
    conclusion: str
    policy: str
    predicted_strict: bool
    consistent: bool

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "d": self.d.to_json(),
            "dprime": self.dprime.to_json(),
            "value": self.value,
            "steps": [s.to_json() for s in self.steps],
            "base_case_family": self.base_case_family,
            "base_bound_value": self.base_bound_value,
            "base_majorant": str(self.base_majorant),
            "base_value": self.base_value,
            "base_tag": self.base_tag.to_json(),
            "conclusion": self.conclusion,
            "policy": self.policy,
            "predicted_strict": self.predicted_strict,
            "consistent": self.consistent,
        }


def candidate_moves(t: CanonicalType, d: DimVector, dprime: DimVector):
    """All applicable moves from (d, d') in priority order, as DimVectors."""
    L = layout(t)
    for kind, i, j, nd, ndp in _flat_moves(L, d.flat(), dprime.flat()):
        yield kind, i, j, DimVector.from_flat(t, nd), DimVector.from_flat(t, ndp)


def prop_predicts_strict(t: CanonicalType, d: DimVector) -> bool:
    """Whether <d - d', d'> < 0 is asserted for every admissible d'."""
    crit, _ = threshold(t)
    if crit > 0:
        return True
    pres = canonical_presentation(t, d)
    if pres is not None and pres.p > 0:
        return True
    return t.n == 5 and all(m == 2 for m in t.arms) and d.is_sincere()


@dataclass(frozen=True)
class FlatResult:
    """Outcome of the reduction on flat tuples (used by bulk checks)."""
    value: int
    steps: tuple
    policy: str
    base_value: int
    majorant: Fraction
    strict: bool


def reduce_flat(
    t: CanonicalType, d: tuple, dprime: tuple, max_steps: int = 10_000, max_states: int = 200_000
) -> FlatResult:
    """Reduction on flat tuples; ``steps`` holds (kind, i, j, before, after,
    d, d', predicted_strict).  Inputs are assumed admissible."""
    family = base_family(t)
    L = layout(t)
    d, dprime = tuple(d), tuple(dprime)
    steps = _fgreedy(L, d, dprime, max_steps)
    policy = "greedy"
    if steps is None:
        steps = _fbfs(L, d, dprime, max_states)
        policy = "bfs"
        if steps is None:
            raise ReductionFailure(f"no reduction chain found for ({d}, {dprime})")
    fd, fdp = (steps[-1][5], steps[-1][6]) if steps else (d, dprime)
    value = _fform(L, _sub(d, dprime), dprime)
    base_value = steps[-1][4] if steps else value
    maj, mstrict = _fmajorant(L, family, fd)
    if base_value > maj or (mstrict and base_value >= 0):
        raise ReductionFailure(f"majorant {maj} does not dominate base value {base_value}")
    strict = mstrict or base_value < 0 or any(s[4] > s[3] for s in steps)
    if value > 0 or (strict and value >= 0):
        raise ReductionFailure("certificate chain is inconsistent with the form")
    return FlatResult(value, tuple(steps), policy, base_value, maj, strict)


def reduce_pair(
    t: CanonicalType, d: DimVector, dprime: DimVector, max_steps: int = 10_000, max_states: int = 200_000
) -> Certificate:
    """Certificate that <d - d', d'> <= 0 for a threshold type.

    Moves are tried greedily in fixed priority (subtract h from d' while
    d'_omega > 0; then e_{i,j} from d; then e_{i,j} from both; then
    e_{i,m_i} from d), lowest arm first and highest position first.  If the
    greedy walk gets stuck a breadth-first search over all applicable moves
    is used instead and the certificate records it.
    """
    base_family(t)
    _check_pair(t, d, dprime)
    res = reduce_flat(t, d.flat(), dprime.flat(), max_steps, max_states)
    steps = [
        ReductionStep(kind, i, j, before, after, DimVector.from_flat(t, nd), DimVector.from_flat(t, ndp), ps)
        for kind, i, j, before, after, nd, ndp, ps in res.steps
    ]
    fd, fdp = (steps[-1].d, steps[-1].dprime) if steps else (d, dprime)
    predicted = prop_predicts_strict(t, d)
    return Certificate(
        type=t,
        d=d,
        dprime=dprime,
        value=res.value,
        steps=steps,
        base_case_family=base_family(t),
        base_bound_value=math.floor(res.majorant),
        base_majorant=res.majorant,
        base_value=res.base_value,
        base_tag=base_class_tag(t, fd, fdp),
        conclusion="StrictlyNegative" if res.strict else "NonPositive",
        policy=res.policy,
        predicted_strict=predicted,
        consistent=res.strict or not predicted,
    )


__all__ = [
    "BelowThreshold",
    "NotBaseForm",
    "ReductionFailure",
    "VerificationReport",
    "BaseBound",
    "BaseClassTag",
    "ReductionStep",
    "Certificate",
    "bound_5_2",
    "bound_5_3",
    "bound_5_4",
    "bound_5_5",
    "bound_5_6",
    "g_m",
    "f_base",
    "lemma_bound_5_5",
    "verify_lemma_grid",
    "threshold_triples",
    "base_family",
    "is_base_form",
    "arm_deltas",
    "arm_terms",
    "base_bound",
    "in_frakO",
    "in_frakOprime",
    "base_class_tag",
    "prop_predicts_strict",
    "reduce_pair",
    "reduce_flat",
    "candidate_moves",
    "layout",
    "Layout",
    "FlatResult",
]
