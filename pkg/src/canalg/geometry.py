"""Dimension, complete intersection, irreducibility and normality of mod(d).

A split of d is a pair (d', d'') with d' in P, d'' in R+Q and d' + d'' = d.
The variety has dimension a(d) + max <d'', d'> over all splits; for regular
d it is a complete intersection iff that maximum is <= 0, and irreducible
(equivalently normal) iff moreover exactly one split attains 0.

The pruned enumeration fixes (d'_alpha, d'_omega).  The form then splits as

    <d'', d'> = d''_a d'_a + d''_w d'_w + (n-2) d''_w d'_a + sum_i A_i

where A_i only involves arm i, and the only coupling between arms is the
budget sum_i q_i <= d''_alpha on the arm deficits of d'' (membership of d''
in R+Q).  Each arm is tabulated once and the arms are combined by a knapsack
over that budget.
"""
from __future__ import annotations

import csv
import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .classify import arm_deficit, in_P, in_R, in_RQ
from .core import CanonicalType, DimVector, a_dim, ringel_form, threshold

DEFAULT_NAIVE_BUDGET = 2_000_000
DEFAULT_WITNESS_CAP = 16

__all__ = [
    "SplitRecord",
    "GeometryVerdict",
    "ScanReport",
    "NotRegular",
    "BudgetExceeded",
    "enumerate_splits",
    "split_profile",
    "split_count",
    "nontrivial_dprimes",
    "nontrivial_max",
    "decide",
    "scan_family",
    "regular_vectors",
    "threshold",
    "theorem_predictions",
]


class NotRegular(ValueError):
    """decide() was called on a vector outside R."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class SplitRecord:
    dprime: DimVector
    dsecond: DimVector
    value: int

    def to_json(self) -> dict:
        return {"dprime": self.dprime.to_json(), "dsecond": self.dsecond.to_json(), "value": self.value}


@dataclass
class GeometryVerdict:
    a: int
    dim: int
    max_value: int
    equality_pair_count: int
    split_count: int
    is_complete_intersection: bool
    is_irreducible: bool
    is_normal: Optional[bool]
    witnesses: list[SplitRecord] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "a": self.a,
            "dim": self.dim,
            "max_value": self.max_value,
            "equality_pair_count": self.equality_pair_count,
            "split_count": self.split_count,
            "is_complete_intersection": self.is_complete_intersection,
            "is_irreducible": self.is_irreducible,
            "is_normal": self.is_normal,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


# ---------------------------------------------------------------------------
# per-arm tables


@lru_cache(maxsize=1 << 18)
def _arm_choices(darm: tuple[int, ...], a1: int, w1: int, a2: int, w2: int):
    """All weakly decreasing d'-arms between a1 and w1 bounded by darm.

    Returns a tuple of (d'-arm, q'', A) where q'' is the R+Q deficit of the
    matching d''-arm and A the arm's contribution to <d'', d'>.
    """
    L = len(darm)
    out = []
    seq = [0] * L

    def rec(j: int, prev: int):
        if j == L:
            # A = sum_j d''_j d'_j - sum_j d''_j d'_{j-1}, d''_L+1 = w2, d'_0 = a1
            val = 0
            left = a1
            lo = None
            for k in range(L):
                s = seq[k]
                dd = darm[k] - s
                val += dd * (s - left)
                left = s
                lo = dd if lo is None or dd < lo else lo
            val -= w2 * left
            q = max(0, a2 - lo) if L else 0
            out.append((tuple(seq), q, val))
            return
        hi = min(prev, darm[j])
        for s in range(w1, hi + 1):
            seq[j] = s
            rec(j + 1, s)

    rec(0, a1)
    return tuple(out)


@lru_cache(maxsize=1 << 18)
def _arm_profile(darm, a1, w1, a2, w2):
    """q'' -> Counter(A -> multiplicity), dropping q'' > a2."""
    prof: dict[int, Counter] = {}
    for _, q, val in _arm_choices(darm, a1, w1, a2, w2):
        if q <= a2:
            prof.setdefault(q, Counter())[val] += 1
    return prof


@lru_cache(maxsize=1 << 18)
def _arm_maxima(darm, a1, w1, a2, w2):
    """q'' -> max A, as a tuple of (q, max) pairs with q <= a2."""
    best: dict[int, int] = {}
    for _, q, val in _arm_choices(darm, a1, w1, a2, w2):
        if q <= a2 and (q not in best or val > best[q]):
            best[q] = val
    return tuple(sorted(best.items()))


def _outer_pairs(t: CanonicalType, d: DimVector, include_trivial: bool):
    """(a1, w1, a2, w2, base) for admissible (d'_alpha, d'_omega)."""
    n = t.n
    for a1 in range(0 if include_trivial else 1, d.alpha + 1):
        a2 = d.alpha - a1
        w1_range = [0] if a1 == 0 else range(0, min(a1 - 1, d.omega) + 1)
        for w1 in w1_range:
            w2 = d.omega - w1
            if w2 < a2:
                continue
            base = a2 * a1 + w2 * w1 + (n - 2) * w2 * a1
            yield a1, w1, a2, w2, base


@lru_cache(maxsize=1 << 18)
def _arm_counts(darm, a1, w1, a2, w2):
    """q'' -> number of d'-arm choices, as (q, count) pairs with q <= a2."""
    cnt: Counter = Counter()
    for _, q, _ in _arm_choices(darm, a1, w1, a2, w2):
        if q <= a2:
            cnt[q] += 1
    return tuple(sorted(cnt.items()))


def split_profile(
    t: CanonicalType, d: DimVector, include_trivial: bool = True, floor: Optional[int] = None
) -> Counter:
    """Counter mapping <d'', d'> to the number of splits attaining it.

    With ``floor`` only values >= floor are tracked; partial sums that
    cannot reach the floor even with the best remaining arms are dropped.
    """
    d.check(t)
    total: Counter = Counter()
    for a1, w1, a2, w2, base in _outer_pairs(t, d, include_trivial):
        profs = [_arm_profile(darm, a1, w1, a2, w2) for darm in d.arms]
        if not all(profs):
            continue
        tail = [0] * (len(profs) + 1)
        for k in range(len(profs) - 1, -1, -1):
            tail[k] = tail[k + 1] + max(max(c) for c in profs[k].values())
        if floor is not None and base + tail[0] < floor:
            continue
        acc: dict[int, Counter] = {0: Counter({base: 1})}
        for k, prof in enumerate(profs):
            cut = None if floor is None else floor - tail[k + 1]
            nxt: dict[int, Counter] = {}
            for qs, cnt in acc.items():
                for q, vals in prof.items():
                    s = qs + q
                    if s > a2:
                        continue
                    tgt = nxt.setdefault(s, Counter())
                    for v1, c1 in cnt.items():
                        for v2, c2 in vals.items():
                            if cut is None or v1 + v2 >= cut:
                                tgt[v1 + v2] += c1 * c2
            acc = {s: c for s, c in nxt.items() if c}
            if not acc:
                break
        for cnt in acc.values():
            total.update(cnt)
    return total


def split_count(t: CanonicalType, d: DimVector, include_trivial: bool = True) -> int:
    """Number of splits (d', d'') of d."""
    d.check(t)
    total = 0
    for a1, w1, a2, w2, _ in _outer_pairs(t, d, include_trivial):
        acc = {0: 1}
        for darm in d.arms:
            table = _arm_counts(darm, a1, w1, a2, w2)
            nxt: dict[int, int] = {}
            for qs, c in acc.items():
                for q, k in table:
                    if qs + q <= a2:
                        nxt[qs + q] = nxt.get(qs + q, 0) + c * k
            acc = nxt
            if not acc:
                break
        total += sum(acc.values())
    return total


def nontrivial_max(t: CanonicalType, d: DimVector) -> Optional[int]:
    """max <d'', d'> over splits with d' != 0, or None if there are none."""
    best = None
    for a1, w1, a2, w2, base in _outer_pairs(t, d, include_trivial=False):
        acc = {0: base}
        for darm in d.arms:
            table = _arm_maxima(darm, a1, w1, a2, w2)
            nxt: dict[int, int] = {}
            for qs, v in acc.items():
                for q, m in table:
                    s = qs + q
                    if s > a2:
                        break
                    if s not in nxt or v + m > nxt[s]:
                        nxt[s] = v + m
            acc = nxt
            if not acc:
                break
        if acc:
            m = max(acc.values())
            if best is None or m > best:
                best = m
    return best


# ---------------------------------------------------------------------------
# explicit enumeration


def _assemble(t: CanonicalType, d: DimVector, a1: int, w1: int, arms) -> tuple[DimVector, DimVector]:
    dp = DimVector(a1, tuple(arms), w1)
    return dp, d - dp


def _pruned_splits(t: CanonicalType, d: DimVector, min_value: Optional[int] = None) -> Iterator[SplitRecord]:
    for a1, w1, a2, w2, base in _outer_pairs(t, d, include_trivial=True):
        if a1 == 0:
            if in_RQ(t, d) and (min_value is None or 0 >= min_value):
                yield SplitRecord(DimVector.zero(t), d, 0)
            continue
        tables = []
        for darm in d.arms:
            ch = [c for c in _arm_choices(darm, a1, w1, a2, w2) if c[1] <= a2]
            if not ch:
                break
            ch.sort(key=lambda c: -c[2])
            tables.append(ch)
        else:
            # best achievable from arms k.. onward, ignoring the budget
            tail = [0] * (len(tables) + 1)
            for k in range(len(tables) - 1, -1, -1):
                tail[k] = tail[k + 1] + tables[k][0][2]
            chosen = [None] * len(tables)

            def rec(k: int, qs: int, val: int):
                if k == len(tables):
                    dp, ds = _assemble(t, d, a1, w1, [c[0] for c in chosen])
                    yield SplitRecord(dp, ds, val)
                    return
                for c in tables[k]:
                    if min_value is not None and val + c[2] + tail[k + 1] < min_value:
                        break
                    if qs + c[1] > a2:
                        continue
                    chosen[k] = c
                    yield from rec(k + 1, qs + c[1], val + c[2])

            yield from rec(0, 0, base)


def nontrivial_dprimes(t: CanonicalType, d: DimVector) -> Iterator[tuple[int, ...]]:
    """Flat d' for every split of d with d' != 0 (fast path for bulk checks)."""
    for a1, w1, a2, w2, _ in _outer_pairs(t, d, include_trivial=False):
        tables = []
        for darm in d.arms:
            ch = [(c[0], c[1]) for c in _arm_choices(darm, a1, w1, a2, w2) if c[1] <= a2]
            if not ch:
                break
            tables.append(ch)
        else:
            k_last = len(tables)

            def rec(k: int, qs: int, acc: tuple):
                if k == k_last:
                    yield (a1,) + acc + (w1,)
                    return
                for arm, q in tables[k]:
                    if qs + q <= a2:
                        yield from rec(k + 1, qs + q, acc + arm)

            yield from rec(0, 0, ())


def _naive_splits(t: CanonicalType, d: DimVector, budget: int) -> Iterator[SplitRecord]:
    flat = d.flat()
    size = math.prod(x + 1 for x in flat)
    if size > budget:
        raise BudgetExceeded(f"naive enumeration needs {size} candidates (budget {budget})")
    for cand in itertools.product(*(range(x + 1) for x in flat)):
        dp = DimVector.from_flat(t, cand)
        if not in_P(t, dp):
            continue
        ds = d - dp
        if in_RQ(t, ds):
            yield SplitRecord(dp, ds, ringel_form(t, ds, dp))


def enumerate_splits(
    t: CanonicalType, d: DimVector, mode: str = "pruned", budget: int = DEFAULT_NAIVE_BUDGET
) -> Iterator[SplitRecord]:
    d.check(t)
    if not d.is_nonnegative():
        raise ValueError("dimension vector has negative entries")
    if mode == "naive":
        return _naive_splits(t, d, budget)
    if mode == "pruned":
        return _pruned_splits(t, d)
    raise ValueError(f"unknown enumeration mode {mode!r}")


# ---------------------------------------------------------------------------
# decisions


def decide(
    t: CanonicalType, d: DimVector, witness_cap: int = DEFAULT_WITNESS_CAP, relaxed: bool = False
) -> GeometryVerdict:
    """Geometry verdict for regular d.

    With ``relaxed`` any d in P or R+Q is accepted; the criteria for complete
    intersection and irreducibility hold there as well, and normality is
    equivalent to irreducibility because d is then a dimension vector of one
    of the two halves of the split.
    """
    d.check(t)
    if not in_R(t, d):
        if not relaxed:
            raise NotRegular(f"{d} is not the dimension vector of a regular module")
        if not (in_P(t, d) or in_RQ(t, d)):
            raise NotRegular(f"{d} lies neither in P nor in R+Q")
    prof = split_profile(t, d, floor=0)
    max_value = max(prof)
    eq = prof.get(0, 0)
    a = a_dim(t, d)
    irreducible = max_value == 0 and eq == 1
    witnesses = list(itertools.islice(
        (s for s in _pruned_splits(t, d, min_value=max_value) if s.value == max_value), witness_cap
    ))
    return GeometryVerdict(
        a=a,
        dim=a + max_value,
        max_value=max_value,
        equality_pair_count=eq,
        split_count=split_count(t, d),
        is_complete_intersection=max_value <= 0,
        is_irreducible=irreducible,
        is_normal=irreducible,
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# family scans

FAMILIES = ("regular", "sincere_regular", "rprime")


def _arm_groups(t: CanonicalType) -> list[int]:
    """Group id per arm; arms share a group iff they are consecutive with equal length."""
    ids, g = [], 0
    for k, m in enumerate(t.arms):
        if k and m != t.arms[k - 1]:
            g += 1
        ids.append(g)
    return ids


def _orbit_size(t: CanonicalType, arms) -> int:
    size = 1
    groups = _arm_groups(t)
    for g in set(groups):
        block = [arms[k] for k in range(len(arms)) if groups[k] == g]
        size *= math.factorial(len(block))
        for c in Counter(block).values():
            size //= math.factorial(c)
    return size


def regular_vectors(
    t: CanonicalType,
    bound: int,
    family: str = "regular",
    alphas: Optional[Iterable[int]] = None,
    symmetric: bool = False,
) -> Iterator[DimVector]:
    """All d in R (or a subfamily) with every entry <= bound.

    Regular d has d_omega = d_alpha and arm deficits summing to at most
    d_alpha.  With ``symmetric`` only one vector per orbit under permuting
    consecutive equal-length arms is produced (arms nondecreasing within a
    block); use :func:`_orbit_size` to weight it.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    low = 1 if family == "sincere_regular" else 0
    slack = 1 if family == "rprime" else 0
    groups = _arm_groups(t)
    for a in alphas if alphas is not None else range(low, bound + 1):
        if a < low or a > bound:
            continue
        tables = {}
        for m in set(t.arms):
            rows = []
            for arm in itertools.product(range(low, bound + 1), repeat=m - 1):
                q = arm_deficit(a, arm)
                if q + slack <= a:
                    rows.append((q, arm))
            tables[m] = rows
        n = t.n

        def rec(k: int, used: int, start: int, arms: list):
            if k == n:
                yield DimVector(a, tuple(arms), a)
                return
            rows = tables[t.arms[k]]
            for idx in range(start, len(rows)):
                q, arm = rows[idx]
                if used + q + slack > a:
                    continue
                nxt = idx if symmetric and k + 1 < n and groups[k + 1] == groups[k] else 0
                arms.append(arm)
                yield from rec(k + 1, used + q, nxt, arms)
                arms.pop()

        yield from rec(0, 0, 0, [])


def theorem_predictions(t: CanonicalType, family: str) -> dict:
    """Whether CI / normality is predicted for *every* vector of the family."""
    crit, _ = threshold(t)
    ci_all = crit >= 0
    if family == "regular":
        normal_all = crit > 0
    elif family == "sincere_regular":
        normal_all = crit > 0 or (t.n == 5 and all(m == 2 for m in t.arms))
    elif family == "rprime":
        normal_all = crit >= 0
    else:
        raise ValueError(f"unknown family {family!r}")
    return {"ci_for_all": ci_all, "normal_for_all": normal_all}


@dataclass
class ScanReport:
    type: CanonicalType
    bound: int
    family: str
    vectors: int = 0
    representatives: int = 0
    complete: bool = True
    ci_failures: int = 0
    normal_failures: int = 0
    first_ci_failure: Optional[DimVector] = None
    first_normal_failure: Optional[DimVector] = None
    predicted_ci_for_all: bool = True
    predicted_normal_for_all: bool = True
    consistent: bool = True
    witnesses: list = field(default_factory=list)

    def to_json(self) -> dict:
        crit, tame = threshold(self.type)
        return {
            "type": self.type.to_json(),
            "bound": self.bound,
            "family": self.family,
            "threshold": str(crit),
            "tameness": str(tame),
            "vectors": self.vectors,
            "representatives": self.representatives,
            "complete": self.complete,
            "ci_failures": self.ci_failures,
            "normal_failures": self.normal_failures,
            "first_ci_failure": self.first_ci_failure.to_json() if self.first_ci_failure else None,
            "first_normal_failure": self.first_normal_failure.to_json() if self.first_normal_failure else None,
            "predicted_ci_for_all": self.predicted_ci_for_all,
            "predicted_normal_for_all": self.predicted_normal_for_all,
            "consistent": self.consistent,
            "witnesses": [w.to_json() for w in self.witnesses],
        }


def _scan_one(t: CanonicalType, d: DimVector) -> tuple[int, bool, bool]:
    """(max_value, ci, normal) from the nontrivial maximum alone.

    The trivial split (0, d) always contributes 0, so d is CI iff every
    nontrivial split is <= 0 and normal iff every nontrivial split is < 0.
    """
    m = nontrivial_max(t, d)
    if m is None:
        return 0, True, True
    return max(0, m), m <= 0, m < 0


def _scan_chunk(args):
    t, bound, family, a, symmetric = args
    rows = []
    for d in regular_vectors(t, bound, family, alphas=(a,), symmetric=symmetric):
        w = _orbit_size(t, d.arms) if symmetric else 1
        rows.append((d, w, *_scan_one(t, d)))
    return rows


def scan_family(
    t: CanonicalType,
    bound: int,
    family: str = "regular",
    witness_cap: int = DEFAULT_WITNESS_CAP,
    csv_path: Optional[str] = None,
    jobs: int = 1,
    symmetric: bool = True,
    stop_early: bool = False,
) -> ScanReport:
    """Run the CI / normality decision over a bounded family.

    Vectors are visited by decreasing d_alpha so failures surface early.
    With ``symmetric`` one vector per arm-permutation orbit is decided and
    counted with its orbit size; the criteria are invariant under permuting
    arms of equal length.  ``stop_early`` ends the scan at the first vector
    contradicting the prediction, or at the first CI failure when failures
    are predicted; the report is then marked incomplete.
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    pred = theorem_predictions(t, family)
    report = ScanReport(
        t, bound, family,
        predicted_ci_for_all=pred["ci_for_all"],
        predicted_normal_for_all=pred["normal_for_all"],
    )
    fh = open(csv_path, "w", newline="") if csv_path else None
    writer = csv.writer(fh) if fh else None
    if writer:
        writer.writerow(["d", "weight", "max_value", "complete_intersection", "normal"])

    def consume(d, weight, max_value, ci, normal) -> bool:
        report.vectors += weight
        report.representatives += 1
        if not ci:
            report.ci_failures += weight
            if report.first_ci_failure is None:
                report.first_ci_failure = d
        if not normal:
            report.normal_failures += weight
            if report.first_normal_failure is None:
                report.first_normal_failure = d
            if len(report.witnesses) < witness_cap:
                report.witnesses.append(d)
        if writer:
            writer.writerow([" ".join(map(str, d.flat())), weight, max_value, int(ci), int(normal)])
        if not stop_early:
            return False
        if (pred["ci_for_all"] and not ci) or (pred["normal_for_all"] and not normal):
            return True
        return not pred["normal_for_all"] and not pred["ci_for_all"] and not ci

    low = 1 if family == "sincere_regular" else 0
    work = [(t, bound, family, a, symmetric) for a in range(bound, low - 1, -1)]
    try:
        if jobs > 1:
            from concurrent.futures import ProcessPoolExecutor

            with ProcessPoolExecutor(jobs) as ex:
                for rows in ex.map(_scan_chunk, work):
                    if any(consume(*row) for row in rows):
                        report.complete = False
                        break
        else:
            for _, _, _, a, _ in work:
                stopped = False
                for d in regular_vectors(t, bound, family, alphas=(a,), symmetric=symmetric):
                    w = _orbit_size(t, d.arms) if symmetric else 1
                    if consume(d, w, *_scan_one(t, d)):
                        stopped = True
                        break
                if stopped:
                    report.complete = False
                    break
    finally:
        if fh:
            fh.close()
    report.consistent = not (
        (pred["ci_for_all"] and report.ci_failures) or (pred["normal_for_all"] and report.normal_failures)
    )
    return report
