"""Explicit split pairs (d', d'') with d' in P, d'' in Q, d' + d'' in R and
<d'', d'> >= 0, for types at or below the threshold.

Each family is built from exact rational coefficients c with d = c * m for
a scale m.  The verbatim scale makes every entry integral; the minimal scale
is the lcm of the coefficient denominators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .classify import canonical_presentation, in_P, in_Q, in_R
from .core import CanonicalType, DimVector, ringel_form, special_vector_h, threshold


class NotApplicable(ValueError):
    """No counterexample family covers this type."""


@dataclass(frozen=True)
class WitnessPair:
    type: CanonicalType
    family: str
    order: tuple[int, ...]  # order[k] = original arm index (0-based) placed at position k
    scale: int
    dprime: DimVector
    dsecond: DimVector
    predicted_value: int

    @property
    def d(self) -> DimVector:
        return self.dprime + self.dsecond

    @property
    def value(self) -> int:
        return ringel_form(self.type, self.dsecond, self.dprime)

    def checks(self) -> dict:
        return {
            "dprime_in_P": in_P(self.type, self.dprime),
            "dsecond_in_Q": in_Q(self.type, self.dsecond),
            "sum_in_R": in_R(self.type, self.d),
            "value_matches": self.value == self.predicted_value,
        }

    def to_json(self) -> dict:
        return {
            "type": self.type.to_json(),
            "family": self.family,
            "arm_order": list(self.order),
            "scale": self.scale,
            "dprime": self.dprime.to_json(),
            "dsecond": self.dsecond.to_json(),
            "d": self.d.to_json(),
            "predicted_value": self.predicted_value,
            "value": self.value,
            "checks": self.checks(),
        }


@dataclass(frozen=True)
class _Shape:
    """Coefficients per unit scale, in the reordered arm order."""
    family: str
    order: tuple[int, ...]
    verbatim_scale: int
    dprime: tuple  # (alpha, arms, omega) of Fractions
    dsecond: tuple
    value_coeff: Fraction  # value = value_coeff * scale^2


def _to_original(shape_vec, order: Sequence[int]) -> tuple:
    alpha, arms, omega = shape_vec
    out = [None] * len(order)
    for k, orig in enumerate(order):
        out[orig] = arms[k]
    return alpha, tuple(out), omega


def _scaled(vec, scale: int) -> DimVector:
    alpha, arms, omega = vec
    vals = [alpha * scale, omega * scale] + [x * scale for arm in arms for x in arm]
    if any(Fraction(v).denominator != 1 for v in vals):
        raise ValueError(f"scale {scale} does not make the witness integral")
    return DimVector(int(alpha * scale), tuple(tuple(int(x * scale) for x in arm) for arm in arms), int(omega * scale))


def _denominators(vec) -> list[int]:
    alpha, arms, omega = vec
    return [Fraction(alpha).denominator, Fraction(omega).denominator] + [
        Fraction(x).denominator for arm in arms for x in arm
    ]


def _shape_n3(ms: Sequence[int]) -> _Shape:
    if len(ms) != 3:
        raise NotApplicable("the n = 3 family needs three arms")
    delta = sum(Fraction(1, m - 1) for m in ms)
    if delta > 1:
        raise NotApplicable(f"sum 1/(m_i - 1) = {delta} > 1")
    dp_arms, ds_arms = [], []
    for m in ms:
        c = (delta * (m - 1) - 1) / ((m - 1) * (m - 2))
        dp_arms.append(tuple(c * (m - j - 1) for j in range(1, m)))
        ds_arms.append(tuple(c * (j - 1) for j in range(1, m)))
    value = Fraction(1, 2) * (1 - delta) * sum(
        Fraction(1, (ms[i] - 1) * (ms[j] - 2)) for i in range(3) for j in range(3) if i != j
    )
    scale = math.prod((m - 1) * (m - 2) for m in ms)
    return _Shape("n3", (0, 1, 2), scale, (delta, tuple(dp_arms), Fraction(0)),
                  (Fraction(0), tuple(ds_arms), delta), value)


def _shape_n4(ms: Sequence[int]) -> _Shape:
    if len(ms) != 4:
        raise NotApplicable("the n = 4 family needs four arms")
    if sum(Fraction(1, m - 1) for m in ms) > 3:
        raise NotApplicable("sum 1/(m_i - 1) > 3")
    # the two longest arms (later index on ties) take positions 3 and 4
    longest = sorted(range(4), key=lambda k: (ms[k], k))[2:]
    order = tuple([k for k in range(4) if k not in longest] + longest)
    r = [ms[k] for k in order]
    if r[2] <= 2 or r[3] <= 2:
        raise NotApplicable("needs two arms of length > 2")
    dp_arms, ds_arms = [], []
    for k, m in enumerate(r):
        if k < 2:
            dp_arms.append(tuple(Fraction(m - j, m) for j in range(1, m)))
            ds_arms.append(tuple(Fraction(j, m) for j in range(1, m)))
        else:
            dp_arms.append(tuple(Fraction(m - j - 1, 2 * (m - 2)) for j in range(1, m)))
            ds_arms.append(tuple(Fraction(j - 1, 2 * (m - 2)) for j in range(1, m)))
    value = (
        Fraction(3, 4) - Fraction(1, 2 * r[0]) - Fraction(1, 2 * r[1])
        - Fraction(1, 8 * (r[2] - 2)) - Fraction(1, 8 * (r[3] - 2))
    )
    scale = 2 * r[0] * r[1] * (r[2] - 2) * (r[3] - 2)
    return _Shape("n4", order, scale, (Fraction(1), tuple(dp_arms), Fraction(0)),
                  (Fraction(0), tuple(ds_arms), Fraction(1)), value)


def _shape_n5plus(ms: Sequence[int]) -> _Shape:
    n = len(ms)
    if n < 5:
        raise NotApplicable("the n >= 5 family needs at least five arms")
    # a shortest arm (latest on ties) goes last
    last = min(range(n), key=lambda k: (ms[k], -k))
    order = tuple([k for k in range(n) if k != last] + [last])
    r = [ms[k] for k in order]
    dp_arms, ds_arms = [], []
    for k, m in enumerate(r):
        if k < n - 1:
            dp_arms.append(tuple(Fraction(m - j, m) for j in range(1, m)))
            ds_arms.append(tuple(Fraction(j, m) for j in range(1, m)))
        else:
            dp_arms.append((Fraction(0),) * (m - 1))
            ds_arms.append((Fraction(0),) * (m - 1))
    value = Fraction(1, 2) * (n - 3 - sum(Fraction(1, m) for m in r[:-1]))
    scale = math.prod(r[:-1])
    return _Shape("n5plus", order, scale, (Fraction(1), tuple(dp_arms), Fraction(0)),
                  (Fraction(0), tuple(ds_arms), Fraction(1)), value)


def _build(t: CanonicalType, shape: _Shape, minimal: bool) -> WitnessPair:
    dp_c = _to_original(shape.dprime, shape.order)
    ds_c = _to_original(shape.dsecond, shape.order)
    if minimal:
        scale = math.lcm(*_denominators(dp_c), *_denominators(ds_c))
    else:
        scale = shape.verbatim_scale
    predicted = shape.value_coeff * scale * scale
    if predicted.denominator != 1:
        raise ValueError("predicted value is not integral at this scale")
    return WitnessPair(t, shape.family, shape.order, scale, _scaled(dp_c, scale), _scaled(ds_c, scale), int(predicted))


def _as_type(ms) -> CanonicalType:
    return ms if isinstance(ms, CanonicalType) else CanonicalType(tuple(ms))


def witness_n3(*ms, minimal: bool = False) -> WitnessPair:
    """n = 3 family; needs sum 1/(m_i - 1) <= 1."""
    if len(ms) == 1:
        ms = tuple(_as_type(ms[0]).arms)
    t = _as_type(ms)
    return _build(t, _shape_n3(t.arms), minimal)


def witness_n4(ms, minimal: bool = False) -> WitnessPair:
    """n = 4 family; the two longest arms play the role of arms 3 and 4."""
    t = _as_type(ms)
    return _build(t, _shape_n4(t.arms), minimal)


def witness_n5plus(ms, minimal: bool = False) -> WitnessPair:
    """n >= 5 family; a shortest arm is moved last."""
    t = _as_type(ms)
    return _build(t, _shape_n5plus(t.arms), minimal)


def witness_for(t: CanonicalType, minimal: bool = False) -> WitnessPair:
    """The applicable family; NotApplicable above the threshold."""
    crit, _ = threshold(t)
    if crit > 0:
        raise NotApplicable(f"type {t} is above the threshold; every regular d is normal")
    if t.n == 3:
        return witness_n3(t, minimal=minimal)
    if t.n == 4:
        return witness_n4(t, minimal=minimal)
    return witness_n5plus(t, minimal=minimal)


@dataclass(frozen=True)
class SincereLift:
    q: int
    dprime: DimVector
    dsecond: DimVector
    value: int

    def to_json(self) -> dict:
        return {"q": self.q, "dprime": self.dprime.to_json(), "dsecond": self.dsecond.to_json(), "value": self.value}


def sincere_lift(t: CanonicalType, dprime: DimVector, dsecond: DimVector) -> SincereLift:
    """(q d' + h, q d'') for the least q >= 1 with q<d'',d'> + <d'',h> > 0.

    The sum h + q(d' + d'') is regular with p > 0, hence sincere.
    """
    v = ringel_form(t, dsecond, dprime)
    if v <= 0:
        raise ValueError(f"lift needs <d'', d'> > 0, got {v}")
    h = special_vector_h(t)
    w = ringel_form(t, dsecond, h)
    q = max(1, (-w) // v + 1)
    new_p, new_s = q * dprime + h, q * dsecond
    value = ringel_form(t, new_s, new_p)
    if value != q * q * v + q * w or value <= 0:
        raise AssertionError("lifted value does not satisfy the expected identity")
    pres = canonical_presentation(t, new_p + new_s)
    if pres is None or pres.p_omega != 0 or pres.p <= 0:
        raise AssertionError("lifted vector is not regular with p > 0")
    return SincereLift(q, new_p, new_s, value)


__all__ = [
    "NotApplicable",
    "WitnessPair",
    "SincereLift",
    "witness_n3",
    "witness_n4",
    "witness_n5plus",
    "witness_for",
    "sincere_lift",
]
