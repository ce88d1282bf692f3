"""Membership in the cones P, Q, R, R+Q, R' and the canonical presentation."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .core import (
    CanonicalType,
    DimVector,
    e_omega,
    special_vector_e,
    special_vector_h,
)


@dataclass(frozen=True)
class CanonicalPresentation:
    """d = p*h + sum p_arm[i][j-1] * e_{i,j} + p_omega * e_omega, j in [1, m_i].

    ``p_arm[i][-1]`` is the coefficient of e_{i,m_i}.
    """

    p: int
    p_arm: tuple[tuple[int, ...], ...]
    p_omega: int

    def coefficient(self, i: int, j: int) -> int:
        return self.p_arm[i - 1][j - 1]

    def interior_zero(self) -> bool:
        return all(x == 0 for arm in self.p_arm for x in arm[:-1])

    def reconstruct(self, t: CanonicalType) -> DimVector:
        d = self.p * special_vector_h(t) + self.p_omega * e_omega(t)
        for i, arm in enumerate(self.p_arm, 1):
            for j, c in enumerate(arm, 1):
                if c:
                    d = d + c * special_vector_e(t, i, j)
        return d

    def to_json(self) -> dict:
        return {"p": self.p, "p_arm": [list(a) for a in self.p_arm], "p_omega": self.p_omega}


def arm_deficit(alpha: int, arm: tuple[int, ...]) -> int:
    """q_i = max(0, max_j (d_alpha - d_{i,j})): the e_{i,m_i} coefficient."""
    return max(0, alpha - min(arm)) if arm else 0


def canonical_presentation(t: CanonicalType, d: DimVector) -> Optional[CanonicalPresentation]:
    """The unique presentation of d in R+Q, or None when d is not in R+Q."""
    d.check(t)
    if not d.is_nonnegative():
        return None
    p_omega = d.omega - d.alpha
    if p_omega < 0:
        return None
    qs = [arm_deficit(d.alpha, arm) for arm in d.arms]
    p = d.alpha - sum(qs)
    if p < 0:
        return None
    p_arm = tuple(
        tuple(x - d.alpha + q for x in arm) + (q,) for arm, q in zip(d.arms, qs)
    )
    return CanonicalPresentation(p, p_arm, p_omega)


def _monotone(t: CanonicalType, d: DimVector, decreasing: bool) -> bool:
    for arm in d.arms:
        seq = (d.alpha,) + arm + (d.omega,)
        for x, y in zip(seq, seq[1:]):
            if (x < y) if decreasing else (x > y):
                return False
    return True


def in_P(t: CanonicalType, d: DimVector) -> bool:
    d.check(t)
    if not d.is_nonnegative():
        return False
    if d.is_zero():
        return True
    return d.alpha > d.omega and _monotone(t, d, decreasing=True)


def in_Q(t: CanonicalType, d: DimVector) -> bool:
    d.check(t)
    if not d.is_nonnegative():
        return False
    if d.is_zero():
        return True
    return d.alpha < d.omega and _monotone(t, d, decreasing=False)


def in_RQ(t: CanonicalType, d: DimVector) -> bool:
    return canonical_presentation(t, d) is not None


def in_R(t: CanonicalType, d: DimVector) -> bool:
    pres = canonical_presentation(t, d)
    return pres is not None and pres.p_omega == 0


def in_Rprime(t: CanonicalType, d: DimVector) -> bool:
    pres = canonical_presentation(t, d)
    return pres is not None and pres.p_omega == 0 and pres.p > 0


def is_sincere(d: DimVector) -> bool:
    return d.is_sincere()


def classify(t: CanonicalType, d: DimVector) -> dict:
    pres = canonical_presentation(t, d)
    return {
        "in_P": in_P(t, d),
        "in_Q": in_Q(t, d),
        "in_R": pres is not None and pres.p_omega == 0,
        "in_RQ": pres is not None,
        "in_Rprime": pres is not None and pres.p_omega == 0 and pres.p > 0,
        "sincere": d.is_sincere(),
        "presentation": pres.to_json() if pres is not None else None,
    }
