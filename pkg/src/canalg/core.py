"""Bound quiver of a canonical algebra, dimension vectors and the Ringel form.

Vertices are ordered alpha, then the arm vertices (arm 1 inner to outer,
arm 2, ...), then omega.  Arm and position indices in the public API are
1-based, so ``d.at(i, 0)`` is ``d_alpha`` and ``d.at(i, m_i)`` is ``d_omega``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


class ShapeError(ValueError):
    """A dimension vector does not fit the canonical type it is used with."""


@dataclass(frozen=True)
class CanonicalType:
    arms: tuple[int, ...]

    def __post_init__(self):
        arms = tuple(int(m) for m in self.arms)
        object.__setattr__(self, "arms", arms)
        if len(arms) < 3:
            raise ValueError(f"need at least 3 arms, got {len(arms)}")
        if any(m < 2 for m in arms):
            raise ValueError(f"arm lengths must be >= 2, got {arms}")

    @classmethod
    def parse(cls, text: str) -> "CanonicalType":
        return cls(tuple(int(x) for x in text.replace(" ", "").split(",") if x))

    @property
    def n(self) -> int:
        return len(self.arms)

    @property
    def num_vertices(self) -> int:
        return 2 + sum(m - 1 for m in self.arms)

    @property
    def num_arrows(self) -> int:
        return sum(self.arms)

    @property
    def num_relations(self) -> int:
        return self.n - 2

    def arm_offsets(self) -> tuple[int, ...]:
        """Flat index of vertex (i, 1) for each arm (0-based list over arms)."""
        offs, pos = [], 1
        for m in self.arms:
            offs.append(pos)
            pos += m - 1
        return tuple(offs)

    def to_json(self) -> dict:
        return {"m": list(self.arms)}

    def __str__(self) -> str:
        return ",".join(map(str, self.arms))


@dataclass(frozen=True)
class TubeParams:
    """Relation scalars lambda_3..lambda_n, as residues modulo ``prime``."""

    lambdas: tuple[int, ...]
    prime: int = 32003

    def __post_init__(self):
        lams = tuple(int(x) % self.prime for x in self.lambdas)
        object.__setattr__(self, "lambdas", lams)
        if any(x == 0 for x in lams):
            raise ValueError("tube parameters must be nonzero")
        if len(set(lams)) != len(lams):
            raise ValueError("tube parameters must be pairwise distinct")

    @classmethod
    def default(cls, t: CanonicalType, prime: int = 32003) -> "TubeParams":
        return cls(tuple(range(1, t.n - 1)), prime)

    def coefficient(self, r: int) -> int:
        """lambda_r for r in [3, n]."""
        return self.lambdas[r - 3]


@dataclass(frozen=True)
class Vertex:
    """``kind`` is 'alpha', 'arm' or 'omega'; arm vertices carry (i, j)."""

    kind: str
    i: int = 0
    j: int = 0

    def __str__(self) -> str:
        if self.kind == "arm":
            return f"({self.i},{self.j})"
        return self.kind


ALPHA = Vertex("alpha")
OMEGA = Vertex("omega")


@dataclass(frozen=True)
class Arrow:
    i: int
    j: int
    source: Vertex
    target: Vertex

    @property
    def name(self) -> str:
        return f"gamma_{self.i},{self.j}"


@dataclass(frozen=True)
class Relation:
    """arm_1-composite + lambda_r * arm_2-composite - arm_r-composite.

    ``terms`` holds (coefficient, arm) with the symbolic coefficient being
    1, 'lambda_r' or -1; the path for arm k is gamma_{k,1} ... gamma_{k,m_k}.
    """

    r: int
    terms: tuple[tuple[object, int], ...]
    source: Vertex = OMEGA
    target: Vertex = ALPHA


@dataclass(frozen=True)
class BoundQuiver:
    type: CanonicalType
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...]
    _index: dict = field(default_factory=dict, compare=False, repr=False)

    def index(self, v: Vertex) -> int:
        if not self._index:
            self._index.update({x: k for k, x in enumerate(self.vertices)})
        return self._index[v]

    def topological_order(self) -> list[Vertex]:
        """Kahn's algorithm; raises if the arrows contain an oriented cycle."""
        indeg = {v: 0 for v in self.vertices}
        out: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
            out[a.source].append(a.target)
        ready = [v for v in self.vertices if indeg[v] == 0]
        order = []
        while ready:
            v = ready.pop()
            order.append(v)
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    ready.append(w)
        if len(order) != len(self.vertices):
            raise ValueError("quiver has an oriented cycle")
        return order


def arm_vertex(t: CanonicalType, i: int, j: int) -> Vertex:
    m = t.arms[i - 1]
    if j == 0:
        return ALPHA
    if j == m:
        return OMEGA
    if not 0 < j < m:
        raise IndexError(f"position {j} outside arm {i} of length {m}")
    return Vertex("arm", i, j)


def build_quiver(t: CanonicalType) -> BoundQuiver:
    vertices = [ALPHA]
    for i, m in enumerate(t.arms, 1):
        vertices.extend(Vertex("arm", i, j) for j in range(1, m))
    vertices.append(OMEGA)
    arrows = tuple(
        Arrow(i, j, arm_vertex(t, i, j), arm_vertex(t, i, j - 1))
        for i, m in enumerate(t.arms, 1)
        for j in range(1, m + 1)
    )
    relations = tuple(
        Relation(r, ((1, 1), (f"lambda_{r}", 2), (-1, r))) for r in range(3, t.n + 1)
    )
    return BoundQuiver(t, tuple(vertices), arrows, relations)


@dataclass(frozen=True)
class DimVector:
    alpha: int
    arms: tuple[tuple[int, ...], ...]
    omega: int

    def __post_init__(self):
        object.__setattr__(self, "arms", tuple(tuple(int(x) for x in a) for a in self.arms))

    # construction ---------------------------------------------------------
    @classmethod
    def zero(cls, t: CanonicalType) -> "DimVector":
        return cls(0, tuple((0,) * (m - 1) for m in t.arms), 0)

    @classmethod
    def from_flat(cls, t: CanonicalType, values: Sequence[int]) -> "DimVector":
        values = list(values)
        if len(values) != t.num_vertices:
            raise ShapeError(f"expected {t.num_vertices} entries, got {len(values)}")
        arms, pos = [], 1
        for m in t.arms:
            arms.append(tuple(values[pos : pos + m - 1]))
            pos += m - 1
        return cls(values[0], tuple(arms), values[-1])

    @classmethod
    def from_json(cls, obj: dict) -> "DimVector":
        return cls(int(obj["alpha"]), tuple(tuple(a) for a in obj["arms"]), int(obj["omega"]))

    def to_json(self) -> dict:
        return {"alpha": self.alpha, "arms": [list(a) for a in self.arms], "omega": self.omega}

    # access ---------------------------------------------------------------
    def flat(self) -> tuple[int, ...]:
        out = [self.alpha]
        for a in self.arms:
            out.extend(a)
        out.append(self.omega)
        return tuple(out)

    def at(self, i: int, j: int) -> int:
        arm = self.arms[i - 1]
        if j == 0:
            return self.alpha
        if j == len(arm) + 1:
            return self.omega
        if not 0 < j <= len(arm):
            raise IndexError(f"position {j} outside arm {i}")
        return arm[j - 1]

    def value(self, v: Vertex) -> int:
        if v.kind == "alpha":
            return self.alpha
        if v.kind == "omega":
            return self.omega
        return self.arms[v.i - 1][v.j - 1]

    def check(self, t: CanonicalType) -> None:
        if len(self.arms) != t.n or any(len(a) != m - 1 for a, m in zip(self.arms, t.arms)):
            raise ShapeError(f"dimension vector {self.to_json()} does not fit type {t}")

    def is_nonnegative(self) -> bool:
        return all(x >= 0 for x in self.flat())

    def is_zero(self) -> bool:
        return not any(self.flat())

    def is_sincere(self) -> bool:
        return all(x > 0 for x in self.flat())

    # arithmetic -----------------------------------------------------------
    def _zip(self, other: "DimVector", op) -> "DimVector":
        if len(self.arms) != len(other.arms) or any(
            len(a) != len(b) for a, b in zip(self.arms, other.arms)
        ):
            raise ShapeError("dimension vectors of different shapes")
        return DimVector(
            op(self.alpha, other.alpha),
            tuple(tuple(op(x, y) for x, y in zip(a, b)) for a, b in zip(self.arms, other.arms)),
            op(self.omega, other.omega),
        )

    def __add__(self, other: "DimVector") -> "DimVector":
        return self._zip(other, lambda x, y: x + y)

    def __sub__(self, other: "DimVector") -> "DimVector":
        return self._zip(other, lambda x, y: x - y)

    def __mul__(self, c: int) -> "DimVector":
        return DimVector(c * self.alpha, tuple(tuple(c * x for x in a) for a in self.arms), c * self.omega)

    __rmul__ = __mul__

    def __neg__(self) -> "DimVector":
        return self * -1

    def __le__(self, other: "DimVector") -> bool:
        return all(x <= y for x, y in zip(self.flat(), other.flat()))

    def __str__(self) -> str:
        arms = "; ".join(",".join(map(str, a)) for a in self.arms)
        return f"(a:{self.alpha} | {arms} | w:{self.omega})"


def ringel_form(t: CanonicalType, d1: DimVector, d2: DimVector) -> int:
    """The Ringel bilinear form <d1, d2>; only sources/targets of arrows and
    relations enter, so the tube parameters play no role."""
    d1.check(t)
    d2.check(t)
    total = sum(x * y for x, y in zip(d1.flat(), d2.flat()))
    for k, m in enumerate(t.arms, 1):
        # arrow gamma_{k,j}: (k,j) -> (k,j-1)
        for j in range(1, m + 1):
            total -= d1.at(k, j) * d2.at(k, j - 1)
    total += (t.n - 2) * d1.omega * d2.alpha
    return total


def a_dim(t: CanonicalType, d: DimVector) -> int:
    """Affine dimension of the arrow space minus the number of equations."""
    d.check(t)
    total = 0
    for k, m in enumerate(t.arms, 1):
        for j in range(1, m + 1):
            total += d.at(k, j) * d.at(k, j - 1)
    return total - (t.n - 2) * d.omega * d.alpha


def gl_dim(d: DimVector) -> int:
    return sum(x * x for x in d.flat())


def special_vector_h(t: CanonicalType) -> DimVector:
    return DimVector(1, tuple((1,) * (m - 1) for m in t.arms), 1)


def special_vector_e(t: CanonicalType, i: int, j: int) -> DimVector:
    """e_{i,j} for j in [1, m_i]; j = m_i (or 0) gives h minus arm i's interior."""
    if not 1 <= i <= t.n:
        raise IndexError(f"arm {i} out of range for type {t}")
    m = t.arms[i - 1]
    if j == 0:
        j = m
    if not 1 <= j <= m:
        raise IndexError(f"position {j} out of range [1, {m}] on arm {i}")
    if j < m:
        arms = tuple(
            tuple(int(k == i and l == j) for l in range(1, mk)) for k, mk in enumerate(t.arms, 1)
        )
        return DimVector(0, arms, 0)
    arms = tuple(tuple(0 if k == i else 1 for _ in range(mk - 1)) for k, mk in enumerate(t.arms, 1))
    return DimVector(1, arms, 1)


def unit_vector(t: CanonicalType, v: Vertex) -> DimVector:
    if v.kind == "alpha":
        return DimVector(1, DimVector.zero(t).arms, 0)
    if v.kind == "omega":
        return DimVector(0, DimVector.zero(t).arms, 1)
    return special_vector_e(t, v.i, v.j)


def e_alpha(t: CanonicalType) -> DimVector:
    return unit_vector(t, ALPHA)


def e_omega(t: CanonicalType) -> DimVector:
    return unit_vector(t, OMEGA)


def vector_sum(t: CanonicalType, vectors: Iterable[DimVector]) -> DimVector:
    total = DimVector.zero(t)
    for v in vectors:
        total = total + v
    return total


def threshold(t: CanonicalType) -> tuple[Fraction, Fraction]:
    """(sum 1/(m_i-1) - (2n-5), sum 1/m_i - (n-2)) as exact rationals."""
    crit = sum(Fraction(1, m - 1) for m in t.arms) - (2 * t.n - 5)
    tame = sum(Fraction(1, m) for m in t.arms) - (t.n - 2)
    return crit, tame
