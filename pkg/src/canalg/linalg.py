"""Dense Gaussian elimination over the prime field F_p on int64 arrays.

Entries are kept in [0, p); with p < 2**31 every product of two residues
fits in int64, so row operations never overflow.
"""
from __future__ import annotations

import numpy as np

DEFAULT_PRIME = 32003


def _check_prime(p: int) -> None:
    if p < 2 or p >= 2**31:
        raise ValueError(f"prime {p} outside [2, 2**31)")


def as_mod(a, p: int) -> np.ndarray:
    return np.mod(np.asarray(a, dtype=np.int64), p)


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """a @ b mod p; reduces in column blocks so partial sums stay below 2**63."""
    a = as_mod(a, p)
    b = as_mod(b, p)
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    block = max(1, (2**62) // ((p - 1) ** 2 + 1))
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, block):
        out = (out + a[:, s:s + block] @ b[s:s + block, :]) % p
    return out


def row_reduce(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p and its pivot columns."""
    _check_prime(p)
    m = as_mod(a, p).copy()
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            m[[r, k]] = m[[k, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        factors = m[:, c].copy()
        factors[r] = 0
        nzr = np.nonzero(factors)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(factors[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a, p: int) -> int:
    a = np.asarray(a)
    if a.size == 0:
        return 0
    return len(row_reduce(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {x : a x = 0} mod p, one vector per row."""
    a = np.asarray(a, dtype=np.int64)
    cols = a.shape[1]
    if a.shape[0] == 0 or cols == 0:
        return np.eye(cols, dtype=np.int64)
    rref, pivots = row_reduce(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for r, pc in enumerate(pivots):
            basis[k, pc] = (-rref[r, f]) % p
    return basis


def solve(a, b, p: int, rng: np.random.Generator | None = None):
    """A uniformly random x with a x = b mod p, or None when inconsistent."""
    a = as_mod(a, p)
    b = as_mod(b, p).reshape(-1)
    cols = a.shape[1]
    if a.shape[0] == 0:
        x = np.zeros(cols, dtype=np.int64)
    else:
        rref, pivots = row_reduce(np.concatenate([a, b.reshape(-1, 1)], axis=1), p)
        if cols in pivots:
            return None
        x = np.zeros(cols, dtype=np.int64)
        for k, c in enumerate(pivots):
            x[c] = rref[k, cols]
    if rng is not None and cols:
        ker = nullspace(a, p) if a.shape[0] else np.eye(cols, dtype=np.int64)
        if ker.shape[0]:
            coeffs = rng.integers(0, p, size=(1, ker.shape[0]), dtype=np.int64)
            x = (x + matmul(coeffs, ker, p).reshape(-1)) % p
    return x


__all__ = ["DEFAULT_PRIME", "as_mod", "matmul", "row_reduce", "rank", "nullspace", "solve"]
