"""Exact integer matrix arithmetic on int64 arrays, block splits, and Bareiss rank."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgument
from .graph import Permutation

_INT64_SAFE = 2**62


def as_int(m) -> np.ndarray:
    a = np.asarray(m)
    if a.dtype == bool or np.issubdtype(a.dtype, np.integer):
        return a.astype(np.int64)
    raise InvalidArgument(f"expected an integer matrix, got dtype {a.dtype}")


def mat_mul(a, b) -> np.ndarray:
    a, b = as_int(a), as_int(b)
    if a.ndim != 2 or b.ndim != 2 or a.shape[1] != b.shape[0]:
        raise InvalidArgument(f"cannot multiply shapes {a.shape} and {b.shape}")
    if a.size and b.size:
        bound = int(np.abs(a).max()) * int(np.abs(b).max()) * a.shape[1]
        assert bound < _INT64_SAFE, "int64 overflow risk in mat_mul"
    return a @ b


def mat_square(a) -> np.ndarray:
    return mat_mul(a, a)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def ones(n: int) -> np.ndarray:
    return np.ones((n, n), dtype=np.int64)


def _check_perm(p: Permutation, size: int):
    if p.n != size:
        raise InvalidArgument(f"permutation of size {p.n} does not match dimension {size}")


def apply_perm_left(p: Permutation, m) -> np.ndarray:
    """``P @ M``: row ``v`` of the result is row ``p(v)`` of ``M``."""
    m = as_int(m)
    _check_perm(p, m.shape[0])
    return m[list(p.image), :]


def apply_perm_right(m, p: Permutation) -> np.ndarray:
    """``M @ P``: column ``p(v)`` of the result is column ``v`` of ``M``."""
    m = as_int(m)
    _check_perm(p, m.shape[1])
    return m[:, list(p.inverse().image)]


def conjugate(p: Permutation, m) -> np.ndarray:
    """``P M P``; equals ``P M P^{-1}`` when ``p`` is an involution."""
    return apply_perm_right(apply_perm_left(p, m), p)


@dataclass(frozen=True)
class BlockSplit:
    t: int
    m11: np.ndarray
    m12: np.ndarray
    m21: np.ndarray
    m22: np.ndarray

    def join(self) -> np.ndarray:
        return np.block([[self.m11, self.m12], [self.m21, self.m22]])


def block_split(m, t: int) -> BlockSplit:
    m = as_int(m)
    n = m.shape[0]
    if m.shape != (n, n) or not 1 <= t <= n:
        raise InvalidArgument(f"bad split t={t} for shape {m.shape}")
    return BlockSplit(t, m[:t, :t], m[:t, t:], m[t:, :t], m[t:, t:])


def exact_rank(m) -> int:
    """Rank over the rationals via fraction-free Gaussian elimination on Python ints."""
    rows = [[int(x) for x in row] for row in as_int(m).tolist()]
    if not rows or not rows[0]:
        return 0
    nr, nc = len(rows), len(rows[0])
    rank, prev = 0, 1
    for col in range(nc):
        pivot = next((r for r in range(rank, nr) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        piv = pr[col]
        for r in range(rank + 1, nr):
            row = rows[r]
            f = row[col]
            # Bareiss step: every division here is exact
            rows[r] = [(piv * row[c] - f * pr[c]) // prev if c > col else 0 for c in range(nc)]
        prev = piv
        rank += 1
        if rank == nr:
            break
    return rank
