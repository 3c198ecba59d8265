"""Recognition of Deza graphs, strongly regular graphs, and extraction of children."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .errors import (
    ChildrenUndefined,
    InfiniteDiameter,
    InternalInconsistency,
    NotConnected,
    NotDeza,
    NotRegular,
    TooManyValues,
)
from .graph import Graph, complement
from .matrix import mat_square


@dataclass(frozen=True)
class DezaParameters:
    n: int
    k: int
    b: int
    a: int

    def __iter__(self):
        return iter((self.n, self.k, self.b, self.a))

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.b, self.a)


@dataclass(frozen=True)
class SrgParameters:
    n: int
    k: int
    lam: int
    mu: int
    r: Union[int, float]
    s: Union[int, float]
    f: int
    g: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.n, self.k, self.lam, self.mu)


@dataclass(frozen=True)
class Children:
    child_a: Graph
    child_b: Graph
    params: DezaParameters


def common_neighbours(g: Graph) -> np.ndarray:
    return mat_square(g.matrix())


def is_connected(g: Graph) -> bool:
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    frontier = seen.copy()
    while frontier.any():
        nxt = g.adj[frontier].any(axis=0) & ~seen
        seen |= nxt
        frontier = nxt
    return bool(seen.all())


def diameter(g: Graph) -> int:
    """Largest BFS eccentricity; raises :class:`InfiniteDiameter` for disconnected graphs."""
    best = 0
    for v in range(g.n):
        dist = np.full(g.n, -1)
        dist[v] = 0
        frontier = np.zeros(g.n, dtype=bool)
        frontier[v] = True
        d = 0
        while frontier.any():
            d += 1
            nxt = g.adj[frontier].any(axis=0) & (dist < 0)
            dist[nxt] = d
            frontier = nxt
        if (dist < 0).any():
            raise InfiniteDiameter("graph is disconnected")
        best = max(best, int(dist.max()))
    return best


def recognize_deza(g: Graph) -> DezaParameters:
    n = g.n
    deg = g.degrees()
    if not (deg == deg[0]).all():
        raise NotRegular(f"degrees range over {sorted(set(deg.tolist()))}")
    k = int(deg[0])
    if not 0 < k < n:
        raise NotDeza(f"valency {k} outside 0 < k < {n}")
    sq = common_neighbours(g)
    off = sq[~np.eye(n, dtype=bool)]
    values = sorted(set(off.tolist()))
    if len(values) > 2:
        raise TooManyValues(f"common-neighbour counts take values {values}")
    if not is_connected(g):
        raise NotConnected(f"regular graph with values {values} is disconnected")
    return DezaParameters(n, k, values[-1], values[0])


def _srg_eigenvalues(k: int, lam: int, mu: int):
    # r, s are the roots of x^2 - (lam - mu) x - (k - mu)
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    root = math.isqrt(disc)
    if root * root == disc:
        return (lam - mu + root) // 2, (lam - mu - root) // 2
    sq = math.sqrt(disc)
    return (lam - mu + sq) / 2, (lam - mu - sq) / 2


def recognize_srg(g: Graph) -> Optional[SrgParameters]:
    from .spectra import spectrum

    n = g.n
    deg = g.degrees()
    if not (deg == deg[0]).all():
        return None
    k = int(deg[0])
    if not 0 < k < n - 1:
        return None
    sq = common_neighbours(g)
    offdiag = ~np.eye(n, dtype=bool)
    lam_vals = set(sq[g.adj].tolist())
    mu_vals = set(sq[offdiag & ~g.adj].tolist())
    if len(lam_vals) != 1 or len(mu_vals) != 1:
        return None
    lam, mu = lam_vals.pop(), mu_vals.pop()
    r, s = _srg_eigenvalues(k, lam, mu)
    spec = spectrum(g)
    f = spec.multiplicity(r) - (1 if abs(r - k) < 1e-9 else 0)
    gg = spec.multiplicity(s)
    if f + gg + 1 != n or abs(k + f * r + gg * s) > 1e-6:
        raise InternalInconsistency(f"SRG ({n},{k},{lam},{mu}) spectrum {spec} disagrees with r={r}, s={s}")
    return SrgParameters(n, k, lam, mu, r, s, f, gg)


def children(g: Graph, p: Optional[DezaParameters] = None) -> Children:
    if p is None:
        p = recognize_deza(g)
    if p.b == p.a:
        raise ChildrenUndefined(f"b = a = {p.a}: every pair has the same count")
    sq = common_neighbours(g)
    off = ~np.eye(g.n, dtype=bool)
    child_b = Graph((sq == p.b) & off)
    child_a = Graph((sq == p.a) & off)
    return Children(child_a, child_b, p)


def is_strictly_deza(g: Graph) -> bool:
    try:
        recognize_deza(g)
    except NotDeza:
        return False
    return diameter(g) == 2 and recognize_srg(g) is None


def is_divisible_design_flag(c: Children) -> bool:
    """True when both children are SRGs and at least one of them is imprimitive."""
    if recognize_srg(c.child_a) is None or recognize_srg(c.child_b) is None:
        return False
    return any(not is_connected(h) for h in (c.child_a, c.child_b, complement(c.child_a), complement(c.child_b)))


def reconstruct_square(c: Children) -> np.ndarray:
    """``a·A + b·B + k·I`` for comparison against ``M²``."""
    p = c.params
    return p.a * c.child_a.matrix() + p.b * c.child_b.matrix() + p.k * np.eye(p.n, dtype=np.int64)


def has_srg_children(g: Graph) -> bool:
    try:
        c = children(g)
    except (NotDeza, ChildrenUndefined):
        return False
    return recognize_srg(c.child_a) is not None and recognize_srg(c.child_b) is not None
