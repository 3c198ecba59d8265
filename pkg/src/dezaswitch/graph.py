"""Dense simple graphs, vertex permutations, and the graph families used here.

Vertex orderings are fixed so that permutations written against them are
reproducible:

* ``lattice_graph(m)``: vertex ``(i, j)`` sits at index ``i*m + j``.
* ``triangular_graph(n)``: 2-subsets of ``{1..n}`` in lexicographic order.
* ``rook_2xm(m)``: vertex ``(r, c)`` sits at index ``r*m + c``.
* ``clebsch_16_10()``: vertex ``v`` is the 4-bit vector with integer value ``v``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidArgument, InvalidParameter, InvalidSubset


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as a read-only boolean adjacency matrix."""

    adj: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise InvalidArgument(f"adjacency must be a non-empty square matrix, got shape {a.shape}")
        if a.dtype != bool:
            if not np.isin(a, (0, 1)).all():
                raise InvalidArgument("adjacency entries must be 0 or 1")
            a = a.astype(bool)
        if not np.array_equal(a, a.T):
            raise InvalidArgument("adjacency is not symmetric")
        if a.diagonal().any():
            raise InvalidArgument("adjacency has loops")
        object.__setattr__(self, "adj", _frozen(a))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise InvalidArgument(f"loop at vertex {u}")
            a[u, v] = a[v, u] = True
        return cls(a)

    @property
    def n(self) -> int:
        return self.adj.shape[0]

    def matrix(self) -> np.ndarray:
        """Adjacency as a fresh int64 matrix."""
        return self.adj.astype(np.int64)

    def degrees(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def edges(self) -> list[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return list(zip(us.tolist(), vs.tolist()))

    def num_edges(self) -> int:
        return int(self.adj.sum()) // 2

    def relabel(self, perm: "Permutation") -> "Graph":
        """Graph in which vertex ``perm(v)`` plays the role of ``v``."""
        if perm.n != self.n:
            raise InvalidArgument("permutation size does not match graph")
        inv = np.asarray(perm.inverse().image)
        return Graph(self.adj[np.ix_(inv, inv)])

    def induced(self, subset: Sequence[int]) -> "Graph":
        idx = np.asarray(subset, dtype=np.intp)
        return Graph(self.adj[np.ix_(idx, idx)])

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj.shape == other.adj.shape and bool(np.array_equal(self.adj, other.adj))

    def __hash__(self):
        return hash((self.n, np.packbits(self.adj).tobytes()))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.num_edges()})"


@dataclass(frozen=True)
class Permutation:
    """Bijection on ``{0, ..., n-1}`` given by its image list."""

    image: tuple[int, ...]

    def __post_init__(self):
        img = tuple(int(x) for x in self.image)
        if sorted(img) != list(range(len(img))):
            raise InvalidArgument(f"not a permutation: {img}")
        object.__setattr__(self, "image", img)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Permutation":
        """Involution swapping each given pair, fixing everything else."""
        img = list(range(n))
        for u, v in pairs:
            if img[u] != u or img[v] != v:
                raise InvalidArgument(f"vertex reused in pairs: ({u}, {v})")
            img[u], img[v] = v, u
        return cls(tuple(img))

    @property
    def n(self) -> int:
        return len(self.image)

    def __call__(self, v: int) -> int:
        return self.image[v]

    def __len__(self):
        return len(self.image)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.image))

    def is_involution(self) -> bool:
        return all(self.image[self.image[v]] == v for v in range(self.n))

    def fixed_points(self) -> list[int]:
        return [v for v, w in enumerate(self.image) if v == w]

    def moved_pairs(self) -> list[tuple[int, int]]:
        """Two-cycles ``(v, w)`` with ``v < w``; only meaningful for involutions."""
        return [(v, w) for v, w in enumerate(self.image) if v < w and self.image[w] == v]

    def compose(self, other: "Permutation") -> "Permutation":
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(tuple(self.image[other.image[v]] for v in range(self.n)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for v, w in enumerate(self.image):
            inv[w] = v
        return Permutation(tuple(inv))

    def matrix(self) -> np.ndarray:
        """Permutation matrix with ``P[v, image[v]] = 1``."""
        p = np.zeros((self.n, self.n), dtype=np.int64)
        p[np.arange(self.n), self.image] = 1
        return p

    def is_automorphism_of(self, g: Graph) -> bool:
        if g.n != self.n:
            return False
        img = np.asarray(self.image)
        return bool(np.array_equal(g.adj[np.ix_(img, img)], g.adj))


@dataclass(frozen=True)
class EmbeddedSubgraph:
    """A parent graph with an ordered vertex subset ``H`` placed first in block order."""

    parent: Graph
    subset: tuple[int, ...]
    order: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        sub = tuple(int(v) for v in self.subset)
        n = self.parent.n
        if not sub:
            raise InvalidSubset("subset is empty")
        if len(set(sub)) != len(sub):
            raise InvalidSubset(f"duplicate vertex in subset {sub}")
        bad = [v for v in sub if not 0 <= v < n]
        if bad:
            raise InvalidSubset(f"vertices out of range 0..{n - 1}: {bad}")
        chosen = set(sub)
        object.__setattr__(self, "subset", sub)
        object.__setattr__(self, "order", sub + tuple(v for v in range(n) if v not in chosen))

    @property
    def t(self) -> int:
        return len(self.subset)

    @property
    def rest(self) -> tuple[int, ...]:
        return self.order[self.t:]

    def induced(self) -> Graph:
        return self.parent.induced(self.subset)

    def block_matrix(self) -> np.ndarray:
        """Parent adjacency reordered so the subset comes first."""
        idx = np.asarray(self.order)
        return self.parent.matrix()[np.ix_(idx, idx)]

    def lift(self, p11: Permutation) -> Permutation:
        """Extend a permutation of the subset (indexed 0..t-1) to the parent, identity elsewhere."""
        if p11.n != self.t:
            raise InvalidArgument(f"subset permutation has size {p11.n}, expected {self.t}")
        img = list(range(self.parent.n))
        for i, v in enumerate(self.subset):
            img[v] = self.subset[p11(i)]
        return Permutation(tuple(img))


def induced_embedding(g: Graph, subset: Sequence[int]) -> EmbeddedSubgraph:
    return EmbeddedSubgraph(g, tuple(subset))


def complement(g: Graph) -> Graph:
    a = ~g.adj
    np.fill_diagonal(a, False)
    return Graph(a)


def lattice_graph(m: int) -> Graph:
    """The m×m rook graph ``L2(m)``, line graph of ``K_{m,m}``."""
    if m < 2:
        raise InvalidParameter(f"lattice_graph needs m >= 2, got {m}")
    rows = np.repeat(np.arange(m), m)
    cols = np.tile(np.arange(m), m)
    same_row = rows[:, None] == rows[None, :]
    same_col = cols[:, None] == cols[None, :]
    return Graph(same_row ^ same_col)


def triangular_subsets(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, n + 1), 2))


def triangular_graph(n: int) -> Graph:
    """``T(n)``: 2-subsets of ``{1..n}``, adjacent when they meet."""
    if n < 4:
        raise InvalidParameter(f"triangular_graph needs n >= 4, got {n}")
    verts = triangular_subsets(n)
    sets = [set(p) for p in verts]
    a = np.array([[i != j and bool(sets[i] & sets[j]) for j in range(len(verts))]
                  for i in range(len(verts))])
    return Graph(a)


def clebsch_16_10() -> Graph:
    """Complement of the folded 5-cube, an SRG (16, 10, 6, 6)."""
    gens = {1, 2, 4, 8, 15}
    a = np.array([[(u ^ v) in gens for v in range(16)] for u in range(16)])
    return complement(Graph(a))


def rook_2xm(m: int) -> Graph:
    """Two-row rook graph ``K2 × Km`` (Cartesian product)."""
    if m < 2:
        raise InvalidParameter(f"rook_2xm needs m >= 2, got {m}")
    rows = np.repeat(np.arange(2), m)
    cols = np.tile(np.arange(m), 2)
    return Graph((rows[:, None] == rows[None, :]) ^ (cols[:, None] == cols[None, :]))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidParameter(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    a = np.ones((n, n), dtype=bool)
    np.fill_diagonal(a, False)
    return Graph(a)


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))
