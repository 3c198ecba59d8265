"""Canonical labeling by individualization-refinement, and isomorphism testing.

The search tree is the usual one: refine the vertex colouring to an equitable
partition, individualize each vertex of the first largest non-singleton cell,
recurse.  Leaves are discrete partitions; the canonical form is the leaf whose
relabeled adjacency matrix has the least upper-triangle encoding.

Two pruning rules keep the tree small on symmetric graphs:

* a leaf whose encoding equals the first or the best leaf yields an
  automorphism, and the search jumps back to the deepest node both paths share;
* at each node, vertices in the same orbit of the discovered automorphisms that
  fix the current path pointwise are explored once.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import UnsupportedSize
from .graph import Graph, Permutation
from .graph6 import to_graph6
from .matrix import mat_square

MAX_N = 100


@dataclass(frozen=True)
class CanonicalForm:
    graph6: bytes
    relabeling: Permutation


def _compact(keys: np.ndarray) -> np.ndarray:
    _, inv = np.unique(keys, axis=0, return_inverse=True)
    return inv.reshape(-1)


def refine(adj: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Coarsest equitable refinement that keeps the order of existing cells."""
    ncol = int(colors.max()) + 1
    while True:
        onehot = np.zeros((len(colors), ncol), dtype=np.int64)
        onehot[np.arange(len(colors)), colors] = 1
        counts = adj @ onehot
        new = _compact(np.column_stack([colors, counts]))
        nnew = int(new.max()) + 1
        if nnew == ncol:
            return new
        colors, ncol = new, nnew


def individualize(colors: np.ndarray, v: int) -> np.ndarray:
    c = 2 * colors + 1
    c[v] -= 1
    return _compact(c[:, None])


def _target_cell(colors: np.ndarray) -> Optional[np.ndarray]:
    sizes = np.bincount(colors)
    if sizes.max() == 1:
        return None
    cell = int(np.flatnonzero(sizes == sizes.max())[0])
    return np.flatnonzero(colors == cell)


def _encode(adj: np.ndarray, lab: np.ndarray) -> bytes:
    order = np.argsort(lab)
    relabeled = adj[np.ix_(order, order)]
    return np.packbits(relabeled[np.triu_indices(len(lab), 1)].astype(bool)).tobytes()


class _Search:
    def __init__(self, adj: np.ndarray):
        self.adj = adj
        self.n = adj.shape[0]
        self.first = None
        self.best = None
        self.autos: list[np.ndarray] = []

    def _orbit_roots(self, path: list[int]) -> np.ndarray:
        parent = np.arange(self.n)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.autos:
            if all(g[v] == v for v in path):
                for x in range(self.n):
                    a, b = find(x), find(int(g[x]))
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return np.array([find(x) for x in range(self.n)])

    def _leaf(self, colors: np.ndarray, path: list[int]) -> Optional[int]:
        enc = _encode(self.adj, colors)
        if self.first is None:
            self.first = self.best = (enc, colors, path)
            return None
        for ref_enc, ref_lab, ref_path in (self.first, self.best):
            if enc == ref_enc:
                inv = np.empty(self.n, dtype=np.intp)
                inv[colors] = np.arange(self.n)
                gamma = inv[ref_lab]
                if not np.array_equal(gamma, np.arange(self.n)):
                    self.autos.append(gamma)
                common = 0
                while common < min(len(path), len(ref_path)) and path[common] == ref_path[common]:
                    common += 1
                return common
        if enc < self.best[0]:
            self.best = (enc, colors, path)
        return None

    def run(self, colors: np.ndarray, path: list[int]) -> Optional[int]:
        cell = _target_cell(colors)
        if cell is None:
            return self._leaf(colors, path)
        depth = len(path)
        explored: list[int] = []
        for v in cell.tolist():
            if explored:
                roots = self._orbit_roots(path)
                if any(roots[v] == roots[w] for w in explored):
                    continue
            explored.append(v)
            back = self.run(refine(self.adj, individualize(colors, v)), path + [v])
            if back is not None and back < depth:
                return back
        return None


def canonical_form(g: Graph) -> CanonicalForm:
    if g.n > MAX_N:
        raise UnsupportedSize(f"canonical labeling supports n <= {MAX_N}, got {g.n}")
    adj = g.matrix()
    search = _Search(adj)
    search.run(refine(adj, np.zeros(g.n, dtype=np.intp)), [])
    lab = search.best[1]
    perm = Permutation(tuple(int(x) for x in lab))
    return CanonicalForm(to_graph6(g.relabel(perm)), perm)


def automorphisms_found(g: Graph) -> list[Permutation]:
    """Automorphisms discovered while canonically labeling ``g`` (generators, not the whole group)."""
    search = _Search(g.matrix())
    search.run(refine(search.adj, np.zeros(g.n, dtype=np.intp)), [])
    return [Permutation(tuple(int(x) for x in a)) for a in search.autos]


def _cheap_invariants(g: Graph):
    sq = mat_square(g.matrix())
    return (g.n, tuple(sorted(g.degrees().tolist())), tuple(np.sort(sq, axis=None).tolist()))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    from .spectra import spectrum

    for g in (g1, g2):
        if g.n > MAX_N:
            raise UnsupportedSize(f"isomorphism testing supports n <= {MAX_N}, got {g.n}")
    if _cheap_invariants(g1) != _cheap_invariants(g2):
        return False
    if not spectrum(g1).same_as(spectrum(g2)):
        return False
    return canonical_form(g1).graph6 == canonical_form(g2).graph6
