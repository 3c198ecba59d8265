"""Named embeddings and symmetries used by the worked constructions.

Each helper returns vertex subsets or permutations against the fixed vertex
orderings of :mod:`dezaswitch.graph`.
"""

from __future__ import annotations

from .errors import InvalidParameter
from .graph import EmbeddedSubgraph, Graph, Permutation, triangular_graph, triangular_subsets
from .switching import rook_central, rook_rows_subset  # noqa: F401  (re-exported)


def lattice_transpose(m: int) -> Permutation:
    """``(i, j) -> (j, i)`` on ``L2(m)``."""
    return Permutation(tuple(j * m + i for i in range(m) for j in range(m)))


def lattice_antitranspose(m: int) -> Permutation:
    """``(i, j) -> (m-1-j, m-1-i)`` on ``L2(m)``."""
    return Permutation(tuple((m - 1 - j) * m + (m - 1 - i) for i in range(m) for j in range(m)))


def lattice_central(m: int) -> Permutation:
    """``(i, j) -> (m-1-i, m-1-j)``; fixed-point-free for even ``m``."""
    return Permutation(tuple((m - 1 - i) * m + (m - 1 - j) for i in range(m) for j in range(m)))


def lattice_row_swap(m: int, r1: int = 0, r2: int = 1) -> Permutation:
    img = []
    for i in range(m):
        ii = r2 if i == r1 else r1 if i == r2 else i
        img.extend(ii * m + j for j in range(m))
    return Permutation(tuple(img))


def sublattice_subset(m: int, size: int) -> tuple[int, ...]:
    """Rows and columns ``0..size-1`` of ``L2(m)`` in row-major order (an induced ``L2(size)``)."""
    if not 2 <= size <= m:
        raise InvalidParameter(f"sublattice size {size} not in 2..{m}")
    return tuple(i * m + j for i in range(size) for j in range(size))


def _index(n: int) -> dict[tuple[int, int], int]:
    return {p: i for i, p in enumerate(triangular_subsets(n))}


def lattice_in_triangular(n: int, m: int) -> tuple[int, ...]:
    """Induced ``L2(m)`` in ``T(n)``: vertex ``(i, j)`` is ``{i+1, m+j+1}``, row-major."""
    if 2 * m > n:
        raise InvalidParameter(f"L2({m}) needs 2m <= n, got n={n}")
    idx = _index(n)
    return tuple(idx[(i + 1, m + j + 1)] for i in range(m) for j in range(m))


def ground_permutation(n: int, ground: dict[int, int]) -> Permutation:
    """Lift a permutation of ``{1..n}`` (identity off ``ground``) to the vertices of ``T(n)``."""
    idx = _index(n)
    img = []
    for a, b in triangular_subsets(n):
        x, y = ground.get(a, a), ground.get(b, b)
        img.append(idx[(min(x, y), max(x, y))])
    return Permutation(tuple(img))


def triangular_reflection(n: int) -> Permutation:
    """``{i, j} -> {n+1-i, n+1-j}`` on ``T(n)``."""
    return ground_permutation(n, {i: n + 1 - i for i in range(1, n + 1)})


def subtriangular_subset(n: int) -> tuple[int, ...]:
    """The induced ``T(n-2)`` on 2-subsets of ``{1..n-2}``, in lexicographic order."""
    idx = _index(n)
    return tuple(idx[p] for p in triangular_subsets(n - 2))


def subtriangular_reflection(n: int) -> Permutation:
    """``{i, j} -> {n-1-i, n-1-j}`` on ``T(n-2)`` (indexed like :func:`subtriangular_subset`)."""
    return triangular_reflection(n - 2)


def neighbourhood_rook_subset(n: int, w: tuple[int, int] | None = None) -> tuple[int, ...]:
    """Neighbourhood of vertex ``w = {a, b}`` of ``T(n)`` as a 2×(n-2) rook graph.

    Row 0 holds ``{a, x}``, row 1 holds ``{b, x}``, columns run over the other
    ground elements ``x`` in increasing order.
    """
    a, b = w if w is not None else (n - 1, n)
    idx = _index(n)
    others = [x for x in range(1, n + 1) if x not in (a, b)]
    return tuple(idx[(min(r, x), max(r, x))] for r in (a, b) for x in others)


def triangular_vertex(n: int, pair: tuple[int, int]) -> int:
    return _index(n)[tuple(sorted(pair))]


def embed(g: Graph, subset) -> EmbeddedSubgraph:
    return EmbeddedSubgraph(g, tuple(subset))


def t7_with_l3() -> tuple[EmbeddedSubgraph, Permutation]:
    """``T(7)`` with an induced ``L2(3)`` and its transpose symmetry."""
    return embed(triangular_graph(7), lattice_in_triangular(7, 3)), lattice_transpose(3)


def t8_with_l4(symmetry: str) -> tuple[EmbeddedSubgraph, Permutation]:
    """``T(8)`` with an induced ``L2(4)`` and either its ``transpose`` or ``central`` symmetry."""
    perms = {"transpose": lattice_transpose(4), "central": lattice_central(4)}
    if symmetry not in perms:
        raise InvalidParameter(f"unknown symmetry {symmetry!r}")
    return embed(triangular_graph(8), lattice_in_triangular(8, 4)), perms[symmetry]
