import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import graphs
from dezaswitch.errors import Graph6ParseError, InvalidArgument, InvalidParameter, InvalidSubset
from dezaswitch.graph import (
    Graph,
    Permutation,
    clebsch_16_10,
    complement,
    complete_graph,
    induced_embedding,
    lattice_graph,
    rook_2xm,
    triangular_graph,
)
from dezaswitch.graph6 import from_graph6, read_graph6_lines, to_graph6, write_graph6_lines
from dezaswitch.iso import is_isomorphic
from dezaswitch.matrix import block_split
from dezaswitch.recipes import neighbourhood_rook_subset, sublattice_subset


def census(g):
    """(regular degree or None, set of common-neighbour counts on edges, on non-edges) by double loop."""
    n = g.n
    nb = [set(g.neighbors(v)) for v in range(n)]
    degs = {len(s) for s in nb}
    lam = {len(nb[u] & nb[v]) for u, v in itertools.combinations(range(n), 2) if v in nb[u]}
    mu = {len(nb[u] & nb[v]) for u, v in itertools.combinations(range(n), 2) if v not in nb[u]}
    return (degs.pop() if len(degs) == 1 else None), lam, mu


def test_graph_rejects_loops_and_asymmetry():
    with pytest.raises(InvalidArgument):
        Graph(np.array([[1, 0], [0, 0]]))
    with pytest.raises(InvalidArgument):
        Graph(np.array([[0, 1], [0, 0]]))


def test_graph_is_immutable():
    g = lattice_graph(3)
    with pytest.raises(ValueError):
        g.adj[0, 1] = False


def test_lattice_smallest_is_c4(c4):
    g = lattice_graph(2)
    assert g.n == 4 and set(g.degrees()) == {2}
    assert is_isomorphic(g, c4)


@pytest.mark.parametrize("m, params", [(3, (4, {1}, {2})), (6, (10, {4}, {2}))])
def test_lattice_srg_parameters(m, params):
    assert census(lattice_graph(m)) == params


@pytest.mark.parametrize("m", range(3, 8))
def test_lattice_profile(m):
    assert census(lattice_graph(m)) == (2 * (m - 1), {m - 2}, {2})


def test_lattice_vertex_order():
    g = lattice_graph(4)
    # (1, 2) is index 6; neighbours share exactly one coordinate
    assert g.neighbors(6) == [2, 4, 5, 7, 10, 14]


def test_lattice_rejects_small():
    with pytest.raises(InvalidParameter):
        lattice_graph(1)


@pytest.mark.parametrize("n, params", [(4, (4, {2}, {4})), (7, (10, {5}, {4})), (8, (12, {6}, {4}))])
def test_triangular_parameters(n, params):
    g = triangular_graph(n)
    assert g.n == n * (n - 1) // 2
    assert census(g) == params


@pytest.mark.parametrize("n", range(5, 10))
def test_triangular_profile(n):
    assert census(triangular_graph(n)) == (2 * (n - 2), {n - 2}, {4})


def test_triangular_rejects_small():
    with pytest.raises(InvalidParameter):
        triangular_graph(3)


def test_clebsch():
    g = clebsch_16_10()
    assert census(g) == (10, {6}, {6})
    assert census(complement(g)) == (5, {0}, {2})


def test_rook_2xm():
    assert set(rook_2xm(2).degrees()) == {2}
    g = rook_2xm(6)
    assert g.n == 12 and set(g.degrees()) == {6}
    lat = lattice_graph(6)
    assert lat.induced(range(12)) == g
    with pytest.raises(InvalidParameter):
        rook_2xm(1)


def test_complement_examples(c4):
    g = lattice_graph(3)
    assert complement(complement(g)) == g
    assert complement(c4) == Graph.from_edges(4, [(0, 2), (1, 3)])
    assert set(complement(triangular_graph(7)).degrees()) == {10}


def test_embedding_whole_graph_has_empty_blocks():
    g = lattice_graph(3)
    e = induced_embedding(g, range(9))
    bs = block_split(e.block_matrix(), e.t)
    assert bs.m12.size == bs.m21.size == bs.m22.size == 0


def test_embedding_sublattice():
    g = lattice_graph(5)
    e = induced_embedding(g, sublattice_subset(5, 3))
    assert e.induced() == lattice_graph(3)
    assert e.order[:9] == e.subset and list(e.rest) == sorted(e.rest)


def test_embedding_neighbourhood_in_t8_is_rook():
    g = triangular_graph(8)
    e = induced_embedding(g, neighbourhood_rook_subset(8))
    assert e.induced() == rook_2xm(6)


@pytest.mark.parametrize("subset", [[0, 0, 1], [0, 99], []])
def test_embedding_rejects_bad_subsets(subset):
    with pytest.raises(InvalidSubset):
        induced_embedding(lattice_graph(3), subset)


@given(graphs(max_n=10), st.data())
def test_embedding_block_is_induced(g, data):
    subset = data.draw(st.lists(st.integers(0, g.n - 1), min_size=1, max_size=g.n, unique=True))
    e = induced_embedding(g, subset)
    bs = block_split(e.block_matrix(), e.t)
    assert np.array_equal(bs.m11, e.induced().matrix())


def test_permutation_basics():
    p = Permutation.from_pairs(5, [(0, 3), (1, 4)])
    assert p.is_involution() and not p.is_identity()
    assert p.fixed_points() == [2]
    assert p.moved_pairs() == [(0, 3), (1, 4)]
    assert p.compose(p).is_identity()
    with pytest.raises(InvalidArgument):
        Permutation((0, 0, 1))


def test_graph6_known_strings():
    assert to_graph6(complete_graph(3)) == b"Bw"
    assert to_graph6(Graph(np.zeros((1, 1), dtype=bool))) == b"@"
    assert from_graph6("Bw") == complete_graph(3)


def test_graph6_roundtrip_lattice():
    g = lattice_graph(4)
    assert from_graph6(to_graph6(g)) == g


def test_graph6_long_prefix_roundtrip():
    g = lattice_graph(8)  # 64 vertices needs the four-byte size prefix
    s = to_graph6(g)
    assert s[:1] == b"~"
    assert from_graph6(s) == g


def test_graph6_matches_networkx_encoding():
    nx = pytest.importorskip("networkx")
    for g in (triangular_graph(9), lattice_graph(8), clebsch_16_10()):
        ref = nx.to_graph6_bytes(nx.from_numpy_array(g.matrix()), header=False).strip()
        assert to_graph6(g) == ref


@given(graphs(max_n=30))
def test_graph6_roundtrip_property(g):
    assert from_graph6(to_graph6(g)) == g


@pytest.mark.parametrize("bad, offset", [(b"B", 1), (b"Bw!", 2), (b"", 0), (b"Bx", 1)])
def test_graph6_parse_errors(bad, offset):
    with pytest.raises(Graph6ParseError) as exc:
        from_graph6(bad)
    assert exc.value.offset == offset


def test_graph6_multi_line():
    gs = [lattice_graph(3), triangular_graph(5), complete_graph(3)]
    assert list(read_graph6_lines(write_graph6_lines(gs))) == gs
