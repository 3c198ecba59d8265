import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dezaswitch.classify import children, diameter, is_strictly_deza, recognize_deza, recognize_srg
from dezaswitch.errors import ChainBroken, InvalidArgument, PreconditionViolation
from dezaswitch.graph import (
    EmbeddedSubgraph,
    Permutation,
    clebsch_16_10,
    complement,
    complete_graph,
    lattice_graph,
    rook_2xm,
    triangular_graph,
)
from dezaswitch.iso import is_isomorphic
from dezaswitch.matrix import conjugate, mat_square
from dezaswitch.recipes import (
    lattice_antitranspose,
    lattice_central,
    lattice_row_swap,
    lattice_transpose,
    neighbourhood_rook_subset,
    rook_central,
    rook_rows_subset,
    subtriangular_reflection,
    subtriangular_subset,
    t7_with_l3,
    t8_with_l4,
    triangular_reflection,
)
from dezaswitch.scenarios import _random_triple
from dezaswitch.spectra import spectrum
from dezaswitch.switching import (
    add_perm_construction,
    chain_gdss2,
    check_lemma_mm,
    dual_seidel_switch,
    find_seidel_automorphisms,
    gdss1_condition,
    gdss1_matrix_condition,
    gdss2_condition,
    gdss2_matrix_condition,
    gdss_switch,
    is_seidel_automorphism,
    perm_shift_construction,
    pmp_conjugate_check,
    witness_for,
)


def rook_band(m):
    return EmbeddedSubgraph(lattice_graph(m), rook_rows_subset(m, 0)), rook_central(m)


# Seidel automorphisms

def test_transpose_is_seidel():
    w = is_seidel_automorphism(lattice_graph(3), lattice_transpose(3))
    assert w is not None and w.fixed_points == (0, 4, 8)
    g = lattice_graph(3)
    assert all(not g.has_edge(u, v) for u, v in w.moved_pairs)


def test_central_is_fixed_point_free():
    w = is_seidel_automorphism(lattice_graph(4), lattice_central(4), require_fpf=True)
    assert w is not None and w.fixed_point_free


def test_row_swap_rejected():
    assert is_seidel_automorphism(lattice_graph(3), lattice_row_swap(3)) is None


def test_identity_and_non_automorphism_rejected():
    g = lattice_graph(3)
    assert is_seidel_automorphism(g, Permutation.identity(9)) is None
    assert is_seidel_automorphism(g, Permutation.from_pairs(9, [(0, 8)])) is None
    assert is_seidel_automorphism(g, lattice_transpose(3), require_fpf=True) is None
    with pytest.raises(PreconditionViolation):
        witness_for(g, lattice_row_swap(3))


def test_search_includes_named_symmetries():
    found = [w.perm for w in find_seidel_automorphisms(lattice_graph(3))]
    assert lattice_transpose(3) in found and lattice_antitranspose(3) in found
    fpf = [w.perm for w in find_seidel_automorphisms(lattice_graph(4), require_fpf=True)]
    assert lattice_central(4) in fpf


def test_search_is_sound_and_ordered():
    g = lattice_graph(4)
    found = find_seidel_automorphisms(g)
    images = [w.perm.image for w in found]
    assert images == sorted(images) and len(set(images)) == len(images)
    assert all(is_seidel_automorphism(g, w.perm) is not None for w in found)
    assert len(find_seidel_automorphisms(g, limit=2)) == 2


def test_search_complete_graph_empty():
    assert find_seidel_automorphisms(complete_graph(4)) == []


def test_search_against_brute_force():
    import itertools
    g = rook_2xm(3)
    want = set()
    for perm in itertools.permutations(range(g.n)):
        p = Permutation(perm)
        if is_seidel_automorphism(g, p) is not None:
            want.add(perm)
    assert {w.perm.image for w in find_seidel_automorphisms(g)} == want


# dual switching

def test_dual_switch_rejects_lambda_equals_mu():
    g = lattice_graph(4)
    with pytest.raises(PreconditionViolation, match="lambda = mu"):
        dual_seidel_switch(g, witness_for(g, lattice_central(4)))


def test_dual_switch_t8_reflection():
    g = triangular_graph(8)
    out, cert = dual_seidel_switch(g, witness_for(g, triangular_reflection(8)))
    assert recognize_deza(out).as_tuple() == (28, 12, 6, 4)
    assert diameter(out) == 2 and is_strictly_deza(out)
    assert cert.ok and cert.strict and cert.squares["PM^2 == M^2"]
    assert cert.replay()


def test_subtriangular_reflection_is_seidel():
    # i -> n-1-i on the ground set {1..n-2}
    e = EmbeddedSubgraph(triangular_graph(8), subtriangular_subset(8))
    assert e.induced() == triangular_graph(6)
    w = is_seidel_automorphism(e.induced(), subtriangular_reflection(8))
    # fixed-point-free on the ground set, but {i, 7-i} is fixed as a 2-subset
    assert w is not None and len(w.fixed_points) == 3


# block conditions

def test_lemma_examples():
    e, p11 = t7_with_l3()
    assert check_lemma_mm(e, p11)
    assert check_lemma_mm(*rook_band(6))
    whole = EmbeddedSubgraph(lattice_graph(3), tuple(range(9)))
    assert check_lemma_mm(whole, lattice_transpose(3))


def test_lemma_requires_automorphism():
    e, _ = t7_with_l3()
    with pytest.raises(PreconditionViolation):
        check_lemma_mm(e, Permutation.from_pairs(9, [(0, 1)]))


def test_lemma_literal_form_needs_an_involution():
    # an order-3 automorphism of an induced L2(3): rotate the rows
    from dezaswitch.matrix import block_split, mat_mul
    e = EmbeddedSubgraph(lattice_graph(4), (0, 1, 2, 4, 5, 6, 8, 9, 10))
    rot = Permutation(tuple(((i + 1) % 3) * 3 + j for i in range(3) for j in range(3)))
    assert rot.is_automorphism_of(e.induced()) and not rot.is_involution()
    assert not check_lemma_mm(e, rot)
    bs = block_split(e.block_matrix(), e.t)
    prod = mat_mul(bs.m12, bs.m21)
    pm = rot.matrix()
    assert np.array_equal(pm @ prod @ pm.T, prod)


def test_condition_examples():
    e, p11 = t7_with_l3()
    assert gdss1_condition(e, p11)
    assert not gdss2_condition(e, p11)
    assert gdss2_condition(*rook_band(6))
    whole = EmbeddedSubgraph(triangular_graph(8), tuple(range(28)))
    assert gdss1_condition(whole, triangular_reflection(8))


def test_t8_both_symmetries_satisfy_first_condition():
    for sym in ("transpose", "central"):
        assert gdss1_condition(*t8_with_l4(sym))


def test_conditions_need_subgraph_seidel():
    e, _ = t7_with_l3()
    with pytest.raises(PreconditionViolation):
        gdss1_condition(e, Permutation.identity(9))


def test_random_triples():
    rng = random.Random(5)
    seidel = 0
    for _ in range(60):
        label, e, p11 = _random_triple(rng)
        assert check_lemma_mm(e, p11), label
        if is_seidel_automorphism(e.induced(), p11) is not None:
            seidel += 1
            c1, c2 = gdss1_condition(e, p11), gdss2_condition(e, p11)
            assert c1 == gdss1_matrix_condition(e, p11)
            assert c2 == gdss2_matrix_condition(e, p11)
            if c1 and c2 and e.t < e.parent.n and not _swap_fixes_outer(e, p11):
                s = recognize_srg(e.parent)
                assert s.lam == s.mu, (label, e.subset)
    assert seidel > 0


def _swap_fixes_outer(e, p11):
    from dezaswitch.matrix import apply_perm_left, block_split
    m12 = block_split(e.block_matrix(), e.t).m12
    return np.array_equal(apply_perm_left(p11, m12), m12)


def test_both_conditions_with_unequal_lambda_mu():
    # a Seidel automorphism of G fixing v, restricted to H = G - v, leaves M12 alone,
    # so both block conditions hold although lambda = 1 and mu = 2
    g = lattice_graph(3)
    e = EmbeddedSubgraph(g, tuple(range(1, 9)))
    t = lattice_transpose(3)
    p11 = Permutation(tuple(t(v) - 1 for v in range(1, 9)))
    assert _swap_fixes_outer(e, p11)
    assert gdss1_condition(e, p11) and gdss2_condition(e, p11)
    s = recognize_srg(g)
    assert (s.lam, s.mu) == (1, 2)
    n1, _ = gdss_switch(e, p11, "N1", "T6")
    pm, _ = dual_seidel_switch(g, witness_for(g, t))
    assert n1 == pm


# generalised switching

def test_t7_parent_first_switching():
    e, p11 = t7_with_l3()
    n1, c1 = gdss_switch(e, p11, "N1", "T6")
    n2, c2 = gdss_switch(e, p11, "N2", "T6")
    for g, c in ((n1, c1), (n2, c2)):
        assert recognize_deza(g).as_tuple() == (21, 10, 5, 4)
        assert c.ok and c.strict and c.children == ((21, 10, 3, 6), (21, 10, 5, 4))
        assert c.replay()
    assert c1.squares == {"N2^2 == M^2": True, "N1^2 == (PMP)^2": True}


def test_t7_variants_are_conjugate():
    # N2 = P N1 P with P = diag(P11, I), because P11 commutes with M11
    e, p11 = t7_with_l3()
    n1, _ = gdss_switch(e, p11, "N1", "T6")
    n2, _ = gdss_switch(e, p11, "N2", "T6")
    assert n1 != n2
    assert np.array_equal(conjugate(e.lift(p11), n1.matrix()), n2.matrix())
    assert is_isomorphic(n1, n2)


def test_t8_switching_eigenvalues():
    for sym in ("transpose", "central"):
        e, p11 = t8_with_l4(sym)
        for v in ("N1", "N2"):
            g, cert = gdss_switch(e, p11, v, "T6")
            assert recognize_deza(g).as_tuple() == (28, 12, 6, 4) and cert.ok
            assert {x for x, _ in spectrum(g).pairs} <= {12, 4, -4, 2, -2}


def test_second_switching_on_neighbourhood():
    g = triangular_graph(8)
    e = EmbeddedSubgraph(g, neighbourhood_rook_subset(8))
    out, cert = gdss_switch(e, rook_central(6), "N1", "T7")
    assert cert.ok and recognize_deza(out).as_tuple() == (28, 12, 6, 4)


def test_whole_graph_collapse():
    g = triangular_graph(8)
    e = EmbeddedSubgraph(g, tuple(range(g.n)))
    refl = triangular_reflection(8)
    n1, _ = gdss_switch(e, refl, "N1", "T6")
    n2, _ = gdss_switch(e, refl, "N2", "T6")
    pm, _ = dual_seidel_switch(g, witness_for(g, refl))
    assert n1 == n2 == pm


def test_switch_errors():
    e, p11 = t7_with_l3()
    with pytest.raises(InvalidArgument):
        gdss_switch(e, p11, "N3", "T6")
    with pytest.raises(InvalidArgument):
        gdss_switch(e, p11, "N1", "T5")
    with pytest.raises(PreconditionViolation):
        gdss_switch(e, p11, "N1", "T7")
    bad = EmbeddedSubgraph(rook_2xm(3).induced(range(6)), tuple(range(3)))
    with pytest.raises(PreconditionViolation):
        gdss_switch(bad, Permutation.from_pairs(3, [(0, 2)]), "N1", "T6")


def test_t7_accepts_deza_parent_with_srg_children():
    steps = chain_gdss2(lattice_graph(6), 6)
    parent = steps[0][0]
    assert recognize_srg(parent) is None
    e = EmbeddedSubgraph(parent, rook_rows_subset(6, 2))
    _, cert = gdss_switch(e, rook_central(6), "N1", "T7")
    assert cert.ok and cert.strict_expected is None


def test_pmp_conjugate():
    e, p11 = t7_with_l3()
    out, ok = pmp_conjugate_check(e, p11)
    assert ok and recognize_srg(out).as_tuple() == (21, 10, 5, 4)
    same, ok = pmp_conjugate_check(e, Permutation.identity(9))
    assert ok and same == e.parent
    out, ok = pmp_conjugate_check(*rook_band(6))
    assert ok and recognize_srg(out).as_tuple() == (36, 10, 4, 2)
    with pytest.raises(PreconditionViolation):
        pmp_conjugate_check(e, lattice_row_swap(3).compose(Permutation.from_pairs(9, [(0, 4)])))


# chain

def test_chain_m6():
    steps = chain_gdss2(lattice_graph(6), 6)
    assert len(steps) == 3
    lat = lattice_graph(6)
    for g, cert in steps:
        assert recognize_deza(g).as_tuple() == (36, 10, 4, 2) and cert.ok
        assert {x for x, _ in spectrum(g).pairs} <= {10, 4, -4, 2, -2}
        c = children(g)
        assert is_isomorphic(c.child_b, lat) and is_isomorphic(c.child_a, complement(lat))
    gs = [g for g, _ in steps]
    assert not any(is_isomorphic(gs[i], gs[j]) for i in range(3) for j in range(i + 1, 3))


def test_chain_errors():
    with pytest.raises(InvalidArgument):
        chain_gdss2(lattice_graph(5), 5)
    with pytest.raises(InvalidArgument):
        chain_gdss2(lattice_graph(6), 8)
    assert ChainBroken(1, "x").step == 1


# constructions with a fixed-point-free witness

def test_add_perm_lattice():
    g = lattice_graph(4)
    out, cert = add_perm_construction(g, witness_for(g, lattice_central(4), True))
    assert recognize_deza(out).as_tuple() == (16, 7, 4, 2)
    assert cert.ok and cert.checks["child_b == PM"] and cert.checks["child_a == J-I-PM"]
    assert recognize_srg(children(out).child_b).as_tuple() == (16, 6, 2, 2)
    assert cert.replay()


def test_add_perm_clebsch():
    g = clebsch_16_10()
    w = find_seidel_automorphisms(g, require_fpf=True, limit=1)[0]
    out, cert = add_perm_construction(g, w)
    assert recognize_deza(out).as_tuple() == (16, 11, 8, 6) and cert.ok


def test_add_perm_preconditions():
    g = triangular_graph(8)
    with pytest.raises(PreconditionViolation):
        add_perm_construction(g, witness_for(g, triangular_reflection(8), True))
    lat = lattice_graph(4)
    with pytest.raises(PreconditionViolation):
        add_perm_construction(lat, witness_for(lat, lattice_transpose(4)))


@pytest.mark.parametrize("n", [4, 6])
def test_perm_shift(n):
    g = lattice_graph(n)
    out, cert = perm_shift_construction(g, witness_for(g, lattice_central(n), True))
    assert recognize_deza(out).as_tuple() == (n * n, 2 * n - 1, n, 2)
    c = children(out)
    assert is_isomorphic(c.child_b, g) and is_isomorphic(c.child_a, complement(g))
    assert cert.ok and cert.replay()


def test_perm_shift_rejects_fixed_points():
    g = lattice_graph(4)
    with pytest.raises(PreconditionViolation):
        perm_shift_construction(g, witness_for(g, lattice_transpose(4)))


# properties

@settings(max_examples=25, deadline=None)
@given(st.sampled_from([lattice_graph(3), lattice_graph(5), triangular_graph(8)]), st.data())
def test_dual_switch_square_property(g, data):
    ws = find_seidel_automorphisms(g, limit=40)
    w = data.draw(st.sampled_from(ws))
    out, cert = dual_seidel_switch(g, w)
    assert np.array_equal(mat_square(out.matrix()), mat_square(g.matrix()))
    s = recognize_srg(g)
    assert cert.strict == (s.lam != 0 and s.mu != 0)


def test_square_identities_on_random_switchings():
    rng = random.Random(9)
    done = 0
    for _ in range(200):
        _, e, p11 = _random_triple(rng)
        if e.t == e.parent.n or is_seidel_automorphism(e.induced(), p11) is None:
            continue
        for mode, cond in (("T6", gdss1_condition), ("T7", gdss2_condition)):
            if cond(e, p11):
                for v in ("N1", "N2"):
                    _, cert = gdss_switch(e, p11, v, mode)
                    assert all(cert.squares.values())
                    done += 1
    assert done > 0
