"""Survey generalised switchings of T(7) over induced L2(3) copies.

Checks, over every induced L2(3) and each of its Seidel automorphisms, which
block conditions hold and which spectra the two variants produce.  Then looks
for the spectrum {10, 3^2, 2^6, -2^8, -3^4} by switching a second time.
"""

import itertools
from collections import Counter

import numpy as np

from dezaswitch.classify import recognize_deza
from dezaswitch.graph import EmbeddedSubgraph, Graph, lattice_graph, triangular_graph
from dezaswitch.iso import canonical_form, is_isomorphic
from dezaswitch.matrix import conjugate
from dezaswitch.spectra import Spectrum, spectrum
from dezaswitch.switching import (
    _gdss_matrices,
    find_seidel_automorphisms,
    gdss1_matrix_condition,
    gdss2_matrix_condition,
    gdss_switch,
)

TARGET = Spectrum.from_values({10: 1, 3: 2, 2: 6, -2: 8, -3: 4})


def induced_l3_copies(g):
    """Vertex tuples inducing L2(3), ordered so that the induced graph equals lattice_graph(3)."""
    target = lattice_graph(3)
    seen = set()
    for rows in itertools.combinations(range(1, 8), 3):
        rest = [x for x in range(1, 8) if x not in rows]
        for cols in itertools.combinations(rest, 3):
            idx = {p: i for i, p in enumerate(itertools.combinations(range(1, 8), 2))}
            sub = tuple(idx[tuple(sorted((r, c)))] for r in rows for c in cols)
            key = frozenset(sub)
            if key in seen:
                continue
            seen.add(key)
            assert g.induced(sub) == target
            yield sub


def main():
    g = triangular_graph(7)
    lat_witnesses = find_seidel_automorphisms(lattice_graph(3))
    stats = Counter()
    first = None
    for sub in induced_l3_copies(g):
        e = EmbeddedSubgraph(g, sub)
        for w in lat_witnesses:
            c1, c2 = gdss1_matrix_condition(e, w.perm), gdss2_matrix_condition(e, w.perm)
            stats["first condition"] += c1
            stats["second condition"] += c2
            stats["pairs"] += 1
            if not c1:
                continue
            n1, _ = gdss_switch(e, w.perm, "N1", "T6")
            n2, _ = gdss_switch(e, w.perm, "N2", "T6")
            stats[str(spectrum(n1))] += 1
            stats["N2 = P N1 P"] += np.array_equal(conjugate(e.lift(w.perm), n1.matrix()), n2.matrix())
            if first is None:
                first = n1
    for k, v in stats.items():
        print(f"{v:5d}  {k}")

    # switch N1 again, over L2(3) copies where the first block condition holds in N1;
    # N1 is no longer strongly regular, so this goes through the raw block matrices
    hits = []
    for sub in induced_l3_copies(g):
        if first.induced(sub) != lattice_graph(3):
            continue
        e = EmbeddedSubgraph(first, sub)
        for w in lat_witnesses:
            if not gdss1_matrix_condition(e, w.perm):
                continue
            out = Graph(_gdss_matrices(e, w.perm)[0].astype(bool))
            if spectrum(out).same_as(TARGET):
                hits.append((sub, w.perm.moved_pairs(), recognize_deza(out).as_tuple(), out))
    print(f"second switchings reaching {TARGET}: {len(hits)}")
    if hits:
        sub, pairs, params, out = hits[0]
        print("  example subset", sub, "moved pairs", pairs, "params", params)
        print("  isomorphic to first N1:", is_isomorphic(out, first))
        print("  distinct canonical forms:", len({canonical_form(h[3]).graph6 for h in hits}))


if __name__ == "__main__":
    main()
