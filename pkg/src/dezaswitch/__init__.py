"""Deza graphs from strongly regular graphs by (generalised) dual Seidel switching.

Everything is exact: adjacency products are integer matrices, and integer
eigenvalue multiplicities are certified by fraction-free rank.
"""

from .classify import (
    Children,
    DezaParameters,
    SrgParameters,
    children,
    diameter,
    is_divisible_design_flag,
    is_strictly_deza,
    recognize_deza,
    recognize_srg,
)
from .graph import (
    EmbeddedSubgraph,
    Graph,
    Permutation,
    clebsch_16_10,
    complement,
    induced_embedding,
    lattice_graph,
    rook_2xm,
    triangular_graph,
)
from .graph6 import from_graph6, to_graph6
from .iso import CanonicalForm, canonical_form, is_isomorphic
from .spectra import Spectrum, predict_child_spectra, predict_deza_eigs, spectrum, verify_square_equality
from .switching import (
    SeidelWitness,
    SwitchCertificate,
    add_perm_construction,
    chain_gdss2,
    check_lemma_mm,
    dual_seidel_switch,
    find_seidel_automorphisms,
    gdss1_condition,
    gdss2_condition,
    gdss_switch,
    is_seidel_automorphism,
    perm_shift_construction,
    pmp_conjugate_check,
)

__version__ = "0.1.0"
