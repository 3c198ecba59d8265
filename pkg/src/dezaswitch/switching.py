"""Seidel automorphisms and the switching constructions built from them.

Constructions return the new graph together with a :class:`SwitchCertificate`
holding every verdict computed along the way.  A certificate can be replayed:
the construction is rerun from its stored inputs and the verdicts compared.

Tags:

* ``T1`` dual Seidel switching, ``PM``
* ``T5`` conjugation ``PMP`` by an automorphism of an induced subgraph
* ``T6`` / ``T7`` generalised switching on an induced subgraph (variants ``N1``, ``N2``)
* ``T8`` ``M + P`` for an SRG with ``λ = μ``
* ``T9`` ``P(M + I)``
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal, Optional

import numpy as np

from .classify import (
    DezaParameters,
    children,
    is_strictly_deza,
    recognize_deza,
    recognize_srg,
)
from .errors import (
    ChainBroken,
    ConstructionError,
    DezaError,
    InternalInconsistency,
    InvalidArgument,
    NotDeza,
    PreconditionViolation,
)
from .graph import EmbeddedSubgraph, Graph, Permutation, complement
from .matrix import apply_perm_left, block_split, conjugate, mat_mul, mat_square

log = logging.getLogger(__name__)

Variant = Literal["N1", "N2"]
Mode = Literal["T6", "T7"]


@dataclass(frozen=True)
class SeidelWitness:
    perm: Permutation
    fixed_points: tuple[int, ...]
    moved_pairs: tuple[tuple[int, int], ...]

    @property
    def fixed_point_free(self) -> bool:
        return not self.fixed_points


@dataclass
class SwitchCertificate:
    theorem: str
    inputs: dict
    checks: dict[str, bool] = field(default_factory=dict)
    params: Optional[DezaParameters] = None
    squares: dict[str, bool] = field(default_factory=dict)
    children: Optional[tuple] = None
    strict: Optional[bool] = None
    strict_expected: Optional[bool] = None

    @property
    def ok(self) -> bool:
        verdicts = list(self.checks.values()) + list(self.squares.values())
        if self.strict_expected is not None:
            verdicts.append(self.strict == self.strict_expected)
        return all(verdicts)

    def verdicts(self) -> dict:
        return {
            "checks": dict(self.checks),
            "squares": dict(self.squares),
            "params": self.params,
            "children": self.children,
            "strict": self.strict,
            "strict_expected": self.strict_expected,
        }

    def replay(self) -> bool:
        """Rerun the construction from stored inputs; true iff every verdict is reproduced."""
        inp = self.inputs
        tag = self.theorem
        if tag == "T1":
            _, cert = dual_seidel_switch(inp["graph"], witness_for(inp["graph"], inp["perm"]))
        elif tag in ("T6", "T7"):
            e = EmbeddedSubgraph(inp["graph"], inp["subset"])
            _, cert = gdss_switch(e, inp["perm"], inp["variant"], tag)
        elif tag == "T8":
            _, cert = add_perm_construction(inp["graph"], witness_for(inp["graph"], inp["perm"], True))
        elif tag == "T9":
            _, cert = perm_shift_construction(inp["graph"], witness_for(inp["graph"], inp["perm"], True))
        else:
            raise InvalidArgument(f"cannot replay certificate tagged {tag!r}")
        return cert.verdicts() == self.verdicts()


def is_seidel_automorphism(g: Graph, p: Permutation, require_fpf: bool = False) -> Optional[SeidelWitness]:
    if p.n != g.n or p.is_identity() or not p.is_involution():
        return None
    if not p.is_automorphism_of(g):
        return None
    pairs = p.moved_pairs()
    if any(g.has_edge(u, v) for u, v in pairs):
        return None
    fixed = p.fixed_points()
    if require_fpf and fixed:
        return None
    return SeidelWitness(p, tuple(fixed), tuple(pairs))


def witness_for(g: Graph, p: Permutation, require_fpf: bool = False) -> SeidelWitness:
    w = is_seidel_automorphism(g, p, require_fpf)
    if w is None:
        what = "fixed-point-free Seidel automorphism" if require_fpf else "Seidel automorphism"
        raise PreconditionViolation(f"permutation is not a {what} of the graph")
    return w


def find_seidel_automorphisms(g: Graph, require_fpf: bool = False,
                              limit: Optional[int] = None) -> list[SeidelWitness]:
    """All Seidel automorphisms, in lexicographic order of their image lists.

    Backtracking over involutions: the smallest unassigned vertex is either
    fixed or swapped with a larger non-adjacent vertex.  Each assignment is
    checked against every earlier one for adjacency and common-neighbour
    counts.  Intended for n up to about 40.
    """
    n = g.n
    adj = g.adj
    cn = mat_square(g.matrix())
    deg = g.degrees()
    img = np.full(n, -1)
    out: list[SeidelWitness] = []

    def consistent(v: int, w: int) -> bool:
        done = np.flatnonzero(img >= 0)
        if done.size:
            im = img[done]
            if not (np.array_equal(adj[v, done], adj[w, im]) and np.array_equal(cn[v, done], cn[w, im])):
                return False
            if v != w and not (np.array_equal(adj[w, done], adj[v, im]) and np.array_equal(cn[w, done], cn[v, im])):
                return False
        if v != w and cn[v, w] != cn[w, v]:
            return False
        return True

    def search(v: int) -> bool:
        while v < n and img[v] >= 0:
            v += 1
        if v == n:
            p = Permutation(tuple(img.tolist()))
            if not p.is_identity():
                w = is_seidel_automorphism(g, p, require_fpf)
                assert w is not None, "search produced a non-automorphism"
                out.append(w)
                if limit is not None and len(out) >= limit:
                    return True
            return False
        if not require_fpf and consistent(v, v):
            img[v] = v
            if search(v + 1):
                return True
            img[v] = -1
        for w in range(v + 1, n):
            if img[w] >= 0 or adj[v, w] or deg[v] != deg[w] or cn[v, v] != cn[w, w]:
                continue
            if consistent(v, w):
                img[v], img[w] = w, v
                # the new pair must also agree with itself
                if adj[v, w] == adj[w, v] and search(v + 1):
                    return True
                img[v] = img[w] = -1
        return False

    if limit is None or limit > 0:
        search(0)
    return out


def _strict_expected(lam: int, mu: int) -> bool:
    return lam != 0 and mu != 0


def _deza_summary(out: Graph, cert: SwitchCertificate):
    try:
        p = recognize_deza(out)
    except NotDeza as exc:
        cert.checks["output_is_deza"] = False
        log.warning("construction %s produced a non-Deza graph: %s", cert.theorem, exc)
        cert.strict = False
        return
    cert.checks["output_is_deza"] = True
    cert.params = p
    cert.strict = is_strictly_deza(out)
    if p.b > p.a:
        ch = children(out, p)
        ca, cb = recognize_srg(ch.child_a), recognize_srg(ch.child_b)
        cert.children = (ca.as_tuple() if ca else None, cb.as_tuple() if cb else None)
        cert.checks["srg_children"] = ca is not None and cb is not None


def _require_srg(g: Graph):
    s = recognize_srg(g)
    if s is None:
        raise PreconditionViolation("parent graph is not strongly regular")
    return s


def dual_seidel_switch(g: Graph, w: SeidelWitness) -> tuple[Graph, SwitchCertificate]:
    s = _require_srg(g)
    if s.k == s.mu:
        raise PreconditionViolation(f"k = mu = {s.mu}; switching needs k != mu")
    if s.lam == s.mu:
        raise PreconditionViolation(f"lambda = mu = {s.mu}; switching needs lambda != mu")
    witness_for(g, w.perm)
    m = g.matrix()
    pm = apply_perm_left(w.perm, m)
    out = _as_graph(pm)
    cert = SwitchCertificate("T1", {"graph": g, "perm": w.perm})
    cert.squares["PM^2 == M^2"] = bool(np.array_equal(mat_square(pm), mat_square(m)))
    _deza_summary(out, cert)
    cert.strict_expected = _strict_expected(s.lam, s.mu)
    return out, cert


def _as_graph(m: np.ndarray) -> Graph:
    if not np.array_equal(m, m.T) or m.diagonal().any() or not np.isin(m, (0, 1)).all():
        raise ConstructionError("constructed matrix is not a simple-graph adjacency matrix")
    return Graph(m.astype(bool))


def _subgraph_automorphism(e: EmbeddedSubgraph, p11: Permutation):
    if p11.n != e.t:
        raise InvalidArgument(f"subset permutation has size {p11.n}, expected {e.t}")
    if not p11.is_automorphism_of(e.induced()):
        raise PreconditionViolation("permutation is not an automorphism of the induced subgraph")


def _subgraph_seidel(e: EmbeddedSubgraph, p11: Permutation):
    _subgraph_automorphism(e, p11)
    if is_seidel_automorphism(e.induced(), p11) is None:
        raise PreconditionViolation("permutation is not a Seidel automorphism of the induced subgraph")


def check_lemma_mm(e: EmbeddedSubgraph, p11: Permutation) -> bool:
    """Block identity ``P11 M12 M21 P11 = M12 M21``."""
    _subgraph_automorphism(e, p11)
    bs = block_split(e.block_matrix(), e.t)
    if bs.m12.size == 0:
        return True
    prod = mat_mul(bs.m12, bs.m21)
    return bool(np.array_equal(conjugate(p11, prod), prod))


def _outer_common_counts(e: EmbeddedSubgraph) -> dict[tuple[int, int], int]:
    """For v outside H and x in H (by subset index): common neighbours of v and x outside H."""
    g = e.parent
    rest = e.rest
    nb = [set(g.neighbors(u)) for u in range(g.n)]
    outside = set(rest)
    return {(v, i): len(nb[v] & nb[x] & outside) for v in rest for i, x in enumerate(e.subset)}


def _inner_common_counts(e: EmbeddedSubgraph) -> dict[tuple[int, int], int]:
    """For v outside H and x in H (by subset index): common neighbours of v and x inside H."""
    g = e.parent
    nb = [set(g.neighbors(u)) for u in range(g.n)]
    inside = set(e.subset)
    return {(v, i): len(nb[v] & nb[x] & inside) for v in e.rest for i, x in enumerate(e.subset)}


def _combinatorial(counts: dict, e: EmbeddedSubgraph, p11: Permutation) -> bool:
    return all(counts[(v, i)] == counts[(v, p11(i))] for v in e.rest for i in range(e.t))


def gdss1_matrix_condition(e: EmbeddedSubgraph, p11: Permutation) -> bool:
    bs = block_split(e.block_matrix(), e.t)
    if bs.m22.size == 0:
        return True
    prod = mat_mul(bs.m12, bs.m22)
    return bool(np.array_equal(apply_perm_left(p11, prod), prod))


def gdss2_matrix_condition(e: EmbeddedSubgraph, p11: Permutation) -> bool:
    bs = block_split(e.block_matrix(), e.t)
    if bs.m12.size == 0:
        return True
    prod = mat_mul(bs.m11, bs.m12)
    return bool(np.array_equal(apply_perm_left(p11, prod), prod))


def gdss1_condition(e: EmbeddedSubgraph, p11: Permutation) -> bool:
    """``P11 M12 M22 = M12 M22``, cross-checked by counting common neighbours outside H."""
    _subgraph_seidel(e, p11)
    by_matrix = gdss1_matrix_condition(e, p11)
    by_count = _combinatorial(_outer_common_counts(e), e, p11)
    if by_matrix != by_count:
        raise InternalInconsistency(f"condition 1: matrix says {by_matrix}, counting says {by_count}")
    return by_matrix


def gdss2_condition(e: EmbeddedSubgraph, p11: Permutation) -> bool:
    """``P11 M11 M12 = M11 M12``, cross-checked by counting common neighbours inside H."""
    _subgraph_seidel(e, p11)
    by_matrix = gdss2_matrix_condition(e, p11)
    by_count = _combinatorial(_inner_common_counts(e), e, p11)
    if by_matrix != by_count:
        raise InternalInconsistency(f"condition 2: matrix says {by_matrix}, counting says {by_count}")
    return by_matrix


def _unblock(e: EmbeddedSubgraph, mb: np.ndarray) -> np.ndarray:
    out = np.empty_like(mb)
    idx = np.asarray(e.order)
    out[np.ix_(idx, idx)] = mb
    return out


def _gdss_matrices(e: EmbeddedSubgraph, p11: Permutation) -> tuple[np.ndarray, np.ndarray]:
    bs = block_split(e.block_matrix(), e.t)
    pm11 = apply_perm_left(p11, bs.m11)
    n1 = np.block([[pm11, bs.m12], [bs.m21, bs.m22]])
    n2 = np.block([[pm11, apply_perm_left(p11, bs.m12)],
                   [bs.m21[:, list(p11.inverse().image)], bs.m22]])
    return _unblock(e, n1), _unblock(e, n2)


def _parent_is_valid_t7(g: Graph) -> bool:
    if recognize_srg(g) is not None:
        return True
    try:
        p = recognize_deza(g)
        if p.b == p.a:
            return False
        ch = children(g, p)
    except DezaError:
        return False
    return recognize_srg(ch.child_a) is not None and recognize_srg(ch.child_b) is not None


def gdss_switch(e: EmbeddedSubgraph, p11: Permutation, variant: Variant,
                mode: Mode) -> tuple[Graph, SwitchCertificate]:
    if variant not in ("N1", "N2"):
        raise InvalidArgument(f"variant must be N1 or N2, got {variant!r}")
    g = e.parent
    if mode == "T6":
        parent = _require_srg(g)
        if not gdss1_condition(e, p11):
            raise PreconditionViolation("P11 M12 M22 != M12 M22")
    elif mode == "T7":
        if not _parent_is_valid_t7(g):
            raise PreconditionViolation("parent is neither an SRG nor a Deza graph with SRG children")
        parent = recognize_srg(g)
        if not gdss2_condition(e, p11):
            raise PreconditionViolation("P11 M11 M12 != M11 M12")
    else:
        raise InvalidArgument(f"mode must be T6 or T7, got {mode!r}")

    n1, n2 = _gdss_matrices(e, p11)
    out = _as_graph(n1 if variant == "N1" else n2)
    m = g.matrix()
    pmp = conjugate(e.lift(p11), m)
    m_sq, pmp_sq = mat_square(m), mat_square(pmp)
    n1_sq, n2_sq = mat_square(n1), mat_square(n2)

    cert = SwitchCertificate(mode, {"graph": g, "subset": e.subset, "perm": p11, "variant": variant})
    cert.checks["lemma_mm"] = check_lemma_mm(e, p11)
    if mode == "T6":
        cert.squares["N2^2 == M^2"] = bool(np.array_equal(n2_sq, m_sq))
        cert.squares["N1^2 == (PMP)^2"] = bool(np.array_equal(n1_sq, pmp_sq))
    else:
        cert.squares["N1^2 == M^2"] = bool(np.array_equal(n1_sq, m_sq))
        cert.squares["N2^2 == (PMP)^2"] = bool(np.array_equal(n2_sq, pmp_sq))
    _deza_summary(out, cert)
    if parent is not None:
        cert.strict_expected = _strict_expected(parent.lam, parent.mu)
    return out, cert


def pmp_conjugate_check(e: EmbeddedSubgraph, p11: Permutation) -> tuple[Graph, bool]:
    """Conjugate the parent by ``P = diag(P11, I)``; the result should be an SRG with the same parameters."""
    s = _require_srg(e.parent)
    _subgraph_automorphism(e, p11)
    out = _as_graph(conjugate(e.lift(p11), e.parent.matrix()))
    t = recognize_srg(out)
    return out, t is not None and t.as_tuple() == s.as_tuple()


def add_perm_construction(g: Graph, w: SeidelWitness) -> tuple[Graph, SwitchCertificate]:
    s = _require_srg(g)
    if s.lam != s.mu:
        raise PreconditionViolation(f"lambda = {s.lam} != mu = {s.mu}")
    if w.fixed_points:
        raise PreconditionViolation(f"automorphism fixes vertices {list(w.fixed_points)}")
    witness_for(g, w.perm, require_fpf=True)
    n, k, lam = s.n, s.k, s.lam
    m = g.matrix()
    p = w.perm.matrix()
    pm = mat_mul(p, m)
    out = _as_graph(m + p)
    eye, j = np.eye(n, dtype=np.int64), np.ones((n, n), dtype=np.int64)
    cert = SwitchCertificate("T8", {"graph": g, "perm": w.perm})
    expected = (k + 1) * eye + (lam + 2) * pm + lam * (j - eye - pm)
    cert.squares["(M+P)^2 == (k+1)I + (lam+2)PM + lam(J-I-PM)"] = bool(np.array_equal(mat_square(m + p), expected))
    _deza_summary(out, cert)
    if cert.params is not None and cert.params.b > cert.params.a:
        ch = children(out, cert.params)
        pm_graph = _as_graph(pm)
        cert.checks["child_b == PM"] = ch.child_b == pm_graph
        cert.checks["child_a == J-I-PM"] = ch.child_a == complement(pm_graph)
    return out, cert


def perm_shift_construction(g: Graph, w: SeidelWitness) -> tuple[Graph, SwitchCertificate]:
    s = _require_srg(g)
    if w.fixed_points:
        raise PreconditionViolation(f"automorphism fixes vertices {list(w.fixed_points)}")
    witness_for(g, w.perm, require_fpf=True)
    n, k, lam, mu = s.n, s.k, s.lam, s.mu
    m = g.matrix()
    eye, j = np.eye(n, dtype=np.int64), np.ones((n, n), dtype=np.int64)
    prod = apply_perm_left(w.perm, m + eye)
    out = _as_graph(prod)
    cert = SwitchCertificate("T9", {"graph": g, "perm": w.perm})
    expected = (k + 1) * eye + (lam + 2) * m + mu * (j - eye - m)
    cert.squares["(P(M+I))^2 == (k+1)I + (lam+2)M + mu(J-I-M)"] = bool(np.array_equal(mat_square(prod), expected))
    _deza_summary(out, cert)
    p = cert.params
    if p is not None:
        cert.checks["{a,b} == {lam+2, mu}"] = sorted((p.a, p.b)) == sorted((lam + 2, mu))
        if p.b > p.a:
            ch = children(out, p)
            m_is_b = lam + 2 > mu
            cert.checks["children == {G, complement(G)}"] = (
                (ch.child_b, ch.child_a) == ((g, complement(g)) if m_is_b else (complement(g), g)))
    return out, cert


def rook_rows_subset(m: int, row: int) -> tuple[int, ...]:
    """Vertices of rows ``row`` and ``row+1`` of ``L2(m)``, in ``rook_2xm`` order."""
    return tuple(r * m + c for r in (row, row + 1) for c in range(m))


def rook_central(m: int) -> Permutation:
    """Central symmetry ``(r, c) -> (1-r, m-1-c)`` of the 2×m rook graph."""
    return Permutation(tuple((1 - r) * m + (m - 1 - c) for r in (0, 1) for c in range(m)))


def chain_gdss2(g: Graph, m: int) -> list[tuple[Graph, SwitchCertificate]]:
    """Iterate the second generalised switching over successive row pairs of ``L2(m)``.

    Step ``i`` switches rows ``2i, 2i+1`` of the previous output with the
    central symmetry of that 2×m band (variant ``N1``, which keeps ``M²``).
    """
    from .graph import lattice_graph

    if m < 6 or m % 2:
        raise InvalidArgument(f"chain needs even m >= 6, got {m}")
    if g != lattice_graph(m):
        raise InvalidArgument("chain must start from lattice_graph(m)")
    p11 = rook_central(m)
    out = []
    current = g
    for step in range(m // 2):
        e = EmbeddedSubgraph(current, rook_rows_subset(m, 2 * step))
        try:
            current, cert = gdss_switch(e, p11, "N1", "T7")
        except PreconditionViolation as exc:
            raise ChainBroken(step, str(exc)) from exc
        if not cert.ok:
            raise ChainBroken(step, f"certificate failed: {cert.verdicts()}")
        out.append((current, cert))
    return out
