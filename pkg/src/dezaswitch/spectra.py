"""Adjacency spectra with exact multiplicity certificates, and child/Deza spectral predictors.

Eigenvalues come from a cyclic Jacobi solver.  Every eigenvalue cluster that
sits within ``cluster_tol`` of an integer ``θ`` is then certified exactly:
its multiplicity must equal ``n - rank(M - θI)`` with the rank computed by
fraction-free elimination.  For integral spectra the floating point path only
proposes candidates; the certificates decide.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Literal, Union

import numpy as np

from .errors import (
    CertificationConflict,
    InconsistentParameters,
    InvalidArgument,
    PredictionInconsistency,
)
from .graph import Graph
from .matrix import exact_rank, mat_square

Number = Union[int, float, Fraction]


@dataclass(frozen=True)
class SpectrumConfig:
    jacobi_tol: float = 1e-12
    cluster_tol: float = 1e-6
    max_sweeps: int = 100


DEFAULT_CONFIG = SpectrumConfig()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset as ``(value, multiplicity)`` pairs, values strictly decreasing.

    ``certified[i]`` is true when ``pairs[i]`` has an integer value whose
    multiplicity was confirmed by exact rank.
    """

    pairs: tuple[tuple[Number, int], ...]
    certified: tuple[bool, ...] = ()

    def __post_init__(self):
        if not self.certified:
            object.__setattr__(self, "certified", tuple(False for _ in self.pairs))
        if len(self.certified) != len(self.pairs):
            raise InvalidArgument("certificate flags do not match pairs")

    @property
    def n(self) -> int:
        return sum(m for _, m in self.pairs)

    @property
    def values(self) -> list[Number]:
        return [v for v, _ in self.pairs]

    def multiplicity(self, value: Number, tol: float = 1e-6) -> int:
        return sum(m for v, m in self.pairs if abs(float(v) - float(value)) <= tol)

    def is_integral(self) -> bool:
        return all(self.certified)

    def as_dict(self) -> dict:
        return {v: m for v, m in self.pairs}

    def restricted(self, k: Number) -> "Spectrum":
        """Drop one copy of the valency ``k``."""
        out, cert, dropped = [], [], False
        for (v, m), c in zip(self.pairs, self.certified):
            if not dropped and abs(float(v) - float(k)) <= 1e-6:
                dropped = True
                if m > 1:
                    out.append((v, m - 1))
                    cert.append(c)
                continue
            out.append((v, m))
            cert.append(c)
        if not dropped:
            raise InvalidArgument(f"{k} is not an eigenvalue")
        return Spectrum(tuple(out), tuple(cert))

    def trace(self) -> float:
        return sum(float(v) * m for v, m in self.pairs)

    def trace_square(self) -> float:
        return sum(float(v) ** 2 * m for v, m in self.pairs)

    def exact_trace(self) -> Fraction:
        if not self.is_integral():
            raise InvalidArgument("spectrum is not fully certified")
        return sum((Fraction(v) * m for v, m in self.pairs), Fraction(0))

    def exact_trace_square(self) -> Fraction:
        if not self.is_integral():
            raise InvalidArgument("spectrum is not fully certified")
        return sum((Fraction(v) ** 2 * m for v, m in self.pairs), Fraction(0))

    def same_as(self, other: "Spectrum", tol: float = 1e-6) -> bool:
        if len(self.pairs) != len(other.pairs):
            return False
        return all(m1 == m2 and abs(float(v1) - float(v2)) <= tol
                   for (v1, m1), (v2, m2) in zip(self.pairs, other.pairs))

    def __str__(self):
        def fmt(v):
            if isinstance(v, Fraction) and v.denominator == 1:
                v = int(v)
            return str(v) if not isinstance(v, float) else f"{v:.6g}"
        return "{" + ", ".join(f"{fmt(v)}^{m}" for v, m in self.pairs) + "}"

    @classmethod
    def from_values(cls, values: dict | list) -> "Spectrum":
        """Build from ``{value: mult}`` or a list of values; integer values are marked certified."""
        if isinstance(values, dict):
            items = values.items()
        else:
            counts: dict = {}
            for v in values:
                counts[v] = counts.get(v, 0) + 1
            items = counts.items()
        merged: dict = {}
        for v, m in items:
            if isinstance(v, Fraction) and v.denominator == 1:
                v = int(v)
            merged[v] = merged.get(v, 0) + m
        pairs = sorted(((v, m) for v, m in merged.items() if m), key=lambda p: -float(p[0]))
        cert = tuple(isinstance(v, int) for v, _ in pairs)
        return cls(tuple(pairs), cert)


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, sorted descending."""
    a = np.array(a, dtype=float)
    n = a.shape[0]
    if n == 1:
        return a.diagonal().copy()
    scale = max(1.0, float(np.abs(a).max()))
    for _ in range(max_sweeps):
        off = np.abs(a - np.diag(a.diagonal())).max()
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= tol * scale * 1e-3:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                colp, colq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * colp - s * colq
                a[:, q] = s * colp + c * colq
                rowp, rowq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * rowp - s * rowq
                a[q, :] = s * rowp + c * rowq
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.sort(a.diagonal())[::-1]


def _cluster(vals: np.ndarray, tol: float) -> list[list[float]]:
    clusters: list[list[float]] = []
    for v in vals:
        if clusters and abs(clusters[-1][-1] - v) <= tol:
            clusters[-1].append(float(v))
        else:
            clusters.append([float(v)])
    return clusters


def certified_multiplicity(m: np.ndarray, theta: int) -> int:
    n = m.shape[0]
    return n - exact_rank(m - theta * np.eye(n, dtype=np.int64))


def spectrum(g: Graph, config: SpectrumConfig = DEFAULT_CONFIG) -> Spectrum:
    m = g.matrix()
    vals = jacobi_eigenvalues(m, config.jacobi_tol, config.max_sweeps)
    pairs, cert = [], []
    for cl in _cluster(vals, config.cluster_tol):
        mean = sum(cl) / len(cl)
        theta = round(mean)
        if abs(mean - theta) <= config.cluster_tol:
            mult = certified_multiplicity(m, theta)
            if mult != len(cl):
                raise CertificationConflict(
                    f"eigenvalue {theta}: clustered multiplicity {len(cl)}, exact rank gives {mult}")
            pairs.append((int(theta), mult))
            cert.append(True)
        else:
            pairs.append((mean, len(cl)))
            cert.append(False)
    return Spectrum(tuple(pairs), tuple(cert))


def _div(num: Number, den: Number) -> Number:
    if isinstance(num, float) or isinstance(den, float):
        return num / den
    q = Fraction(num) / Fraction(den)
    return int(q) if q.denominator == 1 else q


def _is_integer(x: Number) -> bool:
    if isinstance(x, float):
        return abs(x - round(x)) <= 1e-9
    return Fraction(x).denominator == 1


def predict_child_spectra(p, s: Spectrum, expect_integral: bool = False) -> tuple[Spectrum, Spectrum]:
    """Spectra of the a-child and b-child implied by a Deza spectrum.

    With ``expect_integral`` (the caller claims SRG children) a non-integer
    prediction raises :class:`PredictionInconsistency`.
    """
    n, k, b, a = p.n, p.k, p.b, p.a
    if b <= a:
        raise InvalidArgument("child spectra need b > a")
    alpha = _div(b * (n - 1) - k * (k - 1), b - a)
    beta = _div(a * (n - 1) - k * (k - 1), a - b)
    a_vals: dict = {alpha: 1}
    b_vals: dict = {beta: 1}
    for v, m in s.restricted(k).pairs:
        th2 = v * v
        ai = _div(k - b - th2, b - a)
        bi = _div(k - a - th2, a - b)
        a_vals[ai] = a_vals.get(ai, 0) + m
        b_vals[bi] = b_vals.get(bi, 0) + m
    if expect_integral:
        bad = [x for x in list(a_vals) + list(b_vals) if not _is_integer(x)]
        if bad:
            raise PredictionInconsistency(f"non-integer child eigenvalues predicted: {bad}")
    return _merge(a_vals), _merge(b_vals)


def _merge(vals: dict) -> Spectrum:
    # floats that land on integers (from irrational θ) are folded into the integer bucket
    out: dict = {}
    for v, m in vals.items():
        key = v
        if isinstance(v, float) and abs(v - round(v)) <= 1e-6:
            key = int(round(v))
        for existing in list(out):
            if abs(float(existing) - float(key)) <= 1e-6:
                key = existing
                break
        out[key] = out.get(key, 0) + m
    return Spectrum.from_values(out)


def child_valency_candidates(p) -> tuple[Number, Number]:
    """The two valencies an SRG child may have: that of the a-child and of the b-child."""
    n, k, b, a = p.n, p.k, p.b, p.a
    return _div(b * (n - 1) - k * (k - 1), b - a), _div(k * (k - 1) - a * (n - 1), b - a)


def _signed_root(sq: Number) -> Number | None:
    if sq < 0:
        return None
    if not isinstance(sq, float) and Fraction(sq).denominator == 1:
        r = math.isqrt(int(sq))
        if r * r == int(sq):
            return r
    return math.sqrt(float(sq))


@dataclass(frozen=True)
class DezaEigPrediction:
    """Candidate restricted eigenvalues ``±ρ`` (from child r) and ``±σ`` (from child s).

    ``None`` marks an empty branch (negative square).  ``f1, f2, g1, g2`` stay
    ``None`` until resolved against an actual spectrum.
    """

    rho_sq: Number
    sigma_sq: Number
    rho_plus: Number | None
    rho_minus: Number | None
    sigma_plus: Number | None
    sigma_minus: Number | None
    f: int
    g: int
    f1: int | None = None
    f2: int | None = None
    g1: int | None = None
    g2: int | None = None

    def candidates(self) -> set:
        return {x for x in (self.rho_plus, self.rho_minus, self.sigma_plus, self.sigma_minus)
                if x is not None}

    def resolve(self, s: Spectrum, k: Number) -> "DezaEigPrediction":
        """Fill in ``f1, f2, g1, g2`` from the restricted part of a Deza spectrum."""
        rs = s.restricted(k)

        def mult(x):
            return 0 if x is None else rs.multiplicity(x)

        f1 = mult(self.rho_plus)
        f2 = 0 if self.rho_minus == self.rho_plus else mult(self.rho_minus)
        g1 = mult(self.sigma_plus)
        g2 = 0 if self.sigma_minus == self.sigma_plus else mult(self.sigma_minus)
        return replace(self, f1=f1, f2=f2, g1=g1, g2=g2)

    def accounting_holds(self) -> bool:
        if None in (self.f1, self.f2, self.g1, self.g2):
            raise InvalidArgument("prediction is not resolved")
        return self.f1 + self.f2 == self.f and self.g1 + self.g2 == self.g


def predict_deza_eigs(child, p, which_child: Literal["A", "B"]) -> DezaEigPrediction:
    """Restricted Deza eigenvalues implied by an SRG child with eigenvalues r, s."""
    k, b, a = p.k, p.b, p.a
    if b <= a:
        raise InvalidArgument("prediction needs b > a")
    if which_child == "A":
        sq = [k - b - t * (b - a) for t in (child.r, child.s)]
    elif which_child == "B":
        sq = [k - a + t * (b - a) for t in (child.r, child.s)]
    else:
        raise InvalidArgument(f"which_child must be 'A' or 'B', got {which_child!r}")
    roots = [_signed_root(x) for x in sq]
    if all(r is None for r in roots):
        raise InconsistentParameters(f"both predicted squares are negative: {sq}")
    rho, sigma = roots
    return DezaEigPrediction(
        rho_sq=sq[0], sigma_sq=sq[1],
        rho_plus=rho, rho_minus=None if rho is None else -rho,
        sigma_plus=sigma, sigma_minus=None if sigma is None else -sigma,
        f=child.f, g=child.g,
    )


@dataclass
class SquareReport:
    squares_equal: bool
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.squares_equal and all(self.checks.values())


def verify_square_equality(m: Graph, n_child: Graph) -> SquareReport:
    """When ``M² = N²`` for a Deza graph and one of its SRG children, check the forced consequences."""
    from .classify import children, recognize_deza, recognize_srg

    if m.n != n_child.n:
        raise InvalidArgument("graphs differ in order")
    equal = bool(np.array_equal(mat_square(m.matrix()), mat_square(n_child.matrix())))
    report = SquareReport(squares_equal=equal)
    if not equal:
        return report
    p = recognize_deza(m)
    child = recognize_srg(n_child)
    if child is None:
        raise InvalidArgument("child graph is not strongly regular")
    report.details.update(deza=p, child=child)
    report.checks["valency"] = p.k == child.k
    if p.b > p.a:
        which = 1 if children(m, p).child_b == n_child else 0
        alpha = child_valency_candidates(p)[which]
        report.details["alpha"] = alpha
        report.checks["k_equals_alpha"] = p.k == alpha
    allowed = [child.r, -child.r, child.s, -child.s]
    restricted = spectrum(m).restricted(p.k)
    report.details["restricted"] = restricted
    report.checks["eigenvalues"] = all(
        any(abs(float(v) - float(x)) <= 1e-6 for x in allowed) for v, _ in restricted.pairs)
    return report
