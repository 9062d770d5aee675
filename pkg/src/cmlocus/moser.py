"""Moser-type matrices at simple locus configurations and their spectra.

At a configuration of pairwise distinct Wronskian roots the matrix M (off
diagonal -1/(z_i-z_j)^2, zero row sums) has integer spectrum equal to the
content multiset of the underlying partition, which inverts the Wronskian
map; the Hessian K of the confining potential has the squared hook lengths
as eigenvalues.  Everything here is double precision with explicit
residual reporting; the exact modules provide the gates.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CoincidentPoints,
    NoConvergence,
    NonIntegerSpectrum,
    SimplicityGateFailed,
)
from .exact_poly import squarefree_certificate, wronskian_for_partition
from .locus import DEFAULT_CONFIG, NumericsConfig, pole_structure
from .partitions import Partition, partition_from_contents

INTEGER_TOL = 1e-4  # default gate for rounding spectra to integers


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0


def _as_distinct_array(roots, cluster_tol: float) -> np.ndarray:
    z = np.asarray(list(roots), dtype=complex)
    n = len(z)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(z[i] - z[j]) < cluster_tol:
                raise CoincidentPoints(f"points {i} and {j} within {cluster_tol}")
    return z


def build_moser(roots, cluster_tol: float = DEFAULT_CONFIG.cluster_tol):
    """(Q, L, M, L+, L-) at pairwise distinct points.

    L is antisymmetric with entries 1/(z_i - z_j); M is symmetric with
    off-diagonal -1/(z_i - z_j)^2 and diagonal chosen so each row sums to
    zero.  L+- = L +- Q act as ladder operators for M on the locus.
    """
    z = _as_distinct_array(roots, cluster_tol)
    n = len(z)
    q = np.diag(z)
    l = np.zeros((n, n), dtype=complex)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        acc = 0.0 + 0.0j
        for j in range(n):
            if j == i:
                continue
            gap = z[i] - z[j]
            l[i, j] = 1.0 / gap
            m[i, j] = -1.0 / gap**2
            acc += 1.0 / gap**2
        m[i, i] = acc
    return q, l, m, l + q, l - q


def ladder_relation_residual(
    roots, cluster_tol: float = DEFAULT_CONFIG.cluster_tol
) -> float:
    """Max-entry violation of [M, L+-] = +-L+-; zero precisely on the locus."""
    q, l, m, lp, lm = build_moser(roots, cluster_tol)
    up = m @ lp - lp @ m - lp
    down = m @ lm - lm @ m + lm
    return max(max_abs(up), max_abs(down))


def eigenvalues(a: np.ndarray, cfg: NumericsConfig = DEFAULT_CONFIG) -> list[complex]:
    """Eigenvalues of a general complex matrix, sorted by (re, im).

    Backed by LAPACK's balanced Hessenberg + shifted QR path; the complex
    symmetric matrices here get no Hermitian shortcut on purpose.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    if a.size == 0:
        return []
    try:
        vals = np.linalg.eigvals(a)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(str(exc)) from exc
    return sorted((complex(v) for v in vals), key=lambda v: (v.real, v.imag))


@dataclass
class SpectrumReport:
    """Raw eigenvalues next to their integer rounding and the worst residual."""

    raw: list
    rounded: list
    max_residual: float
    partition: Partition | None = None

    def to_json(self) -> dict:
        return {
            "partition": list(self.partition.parts) if self.partition else None,
            "raw": [[v.real, v.imag] for v in self.raw],
            "rounded": list(self.rounded),
            "residual": self.max_residual,
        }


def round_spectrum(values, integer_tol: float = INTEGER_TOL) -> SpectrumReport:
    """Round eigenvalues to integers; refuse if any rounding residual is large."""
    rounded = [int(round(v.real)) for v in values]
    residuals = [abs(v - r) for v, r in zip(values, rounded)]
    worst = max(residuals, default=0.0)
    if worst > integer_tol:
        raise NonIntegerSpectrum(f"max rounding residual {worst:.3e} > {integer_tol}")
    return SpectrumReport(list(values), rounded, float(worst))


def round_spectrum_to_squares(values, integer_tol: float = INTEGER_TOL) -> SpectrumReport:
    """Round eigenvalues to squares of integers (for Hessian spectra)."""
    rounded = []
    for v in values:
        s = int(round(np.sqrt(max(v.real, 0.0))))
        rounded.append(s * s)
    residuals = [abs(v - r) for v, r in zip(values, rounded)]
    worst = max(residuals, default=0.0)
    if worst > integer_tol:
        raise NonIntegerSpectrum(f"max rounding residual {worst:.3e} > {integer_tol}")
    return SpectrumReport(list(values), rounded, float(worst))


def invert_wronskian_map(
    roots,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    integer_tol: float = INTEGER_TOL,
) -> tuple[Partition, SpectrumReport]:
    """Recover the partition from the pole set of a simple locus potential.

    The spectrum of M rounds to integers whose multiset is the content
    multiset of exactly one partition.
    """
    roots = list(roots)
    if not roots:
        report = SpectrumReport([], [], 0.0, Partition())
        return Partition(), report
    _, _, m, _, _ = build_moser(roots, cfg.cluster_tol)
    report = round_spectrum(eigenvalues(m, cfg), integer_tol)
    from collections import Counter

    lam = partition_from_contents(Counter(report.rounded))
    report.partition = lam
    return lam, report


def hessian_K(roots, cluster_tol: float = DEFAULT_CONFIG.cluster_tol) -> np.ndarray:
    """Hessian of the confining many-body potential at the given points."""
    z = _as_distinct_array(roots, cluster_tol)
    n = len(z)
    k = np.zeros((n, n), dtype=complex)
    for i in range(n):
        acc = 1.0 + 0.0j
        for j in range(n):
            if j == i:
                continue
            g = 6.0 / (z[j] - z[i]) ** 4
            k[i, j] = -g
            acc += g
        k[i, i] = acc
    return k


def _simple_roots(lam: Partition, cfg: NumericsConfig) -> list[complex]:
    w = wronskian_for_partition(lam)
    is_squarefree, profile = squarefree_certificate(w)
    if not is_squarefree:
        raise SimplicityGateFailed(f"{lam} has multiplicity profile {profile}")
    return pole_structure(lam, cfg).roots


def hessian_spectrum_check(
    lam: Partition,
    cfg: NumericsConfig = DEFAULT_CONFIG,
    integer_tol: float = INTEGER_TOL,
) -> SpectrumReport:
    """Spectrum of the Hessian at the equilibrium of a squarefree partition.

    The rounded values are squares of integers; callers compare the
    multiset against the squared hook lengths.
    """
    roots = _simple_roots(lam, cfg)
    report = round_spectrum_to_squares(
        eigenvalues(hessian_K(roots, cfg.cluster_tol), cfg), integer_tol
    )
    report.partition = lam
    return report


def one_row_identity_check(n: int, cfg: NumericsConfig = DEFAULT_CONFIG) -> float:
    """Max-entry norm of K - (M+I)^2 at the Hermite roots; tiny only there."""
    if n < 1:
        raise ValueError("need at least one point")
    roots = _simple_roots(Partition((n,)), cfg)
    _, _, m, _, _ = build_moser(roots, cfg.cluster_tol)
    k = hessian_K(roots, cfg.cluster_tol)
    eye = np.eye(n, dtype=complex)
    return max_abs(k - (m + eye) @ (m + eye))


def hessian_moser_commutator(lam: Partition, cfg: NumericsConfig = DEFAULT_CONFIG) -> float:
    """Max-entry norm of [K, M]; nonzero for generic diagrams such as (3,1)."""
    roots = _simple_roots(lam, cfg)
    _, _, m, _, _ = build_moser(roots, cfg.cluster_tol)
    k = hessian_K(roots, cfg.cluster_tol)
    return max_abs(k @ m - m @ k)
