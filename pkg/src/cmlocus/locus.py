"""Numerical side of the harmonic locus: Wronskian roots and equilibria.

Root finding is two-stage: companion-matrix eigenvalues seed a double
precision simultaneous (Aberth-Ehrlich) iteration, which is then polished
against the exact rational coefficients at extended precision.  Multiple
roots never reach the iteration: the exact squarefree decomposition splits
them off first and its multiplicities are authoritative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import numpy as np

from .errors import (
    CoincidentPoints,
    EvaluationAtPole,
    NoConvergence,
    NonTriangularMultiplicity,
    SingularJacobian,
)
from .exact_poly import ExactPoly, squarefree_decomposition, wronskian_for_partition
from .partitions import Partition


@dataclass(frozen=True)
class NumericsConfig:
    root_tol: float = 1e-10
    newton_tol: float = 1e-11
    max_iter: int = 200
    cluster_tol: float = 1e-6
    digits: int = 30  # working precision of the extended polish

    def __post_init__(self):
        if min(self.root_tol, self.newton_tol, self.cluster_tol) <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        if self.digits < 15:
            raise ValueError("polish precision below double makes no sense")


DEFAULT_CONFIG = NumericsConfig()


@dataclass
class LocusConfiguration:
    """Distinct poles of a locus potential with their multiplicity data."""

    partition: Partition
    roots: list = field(default_factory=list)  # one entry per distinct pole
    multiplicities: list = field(default_factory=list)  # pole parameters m_i
    locus_residual: float | None = None  # only meaningful when all m_i == 1
    polish_iterations: int = 0

    def roots_with_multiplicity(self) -> list[complex]:
        """Roots of the Wronskian, each pole repeated m(m+1)/2 times."""
        out = []
        for z, m in zip(self.roots, self.multiplicities):
            out.extend([z] * (m * (m + 1) // 2))
        return out


def _float_coefficients(p: ExactPoly) -> np.ndarray:
    """Coefficients as floats, rescaled by a power of two if they overflow."""
    shift = 0
    for c in p.coeffs:
        size = c.numerator.bit_length() - c.denominator.bit_length()
        shift = max(shift, size - 990)
    scale = Fraction(1, 2**shift) if shift > 0 else 1
    return np.array([float(c * scale) for c in p.coeffs], dtype=complex)


def _horner_pair(coeffs, x):
    """Value and derivative at x; works for numpy arrays and mpmath scalars."""
    p = 0 * x
    dp = 0 * x
    for c in reversed(coeffs):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _aberth_double(coeffs: np.ndarray, seeds: np.ndarray, max_iter: int):
    z = seeds.astype(complex).copy()
    n = len(z)
    if n == 0:
        return z, 0
    for it in range(max_iter):
        p, dp = _horner_pair(coeffs, z)
        bad = dp == 0
        if bad.any():
            z[bad] += 1e-8 * (1 + 1j)
            continue
        w = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, np.inf)
        s = (1.0 / diff).sum(axis=1)
        step = w / (1.0 - w * s)
        z = z - step
        scale = np.maximum(np.abs(z), 1.0)
        if np.max(np.abs(step) / scale) < 1e-14:
            return z, it + 1
    return z, max_iter  # double stage is only a seed; the polish decides


def _polish_mp(p: ExactPoly, seeds, cfg: NumericsConfig):
    """Aberth iteration at cfg.digits against the exact coefficients."""
    n = len(seeds)
    if n == 0:
        return [], 0
    with mpmath.workdps(cfg.digits + 10):
        coeffs = [
            mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator) for c in p.coeffs
        ]
        z = [mpmath.mpc(s) for s in seeds]
        tol = mpmath.mpf(10) ** (-cfg.digits)
        for it in range(cfg.max_iter):
            worst = mpmath.mpf(0)
            new = []
            for i in range(n):
                val, der = _horner_pair(coeffs, z[i])
                if der == 0:
                    new.append(z[i] + mpmath.mpc(tol, tol))
                    worst = mpmath.mpf(1)
                    continue
                w = val / der
                s = mpmath.mpf(0)
                for j in range(n):
                    if j != i:
                        s += 1 / (z[i] - z[j])
                denom = 1 - w * s
                step = w / denom if denom != 0 else w
                new.append(z[i] - step)
                worst = max(worst, abs(step) / max(abs(z[i]), 1))
            z = new
            if worst < tol:
                return [complex(x) for x in z], it + 1
        raise NoConvergence(f"polish stalled after {cfg.max_iter} iterations")


def _backward_error(p: ExactPoly, z: complex) -> float:
    num = abs(complex(p(z)))
    den = sum(abs(float(c)) * abs(z) ** k for k, c in enumerate(p.coeffs))
    return num / den if den else num


def _roots_of_squarefree(p: ExactPoly, cfg: NumericsConfig):
    if p.degree == 0:
        return [], 0
    p = p.monic()
    if p.degree == 1:
        return [complex(-p.coeffs[0])], 0
    coeffs = _float_coefficients(p)
    seeds = np.roots(coeffs[::-1])
    seeds, _ = _aberth_double(coeffs, seeds, cfg.max_iter)
    roots, iters = _polish_mp(p, seeds, cfg)
    for z in roots:
        if _backward_error(p, z) > cfg.root_tol:
            raise NoConvergence(f"root {z} has backward error above {cfg.root_tol}")
    return roots, iters


def find_roots(p: ExactPoly, cfg: NumericsConfig = DEFAULT_CONFIG) -> list[complex]:
    """All deg(p) roots, multiple roots repeated, sorted by (re, im)."""
    if p.is_zero or p.degree < 1:
        raise ValueError("need a polynomial of degree at least 1")
    out = []
    for factor, mult in squarefree_decomposition(p):
        roots, _ = _roots_of_squarefree(factor, cfg)
        for z in roots:
            out.extend([z] * mult)
    out.sort(key=lambda z: (z.real, z.imag))
    return out


def _check_distinct(roots, cluster_tol: float):
    for i in range(len(roots)):
        for j in range(i + 1, len(roots)):
            if abs(roots[i] - roots[j]) < cluster_tol:
                raise CoincidentPoints(f"roots {i} and {j} closer than {cluster_tol}")


def equilibrium_gradient(roots) -> np.ndarray:
    """F_i = sum_{j != i} 2/(z_i - z_j)^3 - z_i; zero exactly on the locus."""
    z = np.asarray(roots, dtype=complex)
    n = len(z)
    f = -z.copy()
    for i in range(n):
        for j in range(n):
            if j != i:
                f[i] += 2.0 / (z[i] - z[j]) ** 3
    return f


def locus_residual(roots, cluster_tol: float = DEFAULT_CONFIG.cluster_tol) -> float:
    """Max-norm violation of the locus conditions at pairwise distinct points."""
    if len(roots) == 0:
        return 0.0
    _check_distinct(roots, cluster_tol)
    return float(np.max(np.abs(equilibrium_gradient(roots))))


def refine_equilibrium(roots, cfg: NumericsConfig = DEFAULT_CONFIG) -> list[complex]:
    """Newton iteration on the locus conditions with the analytic Jacobian."""
    z = np.asarray(roots, dtype=complex).copy()
    n = len(z)
    if n == 0:
        return []
    _check_distinct(z, cfg.cluster_tol)
    for _ in range(cfg.max_iter):
        f = equilibrium_gradient(z)
        if np.max(np.abs(f)) < cfg.newton_tol:
            return [complex(v) for v in z]
        jac = np.zeros((n, n), dtype=complex)
        for i in range(n):
            acc = 0.0 + 0.0j
            for j in range(n):
                if j != i:
                    g = 6.0 / (z[i] - z[j]) ** 4
                    jac[i, j] = g
                    acc -= g
            jac[i, i] = acc - 1.0
        try:
            delta = np.linalg.solve(jac, -f)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(str(exc)) from exc
        z = z + delta
    raise NoConvergence(f"Newton stalled after {cfg.max_iter} iterations")


def _triangular_to_m(nu: int) -> int:
    m = int((math.isqrt(8 * nu + 1) - 1) // 2)
    if m * (m + 1) // 2 != nu:
        raise NonTriangularMultiplicity(f"cluster size {nu} is not triangular")
    return m


def pole_structure(
    lam: Partition, cfg: NumericsConfig = DEFAULT_CONFIG
) -> LocusConfiguration:
    """Distinct poles of the potential of the partition with pole parameters.

    The exact squarefree decomposition supplies root multiplicities; the
    numeric side only locates the roots of squarefree factors.  Poles that
    land within cluster_tol of each other are merged before the triangular
    test, so a clustering failure surfaces as NonTriangularMultiplicity
    rather than silently wrong data.
    """
    w = wronskian_for_partition(lam)
    if w.degree < 1:
        return LocusConfiguration(lam, [], [], 0.0, 0)
    located = []  # (root, wronskian multiplicity)
    iters = 0
    for factor, mult in squarefree_decomposition(w):
        roots, its = _roots_of_squarefree(factor, cfg)
        iters += its
        located.extend((z, mult) for z in roots)
    located.sort(key=lambda t: (t[0].real, t[0].imag))
    clusters: list[list] = []
    for z, mult in located:
        for cluster in clusters:
            if abs(cluster[0] - z) < cfg.cluster_tol:
                cluster[1] += mult
                break
        else:
            clusters.append([z, mult])
    poles = [c[0] for c in clusters]
    params = [_triangular_to_m(c[1]) for c in clusters]
    residual = None
    if all(m == 1 for m in params):
        refined = refine_equilibrium(poles, cfg)
        # newton iterations counted inside refine are cheap; keep the polish count
        poles = refined
        residual = locus_residual(poles, cfg.cluster_tol)
    return LocusConfiguration(lam, poles, params, residual, iters)


def potential_eval(
    lam: Partition, z: complex, cfg: NumericsConfig = DEFAULT_CONFIG
) -> complex:
    """Value of the potential z^2 - 2 (log W)'' at z, cross-checked two ways.

    Route one differentiates the exact coefficients; route two sums
    m(m+1)/(z - z_i)^2 over the located poles.  The routes must agree to
    1e-8 relative, otherwise the numerics are broken and we fail loudly.
    """
    z = complex(z)
    w = wronskian_for_partition(lam)
    wz = complex(w(z))
    config = pole_structure(lam, cfg)
    if any(abs(z - pole) < cfg.cluster_tol for pole in config.roots):
        raise EvaluationAtPole(f"{z} is within cluster_tol of a pole")
    if wz == 0:
        raise EvaluationAtPole(f"{z} is a root of the Wronskian")
    dwz = complex(w.derivative()(z))
    ddwz = complex(w.derivative().derivative()(z))
    direct = z**2 - 2 * (ddwz * wz - dwz**2) / wz**2
    from_poles = z**2 + sum(
        m * (m + 1) / (z - pole) ** 2
        for pole, m in zip(config.roots, config.multiplicities)
    )
    if abs(direct - from_poles) > 1e-8 * max(1.0, abs(direct)):
        raise ArithmeticError(
            f"potential routes disagree at {z}: {direct} vs {from_poles}"
        )
    return direct


# -- serialization -------------------------------------------------------


def roots_to_csv(config: LocusConfiguration) -> str:
    lines = ["re,im,multiplicity"]
    for z, m in zip(config.roots, config.multiplicities):
        lines.append(f"{z.real!r},{z.imag!r},{m}")
    return "\n".join(lines) + "\n"


def config_to_json(config: LocusConfiguration) -> dict:
    return {
        "partition": list(config.partition.parts),
        "roots": [
            {"re": z.real, "im": z.imag, "multiplicity": m}
            for z, m in zip(config.roots, config.multiplicities)
        ],
        "locus_residual": config.locus_residual,
        "polish_iterations": config.polish_iterations,
    }
