"""Exact fixed-point data on the Calogero-Moser space of matrix quadruples.

For each partition the scaling action fixes a single orbit, representable by
rational matrices (X, Z, v, w) built hook by hook from the Frobenius
coordinates, together with the grading matrix M.  Everything here is exact:
matrices are numpy object arrays of Fractions, and every relation check is
an equality of rationals, not a residual.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import DimensionMismatch, EmptyPartition, InconsistentBlockSystem
from .exact_poly import ExactPoly
from .partitions import FrobeniusCoordinates, Partition


def frac_array(rows) -> np.ndarray:
    return np.array([[Fraction(c) for c in row] for row in rows], dtype=object)


def frac_zeros(m: int, n: int) -> np.ndarray:
    return np.full((m, n), Fraction(0), dtype=object)


def frac_eye(n: int) -> np.ndarray:
    out = frac_zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def exact_equal(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and bool((a == b).all())


def _jordan_block(m: int) -> np.ndarray:
    out = frac_zeros(m, m)
    for i in range(m - 1):
        out[i, i + 1] = Fraction(1)
    return out


def _require_nonempty(lam: Partition) -> FrobeniusCoordinates:
    if lam.size == 0:
        raise EmptyPartition("construction needs at least one box")
    return lam.frobenius()


def build_Z(lam: Partition) -> np.ndarray:
    """Block-diagonal nilpotent matrix with one Jordan block per diagonal hook."""
    fc = _require_nonempty(lam)
    n = lam.size
    out = frac_zeros(n, n)
    offset = 0
    for ni in fc.hook_lengths:
        out[offset : offset + ni, offset : offset + ni] = _jordan_block(ni)
        offset += ni
    return out


def _x_block(ni: int, nj: int, ri: int, rj: int, same_block: bool) -> list[list[Fraction]]:
    """The unique ni-by-nj block supported on diagonal rj - ri - 1.

    The block commutation relation couples consecutive entries of that
    diagonal through the entries of the next diagonal up; propagating the
    resulting two-term equations resolves the whole chain.  Any leftover
    unknown or failed boundary equation is a convention bug.
    """
    d = rj - ri - 1
    blk = [[Fraction(0)] * nj for _ in range(ni)]
    chain = [a for a in range(1, ni + 1) if 1 <= a + d <= nj]
    equations = []
    for a in range(1, ni + 1):
        b = a + d + 1
        if not (1 <= b <= nj):
            continue
        rhs = Fraction(0)
        if (a, b) == (ri, rj):
            rhs += ni
        if same_block and a == b:
            rhs -= 1
        equations.append((a, rhs))  # x[a, a+d] - x[a+1, a+1+d] = rhs

    values: dict[int, Fraction] = {}
    chain_set = set(chain)

    def lookup(t):
        if t not in chain_set:
            return Fraction(0)
        return values.get(t)

    pending = list(equations)
    while pending:
        progressed = False
        remaining = []
        for a, rhs in pending:
            va, vb = lookup(a), lookup(a + 1)
            if va is not None and vb is not None:
                if va - vb != rhs:
                    raise InconsistentBlockSystem(
                        f"block ({ni},{nj},{ri},{rj}): equation at {a} violated"
                    )
            elif va is not None and (a + 1) in chain_set:
                values[a + 1] = va - rhs
            elif vb is not None and a in chain_set:
                values[a] = rhs + vb
            else:
                remaining.append((a, rhs))
                continue
            progressed = True
        if not progressed and remaining:
            raise InconsistentBlockSystem(
                f"block ({ni},{nj},{ri},{rj}): chain did not resolve"
            )
        pending = remaining
    if set(values) != chain_set:
        raise InconsistentBlockSystem(
            f"block ({ni},{nj},{ri},{rj}): undetermined entries"
        )
    for a in chain:
        blk[a - 1][a + d - 1] = values[a]
    return blk


def build_X(lam: Partition) -> np.ndarray:
    """Block matrix solving the hook-wise commutation relations against Z."""
    fc = _require_nonempty(lam)
    ns, rs = fc.hook_lengths, fc.hook_rows
    n = lam.size
    out = frac_zeros(n, n)
    offsets = [0]
    for ni in ns:
        offsets.append(offsets[-1] + ni)
    for i, ni in enumerate(ns):
        for j, nj in enumerate(ns):
            blk = _x_block(ni, nj, rs[i], rs[j], i == j)
            out[offsets[i] : offsets[i] + ni, offsets[j] : offsets[j] + nj] = frac_array(blk)
    # the construction is only trusted after the global relation holds
    z = build_Z(lam)
    v, w = build_vw(lam)
    if not exact_equal(commutator(out, z) + frac_eye(n), v @ w):
        raise InconsistentBlockSystem(f"assembled X fails the defining relation for {lam}")
    return out


def build_vw(lam: Partition) -> tuple[np.ndarray, np.ndarray]:
    """Rank-one factors: v stacks n_i e_{r_i}, w stacks e_{r_j}^T."""
    fc = _require_nonempty(lam)
    n = lam.size
    v = frac_zeros(n, 1)
    w = frac_zeros(1, n)
    offset = 0
    for ni, ri in zip(fc.hook_lengths, fc.hook_rows):
        v[offset + ri - 1, 0] = Fraction(ni)
        w[0, offset + ri - 1] = Fraction(1)
        offset += ni
    return v, w


def build_M(lam: Partition) -> np.ndarray:
    """Diagonal grading matrix: block i runs -l_i, ..., -1, 0, 1, ..., a_i."""
    fc = _require_nonempty(lam)
    n = lam.size
    out = frac_zeros(n, n)
    offset = 0
    for ni, li in zip(fc.hook_lengths, fc.legs):
        for t in range(ni):
            out[offset + t, offset + t] = Fraction(t - li)
        offset += ni
    return out


class WilsonData:
    """Exact fixed-point datum (X, Z, M, v, w) for one partition."""

    __slots__ = ("partition", "X", "Z", "M", "v", "w")

    def __init__(self, partition, X, Z, M, v, w):
        self.partition = partition
        self.X = X
        self.Z = Z
        self.M = M
        self.v = v
        self.w = w

    @property
    def L(self) -> np.ndarray:
        return self.X + self.Z * Fraction(1, 2)

    @property
    def Q(self) -> np.ndarray:
        return self.X - self.Z * Fraction(1, 2)

    @property
    def size(self) -> int:
        return self.X.shape[0]


def build_wilson_data(lam: Partition) -> WilsonData:
    x = build_X(lam)
    z = build_Z(lam)
    m = build_M(lam)
    v, w = build_vw(lam)
    return WilsonData(lam, x, z, m, v, w)


def verify_relations(data: WilsonData) -> dict[str, bool]:
    """Exact pass/fail for every defining relation of the fixed-point datum."""
    n = data.size
    eye = frac_eye(n)
    vw = data.v @ data.w
    l, q = data.L, data.Q
    zeros_col = frac_zeros(n, 1)
    zeros_row = frac_zeros(1, n)
    return {
        "bracket_LQ": exact_equal(commutator(l, q), eye - vw),
        "grading_Q": exact_equal(commutator(data.M, q), l),
        "grading_L": exact_equal(commutator(data.M, l), q),
        "annihilates_vw": exact_equal(data.M @ data.v, zeros_col)
        and exact_equal(data.w @ data.M, zeros_row),
        "wilson_equation": exact_equal(commutator(data.X, data.Z) + eye, vw),
        "scaling_weights": exact_equal(commutator(data.M, data.X), data.X)
        and exact_equal(commutator(data.M, data.Z), -data.Z),
    }


def nu_map(l: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(L, Q) -> (X, Z) with X = (L+Q)/2 and Z = L-Q."""
    if l.shape != q.shape or l.shape[0] != l.shape[1]:
        raise DimensionMismatch(f"{l.shape} vs {q.shape}")
    return (l + q) * Fraction(1, 2), l - q


def nu_inverse(x: np.ndarray, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(X, Z) -> (L, Q) with L = X + Z/2 and Q = X - Z/2."""
    if x.shape != z.shape or x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"{x.shape} vs {z.shape}")
    half = Fraction(1, 2)
    return x + z * half, x - z * half


def trace(a: np.ndarray) -> Fraction:
    return sum((a[i, i] for i in range(a.shape[0])), Fraction(0))


def charpoly(a: np.ndarray) -> ExactPoly:
    """det(zI - A) by the Faddeev-LeVerrier recursion, exact over rationals."""
    n = a.shape[0]
    eye = frac_eye(n)
    m = frac_zeros(n, n)
    c = Fraction(1)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = c
    for k in range(1, n + 1):
        m = a @ m + c * eye
        c = -trace(a @ m) / k
        coeffs[n - k] = c
    return ExactPoly(coeffs)


def charpoly_Q(lam: Partition) -> ExactPoly:
    """Characteristic polynomial of Q; matches the monic Hermite Wronskian."""
    data = build_wilson_data(lam)
    return charpoly(data.Q)


def matrix_to_strings(a: np.ndarray) -> list[list[str]]:
    return [[f"{c.numerator}/{c.denominator}" for c in row] for row in a.tolist()]


def wilson_to_json(data: WilsonData) -> dict:
    fc = data.partition.frobenius()
    return {
        "partition": list(data.partition.parts),
        "hook_lengths": list(fc.hook_lengths),
        "hook_rows": list(fc.hook_rows),
        "X": matrix_to_strings(data.X),
        "Z": matrix_to_strings(data.Z),
        "M": matrix_to_strings(data.M),
        "v": matrix_to_strings(data.v),
        "w": matrix_to_strings(data.w),
    }
