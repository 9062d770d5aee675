"""Exact univariate polynomial algebra over the rationals.

Provides the monic Hermite family, Wronskians of polynomial lists via
fraction-free Bareiss elimination, squarefree certificates (Yun), exact
resultants, and the Appell/Schur specialization machinery that expresses
Hermite Wronskians as specialized Schur functions.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import ZeroPolynomial
from .partitions import Partition


class ExactPoly:
    """Dense polynomial with Fraction coefficients, lowest degree first.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, ExactPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == ExactPoly([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return ExactPoly(a)

    __radd__ = __add__

    def __neg__(self):
        return ExactPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, ExactPoly) else ExactPoly([-Fraction(other)]))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExactPoly([c * other for c in self.coeffs])
        if self.is_zero or other.is_zero:
            return ExactPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        if other.is_zero:
            raise ZeroPolynomial("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return ExactPoly(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.coeffs[-1]
        for k in range(dq, -1, -1):
            q = rem[k + other.degree] / lead
            quot[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return ExactPoly(quot), ExactPoly(rem)

    def exact_div(self, other) -> "ExactPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("division was not exact")
        return q

    def derivative(self) -> "ExactPoly":
        return ExactPoly([k * c for k, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "ExactPoly":
        if self.is_zero:
            raise ZeroPolynomial("cannot normalize the zero polynomial")
        lead = self.coeffs[-1]
        return ExactPoly([c / lead for c in self.coeffs])

    def scale_argument(self, c) -> "ExactPoly":
        """p(c*z) for rational c."""
        c = Fraction(c)
        power = Fraction(1)
        out = []
        for a in self.coeffs:
            out.append(a * power)
            power *= c
        return ExactPoly(out)

    def __call__(self, x):
        """Horner evaluation; x may be Fraction, float, complex or mpmath."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self):
        if self.is_zero:
            return "ExactPoly(0)"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            if k == 0:
                terms.append(f"{c}")
            else:
                mono = "z" if k == 1 else f"z^{k}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "ExactPoly(" + " + ".join(terms).replace("+ -", "- ") + ")"


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Monic gcd over the rationals; gcd(f, 0) = monic f."""
    while not b.is_zero:
        a, b = b, divmod(a, b)[1]
    return a.monic() if not a.is_zero else ExactPoly()


def poly_det(rows) -> ExactPoly:
    """Determinant of a square matrix of ExactPoly via Bareiss elimination.

    All interior divisions are exact over the polynomial ring, which keeps
    intermediate degrees (and rational heights) under control.
    """
    n = len(rows)
    m = [list(r) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    if n == 0:
        return ExactPoly([1])
    sign = 1
    prev = ExactPoly([1])
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot is None:
                return ExactPoly()
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
            m[i][k] = ExactPoly()
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def frac_det(rows) -> Fraction:
    """Determinant of a square matrix of Fractions (exact Gaussian elimination)."""
    n = len(rows)
    m = [[Fraction(c) for c in r] for r in rows]
    det = Fraction(1)
    for k in range(n):
        pivot = next((i for i in range(k, n) if m[i][k]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != k:
            m[k], m[pivot] = m[pivot], m[k]
            det = -det
        det *= m[k][k]
        inv = 1 / m[k][k]
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] * inv
                for j in range(k, n):
                    m[i][j] -= f * m[k][j]
    return det


# -- Hermite family ---------------------------------------------------------


@lru_cache(maxsize=None)
def hermite_physicist(k: int) -> ExactPoly:
    """Physicists' Hermite polynomial via H_{k+1} = 2z H_k - 2k H_{k-1}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return ExactPoly([1])
    if k == 1:
        return ExactPoly([0, 2])
    two_z = ExactPoly([0, 2])
    return two_z * hermite_physicist(k - 1) - (2 * (k - 1)) * hermite_physicist(k - 2)


def hermite_monic(k: int) -> ExactPoly:
    """Monic rescaling 2^-k H_k; an Appell sequence."""
    return hermite_physicist(k) * Fraction(1, 2**k)


# -- Wronskians --------------------------------------------------------------


def wronskian(fs) -> ExactPoly:
    """Wronskian determinant det(D^{i-1} f_j) of a nonempty polynomial list."""
    fs = list(fs)
    if not fs:
        raise ValueError("need at least one polynomial")
    rows = [fs]
    for _ in range(len(fs) - 1):
        rows.append([f.derivative() for f in rows[-1]])
    return poly_det(rows)


@lru_cache(maxsize=None)
def _wronskian_cached(parts: tuple) -> ExactPoly:
    lam = Partition(parts)
    ks = lam.degree_sequence()
    if not ks:
        return ExactPoly([1])
    return wronskian([hermite_monic(k) for k in reversed(ks)])


def wronskian_for_partition(lam: Partition) -> ExactPoly:
    """Hermite Wronskian of the partition.

    Inputs are the monic Hermite polynomials of the degree sequence, taken
    in increasing degree order; that fixes the overall sign.  The result
    has degree exactly |lambda| and is NOT normalized monic.
    """
    return _wronskian_cached(lam.parts)


def parity_conjugation_checks(lam: Partition) -> tuple[bool, bool]:
    """Check the reflection and conjugation symmetries of the Wronskian.

    First flag: W(-z) = (-1)^|lambda| W(z), exactly.  Second flag: the
    conjugate partition's Wronskian equals (-i)^|lambda| W(iz) after monic
    normalization, computed exactly over Gaussian rationals.  Raw (un-
    normalized) Wronskians satisfy the second identity only up to the
    rational constant exposed by `conjugation_constant`.
    """
    w = wronskian_for_partition(lam)
    n = lam.size
    parity_ok = w.scale_argument(-1) == w * Fraction((-1) ** n)

    real, imag = _rotate_argument(w, n)
    w_conj = wronskian_for_partition(lam.conjugate())
    conj_ok = imag.is_zero and not real.is_zero and real.monic() == w_conj.monic()
    return parity_ok, conj_ok


def conjugation_constant(lam: Partition) -> Fraction:
    """The constant A with W_conj(z) = A * (-i)^|lambda| W(iz), measured exactly."""
    w = wronskian_for_partition(lam)
    real, imag = _rotate_argument(w, lam.size)
    w_conj = wronskian_for_partition(lam.conjugate())
    if not imag.is_zero:
        raise ArithmeticError("rotated Wronskian has a nonzero imaginary part")
    a = w_conj.leading / real.leading
    if w_conj != real * a:
        raise ArithmeticError("rotated Wronskian is not proportional to the conjugate one")
    return a


def _rotate_argument(p: ExactPoly, n: int) -> tuple[ExactPoly, ExactPoly]:
    """Real and imaginary parts of (-i)^n p(iz) over Gaussian rationals."""
    # coefficient k picks up (-i)^n i^k = (-1)^n i^(n+k)
    re = [Fraction(0)] * len(p.coeffs)
    im = [Fraction(0)] * len(p.coeffs)
    sign = (-1) ** n
    for k, c in enumerate(p.coeffs):
        e = (n + k) % 4
        if e == 0:
            re[k] = sign * c
        elif e == 1:
            im[k] = sign * c
        elif e == 2:
            re[k] = -sign * c
        else:
            im[k] = -sign * c
    return ExactPoly(re), ExactPoly(im)


# -- squarefree structure ------------------------------------------------


def squarefree_decomposition(p: ExactPoly) -> list[tuple[ExactPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime squarefree factors with multiplicities."""
    if p.is_zero:
        raise ZeroPolynomial("squarefree decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    p = p.monic()
    dp = p.derivative()
    g = poly_gcd(p, dp)
    if g.degree == 0:
        return [(p, 1)]
    out = []
    b = p.exact_div(g)
    d = dp.exact_div(g) - b.derivative()
    i = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        d = d.exact_div(a) - b.derivative()
        i += 1
    return out


def squarefree_certificate(p: ExactPoly) -> tuple[bool, list[int]]:
    """(is squarefree, per-root multiplicity profile in decreasing order)."""
    profile = []
    for factor, mult in squarefree_decomposition(p):
        profile.extend([mult] * factor.degree)
    profile.sort(reverse=True)
    return all(m == 1 for m in profile), profile


def resultant(p: ExactPoly, q: ExactPoly) -> Fraction:
    """Sylvester-matrix resultant; zero iff the polynomials share a root."""
    if p.is_zero or q.is_zero:
        raise ZeroPolynomial("resultant requires nonzero polynomials")
    m, n = p.degree, q.degree
    if m == 0:
        return p.coeffs[0] ** n
    if n == 0:
        return q.coeffs[0] ** m
    size = m + n
    rows = [[Fraction(0)] * size for _ in range(size)]
    pc = list(reversed(p.coeffs))
    qc = list(reversed(q.coeffs))
    for r in range(n):
        for k, c in enumerate(pc):
            rows[r][r + k] = c
    for r in range(m):
        for k, c in enumerate(qc):
            rows[n + r][r + k] = c
    return frac_det(rows)


# -- Appell sequences and Schur specialization -------------------------------


class AppellSpec:
    """An Appell family pinned down by the log-coefficients b_k.

    The generating function is e^{xt} f(t) with log f(t) = sum b_k t^k / k;
    the monic Hermite family corresponds to b = (0, -1/2).
    """

    __slots__ = ("b",)

    def __init__(self, b=()):
        self.b = tuple(Fraction(x) for x in b)

    def b_at(self, k: int) -> Fraction:
        return self.b[k - 1] if 1 <= k <= len(self.b) else Fraction(0)

    def series(self, order: int) -> list[Fraction]:
        """Taylor coefficients of f(t) = exp(sum b_k t^k / k) through t^order."""
        f = [Fraction(0)] * (order + 1)
        f[0] = Fraction(1)
        for n in range(1, order + 1):
            acc = Fraction(0)
            for m in range(1, min(n, len(self.b)) + 1):
                acc += self.b[m - 1] * f[n - m]
            f[n] = acc / n
        return f


HERMITE_SPEC = AppellSpec((0, Fraction(-1, 2)))


def appell_polynomials(spec: AppellSpec, k: int) -> ExactPoly:
    """k-th member of the Appell family: A_0 = 1 and A_k' = k A_{k-1}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    f = spec.series(k)
    kfac = factorial(k)
    return ExactPoly([Fraction(kfac, factorial(j)) * f[k - j] for j in range(k + 1)])


def power_sums_to_h(spec: AppellSpec, count: int) -> list[ExactPoly]:
    """Complete homogeneous h_0..h_count under p_1 = x + b_1, p_k = b_k.

    Newton's identity k h_k = sum_{i=1..k} p_i h_{k-i}; every h_k is a
    polynomial in x because p_1 is.
    """
    p1 = ExactPoly([spec.b_at(1), 1])
    hs = [ExactPoly([1])]
    for k in range(1, count + 1):
        acc = p1 * hs[k - 1]
        for i in range(2, k + 1):
            bi = spec.b_at(i)
            if bi:
                acc = acc + hs[k - i] * bi
        hs.append(acc * Fraction(1, k))
    return hs


def schur_specialized(lam: Partition, spec: AppellSpec) -> ExactPoly:
    """Schur function of the partition under the Appell specialization.

    Evaluated through the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).
    """
    if lam.size == 0:
        return ExactPoly([1])
    l = lam.length
    top = lam.parts[0] + l - 1
    hs = power_sums_to_h(spec, top)

    def h(idx):
        if idx < 0:
            return ExactPoly()
        return hs[idx]

    rows = [[h(lam.parts[i] - (i + 1) + (j + 1)) for j in range(l)] for i in range(l)]
    return poly_det(rows)


# -- serialization ------------------------------------------------------------


def poly_to_strings(p: ExactPoly) -> list[str]:
    """JSON-friendly form: 'num/den' per coefficient, lowest degree first."""
    return [f"{c.numerator}/{c.denominator}" for c in p.coeffs]


def poly_from_strings(strings) -> ExactPoly:
    return ExactPoly([Fraction(s) for s in strings])
