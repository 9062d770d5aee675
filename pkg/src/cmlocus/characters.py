"""Integer Laurent-polynomial characters of the scaling action at fixed points.

Three routes to the same character are implemented so their coincidence can
be proved by computation: the content-generating-function formula, the
leg/content exponent sum, and the hook-length sum.  Positive weights squared
predict the Hessian spectrum at the matching equilibrium.
"""

from __future__ import annotations

from collections import Counter
from fractions import Fraction

from .errors import AsymmetricCharacter, DimensionMismatch, NonzeroConstantTerm
from .partitions import Partition


class LaurentPoly:
    """Laurent polynomial in one formal variable with integer coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms
        out = {}
        for e, c in items:
            c = int(c)
            if c:
                out[int(e)] = out.get(int(e), 0) + c
                if out[int(e)] == 0:
                    del out[int(e)]
        self.terms = out

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exponent: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
            if out[e] == 0:
                del out[e]
        return LaurentPoly(out)

    def __sub__(self, other):
        return self + LaurentPoly({e: -c for e, c in other.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def invert_variable(self) -> "LaurentPoly":
        """Substitute the variable by its inverse."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def coefficient(self, exponent: int) -> int:
        return self.terms.get(exponent, 0)

    def at_one(self) -> int:
        """Evaluation at 1 (the sum of coefficients)."""
        return sum(self.terms.values())

    def is_symmetric(self) -> bool:
        return self.terms == {-e: c for e, c in self.terms.items()}

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "LaurentPoly(0)"
        bits = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                bits.append(f"{c}")
            else:
                mono = "u" if e == 1 else f"u^{e}"
                bits.append(mono if c == 1 else f"{c}*{mono}")
        return "LaurentPoly(" + " + ".join(bits).replace("+ -", "- ") + ")"

    def to_json_dict(self) -> dict:
        return {str(e): c for e, c in sorted(self.terms.items())}

    @classmethod
    def from_json_dict(cls, d: dict) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in d.items()})


def content_generating(lam: Partition) -> LaurentPoly:
    """Sum of the monomials u^{content} over the boxes of the diagram."""
    return LaurentPoly(Counter(j - i for i, j in lam.boxes()).items())


def character(lam: Partition) -> LaurentPoly:
    """Character of the linearised scaling action at the fixed point of lam.

    With G the content generating function: (u - 2 + 1/u) G(u) G(1/u)
    + G(u) + G(1/u).
    """
    g = content_generating(lam)
    ginv = g.invert_variable()
    bracket = LaurentPoly({1: 1, 0: -2, -1: 1})
    return bracket * g * ginv + g + ginv


def character_from_legs(lam: Partition) -> LaurentPoly:
    """Same character built from the exponents lambda_{leg+1} - content per box."""
    out = Counter()
    for box in lam.boxes():
        i, j = box
        e = lam.part(lam.leg(box) + 1) - (j - i)
        out[e] += 1
        out[-e] += 1
    return LaurentPoly(out.items())


def character_from_hooks(lam: Partition) -> LaurentPoly:
    """Same character built from hook lengths: sum of u^h + u^-h per box."""
    out = Counter()
    for h, mult in lam.hooks().items():
        out[h] += mult
        out[-h] += mult
    return LaurentPoly(out.items())


def one_hook_character(a: int, l: int) -> LaurentPoly:
    """Closed form for the single-hook diagram with arm a and leg l."""
    if a < 0 or l < 0:
        raise ValueError("arm and leg must be non-negative")
    out = Counter()
    for j in range(-l, a + 1):
        if j == 0:
            continue
        out[j] += 1
        out[-j] += 1
    out[a + l + 1] += 1
    out[-(a + l + 1)] += 1
    return LaurentPoly(out.items())


def weights_from_character(chi: LaurentPoly) -> Counter:
    """Positive weight multiset {s : coefficient of u^s}, s > 0.

    Requires a symmetric character with non-negative coefficients and no
    constant term; the squares of these weights predict the Hessian
    spectrum.
    """
    if not chi.is_symmetric():
        raise AsymmetricCharacter(str(chi))
    if chi.coefficient(0) != 0:
        raise NonzeroConstantTerm(str(chi))
    if any(c < 0 for c in chi.terms.values()):
        raise AsymmetricCharacter(f"negative coefficients in {chi}")
    return Counter({e: c for e, c in chi.terms.items() if e > 0})


def spin_frequencies(lams, a) -> Counter:
    """Oscillation frequency multiset near a stationary point of the spin system.

    For partitions lam^(1..n) and rational parameters a_1..a_n the multiset
    contains +/- (a_alpha - a_beta + i + j - 1 - conj(lam^(beta))_j
    - lam^(alpha)_i) over all pairs (alpha, beta) and boxes (i, j) of
    lam^(beta).  For n = 1 this collapses to +/- the hook lengths.
    """
    lams = [lam if isinstance(lam, Partition) else Partition(lam) for lam in lams]
    a = [Fraction(x) for x in a]
    if len(lams) != len(a) or not lams:
        raise DimensionMismatch(f"{len(lams)} partitions vs {len(a)} parameters")
    out = Counter()
    conjs = [lam.conjugate() for lam in lams]
    for alpha in range(len(lams)):
        for beta in range(len(lams)):
            for (i, j) in lams[beta].boxes():
                val = a[alpha] - a[beta] + i + j - 1 - conjs[beta].part(j) - lams[alpha].part(i)
                out[val] += 1
                out[-val] += 1
    return out
