"""Integer partitions and Young-diagram combinatorics.

Partitions are the master index of the toolkit: every Wronskian, locus
configuration, fixed-point datum and character is labelled by one.  Boxes
of the diagram are 1-based (row, col) pairs, matrix style; integer
multisets are represented as ``collections.Counter``.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator

from .errors import BoxOutsideDiagram, NotAContentMultiset, ParseError


class Partition:
    """A weakly decreasing tuple of positive integers (possibly empty)."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(int(p) for p in parts)
        for i, p in enumerate(parts):
            if p < 1:
                raise ValueError(f"parts must be positive, got {p}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        self.parts = parts

    # -- basic shape data -------------------------------------------------

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """Row length lambda_i (1-based); 0 beyond the last row."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def boxes(self) -> Iterator[tuple[int, int]]:
        """All boxes (i, j), row by row, 1-based."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def __contains__(self, box) -> bool:
        i, j = box
        return 1 <= i <= len(self.parts) and 1 <= j <= self.parts[i - 1]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def __eq__(self, other):
        if isinstance(other, Partition):
            return self.parts == other.parts
        if isinstance(other, tuple):
            return self.parts == other
        return NotImplemented

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"

    # -- diagram combinatorics --------------------------------------------

    def conjugate(self) -> "Partition":
        """Transpose of the diagram (column lengths); an involution."""
        if not self.parts:
            return Partition()
        cols = [0] * self.parts[0]
        for p in self.parts:
            for j in range(p):
                cols[j] += 1
        return Partition(cols)

    def content(self, box) -> int:
        """Content j - i of a box."""
        if box not in self:
            raise BoxOutsideDiagram(f"{box} not in {self}")
        i, j = box
        return j - i

    def arm(self, box) -> int:
        """Boxes strictly to the right of the box in its row."""
        if box not in self:
            raise BoxOutsideDiagram(f"{box} not in {self}")
        i, j = box
        return self.parts[i - 1] - j

    def leg(self, box) -> int:
        """Boxes strictly below the box in its column."""
        if box not in self:
            raise BoxOutsideDiagram(f"{box} not in {self}")
        i, j = box
        return sum(1 for p in self.parts[i:] if p >= j)

    def hook(self, box) -> int:
        """Hook length arm + leg + 1."""
        return self.arm(box) + self.leg(box) + 1

    def contents(self) -> Counter:
        """Multiset {j - i : (i, j) in the diagram}."""
        return Counter(j - i for i, j in self.boxes())

    def hooks(self) -> Counter:
        """Multiset of hook lengths of all boxes."""
        conj = self.conjugate()
        return Counter(
            self.parts[i - 1] - j + conj.parts[j - 1] - i + 1 for i, j in self.boxes()
        )

    def cm_exponents(self) -> Counter:
        """Multiset {lambda_{leg(box)+1} - content(box)} over all boxes.

        Coincides with the hook-length multiset; both are exposed so the
        coincidence can be verified rather than assumed.
        """
        out = Counter()
        for box in self.boxes():
            i, j = box
            out[self.part(self.leg(box) + 1) - (j - i)] += 1
        return out

    def box_star(self, box) -> tuple[int, int]:
        """The box (conj_j - i + 1, j) whose hook equals lambda_{leg+1} - content."""
        if box not in self:
            raise BoxOutsideDiagram(f"{box} not in {self}")
        i, j = box
        return (self.conjugate().parts[j - 1] - i + 1, j)

    def frobenius(self) -> "FrobeniusCoordinates":
        """Arm/leg lengths of the diagonal hooks."""
        conj = self.conjugate()
        k = 0
        while k < len(self.parts) and self.parts[k] >= k + 1:
            k += 1
        arms = tuple(self.parts[i] - (i + 1) for i in range(k))
        legs = tuple(conj.parts[i] - (i + 1) for i in range(k))
        return FrobeniusCoordinates(arms, legs)

    def doubled(self) -> "Partition":
        """Each part repeated twice."""
        out = []
        for p in self.parts:
            out += [p, p]
        return Partition(out)

    def degree_sequence(self) -> tuple[int, ...]:
        """Strictly decreasing degrees k_i = lambda_i + length - i labelling the Wronskian."""
        l = len(self.parts)
        return tuple(p + l - (i + 1) for i, p in enumerate(self.parts))


class FrobeniusCoordinates:
    """Diagonal-hook arms a_1 > ... > a_k >= 0 and legs l_1 > ... > l_k >= 0."""

    __slots__ = ("arms", "legs")

    def __init__(self, arms, legs):
        arms = tuple(arms)
        legs = tuple(legs)
        if len(arms) != len(legs):
            raise ValueError("arms and legs must have equal length")
        for seq in (arms, legs):
            if any(seq[i] <= seq[i + 1] for i in range(len(seq) - 1)):
                raise ValueError(f"coordinates must be strictly decreasing: {seq}")
            if seq and seq[-1] < 0:
                raise ValueError("coordinates must be non-negative")
        self.arms = arms
        self.legs = legs

    @property
    def rank(self) -> int:
        """Number of diagonal boxes."""
        return len(self.arms)

    @property
    def hook_lengths(self) -> tuple[int, ...]:
        """n_i = a_i + l_i + 1, the diagonal hook lengths."""
        return tuple(a + l + 1 for a, l in zip(self.arms, self.legs))

    @property
    def hook_rows(self) -> tuple[int, ...]:
        """r_i = l_i + 1, the in-hook position of the diagonal box."""
        return tuple(l + 1 for l in self.legs)

    def to_partition(self) -> Partition:
        """Rebuild the partition from its diagonal hooks."""
        k = self.rank
        rows = [self.arms[i] + (i + 1) for i in range(k)]
        max_row = max((self.legs[i] + (i + 1) for i in range(k)), default=0)
        for r in range(k + 1, max_row + 1):
            rows.append(sum(1 for i in range(k) if self.legs[i] + (i + 1) >= r))
        return Partition(rows)

    def __eq__(self, other):
        return (
            isinstance(other, FrobeniusCoordinates)
            and self.arms == other.arms
            and self.legs == other.legs
        )

    def __repr__(self):
        a = ",".join(map(str, self.arms))
        l = ",".join(map(str, self.legs))
        return f"({a}|{l})"


def enumerate_partitions(n: int) -> list[Partition]:
    """All partitions of n, in ascending lexicographic order of part tuples."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def gen(remaining, maxpart):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, maxpart), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return [Partition(t) for t in sorted(gen(n, n))]


def partitions_up_to(n: int, include_empty: bool = False) -> list[Partition]:
    """All partitions of sizes 1..n (optionally also the empty one)."""
    out = [Partition()] if include_empty else []
    for m in range(1, n + 1):
        out.extend(enumerate_partitions(m))
    return out


def partition_from_contents(contents: Counter) -> Partition:
    """Invert the content multiset: the unique partition with these contents.

    Greedy row peeling: row i must contribute exactly the contents
    {1-i, ..., lambda_i - i}, and the largest remaining content pins
    lambda_i.  Any missing value or leftover means no partition matches.
    """
    remaining = Counter({int(k): v for k, v in contents.items() if v})
    if any(v < 0 for v in remaining.values()):
        raise NotAContentMultiset("negative multiplicities")
    rows = []
    i = 1
    while remaining:
        lam_i = max(remaining) + i
        if lam_i < 1 or (rows and lam_i > rows[-1]):
            raise NotAContentMultiset(f"row {i} would have length {lam_i}")
        for c in range(1 - i, lam_i - i + 1):
            if remaining[c] <= 0:
                raise NotAContentMultiset(f"missing content {c} in row {i}")
            remaining[c] -= 1
            if remaining[c] == 0:
                del remaining[c]
        rows.append(lam_i)
        i += 1
    lam = Partition(rows)
    if lam.contents() != Counter({int(k): v for k, v in contents.items() if v}):
        raise NotAContentMultiset("reconstruction failed to reproduce the multiset")
    return lam


def parse_partition(text: str) -> Partition:
    """Parse the text form: comma-separated decreasing integers, '0' for empty."""
    text = text.strip()
    if not text:
        raise ParseError("empty partition text")
    if text == "0":
        return Partition()
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad partition text {text!r}") from exc
    try:
        return Partition(parts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def format_partition(lam: Partition) -> str:
    """Inverse of parse_partition."""
    return ",".join(map(str, lam.parts)) if lam.parts else "0"
