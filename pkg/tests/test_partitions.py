from collections import Counter

import pytest
from hypothesis import given, strategies as st

from cmlocus.errors import BoxOutsideDiagram, NotAContentMultiset, ParseError
from cmlocus.partitions import (
    FrobeniusCoordinates,
    Partition,
    enumerate_partitions,
    format_partition,
    parse_partition,
    partition_from_contents,
    partitions_up_to,
)


def brute_hooks(parts):
    """Independent hook-length oracle: count arm and leg boxes directly."""
    cells = {(i, j) for i, row in enumerate(parts, 1) for j in range(1, row + 1)}
    out = Counter()
    for (i, j) in cells:
        arm = sum(1 for (a, b) in cells if a == i and b > j)
        leg = sum(1 for (a, b) in cells if b == j and a > i)
        out[arm + leg + 1] += 1
    return out


def brute_partition_from_contents(cnt):
    """Search every partition of the right size for a matching content multiset."""
    n = sum(cnt.values())
    matches = [lam for lam in enumerate_partitions(n) if lam.contents() == cnt]
    return matches


partition_strategy = st.lists(st.integers(1, 9), min_size=0, max_size=7).map(
    lambda xs: Partition(sorted(xs, reverse=True))
)


class TestBasics:
    def test_invalid_parts(self):
        with pytest.raises(ValueError):
            Partition((1, 2))
        with pytest.raises(ValueError):
            Partition((2, 0))

    def test_size_and_membership(self):
        lam = Partition((4, 3, 1))
        assert lam.size == 8
        assert lam.length == 3
        assert (1, 4) in lam and (3, 1) in lam
        assert (3, 2) not in lam and (4, 1) not in lam
        assert lam.part(2) == 3 and lam.part(5) == 0

    def test_box_accessors(self):
        lam = Partition((4, 3, 1))
        assert lam.content((1, 4)) == 3
        assert lam.arm((1, 1)) == 3
        assert lam.leg((1, 1)) == 2
        assert lam.hook((1, 1)) == 6
        with pytest.raises(BoxOutsideDiagram):
            lam.content((2, 4))


class TestConjugate:
    def test_examples(self):
        assert Partition((4, 3, 1)).conjugate() == Partition((3, 2, 2, 1))
        assert Partition().conjugate() == Partition()
        assert Partition((2,)).conjugate() == Partition((1, 1))

    def test_involution_all_sizes(self):
        for lam in partitions_up_to(20, include_empty=True):
            assert lam.conjugate().conjugate() == lam


class TestContents:
    def test_examples(self):
        assert Partition((4, 3, 1)).contents() == Counter(
            {-2: 1, -1: 1, 0: 2, 1: 2, 2: 1, 3: 1}
        )
        assert Partition((1,)).contents() == Counter({0: 1})
        for n in range(1, 8):
            assert Partition((n,)).contents() == Counter(range(n))

    def test_cardinality_and_negation(self):
        for lam in partitions_up_to(12):
            cnt = lam.contents()
            assert sum(cnt.values()) == lam.size
            assert lam.conjugate().contents() == Counter({-c: m for c, m in cnt.items()})


class TestContentInversion:
    def test_examples(self):
        assert partition_from_contents(
            Counter({-2: 1, -1: 1, 0: 2, 1: 2, 2: 1, 3: 1})
        ) == Partition((4, 3, 1))
        assert partition_from_contents(Counter({0: 1})) == Partition((1,))
        assert partition_from_contents(Counter()) == Partition()

    def test_multiset_of_2_2(self):
        # {0,0,1,-1} is the content multiset of (2,2); the brute-force oracle
        # over all partitions of 4 finds exactly that match.
        cnt = Counter({0: 2, 1: 1, -1: 1})
        assert brute_partition_from_contents(cnt) == [Partition((2, 2))]
        assert partition_from_contents(cnt) == Partition((2, 2))

    @pytest.mark.parametrize(
        "cnt",
        [
            Counter({0: 2}),
            Counter({1: 1}),
            Counter({0: 1, 2: 1}),
            Counter({0: 1, 1: 2}),
        ],
    )
    def test_rejects_non_content_multisets(self, cnt):
        assert brute_partition_from_contents(cnt) == []
        with pytest.raises(NotAContentMultiset):
            partition_from_contents(cnt)

    def test_round_trip_all_sizes(self):
        for lam in partitions_up_to(20, include_empty=True):
            assert partition_from_contents(lam.contents()) == lam


class TestHooks:
    def test_examples(self):
        assert Partition((2, 1)).hooks() == Counter({3: 1, 1: 2})
        assert Partition((1,)).hooks() == Counter({1: 1})
        assert Partition((2,)).hooks() == Counter({2: 1, 1: 1})

    def test_against_brute_oracle(self):
        for lam in partitions_up_to(10):
            assert lam.hooks() == brute_hooks(lam.parts)

    def test_conjugation_invariance(self):
        for lam in partitions_up_to(14):
            assert lam.conjugate().hooks() == lam.hooks()


class TestCMExponents:
    def test_examples(self):
        assert Partition((1,)).cm_exponents() == Counter({1: 1})
        assert Partition((2, 1)).cm_exponents() == Counter({3: 1, 1: 2})

    def test_equals_hooks_and_pointwise_star(self):
        for lam in partitions_up_to(14):
            assert lam.cm_exponents() == lam.hooks()
            for box in lam.boxes():
                star = lam.box_star(box)
                assert star in lam
                i, j = box
                assert lam.part(lam.leg(box) + 1) - (j - i) == lam.hook(star)


class TestBoxStar:
    def test_examples(self):
        assert Partition((1,)).box_star((1, 1)) == (1, 1)
        assert Partition((2, 1)).box_star((1, 1)) == (2, 1)
        assert Partition((2, 1)).box_star((1, 2)) == (1, 2)
        with pytest.raises(BoxOutsideDiagram):
            Partition((2, 1)).box_star((2, 2))


class TestFrobenius:
    def test_examples(self):
        fc = Partition((4, 3, 1)).frobenius()
        assert fc == FrobeniusCoordinates((3, 1), (2, 0))
        assert Partition((1,)).frobenius() == FrobeniusCoordinates((0,), (0,))
        assert Partition((2,)).frobenius() == FrobeniusCoordinates((1,), (0,))

    def test_derived_quantities(self):
        fc = Partition((4, 3, 1)).frobenius()
        assert fc.hook_lengths == (6, 2)
        assert fc.hook_rows == (3, 1)

    def test_round_trip_and_size(self):
        for lam in partitions_up_to(16):
            fc = lam.frobenius()
            assert sum(fc.hook_lengths) == lam.size
            assert fc.to_partition() == lam


class TestShapeOps:
    def test_doubled(self):
        assert Partition((10, 4, 3)).doubled() == Partition((10, 10, 4, 4, 3, 3))
        assert Partition().doubled() == Partition()
        assert Partition((1,)).doubled() == Partition((1, 1))

    def test_degree_sequence(self):
        assert Partition((4, 3, 1)).degree_sequence() == (6, 4, 1)
        assert Partition((1,)).degree_sequence() == (1,)
        assert Partition((2, 1)).degree_sequence() == (3, 1)

    @given(partition_strategy)
    def test_degree_sequence_strictly_decreasing(self, lam):
        ks = lam.degree_sequence()
        assert all(a > b for a, b in zip(ks, ks[1:]))
        assert all(k >= 1 for k in ks)


class TestEnumeration:
    def test_counts(self):
        assert enumerate_partitions(0) == [Partition()]
        assert len(enumerate_partitions(4)) == 5
        assert len(enumerate_partitions(10)) == 42

    def test_deterministic_order(self):
        once = [lam.parts for lam in enumerate_partitions(6)]
        again = [lam.parts for lam in enumerate_partitions(6)]
        assert once == again == sorted(once)


class TestTextForm:
    def test_round_trip(self):
        for text in ["4,3,1", "0", "1", "10,10,4,4,3,3"]:
            assert format_partition(parse_partition(text)) == text

    def test_errors(self):
        for bad in ["", "a", "1,2", "3,0", "1.5"]:
            with pytest.raises(ParseError):
                parse_partition(bad)
