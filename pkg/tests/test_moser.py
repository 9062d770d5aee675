import math
from collections import Counter

import numpy as np
import pytest

from cmlocus.errors import (
    CoincidentPoints,
    NonIntegerSpectrum,
    SimplicityGateFailed,
)
from cmlocus.exact_poly import wronskian_for_partition
from cmlocus.locus import NumericsConfig, find_roots, pole_structure
from cmlocus.moser import (
    build_moser,
    eigenvalues,
    hessian_K,
    hessian_moser_commutator,
    hessian_spectrum_check,
    invert_wronskian_map,
    ladder_relation_residual,
    one_row_identity_check,
    round_spectrum,
)
from cmlocus.partitions import Partition, partitions_up_to

CFG = NumericsConfig()
SQRT_HALF = math.sqrt(0.5)
PAIR = [SQRT_HALF, -SQRT_HALF]


class TestBuildMoser:
    def test_two_point_example(self):
        q, l, m, lp, lm = build_moser(PAIR)
        assert np.allclose(m, [[0.5, -0.5], [-0.5, 0.5]], atol=1e-14)
        assert np.allclose(l, [[0, 1 / math.sqrt(2)], [-1 / math.sqrt(2), 0]], atol=1e-14)
        assert np.allclose(q, np.diag(PAIR), atol=1e-15)
        assert np.allclose(lp, l + q, atol=0)

    def test_single_point(self):
        q, l, m, lp, lm = build_moser([0.0])
        assert m.shape == (1, 1) and m[0, 0] == 0 and l[0, 0] == 0

    def test_row_sums_vanish(self):
        points = [0.3 + 1j, -2.0, 1.5 - 0.2j, 0.1j]
        _, _, m, _, _ = build_moser(points)
        ones = np.ones(len(points), dtype=complex)
        assert np.max(np.abs(m @ ones)) < 1e-13 * np.max(np.abs(m))

    def test_structure(self):
        points = [1.0, 2.0 + 1j, -0.5]
        _, l, m, _, _ = build_moser(points)
        assert np.allclose(l, -l.T, atol=0)
        assert np.allclose(m, m.T, atol=0)

    def test_coincident_rejected(self):
        with pytest.raises(CoincidentPoints):
            build_moser([1.0, 1.0 + 1e-9])


class TestLadderRelations:
    def test_equilibrium(self):
        assert ladder_relation_residual(PAIR) <= 1e-13

    def test_single_point(self):
        assert ladder_relation_residual([0.0]) == 0.0

    def test_off_locus(self):
        assert ladder_relation_residual([1.0, 2.0, 3.5]) > 1e-3


class TestEigenvalues:
    def test_examples(self):
        vals = eigenvalues(np.array([[0.5, -0.5], [-0.5, 0.5]]))
        assert np.allclose(vals, [0, 1], atol=1e-14)
        assert np.allclose(eigenvalues(np.eye(3)), [1, 1, 1], atol=0)
        assert np.allclose(eigenvalues(np.diag([-1.0, 0.0, 2.0])), [-1, 0, 2], atol=0)

    def test_sorted_deterministic(self):
        a = np.array([[0, 1], [-1, 0]], dtype=complex)
        assert eigenvalues(a) == eigenvalues(a)


class TestRounding:
    def test_round_spectrum(self):
        report = round_spectrum([1.0 + 1e-6j, -2.0000004])
        assert report.rounded == [1, -2]
        assert report.max_residual < 1e-5

    def test_rejects_far_values(self):
        with pytest.raises(NonIntegerSpectrum):
            round_spectrum([0.4])

    def test_json(self):
        report = round_spectrum([1.0])
        report.partition = Partition((1,))
        blob = report.to_json()
        assert blob["partition"] == [1] and blob["rounded"] == [1]


class TestInversion:
    def test_two_box_row(self):
        lam, report = invert_wronskian_map(PAIR, CFG)
        assert lam == Partition((2,))
        assert sorted(report.rounded) == [0, 1]

    def test_single_root(self):
        lam, report = invert_wronskian_map([0.0], CFG)
        assert lam == Partition((1,))
        assert report.rounded == [0]

    def test_empty(self):
        lam, _ = invert_wronskian_map([], CFG)
        assert lam == Partition()

    def test_round_trip_small_family(self):
        for lam in partitions_up_to(6):
            w = wronskian_for_partition(lam)
            if not all(m == 1 for m in pole_structure(lam, CFG).multiplicities):
                continue
            roots = pole_structure(lam, CFG).roots
            recovered, report = invert_wronskian_map(roots, CFG)
            assert recovered == lam
            assert Counter(report.rounded) == lam.contents()
            assert report.max_residual <= 1e-6

    def test_non_integer_spectrum(self):
        with pytest.raises(NonIntegerSpectrum):
            invert_wronskian_map([1.0, 2.5], CFG)


class TestHessian:
    def test_two_point_example(self):
        k = hessian_K(PAIR)
        assert np.allclose(k, [[2.5, -1.5], [-1.5, 2.5]], atol=1e-13)

    def test_single_point(self):
        assert np.allclose(hessian_K([0.0]), [[1.0]], atol=0)

    def test_hermite_three_roots(self):
        roots = find_roots(wronskian_for_partition(Partition((3,))), CFG)
        vals = eigenvalues(hessian_K(roots))
        assert np.allclose(vals, [1, 4, 9], atol=1e-10)

    def test_spectrum_check_examples(self):
        assert sorted(hessian_spectrum_check(Partition((2,)), CFG).rounded) == [1, 4]
        assert hessian_spectrum_check(Partition((1,)), CFG).rounded == [1]
        assert sorted(hessian_spectrum_check(Partition((2, 2)), CFG).rounded) == [1, 4, 4, 9]

    def test_matches_squared_hooks_small(self):
        for lam in partitions_up_to(7):
            try:
                report = hessian_spectrum_check(lam, CFG)
            except SimplicityGateFailed:
                continue
            expected = Counter()
            for h, mult in lam.hooks().items():
                expected[h * h] += mult
            assert Counter(report.rounded) == expected

    def test_gate(self):
        with pytest.raises(SimplicityGateFailed):
            hessian_spectrum_check(Partition((2, 1)), CFG)


class TestOneRowIdentity:
    def test_small_n(self):
        assert one_row_identity_check(1, CFG) <= 1e-14
        assert one_row_identity_check(2, CFG) <= 1e-13
        assert one_row_identity_check(5, CFG) <= 1e-10

    def test_commutator_vanishes_for_rows_only(self):
        assert hessian_moser_commutator(Partition((3,)), CFG) <= 1e-10
        assert hessian_moser_commutator(Partition((3, 1)), CFG) > 1e-3
