import math

import numpy as np
import pytest

from cmlocus.errors import CoincidentPoints, EvaluationAtPole, NonTriangularMultiplicity
from cmlocus.exact_poly import ExactPoly, wronskian_for_partition
from cmlocus.locus import (
    NumericsConfig,
    config_to_json,
    find_roots,
    locus_residual,
    pole_structure,
    potential_eval,
    refine_equilibrium,
    roots_to_csv,
)
from cmlocus.partitions import Partition, partitions_up_to

CFG = NumericsConfig()
SQRT_HALF = math.sqrt(0.5)


def match_multisets(got, expected, tol):
    assert len(got) == len(expected)
    pool = list(expected)
    for x in got:
        j = min(range(len(pool)), key=lambda k: abs(pool[k] - x))
        assert abs(pool[j] - x) < tol, (x, pool[j])
        pool.pop(j)


class TestConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            NumericsConfig(root_tol=0)
        with pytest.raises(ValueError):
            NumericsConfig(max_iter=0)
        with pytest.raises(ValueError):
            NumericsConfig(digits=5)


class TestFindRoots:
    def test_quadratic(self):
        roots = find_roots(wronskian_for_partition(Partition((2,))), CFG)
        match_multisets(roots, [-SQRT_HALF, SQRT_HALF], 1e-12)

    def test_linear(self):
        assert find_roots(ExactPoly([0, 1]), CFG) == [0j]

    def test_triple_root(self):
        roots = find_roots(ExactPoly([0, 0, 0, 2]), CFG)
        assert roots == [0j, 0j, 0j]

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            find_roots(ExactPoly([1]), CFG)

    def test_reconstruction_matches_monic_coefficients(self):
        for lam in [Partition((3, 1)), Partition((2, 2)), Partition((4, 2, 1))]:
            w = wronskian_for_partition(lam).monic()
            roots = find_roots(w, CFG)
            rebuilt = np.poly(np.array(roots))[::-1]  # lowest degree first
            exact = np.array([float(c) for c in w.coeffs])
            scale = max(1.0, np.abs(exact).max())
            assert np.max(np.abs(rebuilt - exact)) <= 1e-8 * scale


class TestLocusResidual:
    def test_hermite_two_points(self):
        assert locus_residual([SQRT_HALF, -SQRT_HALF]) <= 1e-14

    def test_single_point(self):
        assert locus_residual([0.0]) == 0.0

    def test_hermite_three_points(self):
        roots = find_roots(wronskian_for_partition(Partition((3,))), CFG)
        assert locus_residual(roots) <= 1e-10

    def test_coincident_points(self):
        with pytest.raises(CoincidentPoints):
            locus_residual([0.0, 1e-9])


class TestRefine:
    def test_perturbed_pair_recovers(self):
        refined = refine_equilibrium([SQRT_HALF + 1e-6, -SQRT_HALF + 1e-6], CFG)
        match_multisets(refined, [SQRT_HALF, -SQRT_HALF], 1e-13)

    def test_fixed_point_unchanged(self):
        refined = refine_equilibrium([SQRT_HALF, -SQRT_HALF], CFG)
        match_multisets(refined, [SQRT_HALF, -SQRT_HALF], 1e-15)

    def test_doubled_partition_residual(self):
        lam = Partition((2, 1)).doubled()
        roots = find_roots(wronskian_for_partition(lam), CFG)
        refined = refine_equilibrium(roots, CFG)
        assert locus_residual(refined) <= 1e-9


class TestPoleStructure:
    def test_multiplicity_three_at_origin(self):
        config = pole_structure(Partition((2, 1)), CFG)
        assert len(config.roots) == 1
        assert abs(config.roots[0]) < 1e-12
        assert config.multiplicities == [2]
        assert config.locus_residual is None

    def test_single_box(self):
        config = pole_structure(Partition((1,)), CFG)
        assert config.multiplicities == [1]
        assert abs(config.roots[0]) < 1e-14
        assert config.locus_residual <= 1e-12

    def test_two_simple_poles(self):
        config = pole_structure(Partition((2,)), CFG)
        assert config.multiplicities == [1, 1]
        match_multisets(config.roots, [SQRT_HALF, -SQRT_HALF], 1e-12)
        assert config.locus_residual <= 1e-12

    def test_empty_partition(self):
        config = pole_structure(Partition(), CFG)
        assert config.roots == [] and config.locus_residual == 0.0

    def test_counts_boxes(self):
        for lam in partitions_up_to(8):
            config = pole_structure(lam, CFG)
            total = sum(m * (m + 1) // 2 for m in config.multiplicities)
            assert total == lam.size

    def test_triangular_guard(self):
        with pytest.raises(NonTriangularMultiplicity):
            from cmlocus.locus import _triangular_to_m

            _triangular_to_m(4)


class TestSymmetries:
    def test_roots_symmetric_under_negation(self):
        for lam in [Partition((4,)), Partition((3, 2)), Partition((2, 2, 1))]:
            roots = find_roots(wronskian_for_partition(lam), CFG)
            match_multisets(roots, [-z for z in roots], 1e-10)

    def test_conjugate_roots_are_rotated(self):
        for lam in [Partition((3, 1)), Partition((4, 2)), Partition((2, 2))]:
            roots = find_roots(wronskian_for_partition(lam), CFG)
            conj_roots = find_roots(wronskian_for_partition(lam.conjugate()), CFG)
            match_multisets(conj_roots, [1j * z for z in roots], 1e-9)

    def test_doubled_partitions_have_no_real_roots(self):
        for base in [Partition((1,)), Partition((2, 1)), Partition((3,))]:
            roots = find_roots(wronskian_for_partition(base.doubled()), CFG)
            assert min(abs(z.imag) for z in roots) > 1e-8


class TestPotential:
    def test_one_box(self):
        assert abs(potential_eval(Partition((1,)), 1.0, CFG) - 3.0) < 1e-10

    def test_two_box_row_at_origin(self):
        assert abs(potential_eval(Partition((2,)), 0.0, CFG) - 8.0) < 1e-10

    def test_multiplicity_two_pole(self):
        assert abs(potential_eval(Partition((2, 1)), 1.0, CFG) - 7.0) < 1e-10

    def test_empty_partition_is_pure_oscillator(self):
        assert potential_eval(Partition(), 2.0, CFG) == 4.0

    def test_evaluation_at_pole(self):
        with pytest.raises(EvaluationAtPole):
            potential_eval(Partition((2, 1)), 0.0, CFG)
        with pytest.raises(EvaluationAtPole):
            potential_eval(Partition((2,)), SQRT_HALF + 1e-9, CFG)


class TestSerialization:
    def test_csv_and_json(self):
        config = pole_structure(Partition((2, 1)), CFG)
        text = roots_to_csv(config)
        assert text.splitlines()[0] == "re,im,multiplicity"
        assert len(text.splitlines()) == 2
        blob = config_to_json(config)
        assert blob["partition"] == [2, 1]
        assert blob["roots"][0]["multiplicity"] == 2
