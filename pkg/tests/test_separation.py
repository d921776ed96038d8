"""Overlap search, separation metrics and the freeness certificates."""

from fractions import Fraction as F

import pytest

from ifslab import (
    Matrix2,
    MoebiusMap,
    appendix_conjugacy_check,
    diophantine_metric,
    exact_overlap_search,
    fixed_point_probe,
    make_family,
    overlap_search_maps,
    relation_search_ABC,
    residue_freeness_check,
    sesc_metric,
    triangular_word_matrix,
)
from ifslab.separation import E_MATRIX, F_MATRIX


class TestOverlapSearch:
    def test_family_free_to_level_four(self):
        report = exact_overlap_search(1, 4)
        assert report.pairs == ()
        assert report.words_searched == 3 + 9 + 27 + 81

    def test_duplicate_generators_found_immediately(self):
        f2 = make_family(1).maps[1]
        report = overlap_search_maps([f2, f2], 1)
        assert ("1", "2") in report.pairs

    def test_distinct_words_distinct_matrices(self):
        fam = make_family(1)
        m13 = fam.maps[0].compose(fam.maps[2]).matrix
        m23 = fam.maps[1].compose(fam.maps[2]).matrix
        assert m13 != m23

    def test_other_parameters(self):
        for t in (F(1, 2), F(3), F(7, 5)):
            assert exact_overlap_search(t, 3).pairs == ()


class TestSescMetric:
    def test_shared_fixed_point_probe_collapses(self):
        report = sesc_metric(1, 1, [F(0)])
        assert report.delta == 0
        assert report.c_n == 0.0

    def test_right_endpoint_probe(self):
        report = sesc_metric(1, 1, [F(2, 3)])
        assert report.delta == F(1, 15)  # |f1 - f2| at 2/3; the other pairs are farther
        assert report.pairs_compared == 3

    def test_fixed_point_probe_helper(self):
        assert fixed_point_probe(1) == F(2, 3)
        assert fixed_point_probe(F(3)) == F(2)

    def test_duplicate_generators_give_zero(self):
        f2 = make_family(1).maps[1]
        report = sesc_metric(1, 1, [F(1, 3), F(2, 3)], maps=[f2, f2])
        assert report.delta == 0

    def test_positive_when_free_with_three_probes(self):
        # three probe points determine a Moebius map, so distinct matrices
        # at an overlap-free level must separate somewhere
        assert exact_overlap_search(1, 3).pairs == ()
        report = sesc_metric(1, 3, [F(0), F(1), F(7, 5)])
        assert report.delta > 0
        assert report.c_n > 0

    def test_empty_probes_rejected(self):
        with pytest.raises(ValueError):
            sesc_metric(1, 1, [])


class TestDiophantineMetric:
    def test_level_one_strong_delta(self):
        report = diophantine_metric(1, 1, strong=True)
        assert report.delta == 1  # distance between second and third generators
        assert report.pairs_compared == 3
        assert report.equal_matrix_pairs == 0

    def test_generator_distances(self):
        fam = make_family(1)
        a, b, c = (f.matrix for f in fam.maps)
        assert a.entry_distance(b) == 2
        assert b.entry_distance(c) == 1
        assert a.entry_distance(c) == 2

    def test_strong_and_plain_agree_when_free(self):
        strong = diophantine_metric(1, 2, strong=True)
        plain = diophantine_metric(1, 2, strong=False)
        assert strong.delta == plain.delta
        assert strong.delta > 0


class TestConjugacy:
    def test_exact_identities(self):
        result = appendix_conjugacy_check()
        assert result.ok
        assert result.from_first == Matrix2(F(4), F(0), F(0), F(1))
        assert result.from_second == Matrix2(F(4), F(0), F(1), F(1))

    def test_target_determinants(self):
        assert E_MATRIX.det() == 4
        assert F_MATRIX.det() == 4


class TestResidues:
    def test_specific_products(self):
        assert triangular_word_matrix("E") @ E_MATRIX == Matrix2(F(16), F(0), F(0), F(1))
        assert triangular_word_matrix("F") @ F_MATRIX == Matrix2(F(16), F(0), F(5), F(1))
        assert triangular_word_matrix("") @ E_MATRIX == E_MATRIX

    def test_triangular_shape_exhaustive(self):
        # every product over {E, F} is [[4^k, 0], [m, 1]] with integer m
        words = [""]
        for _ in range(6):
            words = [w + ch for w in words for ch in "EF"]
            for w in words:
                m = triangular_word_matrix(w)
                assert m.b == 0 and m.d == 1
                assert m.a == 4 ** len(w)
                assert m.c.denominator == 1

    def test_random_samples_obstructed(self):
        checks = residue_freeness_check(200, 12, seed=7)
        assert len(checks) == 200
        assert all(c.ok for c in checks)
        assert all(c.xe_bottom_left % 4 == 0 for c in checks)
        assert all(c.yf_bottom_left % 4 == 1 for c in checks)

    def test_seed_reproducibility(self):
        first = residue_freeness_check(50, 10, seed=123)
        second = residue_freeness_check(50, 10, seed=123)
        assert [(c.x_word, c.y_word) for c in first] == [(c.x_word, c.y_word) for c in second]


class TestRelationSearch:
    def test_no_relations_at_unit_parameter(self):
        report = relation_search_ABC(1, 4)
        assert report.pairs == ()
        assert "pruned" in report.note

    def test_pruning_precondition_verified(self):
        # the third map's image [1/2, 2/3] is exactly disjoint from [0, 1/6]
        fam = make_family(1)
        third = fam.maps[2].image(fam.interval)
        first = fam.maps[0].image(fam.interval)
        second = fam.maps[1].image(fam.interval)
        assert max(first.right, second.right) < third.left

    def test_two_generator_search_depth_eight(self):
        report = relation_search_ABC(1, 8, alphabet="12")
        assert report.pairs == ()
        assert report.words_searched == sum(2**k for k in range(1, 9))

    def test_duplicate_maps_would_collide(self):
        # same machinery flags exact coincidences when generators coincide
        f2 = make_family(1).maps[1]
        report = overlap_search_maps([f2, MoebiusMap(f2.matrix)], 2)
        assert report.pairs
