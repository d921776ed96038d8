"""Exact matrix/map algebra: frozen oracle values and exhaustive identities."""

from fractions import Fraction as F

import pytest

from ifslab import (
    DegenerateMapError,
    IFSInstance,
    Interval,
    Matrix2,
    MoebiusMap,
    PoleError,
    family_matrices,
    make_family,
)
from ifslab.moebius import as_fraction


def mul_oracle(m, n):
    """Independent 2x2 rational multiplication, kept separate from the library."""
    return (
        m[0] * n[0] + m[1] * n[2],
        m[0] * n[1] + m[1] * n[3],
        m[2] * n[0] + m[3] * n[2],
        m[2] * n[1] + m[3] * n[3],
    )


def closed_form_power_first(m):
    """Exact m-th power of the first generator: [[2^-m, 0], [2^(m+2)(1-4^-m)/3, 2^m]]."""
    return Matrix2(
        F(1, 2**m),
        F(0),
        F(2 ** (m + 2), 1) * (1 - F(1, 4**m)) / 3,
        F(2**m),
    )


class TestMatrix2:
    def test_product_matches_oracle(self):
        gen_a, gen_b, gen_c = family_matrices(F(1, 3))
        for left in (gen_a, gen_b, gen_c):
            for right in (gen_a, gen_b, gen_c):
                got = left @ right
                assert got.entries() == mul_oracle(left.entries(), right.entries())

    def test_first_generator_squared(self):
        gen_a = family_matrices(1)[0]
        assert (gen_a @ gen_a) == Matrix2(F(1, 4), F(0), F(5), F(4))

    def test_square_matches_closed_form(self):
        gen_a = family_matrices(1)[0]
        assert gen_a @ gen_a == closed_form_power_first(2)
        assert closed_form_power_first(2).c == 5  # 2^4 (1 - 4^-2) / 3

    def test_identity_neutral(self):
        gen = family_matrices(1)[2]
        assert gen @ Matrix2.identity() == gen
        assert Matrix2.identity() @ gen == gen

    def test_inverse(self):
        gen_a = family_matrices(1)[0]
        assert gen_a @ gen_a.inverse() == Matrix2.identity()

    def test_determinants(self):
        for gen in family_matrices(F(7, 3)):
            assert gen.det() == 1

    def test_entry_distance(self):
        gen_a, gen_b, gen_c = family_matrices(1)
        assert gen_a.entry_distance(gen_b) == 2
        assert gen_b.entry_distance(gen_c) == 1
        assert gen_a.entry_distance(gen_a) == 0

    def test_rejects_float_entries(self):
        with pytest.raises(TypeError):
            Matrix2(0.5, 0, 2, 2)


class TestEvaluation:
    def test_spot_values(self):
        f1, f2, f3 = make_family(1).maps
        assert f1(1) == F(1, 8)
        assert f2(0) == 0
        assert f1(0) == 0
        assert f3(F(2, 3)) == F(2, 3)

    def test_repeated_second_map_scales(self):
        f2 = make_family(1).maps[1]
        g = f2.compose(f2).compose(f2)
        assert g(1) == F(1, 64)  # 4^-3

    def test_pole_raises(self):
        f = MoebiusMap.from_entries(1, 0, 2, -1)
        with pytest.raises(PoleError):
            f(F(1, 2))

    def test_composition_is_matrix_product(self):
        f1, f2, f3 = make_family(1).maps
        x = F(5, 7)
        assert f1.compose(f3)(x) == f1(f3(x))
        assert f3.compose(f1).compose(f2)(x) == f3(f1(f2(x)))


class TestDerivatives:
    def test_bounds_of_first_map(self):
        fam = make_family(1)
        assert fam.maps[0].derivative_bounds(fam.interval) == (F(9, 100), F(1, 4))

    def test_affine_maps_constant(self):
        fam = make_family(1)
        probe = Interval(F(1, 5), F(3, 5))
        for f in fam.maps[1:]:
            assert f.derivative_bounds(probe) == (F(1, 4), F(1, 4))

    def test_bounds_bracket_interior_samples(self):
        fam = make_family(1)
        f1 = fam.maps[0]
        lo, hi = f1.derivative_bounds(fam.interval)
        for x in fam.interval.grid(100)[1:-1]:
            assert lo <= abs(f1.derivative(x)) <= hi

    def test_pole_inside_interval_rejected(self):
        f = MoebiusMap.from_entries(1, 0, 2, -1)  # pole at 1/2
        with pytest.raises(PoleError):
            f.derivative_bounds(Interval(0, 1))

    def test_chain_rule_exact(self):
        f1, _, f3 = make_family(1).maps
        g = f1.compose(f3)
        for x in (F(0), F(1, 3), F(2, 3)):
            assert abs(g.derivative(x)) == abs(f1.derivative(f3(x))) * abs(f3.derivative(x))

    def test_chain_rule_exhaustive_to_length_four(self):
        fam = make_family(1)
        x = F(2, 5)
        words = [MoebiusMap.identity()]
        pool = []
        for _ in range(4):
            words = [f.compose(g) for f in words for g in fam.maps]
            pool.extend(words)
        for outer in pool:
            for inner in pool:
                combined = outer.compose(inner)
                assert abs(combined.derivative(x)) == abs(outer.derivative(inner(x))) * abs(
                    inner.derivative(x)
                )


class TestImage:
    def test_family_images_at_unit_parameter(self):
        fam = make_family(1)
        f1, f2, f3 = fam.maps
        assert f1.image(fam.interval) == Interval(0, F(1, 10))
        assert f2.image(fam.interval) == Interval(0, F(1, 6))
        assert f3.image(fam.interval) == Interval(F(1, 2), F(2, 3))

    def test_first_image_at_parameter_three(self):
        fam = make_family(3)
        assert fam.interval == Interval(0, 2)
        assert fam.maps[0].image(fam.interval) == Interval(0, F(1, 6))

    def test_decreasing_map_image_swaps_endpoints(self):
        f = MoebiusMap.from_entries(0, 1, 1, 0)  # x -> 1/x, decreasing
        assert f.image(Interval(1, 2)) == Interval(F(1, 2), 1)


class TestFixedPoints:
    def test_third_map_fixed_point(self):
        f3 = make_family(1).maps[2]
        assert f3.fixed_points() == [(F(2, 3), F(2, 3))]

    def test_linear_map(self):
        f2 = make_family(1).maps[1]
        assert f2.fixed_points() == [(F(0), F(0))]

    def test_first_map_roots(self):
        f1 = make_family(1).maps[0]
        assert f1.fixed_points() == [(F(-3, 4), F(-3, 4)), (F(0), F(0))]

    def test_irrational_root_enclosure(self):
        f = MoebiusMap.from_entries(2, 1, 1, 1)  # golden-ratio fixed point
        width = F(1, 10**30)
        roots = f.fixed_points(width)
        assert len(roots) == 2
        for lo, hi in roots:
            assert hi - lo <= width
            # sign change of x^2 - x - 1 across each enclosure
            poly = lambda x: x * x - x - 1
            assert poly(lo) * poly(hi) <= 0

    def test_identity_rejected(self):
        with pytest.raises(DegenerateMapError):
            MoebiusMap.identity().fixed_points()

    def test_translation_has_no_fixed_point(self):
        assert MoebiusMap.from_entries(1, 5, 0, 1).fixed_points() == []


class TestFamilyConstruction:
    def test_unit_parameter_maps(self):
        f1, f2, f3 = make_family(1).maps
        for x in (F(1, 7), F(1, 2), F(2, 3)):
            assert f1(x) == x / (4 * x + 4)
            assert f2(x) == x / 4
            assert f3(x) == x / 4 + F(1, 2)

    def test_invalid_parameters(self):
        for t in (0, -1, F(-2, 3)):
            with pytest.raises(ValueError):
                make_family(t)

    def test_gamma_bounds(self):
        for t in (F(1, 2), F(1), F(3)):
            fam = make_family(t)
            assert fam.gamma_upper == F(1, 4)
            assert 0 < fam.gamma_lower <= fam.gamma_upper

    def test_invariance_enforced(self):
        expanding = MoebiusMap.affine(2, 0)
        with pytest.raises(ValueError):
            IFSInstance.build([expanding], Interval(0, 1))

    def test_non_contraction_rejected(self):
        with pytest.raises(ValueError):
            IFSInstance.build([MoebiusMap.affine(1, 0)], Interval(0, 1))


class TestGeneratorProducts:
    def test_det_one_and_nonnegative_exhaustive(self):
        for t in (F(1, 2), F(1), F(3)):
            gens = family_matrices(t)
            frontier = [Matrix2.identity()]
            for _ in range(5):
                frontier = [m @ g for m in frontier for g in gens]
                for m in frontier:
                    assert m.det() == 1
                    assert all(e >= 0 for e in m.entries())

    def test_det_one_to_depth_eight_unit_parameter(self):
        gens = family_matrices(1)
        frontier = [Matrix2.identity()]
        for _ in range(8):
            frontier = [m @ g for m in frontier for g in gens]
        assert all(m.det() == 1 for m in frontier)
        assert all(e >= 0 for m in frontier for e in m.entries())

    def test_contraction_norm_decay(self):
        # sup|f_u'| <= 4^-|u| on the invariant interval, all generators
        for t in (F(1, 2), F(1), F(3)):
            fam = make_family(t)
            frontier = [(Matrix2.identity(), 0)]
            for _ in range(4):
                frontier = [(m @ g.matrix, depth + 1) for m, depth in frontier for g in fam.maps]
                for m, depth in frontier:
                    _, sup = MoebiusMap(m).derivative_bounds(fam.interval)
                    assert sup <= F(1, 4**depth)


def test_as_fraction_parsing():
    assert as_fraction("3/7") == F(3, 7)
    assert as_fraction("0.125") == F(1, 8)
    assert as_fraction(4) == 4
    with pytest.raises(TypeError):
        as_fraction(0.125)
