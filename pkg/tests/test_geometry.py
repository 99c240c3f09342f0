import math

import numpy as np
import pytest

from hedgehog.chebyshev import chebyshev_log, extremal_configuration, extremal_constant
from hedgehog.exact import IntPolynomial, parse_polynomial
from hedgehog.geometry import (
    TWO_PI,
    CircleConfiguration,
    EmptyConfiguration,
    Hedgehog,
    NoConvergence,
    NonRationalWeights,
    Spine,
    WeightSumError,
    arc_maxima,
    dubinin_bound,
    equal_weight_configuration,
    format_points,
    hedgehog_from_polynomial,
    hedgehog_measure,
    normalize_configuration,
    objective,
    parse_points,
    poly_roots,
    rationalize_weights,
    spine_moduli,
    _weighted_log_product,
)

SMYTH = parse_polynomial("x^3-x-1")
LEHMER = parse_polynomial("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")
PLASTIC = 1.3247179572447460


def roots_of_unity(n):
    return equal_weight_configuration([TWO_PI * k / n for k in range(n)])


def random_configuration(rng, max_points):
    n = int(rng.integers(1, max_points + 1))
    weights = rng.uniform(0.2, 1.0, n)
    return normalize_configuration(
        rng.uniform(0.0, TWO_PI, n), weights / weights.sum()
    )


class TestNormalize:
    def test_wraparound_merge(self):
        config = normalize_configuration([0.0, TWO_PI], [0.5, 0.5])
        assert config.angles == (0.0,)
        assert config.weights == (1.0,)

    def test_sorting_and_reduction(self):
        config = normalize_configuration([math.pi / 3, -math.pi / 3], [0.5, 0.5])
        assert config.angles[0] == pytest.approx(math.pi / 3)
        assert config.angles[1] == pytest.approx(5 * math.pi / 3)

    def test_adjacent_merge_adds_weights(self):
        config = normalize_configuration([1.0, 1.0 + 1e-13, 2.0], [0.25, 0.25, 0.5])
        assert config.angles == (1.0, 2.0)
        assert config.weights[0] == pytest.approx(0.5)

    def test_weight_sum_error(self):
        with pytest.raises(WeightSumError):
            normalize_configuration([0.1, 0.2], [0.3, 0.3])

    def test_rescales_to_exact_one(self):
        config = normalize_configuration([0.5, 2.5], [0.5 + 3e-10, 0.5])
        assert sum(config.weights) == pytest.approx(1.0, abs=1e-16)

    def test_empty(self):
        with pytest.raises(EmptyConfiguration):
            normalize_configuration([], [])

    def test_positive_weights_required(self):
        with pytest.raises(ValueError):
            normalize_configuration([0.0, 1.0], [1.5, -0.5])


class TestPointsFile:
    def test_roundtrip(self):
        config = normalize_configuration([0.25, 4.0], [0.25, 0.75])
        again = parse_points(format_points(config))
        assert again == config

    def test_comments_and_blank_lines(self):
        text = "# heading\n0.0 0.5\n\n3.1 0.5  # trailing note\n"
        config = parse_points(text)
        assert config.size == 2

    def test_bad_line(self):
        with pytest.raises(ValueError):
            parse_points("0.0 0.5 9\n")

    def test_empty_file(self):
        with pytest.raises(EmptyConfiguration):
            parse_points("# nothing here\n")


class TestArcMaxima:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_roots_of_unity(self, n):
        am = arc_maxima(roots_of_unity(n))
        assert len(am.per_arc) == n
        for arc in am.per_arc:
            assert arc.max_value == pytest.approx(2.0 ** (1.0 / n), rel=1e-12)

    def test_single_point_antipode(self):
        am = arc_maxima(equal_weight_configuration([0.0]))
        arc = am.per_arc[0]
        assert arc.max_value == pytest.approx(2.0, rel=1e-12)
        # location accuracy at a flat maximum is limited to ~sqrt(eps)
        assert arc.argmax_angle == pytest.approx(math.pi, abs=1e-7)

    def test_argmax_inside_arc(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            config = random_configuration(rng, 6)
            for arc in arc_maxima(config).per_arc:
                assert arc.arc_start_angle - 1e-12 <= arc.argmax_angle
                assert arc.argmax_angle <= arc.arc_end_angle + 1e-12

    @pytest.mark.parametrize("n", [2, 3, 11, 24])
    def test_extremal_configuration_arcs(self, n):
        am = arc_maxima(extremal_configuration(n))
        values = sorted(arc.max_value for arc in am.per_arc)
        for v in values[:-1]:
            assert v == pytest.approx(1.0, abs=1e-9)
        big = math.exp(chebyshev_log(n, math.exp(math.log(2.0) / n)) / n)
        assert values[-1] == pytest.approx(big, rel=1e-9)

    def test_dense_oracle(self):
        rng = np.random.default_rng(9)
        grid = (np.arange(200_000) + 0.5) * (TWO_PI / 200_000)
        for _ in range(10):
            config = random_configuration(rng, 4)
            th = np.asarray(config.angles)
            dense = _weighted_log_product(grid, th, np.asarray(config.weights))
            bounds = np.searchsorted(grid, th)
            for j, arc in enumerate(arc_maxima(config).per_arc):
                if j < th.size - 1:
                    segment = dense[bounds[j]:bounds[j + 1]]
                else:
                    segment = np.concatenate([dense[bounds[-1]:], dense[:bounds[0]]])
                if segment.size == 0:
                    continue
                assert math.exp(float(segment.max())) <= arc.max_value + 1e-8


class TestObjective:
    @pytest.mark.parametrize("n", [1, 2, 3, 6, 17, 32])
    def test_roots_of_unity_give_two(self, n):
        assert objective(roots_of_unity(n)) == pytest.approx(2.0, abs=1e-10)

    def test_extremal_pair(self):
        assert objective(extremal_configuration(2)) == pytest.approx(
            math.sqrt(3.0), rel=1e-10
        )

    @pytest.mark.parametrize("n", [1, 4, 9, 20])
    def test_matches_constant(self, n):
        assert objective(extremal_configuration(n)) == pytest.approx(
            extremal_constant(n).value, abs=1e-10
        )

    def test_at_least_one(self):
        rng = np.random.default_rng(10)
        for _ in range(30):
            assert objective(random_configuration(rng, 6)) >= 1.0

    def test_rotation_invariance(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            config = random_configuration(rng, 6)
            base = objective(config)
            shift = float(rng.uniform(0, TWO_PI))
            rotated = normalize_configuration(
                [a + shift for a in config.angles], config.weights
            )
            assert objective(rotated) == pytest.approx(base, abs=1e-10)

    def test_conjugation_invariance(self):
        rng = np.random.default_rng(12)
        for _ in range(30):
            config = random_configuration(rng, 6)
            mirrored = normalize_configuration(
                [-a for a in config.angles], config.weights
            )
            assert objective(mirrored) == pytest.approx(objective(config), abs=1e-10)


class TestSpinesAndMeasure:
    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_symmetric_spines(self, n):
        hog = spine_moduli(roots_of_unity(n))
        assert hog.size == n
        for spine in hog.spines:
            assert spine.modulus == pytest.approx(4.0 ** (1.0 / n), rel=1e-12)
            assert spine.argument is None
        assert hedgehog_measure(hog) == pytest.approx(4.0, abs=1e-10)
        assert dubinin_bound(hog) == pytest.approx(1.0, rel=1e-12)

    def test_single_point_spine(self):
        hog = spine_moduli(equal_weight_configuration([1.0]))
        assert hog.spines[0].modulus == pytest.approx(4.0, rel=1e-12)

    @pytest.mark.parametrize("n", [2, 3, 9, 16])
    def test_extremal_spines(self, n):
        hog = spine_moduli(extremal_configuration(n))
        moduli = sorted(s.modulus for s in hog.spines)
        for m in moduli[:-1]:
            assert m == pytest.approx(1.0, abs=1e-9)
        constant = extremal_constant(n)
        assert moduli[-1] == pytest.approx(constant.value ** 2, rel=1e-9)
        assert hedgehog_measure(hog) == pytest.approx(constant.value ** 2, rel=1e-9)
        # capacity is 1 by construction, so Dubinin's bound sits above 1
        assert dubinin_bound(hog) >= 1.0 - 1e-9
        assert moduli[-1] >= 4.0 ** (1.0 / n) - 1e-9

    def test_measure_ignores_short_spines(self):
        hog = Hedgehog((Spine(0.5), Spine(1.0), Spine(0.01)))
        assert hedgehog_measure(hog) == 1.0
        more = Hedgehog(hog.spines + (Spine(3.0),))
        assert hedgehog_measure(more) == pytest.approx(3.0)

    def test_single_long_spine_bound(self):
        assert dubinin_bound(Hedgehog((Spine(4.0),))) == pytest.approx(1.0)

    def test_empty_hedgehog_rejected(self):
        with pytest.raises(ValueError):
            hedgehog_measure(Hedgehog(()))
        with pytest.raises(ValueError):
            dubinin_bound(Hedgehog(()))


class TestRationalize:
    def test_exact_thirds(self):
        config = normalize_configuration([0.5, 2.0], [1 / 3, 2 / 3])
        snapped = rationalize_weights(config, 3)
        assert snapped.weights == (1 / 3, 2 / 3)

    def test_equal_weights_identity(self):
        config = roots_of_unity(5)
        assert rationalize_weights(config, 5).weights == config.weights

    def test_multiset_objective_matches(self):
        rng = np.random.default_rng(13)
        from hedgehog.geometry import _arc_log_maxima

        for _ in range(20):
            n = int(rng.integers(1, 6))
            m = int(rng.integers(n, 13))
            counts = np.ones(n, dtype=int)
            for _ in range(m - n):
                counts[int(rng.integers(0, n))] += 1
            config = normalize_configuration(
                rng.uniform(0, TWO_PI, n), counts / m
            )
            snapped = rationalize_weights(config, m)
            sorted_counts = tuple(float(round(w * m)) for w in snapped.weights)
            _, _, _, logs = _arc_log_maxima(snapped.angles, sorted_counts)
            multiset = math.exp(float(np.maximum(logs, 0.0).sum()) / m)
            assert objective(snapped) == pytest.approx(multiset, abs=1e-10)

    def test_irrational_weights_rejected(self):
        w = 1 / math.sqrt(2)
        config = normalize_configuration([0.3, 1.7], [w, 1 - w])
        with pytest.raises(NonRationalWeights):
            rationalize_weights(config, 10)

    def test_bad_denominator(self):
        with pytest.raises(ValueError):
            rationalize_weights(roots_of_unity(2), 0)


class TestPolyRoots:
    def test_quadratic(self):
        roots = poly_roots(parse_polynomial("x^2-1"))
        assert roots[0] == pytest.approx(-1.0, abs=1e-12)
        assert roots[1] == pytest.approx(1.0, abs=1e-12)

    def test_smyth_plastic_number(self):
        roots = poly_roots(SMYTH)
        real = max(roots, key=lambda r: r.real)
        assert real.real == pytest.approx(PLASTIC, rel=1e-12)
        assert abs(real.imag) < 1e-12
        others = [r for r in roots if r is not real]
        assert all(abs(r) < 1.0 for r in others)

    def test_lehmer_salem_structure(self):
        roots = poly_roots(LEHMER)
        outside = [r for r in roots if abs(r) > 1.0 + 1e-9]
        inside = [r for r in roots if abs(r) < 1.0 - 1e-9]
        assert len(outside) == 1
        assert abs(outside[0]) == pytest.approx(1.1762808182599175, rel=1e-10)
        assert len(inside) == 1

    def test_residual_contract(self):
        target = 1e-12
        p = parse_polynomial("x^5-3x^3+x-11")
        monic_norm = sum(abs(c) for c in p.coeffs)
        for r in poly_roots(p, target):
            bound = target * monic_norm * max(1.0, abs(r)) ** p.degree
            assert abs(p(r)) <= bound

    def test_linear(self):
        assert poly_roots(parse_polynomial("x+7")) == [(-7 + 0j)]

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            poly_roots(parse_polynomial("5"))

    def test_no_convergence(self):
        with pytest.raises(NoConvergence):
            poly_roots(SMYTH, target_residual=1e-12, max_iterations=1)


class TestHedgehogFromPolynomial:
    def test_smyth(self):
        hog = hedgehog_from_polynomial(SMYTH)
        assert hog.size == 5  # the two real-axis spines merged
        assert hog.max_modulus() == pytest.approx(PLASTIC ** 4, rel=1e-9)
        assert hedgehog_measure(hog) == pytest.approx(3.07959562, abs=1e-6)

    def test_lehmer(self):
        hog = hedgehog_from_polynomial(LEHMER)
        assert hog.max_modulus() == pytest.approx(1.91445008, abs=1e-6)
        assert hedgehog_measure(hog) == pytest.approx(1.91445008, abs=1e-6)

    def test_unit_roots_give_measure_one(self):
        assert hedgehog_measure(hedgehog_from_polynomial(parse_polynomial("x^2-1"))) == 1.0

    @pytest.mark.parametrize("text", ["x^2+x+1", "x^4+1"])
    def test_cyclotomic_measure_one(self, text):
        hog = hedgehog_from_polynomial(parse_polynomial(text))
        assert hedgehog_measure(hog) == pytest.approx(1.0, abs=1e-12)

    def test_spine_arguments_separated(self):
        hog = hedgehog_from_polynomial(SMYTH)
        args = sorted(s.argument for s in hog.spines)
        gaps = [b - a for a, b in zip(args, args[1:])]
        gaps.append(args[0] + TWO_PI - args[-1])
        assert min(gaps) > 1e-9

    def test_input_validation(self):
        with pytest.raises(ValueError):
            hedgehog_from_polynomial(parse_polynomial("2x^2-1"))
        with pytest.raises(ValueError):
            hedgehog_from_polynomial(parse_polynomial("x^2+x"))

    def test_collinear_powers_merge(self):
        # the roots of x^3 - 2 sit at thirds of a turn, so each square spine
        # lands on a fourth-power spine: three rays survive, longest kept
        hog = hedgehog_from_polynomial(IntPolynomial([-2, 0, 0, 1]))
        assert hog.size == 3
        for spine in hog.spines:
            assert spine.modulus == pytest.approx(2.0 ** (4.0 / 3.0), rel=1e-9)
