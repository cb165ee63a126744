import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cflow.errors import InfeasibleConfiguration, InvalidParameter, OutOfRange, Unclassifiable
from cflow.flow import PointSequence, flow_number_estimate, points_to_flow, verify_nzf
from cflow.wheel import (
    OPTIMAL_CONFIG,
    SQRT2,
    ConfigKind,
    VectorType,
    angle_set,
    best_config,
    classify_sequence,
    classify_vector,
    config_lambda,
    config_types,
    even_wheel_flow,
    lambda_of,
    optimal_sequence,
    prism_flow,
    radial_scale,
    rho,
    sigma,
    table1_lambda,
    theorem1_value,
)

ODD = range(3, 200, 2)


def sin6(num, den):
    return 2 * math.sin(math.pi / 6 * num / den)


def annulus_sequence(rng, n, max_step=2 * math.pi / 3):
    """Points with radii in [1, sqrt 2] and nonzero angular steps below ``max_step``."""
    steps = rng.uniform(0.05, max_step, n) * rng.choice([-1, 1], n)
    angles = np.cumsum(steps)
    return PointSequence(rng.uniform(1, SQRT2, n) * np.exp(1j * angles))


def orientation(seq, j):
    return math.copysign(1.0, cmath.phase(seq[j] / seq[j - 1]))


class TestWheelValue:
    @pytest.mark.parametrize(
        "n, expected",
        [
            (3, 1 + SQRT2),
            (4, 2.0),
            (5, 1 + sin6(6, 5)),
            (7, 1 + sin6(7, 6)),
            (9, 1 + sin6(9, 8)),
            (11, 1 + sin6(12, 11)),
        ],
    )
    def test_values(self, n, expected):
        assert theorem1_value(n) == pytest.approx(expected, abs=1e-15)

    def test_w5_numeric(self):
        assert theorem1_value(5) == pytest.approx(2.1755705045849463, abs=1e-12)

    def test_rejects_small_n(self):
        with pytest.raises(InvalidParameter):
            theorem1_value(2)

    def test_monotone_within_classes_and_capped(self):
        for r in (1, 3, 5):
            vals = [theorem1_value(n) for n in ODD if n % 6 == r]
            assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(theorem1_value(n) <= 1 + SQRT2 + 1e-15 for n in range(3, 200))


class TestOptimalSequences:
    @pytest.mark.parametrize("n", list(ODD))
    def test_lambda_and_validity(self, n):
        seq = optimal_sequence(n)
        assert abs(lambda_of(seq) - (theorem1_value(n) - 1)) <= 1e-12
        assert min(seq.norms()) == pytest.approx(1.0, abs=1e-12)
        assert verify_nzf(points_to_flow(seq), theorem1_value(n), 1e-9).valid_for_r

    @pytest.mark.parametrize("n", range(4, 40, 2))
    def test_even_flow_all_unit(self, n):
        f = even_wheel_flow(n)
        assert np.all(f.norms == 1.0)
        assert flow_number_estimate(f) == 2.0

    def test_even_rejects_odd(self):
        from cflow.wheel import even_wheel_sequence

        with pytest.raises(InvalidParameter):
            even_wheel_sequence(5)
        with pytest.raises(InvalidParameter):
            optimal_sequence(6)

    def test_w9_has_one_point_on_outer_circle(self):
        seq = optimal_sequence(9)
        lam = lambda_of(seq)
        outer = [j for j in range(9) if abs(abs(seq[j]) - lam) < 1e-9]
        assert outer == [1]


class TestClassification:
    def test_w11_all_ii_plus(self):
        assert [str(t) for t in classify_sequence(optimal_sequence(11))] == ["II+"] * 11

    def test_w9_and_w7_heads(self):
        assert str(classify_vector(optimal_sequence(9), 1, theorem1_value(9) - 1)) == "IE-"
        assert str(classify_vector(optimal_sequence(7), 1, theorem1_value(7) - 1)) == "II-"

    @pytest.mark.parametrize("n", [n for n in ODD if n >= 5])
    def test_optimal_sequences_realise_their_configuration(self, n):
        kind = OPTIMAL_CONFIG[n % 6]
        got = classify_sequence(optimal_sequence(n))
        want = config_types(kind, n)
        # configurations are listed up to a cyclic shift; the constructions start one chord early
        assert got[1:] + got[:1] == want

    def test_unclassifiable(self):
        seq = PointSequence([1, 1.2j, -1])
        with pytest.raises(Unclassifiable):
            classify_vector(seq, 1, 1.4)  # radius 1.2 matches neither circle
        seq = PointSequence([1, 2, -1])
        with pytest.raises(Unclassifiable):
            classify_vector(seq, 1, 2.0)  # zero angular step

    def test_vector_type_parse(self):
        assert str(VectorType.parse("EI-")) == "EI-"
        with pytest.raises(InvalidParameter):
            VectorType.parse("XI+")


class TestConfigurations:
    @pytest.mark.parametrize(
        "n, kind, expected",
        [
            (7, ConfigKind.CONFIG_II, sin6(7, 6)),
            (9, ConfigKind.CONFIG_I, sin6(9, 8)),
            (11, ConfigKind.CONFIG_I, SQRT2),
            (11, ConfigKind.CONFIG_III, sin6(12, 11)),
        ],
    )
    def test_examples(self, n, kind, expected):
        assert config_lambda(n, kind) == pytest.approx(expected, abs=1e-12)

    def test_closure_matches_closed_form(self):
        for n in ODD:
            if n < 5:
                continue
            for kind in ConfigKind:
                assert abs(config_lambda(n, kind) - table1_lambda(n, kind)) <= 1e-12

    def test_best_config_is_distinct_minimum(self):
        for n in ODD:
            kind, lam = best_config(n)
            assert abs(lam - (theorem1_value(n) - 1)) <= 1e-12
            if n >= 5:
                assert kind is OPTIMAL_CONFIG[n % 6]
                vals = sorted(config_lambda(n, k) for k in ConfigKind)
                assert vals[1] - vals[0] > 1e-6

    def test_n3(self):
        with pytest.raises(InfeasibleConfiguration):
            config_lambda(3, ConfigKind.CONFIG_I)
        with pytest.raises(InfeasibleConfiguration):
            config_lambda(3, ConfigKind.CONFIG_II)
        assert table1_lambda(3, ConfigKind.CONFIG_I) == pytest.approx(SQRT2, abs=1e-15)
        assert best_config(3) == (ConfigKind.CONFIG_I, pytest.approx(SQRT2, abs=1e-15))

    def test_rejects_even(self):
        with pytest.raises(InvalidParameter):
            config_lambda(8, ConfigKind.CONFIG_III)


class TestAngles:
    def test_endpoints(self):
        a = angle_set(SQRT2)
        assert a.beta == pytest.approx(math.pi / 4, abs=1e-15)
        a = angle_set(1 + 1e-12)
        assert a.alpha < math.pi / 6 < a.beta
        assert a.alpha == pytest.approx(math.pi / 6, abs=1e-9)

    def test_lambda_12(self):
        a = angle_set(1.2)
        assert a.alpha + a.beta - math.pi / 3 > 0
        assert a.alpha_prime == pytest.approx(math.pi / 2 - a.alpha)

    @pytest.mark.parametrize("lam", [1.0, 0.5, 1.5, 2.0])
    def test_out_of_range(self, lam):
        with pytest.raises(OutOfRange):
            angle_set(lam)

    @settings(max_examples=200, deadline=None)
    @given(st.floats(1.0, SQRT2, exclude_min=True))
    def test_inequalities(self, lam):
        a = angle_set(lam)
        assert math.asin(SQRT2 / 4) - 1e-12 <= a.alpha < math.pi / 6 < a.beta <= math.pi / 4 + 1e-12
        assert a.alpha + a.beta > math.pi / 3


class TestMoves:
    def test_identity_at_zero(self):
        seq = optimal_sequence(9)
        assert np.array_equal(rho(seq, 2, 5, 0.0).points, seq.points)
        assert np.array_equal(sigma(seq, 2, 5, 0.0).points, seq.points)

    def test_rho_block_wraps(self):
        seq = PointSequence([1, 2, 3, 4, 5])
        out = rho(seq, 3, 0, math.pi).points
        assert np.allclose(out, [-1, 2, 3, -4, -5])
        out = rho(seq, 0, 3, math.pi).points
        assert np.allclose(out, [-1, -2, -3, -4, 5])

    def test_errors(self):
        seq = optimal_sequence(5)
        with pytest.raises(InvalidParameter):
            rho(seq, 2, 2, 0.1)
        with pytest.raises(InvalidParameter):
            sigma(seq, 1, 6, 0.1)
        with pytest.raises(InvalidParameter):
            radial_scale(seq, 0, 0.0)

    def test_sigma_reflection_on_triangle(self):
        seq = PointSequence([1, 1j, -0.5])
        out = sigma(seq, 0, 1, math.pi)
        assert out[0] == pytest.approx(-1 + 2j)
        assert out[1] == seq[1] and out[2] == seq[2]
        assert abs(out.chords()[0]) != pytest.approx(abs(seq.chords()[0]))

    @settings(max_examples=100, deadline=None)
    @given(st.integers(4, 15), st.integers(0, 10**6), st.floats(-math.pi, math.pi))
    def test_rho_properties(self, n, s, theta):
        rng = np.random.default_rng(s)
        seq = annulus_sequence(rng, n)
        h = int(rng.integers(n))
        k = (h + int(rng.integers(1, n - 1))) % n  # neither h itself nor the whole cycle
        out = rho(seq, h, k, theta)
        assert np.max(np.abs(np.abs(out.points) - np.abs(seq.points))) <= 1e-15
        changed = np.abs(np.abs(out.chords()) - np.abs(seq.chords())) > 1e-12
        assert set(np.flatnonzero(changed)) <= {h, (k + 1) % n}

    @settings(max_examples=100, deadline=None)
    @given(st.integers(3, 15), st.integers(0, 10**6), st.floats(-math.pi, math.pi))
    def test_sigma_properties(self, n, s, theta):
        rng = np.random.default_rng(s)
        seq = annulus_sequence(rng, n)
        h, k = rng.choice(n, 2, replace=False)
        out = sigma(seq, h, k, theta)
        assert abs(abs(out[h] - out[k]) - abs(seq[h] - seq[k])) <= 1e-15
        others = [j for j in range(n) if j != h]
        assert np.array_equal(out.points[others], seq.points[others])

    def test_same_orientation_sign_rule(self):
        """rho over p_h..p_{k-1}, rotated with the common orientation, lengthens z_h and shortens z_k."""
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 300:
            n = int(rng.integers(5, 16))
            seq = annulus_sequence(rng, n)
            h = int(rng.integers(n))
            k = (h + int(rng.integers(2, n))) % n
            if orientation(seq, h) != orientation(seq, k):
                continue
            before = np.abs(seq.chords())
            for t in (1e-3, 1e-5, 1e-8):
                out = rho(seq, h, k - 1, orientation(seq, h) * t)
                after = np.abs(out.chords())
                assert after[h] > before[h]
                assert after[k] < before[k]
            checked += 1

    def test_radial_scale(self):
        seq = optimal_sequence(7)
        out = radial_scale(seq, 3, 0.5)
        assert out[3] == pytest.approx(seq[3] * 0.5)


class TestPrism:
    @pytest.mark.parametrize("n", range(3, 30))
    def test_verifies(self, n):
        f = prism_flow(n)
        assert verify_nzf(f, theorem1_value(n), 1e-9).valid_for_r
        assert abs(flow_number_estimate(f) - theorem1_value(n)) <= 1e-12

    def test_inner_norms_equal_outer(self):
        f = prism_flow(9)
        assert np.array_equal(f.norms[:9], f.norms[9:18])
