"""Tests for stability-exponent functions, the naive-scheme exponent, the
limiting characteristic functions, the variable-exponent quasinorm, and the
local-variation screening check."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mslevy import (
    AlphaFunction,
    IntegrandFunction,
    check_condition7,
    eval_alpha,
    exponent_integral,
    integral_cf,
    lf_n_exponent,
    li_cf,
    modular_integral,
    plateau_identity_alpha,
    quasinorm,
)
from mslevy.errors import ParameterError

from _oracles import (
    cf_of_increment_brute,
    exponent_integral_linear,
    lf_exponent_bruteforce,
    quasinorm_bisection,
)

AF_LINEAR = AlphaFunction.linear(1.2, 0.6)
AF_STEP = AlphaFunction.piecewise(breaks=(0.5,), values=(1.2, 1.8))


class TestAlphaFunction:
    def test_constant_and_linear_evaluation(self):
        assert AlphaFunction.constant(1.4)(0.37) == 1.4
        assert AF_LINEAR(0.5) == pytest.approx(1.5, abs=1e-15)
        xs = np.linspace(0.0, 1.0, 11)
        assert np.allclose(AF_LINEAR(xs), 1.2 + 0.6 * xs)

    def test_piecewise_is_right_continuous(self):
        assert AF_STEP(0.5) == 1.8
        assert AF_STEP(0.5 - 1e-12) == 1.2
        assert AF_STEP.max_jump() == pytest.approx(0.6)
        assert AF_STEP.is_piecewise_constant
        assert not AF_LINEAR.is_piecewise_constant

    def test_range_attributes(self):
        assert AF_LINEAR.a == pytest.approx(1.2) and AF_LINEAR.b == pytest.approx(1.8)
        assert (AF_STEP.a, AF_STEP.b) == (1.2, 1.8)

    def test_breakpoints(self):
        assert AF_STEP.breakpoints == (0.5,)
        assert AF_LINEAR.breakpoints == ()

    def test_values_must_stay_admissible(self):
        with pytest.raises(ParameterError):
            AlphaFunction.constant(2.5)
        with pytest.raises(ParameterError):
            AlphaFunction.constant(0.0)
        with pytest.raises(ParameterError):
            AlphaFunction.linear(0.1, 2.3)  # exceeds 2 inside the domain
        with pytest.raises(ParameterError):
            AlphaFunction.piecewise(breaks=(0.7, 0.3), values=(1.0, 1.2, 1.4))

    def test_out_of_domain_evaluation_rejected(self):
        with pytest.raises(Exception):
            AF_LINEAR(1.5)

    def test_json_round_trip(self):
        for af in (AF_LINEAR, AF_STEP, AlphaFunction.from_table([1.1, 1.3, 1.7]),
                   AlphaFunction.piecewise_linear(breaks=(0.4,), intercepts=(1.0, 1.2),
                                                  slopes=(0.5, 0.0))):
            clone = AlphaFunction.from_json(af.to_json())
            xs = np.linspace(0.0, 1.0 - 1e-9, 97)
            assert np.array_equal(af(xs), clone(xs))

    def test_segment_shifts_the_domain(self):
        af = AlphaFunction.linear(1.0, 0.25, domain=(0.0, 2.0))
        seg = af.segment(1)
        assert seg.domain == (0.0, 1.0)
        assert seg(0.25) == pytest.approx(af(1.25))

    def test_eval_alpha_matches_call(self):
        assert eval_alpha(AF_LINEAR, 0.3) == AF_LINEAR(0.3)


class TestPlateauIdentityExponent:
    def test_shape(self):
        af = plateau_identity_alpha(1.8)
        assert af.breakpoints == (0.9,)
        assert af(0.0) == pytest.approx(0.9)
        assert af(0.45) == pytest.approx(0.9)
        assert af(0.95) == pytest.approx(0.95)
        assert af(1.0) == pytest.approx(1.0)

    @pytest.mark.parametrize("b", [0.0, 2.0, -0.5, 2.6])
    def test_parameter_domain(self, b):
        with pytest.raises(ParameterError):
            plateau_identity_alpha(b)


class TestExponentIntegral:
    @pytest.mark.parametrize("theta", [0.0, 0.5, 1.0, 2.0, 3.7])
    def test_linear_alpha_closed_form(self, theta):
        got = exponent_integral(AF_LINEAR, theta, 0.1, 0.8)
        want = exponent_integral_linear(1.2, 0.6, theta, 0.1, 0.8)
        assert got == pytest.approx(want, abs=1e-11)

    def test_piecewise_alpha_panel_sum(self):
        theta = 2.0
        got = exponent_integral(AF_STEP, theta, 0.0, 1.0)
        want = 0.5 * theta ** 1.2 + 0.5 * theta ** 1.8
        assert got == pytest.approx(want, abs=1e-11)

    def test_additive_over_subintervals(self):
        total = exponent_integral(AF_LINEAR, 1.7, 0.0, 1.0)
        split = (exponent_integral(AF_LINEAR, 1.7, 0.0, 0.3)
                 + exponent_integral(AF_LINEAR, 1.7, 0.3, 1.0))
        assert total == pytest.approx(split, rel=1e-11)


class TestNaiveSchemeExponent:
    @pytest.mark.parametrize("af", [AF_LINEAR, AF_STEP])
    @pytest.mark.parametrize("u,theta,n", [(0.3, 0.5, 4), (1.0, 2.0, 8), (0.95, 1.0, 6)])
    def test_matches_brute_force(self, af, u, theta, n):
        got = lf_n_exponent(af, u, theta, n)
        want = lf_exponent_bruteforce(af, u, theta, n)
        assert got == pytest.approx(want, rel=1e-12)

    def test_constant_alpha_is_exact(self):
        got = lf_n_exponent(AlphaFunction.constant(1.4), 0.7, 2.0, 6)
        assert got == pytest.approx(2.0 ** 1.4 * math.floor(2 ** 6 * 0.7) / 2 ** 6, rel=1e-14)

    def test_diverges_when_alpha_increases(self):
        # cells left of u carry a smaller exponent than alpha(u), so their
        # weights dwarf 2^-n and the sum grows without bound in n
        values = [lf_n_exponent(AF_LINEAR, 0.95, 1.0, n) for n in range(4, 14)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_zero_theta(self):
        assert lf_n_exponent(AF_LINEAR, 0.5, 0.0, 6) == 0.0


class TestLimitCharacteristicFunctions:
    def test_single_time_reduces_to_exponent_integral(self):
        got = li_cf(AF_LINEAR, [0.5], [1.0])
        assert got == pytest.approx(math.exp(-exponent_integral(AF_LINEAR, 1.0, 0.0, 0.5)),
                                    abs=1e-12)

    def test_joint_cf_sums_window_exponents(self):
        t1, t2, th1, th2 = 0.25, 0.75, 0.8, -1.3
        got = li_cf(AF_LINEAR, [t1, t2], [th1, th2])
        want = math.exp(-exponent_integral(AF_LINEAR, abs(th1 + th2), 0.0, t1)
                        - exponent_integral(AF_LINEAR, abs(th2), t1, t2))
        assert got == pytest.approx(want, rel=1e-11)

    def test_matches_midpoint_rule_oracle(self):
        got = li_cf(AF_LINEAR, [0.8], [1.4])
        want = cf_of_increment_brute(AF_LINEAR, 1.4, 0.0, 0.8).real
        assert got == pytest.approx(want, abs=1e-8)

    def test_integral_cf_uses_the_modular(self):
        f = IntegrandFunction.from_table([0.5, 1.5, 1.0, 0.25])
        got = integral_cf([f], [0.9], AF_LINEAR)
        want = math.exp(-modular_integral(f.scaled(0.9), AF_LINEAR))
        assert got == pytest.approx(want, rel=1e-12)


class TestModularAndQuasinorm:
    def test_modular_closed_form_piecewise(self):
        f = IntegrandFunction.from_table([0.5, 2.0])
        got = modular_integral(f, AF_STEP)
        want = 0.5 * 0.5 ** 1.2 + 0.5 * 2.0 ** 1.8
        assert got == pytest.approx(want, rel=1e-12)

    def test_modular_scaling_argument(self):
        f = IntegrandFunction.from_table([0.5, 2.0, 1.0])
        assert modular_integral(f, AF_STEP, lam=2.0) == pytest.approx(
            modular_integral(f.scaled(0.5), AF_STEP), rel=1e-12)

    def test_constant_alpha_closed_form(self):
        rng = np.random.default_rng(1)
        alpha = 1.5
        for _ in range(5):
            values = rng.uniform(0.1, 3.0, 16)
            got = quasinorm(IntegrandFunction.from_table(values), AlphaFunction.constant(alpha))
            want = float(np.mean(values ** alpha)) ** (1.0 / alpha)
            assert got == pytest.approx(want, rel=1e-10)

    def test_matches_bisection_oracle_under_varying_alpha(self):
        rng = np.random.default_rng(2)
        for _ in range(10):
            values = rng.uniform(0.05, 4.0, 8)
            alphas = rng.uniform(0.4, 2.0, 4)
            got = quasinorm(IntegrandFunction.from_table(values),
                            AlphaFunction.from_table(alphas))
            want = quasinorm_bisection(values, alphas)
            assert got == pytest.approx(want, rel=1e-9)

    def test_zero_function(self):
        assert quasinorm(IntegrandFunction.zero(), AF_LINEAR) == 0.0

    @given(
        values=st.lists(st.floats(0.01, 10.0), min_size=2, max_size=12),
        scale=st.floats(0.01, 50.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_absolute_homogeneity(self, values, scale):
        f = IntegrandFunction.from_table(values)
        base = quasinorm(f, AF_STEP)
        assert quasinorm(f.scaled(scale), AF_STEP) == pytest.approx(scale * base, rel=1e-8)

    @given(values=st.lists(st.floats(0.01, 10.0), min_size=2, max_size=12),
           shrink=st.floats(0.05, 1.0))
    @settings(max_examples=60, deadline=None)
    def test_monotone_in_pointwise_domination(self, values, shrink):
        f = IntegrandFunction.from_table(values)
        g = IntegrandFunction.from_table([v * shrink for v in values])
        assert quasinorm(g, AF_STEP) <= quasinorm(f, AF_STEP) * (1.0 + 1e-9)

    def test_modular_at_the_norm_equals_one(self):
        f = IntegrandFunction.from_table([0.3, 1.2, 2.4, 0.8])
        lam = quasinorm(f, AF_LINEAR)
        assert modular_integral(f, AF_LINEAR, lam=lam) == pytest.approx(1.0, abs=1e-9)


class TestLocalVariationCheck:
    X_GRID = np.linspace(0.0, 1.0, 257)
    DEEP_LAGS = tuple(2.0 ** -k for k in range(2, 21))

    def test_smooth_exponent_is_satisfied(self):
        report = check_condition7(AF_LINEAR, self.X_GRID, self.DEEP_LAGS)
        assert report.verdict == "satisfied"
        assert report.values[-1] <= report.threshold

    def test_shallow_lags_are_inconclusive(self):
        report = check_condition7(AF_LINEAR, self.X_GRID, tuple(2.0 ** -k for k in range(2, 7)))
        assert report.verdict == "inconclusive"

    def test_jump_is_violated_when_probes_straddle_it(self):
        xs = np.union1d(self.X_GRID, [0.5 - lag / 2.0 for lag in self.DEEP_LAGS])
        report = check_condition7(AF_STEP, xs, self.DEEP_LAGS)
        assert report.verdict == "violated"
