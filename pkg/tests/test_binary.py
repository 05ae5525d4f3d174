"""Tests for the closed-form binary solver: regimes, widths, boundary behavior.

The width table for a solution is checked against hand-derived values held in
exact rationals, so any drift in the formulas fails loudly rather than within
a tolerance.
"""

import math
from fractions import Fraction

import pytest

from ipd import (
    RegimeTag,
    UtilityFn,
    ValidationError,
    check_ip,
    classify_regime,
    expected_utility,
    gap_instance,
    load_prior,
    posterior_summary,
    solve_binary,
    solve_perfect_privacy,
)
from ipd.errors import DegenerateRatio, NotBinarySecret


class TestClassifyRegime:
    def test_full_disclosure_when_both_ratios_fit(self):
        prior = load_prior([(0.5, 0.75), (0.5, 0.25)])
        regime = classify_regime(prior, exp_eps=Fraction(3))
        assert regime.tag is RegimeTag.FULL_DISCLOSURE
        assert regime.r1 == 3
        assert regime.r2 == 3

    def test_three_signal_when_only_low_tail_violates(self):
        prior = load_prior([(0.5, 0.9), (0.5, 0.4)])
        regime = classify_regime(prior, exp_eps=Fraction(2))
        assert regime.tag is RegimeTag.THREE_SIGNAL_T3

    def test_three_signal_mirror_case(self):
        # mirror image of the case above: R1 too big, R2 fits
        prior = load_prior([(0.5, 0.6), (0.5, 0.1)])
        regime = classify_regime(prior, exp_eps=Fraction(2))
        assert regime.tag is RegimeTag.THREE_SIGNAL_T2

    def test_four_signal_when_both_tails_violate(self):
        prior = load_prior([(0.5, 0.75), (0.5, 0.25)])
        regime = classify_regime(prior, exp_eps=Fraction(2))
        assert regime.tag is RegimeTag.FOUR_SIGNAL

    def test_boundary_resolves_to_the_smaller_signal_set(self):
        # R1 == w exactly: full disclosure, not a three-signal tie
        prior = load_prior([(0.5, Fraction(1, 2)), (0.5, Fraction(1, 4))])
        regime = classify_regime(prior, exp_eps=Fraction(2))
        assert regime.r1 == 2
        assert regime.tag is RegimeTag.FULL_DISCLOSURE

    def test_equal_conditionals_are_full_disclosure(self):
        prior = load_prior([(0.5, 0.6), (0.5, 0.6)])
        regime = classify_regime(prior, 0.01)
        assert regime.tag is RegimeTag.FULL_DISCLOSURE

    def test_strict_mode_rejects_degenerate_ratios(self):
        prior = load_prior([(0.5, 1.0), (0.5, 0.25)])
        with pytest.raises(DegenerateRatio):
            classify_regime(prior, exp_eps=Fraction(2))
        regime = classify_regime(prior, exp_eps=Fraction(2), strict=False)
        assert regime.tag is RegimeTag.FOUR_SIGNAL
        assert regime.r2 == math.inf

    def test_rejects_non_binary_prior(self):
        prior = load_prior([(0.3, 0.9), (0.3, 0.5), (0.4, 0.1)])
        with pytest.raises(NotBinarySecret):
            classify_regime(prior, exp_eps=Fraction(2))


class TestSolveBinaryFourSignal:
    def test_fixture_width_table_is_exact(self, fixture_solution):
        assert fixture_solution.regime.tag is RegimeTag.FOUR_SIGNAL
        assert fixture_solution.widths_by_signal == (
            (Fraction(1, 2), Fraction(1, 4)),
            (Fraction(1, 6), Fraction(1, 12)),
            (Fraction(1, 12), Fraction(1, 6)),
            (Fraction(1, 4), Fraction(1, 2)),
        )

    def test_fixture_posteriors_and_masses(self, fixture_solution):
        summary = posterior_summary(fixture_solution.structure)
        assert summary.q == (1, Fraction(2, 3), Fraction(1, 3), 0)
        assert summary.p == (
            Fraction(3, 8),
            Fraction(1, 8),
            Fraction(1, 8),
            Fraction(3, 8),
        )

    def test_fixture_utility(self, fixture_solution):
        assert expected_utility(
            fixture_solution.structure, UtilityFn("abs")
        ) == Fraction(5, 6)

    def test_privacy_is_binding_on_every_signal(self, fixture_solution):
        report = check_ip(fixture_solution.structure, exp_eps=Fraction(2))
        assert report.satisfied
        assert all(report.binding.values())


class TestSolveBinaryOtherRegimes:
    def test_three_signal_widths(self):
        prior = load_prior([(0.5, 0.9), (0.5, 0.4)])
        solution = solve_binary(prior, math.log(2))
        assert solution.regime.tag is RegimeTag.THREE_SIGNAL_T3
        # widths_by_signal rows are (high-secret, low-secret) pairs
        by_label = dict(zip(solution.signals, solution.widths_by_signal))
        assert by_label["t1"][0] == pytest.approx(0.7)
        assert by_label["t2"] == (0, 0)
        assert by_label["t3"][1] == pytest.approx(0.4)
        assert by_label["t4"][1] == pytest.approx(0.2)
        assert solution.structure.num_signals == 3

    def test_full_disclosure_structure(self):
        prior = load_prior([(0.5, 0.75), (0.5, 0.25)])
        solution = solve_binary(prior, exp_eps=Fraction(3))
        summary = posterior_summary(solution.structure)
        assert summary.q == (1, 0)
        assert summary.p == (Fraction(1, 2), Fraction(1, 2))

    def test_full_disclosure_at_exactly_max_ratio(self):
        # once the budget covers max(R1, R2) the solver discloses fully
        prior = load_prior([(0.5, Fraction(4, 5)), (0.5, Fraction(2, 5))])
        r1 = Fraction(4, 5) / Fraction(2, 5)
        r2 = Fraction(3, 5) / Fraction(1, 5)
        solution = solve_binary(prior, exp_eps=max(r1, r2))
        assert solution.regime.tag is RegimeTag.FULL_DISCLOSURE
        assert posterior_summary(solution.structure).q == (1, 0)

    def test_zero_budget_returns_perfect_privacy(self, fixture_prior_exact):
        solution = solve_binary(fixture_prior_exact, 0.0)
        assert solution.regime.tag is RegimeTag.PERFECT_PRIVACY
        summary = posterior_summary(solution.structure)
        assert summary.q == (1, Fraction(1, 2), 0)
        assert summary.p == (Fraction(1, 4), Fraction(1, 2), Fraction(1, 4))


class TestPerfectPrivacy:
    def test_widths_are_the_overlap_decomposition(self, fixture_prior_exact):
        solution = solve_perfect_privacy(fixture_prior_exact)
        for pair in solution.widths_by_signal:
            assert pair[0] == pair[1]
        assert [pair[0] for pair in solution.widths_by_signal] == [
            Fraction(1, 4),
            Fraction(1, 2),
            Fraction(1, 4),
        ]

    def test_signal_reveals_nothing_about_the_secret(self, fixture_prior_exact):
        summary = posterior_summary(solve_perfect_privacy(fixture_prior_exact).structure)
        for row in summary.s_post:
            assert row == (Fraction(1, 2), Fraction(1, 2))

    def test_asymmetric_prior(self):
        prior = load_prior([(0.5, 0.9), (0.5, 0.1)])
        solution = solve_perfect_privacy(prior)
        widths = [pair[0] for pair in solution.widths_by_signal]
        assert widths == pytest.approx([0.1, 0.8, 0.1])

    def test_independent_state_discloses_fully_for_free(self):
        # with q0 == q1 the state carries no information about the secret,
        # so even the zero-budget optimum reveals it outright
        prior = load_prior([(0.5, 0.6), (0.5, 0.6)])
        summary = posterior_summary(solve_perfect_privacy(prior).structure)
        assert summary.q == (1.0, 0.0)
        assert summary.p == (0.6, 0.4)


class TestRegimeBoundaries:
    """At every regime boundary the two adjacent closed forms agree exactly,
    so classification ties can be resolved either way without changing the
    solution. Each test builds a prior sitting exactly on one boundary and
    checks the produced width table against both formulas evaluated by hand.
    """

    def _widths(self, q0, q1, w):
        prior = load_prior([(Fraction(1, 2), q0), (Fraction(1, 2), q1)])
        solution = solve_binary(prior, exp_eps=w)
        return solution.regime.tag, solution.widths_by_signal

    def test_full_meets_t3(self):
        # R2 == w with R1 < w; the three-signal formula collapses to full
        # disclosure: l10 = q0, l31 = 0, l41 = 1 - q1
        w = Fraction(2)
        q0, q1 = Fraction(3, 4), Fraction(1, 2)
        tag, widths = self._widths(q0, q1, w)
        assert tag is RegimeTag.FULL_DISCLOSURE
        assert widths == (
            (q0, q1),
            (0, 0),
            (0, 0),
            (1 - q0, 1 - q1),
        )
        assert widths[0][0] == 1 - (1 - q1) / w  # the T3 value for l10

    def test_full_meets_t2(self):
        # R1 == w with R2 < w; the mirrored three-signal formula collapses
        w = Fraction(2)
        q0, q1 = Fraction(3, 5), Fraction(3, 10)
        tag, widths = self._widths(q0, q1, w)
        assert tag is RegimeTag.FULL_DISCLOSURE
        assert widths == ((q0, q1), (0, 0), (0, 0), (1 - q0, 1 - q1))
        assert widths[0][0] == w * q1  # the T2 value for l10
        assert widths[3][1] == 1 - q0 / w  # the T2 value for l41

    def test_t3_meets_four(self):
        # q1 == 1/(1+w) with both ratios above w: the four-signal l21
        # vanishes and the remaining widths match the three-signal formula
        w = Fraction(2)
        q0, q1 = Fraction(9, 10), Fraction(1, 3)
        tag, widths = self._widths(q0, q1, w)
        assert tag is RegimeTag.THREE_SIGNAL_T3
        assert widths[1] == (0, 0)
        assert widths[0] == (1 - (1 - q1) / w, q1)
        assert widths[0][0] == w * q1  # the four-signal value for l10
        assert widths[2][1] == w * q0 - w * w / (1 + w)  # four-signal l31

    def test_t2_meets_four(self):
        # q0 == w/(1+w) with both ratios above w: the four-signal l31
        # vanishes and the mirrored three-signal formula takes over
        w = Fraction(2)
        q0, q1 = Fraction(2, 3), Fraction(1, 10)
        tag, widths = self._widths(q0, q1, w)
        assert tag is RegimeTag.THREE_SIGNAL_T2
        assert widths[2] == (0, 0)
        assert widths[3] == (1 - q0, 1 - q0 / w)
        assert widths[3][1] == w * (1 - q0)  # the four-signal value for l41
        assert widths[1][1] == 1 / (1 + w) - q1  # four-signal l21


class TestBudgetLimits:
    def test_epsilon_to_zero_converges_to_perfect_privacy(self, fixture_prior):
        # the four-signal table tends to the overlap decomposition: the
        # extreme columns flatten to width pairs (q1, q1) and (1-q0, 1-q0),
        # the middle pair's posteriors tend to p0, and the utility tends to
        # the private baseline
        u = UtilityFn("abs")
        u_0 = expected_utility(solve_perfect_privacy(fixture_prior).structure, u)
        for eps in (1e-3, 1e-5, 1e-7):
            solution = solve_binary(fixture_prior, eps)
            hi, lo = solution.widths_by_signal[0]
            assert hi == pytest.approx(lo, abs=3 * eps)
            summary = posterior_summary(solution.structure)
            assert len(summary.q) == 4
            for post in summary.q[1:3]:
                assert post == pytest.approx(0.5, abs=eps)
            gap = expected_utility(solution.structure, u) - u_0
            assert 0 <= gap < 3 * eps

    def test_utility_is_monotone_in_budget(self, fixture_prior):
        u = UtilityFn("quadratic")
        values = [
            float(expected_utility(solve_binary(fixture_prior, eps).structure, u))
            for eps in (0.0, 0.2, 0.5, 1.0, 1.5, 2.0)
        ]
        for smaller, larger in zip(values, values[1:]):
            assert larger >= smaller - 1e-12


class TestGapInstance:
    def test_hand_sized_example(self):
        inst = gap_instance(delta=1, exp_eps=Fraction(3))
        assert inst.scale == 6
        assert inst.u_eps == 3
        assert inst.u_0 == Fraction(3, 2)
        assert inst.gap == Fraction(3, 2)

    def test_gap_scales_linearly_with_delta(self):
        small = gap_instance(delta=1, exp_eps=Fraction(2))
        large = gap_instance(delta=7, exp_eps=Fraction(2))
        assert large.gap == 7 * small.gap

    def test_prior_sits_in_the_full_disclosure_regime(self):
        inst = gap_instance(delta=2, exp_eps=Fraction(3))
        regime = classify_regime(inst.prior, exp_eps=Fraction(3))
        assert regime.tag is RegimeTag.FULL_DISCLOSURE

    def test_rejects_zero_budget_or_bad_delta(self):
        with pytest.raises(ValidationError):
            gap_instance(delta=1, exp_eps=Fraction(1))
        with pytest.raises(ValidationError):
            gap_instance(0.5, delta=0)
        with pytest.raises(ValidationError):
            gap_instance(0.5)
