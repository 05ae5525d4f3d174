"""Tests for priors, structures, mechanisms, and the operations between them."""

from fractions import Fraction

import numpy as np
import pytest

from ipd import (
    InfoStructure,
    MassNotNormalized,
    ValidationError,
    ZeroMassContext,
    compress,
    load_prior,
    load_prior_joint,
    mechanism_to_structure,
    merge_signals,
    posterior_summary,
    sample_signal,
    split_signal,
    structure_to_mechanism,
)
from ipd.errors import (
    BadWeights,
    ConditionalOutOfRange,
    NonPositiveMass,
    NotEquivalentSignals,
)

from conftest import random_binary_prior


class TestPrior:
    def test_canonical_order_sorts_by_decreasing_q(self):
        prior = load_prior([(0.5, 0.25), (0.5, 0.75)], labels=["low", "high"])
        assert prior.secrets == ("high", "low")
        assert prior.q == (0.75, 0.25)
        # perm records where each canonical secret sat in the input
        assert prior.perm == (2, 1)
        assert prior.user_order() == (1, 0)

    def test_stable_sort_keeps_input_order_on_ties(self):
        prior = load_prior([(0.3, 0.5), (0.7, 0.5)], labels=["a", "b"])
        assert prior.secrets == ("a", "b")

    def test_p_y1_is_the_mixture(self):
        prior = load_prior([(0.4, 0.9), (0.6, 0.2)])
        assert prior.p_y1 == pytest.approx(0.4 * 0.9 + 0.6 * 0.2)

    def test_joint_table_loader_matches_marginal_form(self):
        # P(S=s, Y=y) table for p=(.5,.5), q=(.75,.25)
        joint = load_prior_joint([(0.125, 0.375), (0.375, 0.125)])
        direct = load_prior([(0.5, 0.75), (0.5, 0.25)])
        assert joint.p == pytest.approx(direct.p)
        assert joint.q == pytest.approx(direct.q)

    def test_rejects_unnormalized_mass(self):
        with pytest.raises(MassNotNormalized):
            load_prior([(0.5, 0.75), (0.4, 0.25)])

    def test_rejects_zero_mass_secret(self):
        with pytest.raises(NonPositiveMass):
            load_prior([(1.0, 0.75), (0.0, 0.25)])

    def test_rejects_conditional_outside_unit_interval(self):
        with pytest.raises(ConditionalOutOfRange):
            load_prior([(0.5, 1.25), (0.5, 0.25)])

    def test_rejects_single_secret(self):
        with pytest.raises(ValidationError):
            load_prior([(1.0, 0.5)])

    def test_rejects_duplicate_labels(self):
        with pytest.raises(ValidationError):
            load_prior([(0.5, 0.75), (0.5, 0.25)], labels=["s", "s"])

    def test_secret_index_unknown_label(self):
        prior = load_prior([(0.5, 0.75), (0.5, 0.25)])
        with pytest.raises(KeyError):
            prior.secret_index("nope")


class TestInfoStructure:
    def test_rejects_width_row_not_summing_to_one(self, fixture_prior):
        with pytest.raises(MassNotNormalized):
            InfoStructure(
                prior=fixture_prior,
                signals=("t1", "t2"),
                widths=((0.5, 0.4), (0.5, 0.5)),
                cells=((1, 0), (1, 0)),
            )

    def test_rejects_row_inconsistent_with_prior(self, fixture_prior):
        # both rows fully disclose, but row 2 claims posterior 1 everywhere
        with pytest.raises(ValidationError):
            InfoStructure(
                prior=fixture_prior,
                signals=("t1", "t2"),
                widths=((0.75, 0.25), (0.25, 0.75)),
                cells=((1, 0), (1, 1)),
            )

    def test_rejects_negative_width(self, fixture_prior):
        with pytest.raises(ValidationError):
            InfoStructure(
                prior=fixture_prior,
                signals=("t1", "t2"),
                widths=((1.1, -0.1), (0.25, 0.75)),
                cells=((1, 0), (1, 0)),
            )

    def test_signal_mass(self, fixture_solution):
        st = fixture_solution.structure
        assert st.signal_mass(0) == Fraction(3, 8)
        assert st.signal_mass(1) == Fraction(1, 8)


class TestPosteriorSummary:
    def test_fixture_summary_is_exact(self, fixture_solution):
        summary = posterior_summary(fixture_solution.structure)
        assert summary.p == (
            Fraction(3, 8),
            Fraction(1, 8),
            Fraction(1, 8),
            Fraction(3, 8),
        )
        assert summary.q == (1, Fraction(2, 3), Fraction(1, 3), 0)

    def test_mean_equals_prior_state_probability(self, fixture_solution):
        summary = posterior_summary(fixture_solution.structure)
        assert summary.mean == fixture_solution.structure.prior.p_y1

    def test_zero_mass_signals_are_dropped(self, fixture_prior):
        st = InfoStructure(
            prior=fixture_prior,
            signals=("t1", "dead", "t2"),
            widths=((0.75, 0.0, 0.25), (0.25, 0.0, 0.75)),
            cells=((1, 0.5, 0), (1, 0.5, 0)),
        )
        summary = posterior_summary(st)
        assert summary.signals == ("t1", "t2")

    def test_secret_posterior_rows_sum_to_one(self, fixture_solution):
        summary = posterior_summary(fixture_solution.structure)
        for row in summary.s_post:
            assert sum(row) == 1


class TestMechanismConversion:
    def test_fixture_kernel_values(self, fixture_solution):
        m = fixture_solution.mechanism
        s0 = m.prior.secret_index("s0")
        # P(T=t1 | s0, Y=1) = width*cell/q = (1/2)/(3/4)
        assert m.kernel[s0][1][0] == Fraction(2, 3)
        # the low signal is impossible under Y=1 for the high secret
        assert m.kernel[s0][1][3] == 0

    def test_round_trip_is_exact_for_rational_structures(self, fixture_solution):
        st = fixture_solution.structure
        back = mechanism_to_structure(structure_to_mechanism(st))
        assert back.widths == st.widths
        assert back.cells == st.cells

    def test_kernel_rows_normalize(self, fixture_solution):
        m = fixture_solution.mechanism
        for block in m.kernel:
            for row in block:
                assert sum(row) == 1

    def test_round_trip_on_random_float_structures(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            prior = random_binary_prior(rng)
            st = _random_structure(rng, prior, k=4)
            back = mechanism_to_structure(structure_to_mechanism(st))
            a = posterior_summary(st)
            b = posterior_summary(back)
            assert a.p == pytest.approx(b.p, abs=1e-12)
            assert a.q == pytest.approx(b.q, abs=1e-12)


class TestSplitMergeCompress:
    def test_split_preserves_posteriors(self, fixture_solution):
        st = fixture_solution.structure
        split = split_signal(st, "t1", (Fraction(1, 3), Fraction(2, 3)))
        assert split.num_signals == 5
        summary = posterior_summary(split)
        assert summary.q[0] == summary.q[1] == 1
        assert summary.p[0] == Fraction(1, 8)
        assert summary.p[1] == Fraction(2, 8)

    def test_split_rejects_bad_weights(self, fixture_solution):
        st = fixture_solution.structure
        with pytest.raises(BadWeights):
            split_signal(st, "t1", (0.5, 0.4))
        with pytest.raises(BadWeights):
            split_signal(st, "t1", (1.5, -0.5))

    def test_merge_undoes_split(self, fixture_solution):
        st = fixture_solution.structure
        split = split_signal(st, "t1", (Fraction(1, 3), Fraction(2, 3)))
        merged = merge_signals(split, ("t1_1", "t1_2"))
        assert merged.widths == st.widths
        assert merged.cells == st.cells

    def test_merge_rejects_distinct_posteriors(self, fixture_solution):
        st = fixture_solution.structure
        with pytest.raises(NotEquivalentSignals):
            merge_signals(st, ("t1", "t4"))

    def test_compress_merges_duplicates_and_drops_dead_columns(self, fixture_prior):
        st = InfoStructure(
            prior=fixture_prior,
            signals=("a", "dead", "b", "c"),
            widths=(
                (0.375, 0.0, 0.375, 0.25),
                (0.125, 0.0, 0.125, 0.75),
            ),
            cells=((1, 0.5, 1, 0), (1, 0.5, 1, 0)),
        )
        out = compress(st)
        assert out.signals == ("a", "c")
        assert out.widths[0] == (0.75, 0.25)

    def test_compress_is_idempotent(self, fixture_solution):
        once = compress(fixture_solution.structure)
        twice = compress(once)
        assert once.signals == twice.signals
        assert once.widths == twice.widths


class TestSampling:
    def test_draws_are_deterministic_per_seed(self, fixture_solution):
        m = fixture_solution.mechanism
        a = sample_signal(m, "s0", 1, 7, 50)
        b = sample_signal(m, "s0", 1, 7, 50)
        assert a == b
        assert set(a) <= set(m.signals)

    def test_different_seeds_differ(self, fixture_solution):
        m = fixture_solution.mechanism
        assert sample_signal(m, "s0", 1, 1, 50) != sample_signal(m, "s0", 1, 2, 50)

    def test_zero_mass_context_raises(self):
        prior = load_prior([(0.5, 1.0), (0.5, 0.25)])
        st = InfoStructure(
            prior=prior,
            signals=("t1", "t2"),
            widths=((1.0, 0.0), (0.25, 0.75)),
            cells=((1, 0), (1, 0)),
        )
        m = structure_to_mechanism(st)
        with pytest.raises(ZeroMassContext):
            sample_signal(m, "s0", 0, 1, 10)

    def test_count_zero_gives_empty_list(self, fixture_solution):
        assert sample_signal(fixture_solution.mechanism, "s1", 0, 1, 0) == []


def _random_structure(rng, prior, k):
    """Random consistent structure: a random kernel pushed through Bayes."""
    from ipd import Mechanism

    kernel = []
    for _ in range(prior.n):
        rows = rng.dirichlet(np.ones(k), size=2)
        kernel.append((tuple(rows[0]), tuple(rows[1])))
    m = Mechanism(
        prior=prior, signals=tuple(f"t{j}" for j in range(k)), kernel=tuple(kernel)
    )
    return mechanism_to_structure(m)
