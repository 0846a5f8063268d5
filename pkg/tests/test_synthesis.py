"""Wage-region geometry, samplers, and change synthesis."""

import numpy as np
import pytest

from okishio_lab import (
    EqualOffPivot,
    Infeasible,
    InvalidFraction,
    InvalidSector,
    NotInB,
    PivotUniform,
    SamplingExhausted,
    WageBundle,
    apply_change,
    build_region,
    check_properties,
    classify,
    labor_values,
    oracle_region_membership,
    ratio_condition_holds,
    ratio_condition_sectors,
    sample_constant_exploitation,
    sample_rising_exploitation,
    synthesize_culs_change,
    uniform_profit_rate,
    value_of_bundle,
)


@pytest.fixture
def ref_region(ref_tech, ref_bundle, ref_change):
    eq = uniform_profit_rate(ref_tech, ref_bundle)
    values = labor_values(ref_tech)
    new_values = labor_values(apply_change(ref_tech, ref_change))
    cls = classify(ref_tech, eq, ref_change)
    return build_region(eq, new_values, value_of_bundle(values, ref_bundle), cls)


@pytest.fixture
def one_sector_region(one_sector_tech, one_sector_bundle):
    # A = (0.5), L = (1), b = (0.25): p = (4), values = (2), vb = 0.5.
    # Change to A = (0.55), L = 0.7 is viable: cost 3 -> 2.9.
    from okishio_lab import TechChange

    eq = uniform_profit_rate(one_sector_tech, one_sector_bundle)
    change = TechChange(sector=0, new_column=np.array([0.55]), new_labor=0.7)
    cls = classify(one_sector_tech, eq, change)
    new_values = labor_values(apply_change(one_sector_tech, change))
    values = labor_values(one_sector_tech)
    return build_region(
        eq, new_values, value_of_bundle(values, one_sector_bundle), cls
    )


class _FakeViable:
    """Stands in for a ChangeClassification when only the offset matters."""

    def __init__(self, break_even_wage):
        self.viable = True
        self.break_even_wage = break_even_wage


class _FakeNotViable:
    viable = False
    break_even_wage = 1.0


def _fake_eq(prices):
    from okishio_lab import Equilibrium

    return Equilibrium(
        prices=prices, profit_rate=0.0, spectral_radius=1.0, residual=0.0
    )


class TestRegionGeometry:
    def test_reference_intercepts(self, ref_region):
        np.testing.assert_allclose(
            ref_region.price_plane_intercepts,
            [19.0 / 18.0, 1.1611111111111112, 0.9675925925925926],
            atol=1e-9,
        )
        np.testing.assert_allclose(
            ref_region.value_plane_intercepts,
            [1.0368188512518408, 1.1912013536379018, 0.9934148620209059],
            atol=1e-9,
        )

    def test_reference_intercepts_printed_precision(self, ref_region):
        np.testing.assert_allclose(
            ref_region.price_plane_intercepts,
            [1.0555556, 1.1611111, 0.9675926],
            atol=1e-7,
        )
        np.testing.assert_allclose(
            ref_region.value_plane_intercepts,
            [1.0368189, 1.1912014, 0.9934149],
            atol=1e-7,
        )

    def test_reference_feasibility_pattern(self, ref_region):
        assert ref_region.feasible
        np.testing.assert_array_equal(
            ref_region.feasible_sectors, [False, True, True]
        )

    def test_offsets(self, ref_region):
        assert ref_region.price_offset == pytest.approx(19.0 / 18.0, abs=1e-9)
        assert ref_region.value_offset == pytest.approx(4.0 / 7.0, abs=1e-12)

    def test_ratio_condition_agrees(self, ref_region):
        assert ratio_condition_holds(ref_region) == ref_region.feasible
        np.testing.assert_array_equal(
            ratio_condition_sectors(ref_region), ref_region.feasible_sectors
        )

    def test_ratio_condition_threshold_arithmetic(self, ref_region):
        # Markup product (1 + e)(1 + saving rate) = 1.75 * 19/18.
        threshold = (1.0 / ref_region.value_offset) * ref_region.price_offset
        assert threshold == pytest.approx(1.8472222222222223, abs=1e-9)
        ratios = ref_region.prices / ref_region.new_values
        np.testing.assert_allclose(
            ratios,
            [1.8144329896907216, 1.8950931890504211, 1.8965192433618648],
            atol=1e-8,
        )

    def test_scaled_up_values_kill_feasibility(self, ref_region):
        # Doubling the new values halves every value intercept.
        squeezed = build_region(
            _fake_eq(ref_region.prices),
            ref_region.new_values * 2.0,
            ref_region.value_offset,
            _FakeViable(ref_region.price_offset),
        )
        assert not squeezed.feasible
        assert not ratio_condition_holds(squeezed)

    def test_non_viable_change_rejected(self, ref_region):
        with pytest.raises(ValueError, match="viable"):
            build_region(
                _fake_eq(ref_region.prices),
                ref_region.new_values,
                ref_region.value_offset,
                _FakeNotViable(),
            )


class TestConstantExploitationSampler:
    def test_reproduces_published_bundle(self, ref_region):
        # Pivot sector 2 with its coordinate pinned to the published draw;
        # the equal-split tail then lands on the printed figures.
        bundle = sample_constant_exploitation(
            ref_region, strategy=EqualOffPivot(pivot=1, value=1.170977)
        )
        np.testing.assert_allclose(
            bundle.quantities,
            [0.008613446793178136, 1.170977, 0.008613446793178136],
            atol=1e-9,
        )
        np.testing.assert_allclose(
            bundle.quantities, [0.008613, 1.170977, 0.008613], atol=1e-6
        )

    def test_default_strategy_satisfies_joint_properties(
        self, ref_region, ref_tech, ref_bundle, ref_change
    ):
        bundle = sample_constant_exploitation(ref_region, seed=5)
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        values = labor_values(ref_tech)
        new_values = labor_values(apply_change(ref_tech, ref_change))
        report = check_properties(
            ref_tech, ref_change, eq, values, new_values, ref_bundle, bundle
        )
        assert report.all_hold

    def test_sample_lies_in_region(self, ref_region):
        for seed in (1, 2, 3, 10, 99):
            bundle = sample_constant_exploitation(ref_region, seed=seed)
            membership = oracle_region_membership(bundle, ref_region)
            assert membership.overall, f"seed {seed} left the region"

    def test_deterministic_per_seed(self, ref_region):
        first = sample_constant_exploitation(ref_region, seed=42)
        second = sample_constant_exploitation(ref_region, seed=42)
        np.testing.assert_array_equal(first.quantities, second.quantities)
        different = sample_constant_exploitation(ref_region, seed=43)
        assert not np.array_equal(first.quantities, different.quantities)

    def test_weights_spread_tail(self, ref_region):
        bundle = sample_constant_exploitation(
            ref_region, seed=4, strategy=PivotUniform(weights=(1.0, 1.0, 3.0))
        )
        assert oracle_region_membership(bundle, ref_region).overall
        # Pivot is sector 3 (largest intercept gap); off-pivot goods 1 and
        # 2 get value proportional to the weights.
        q = bundle.quantities
        assert q[1] == pytest.approx(q[0], rel=1e-9)

    def test_one_sector_forced_point(self, one_sector_region):
        bundle = sample_constant_exploitation(one_sector_region, seed=8)
        # Only point on the value plane: vb / new_value = 0.5 / (0.7/0.45).
        assert bundle.quantities[0] == pytest.approx(0.32142857142857145, abs=1e-12)
        assert oracle_region_membership(bundle, one_sector_region).overall

    def test_infeasible_region_raises(self, ref_region):
        squeezed = build_region(
            _fake_eq(ref_region.prices),
            ref_region.new_values * 2.0,
            ref_region.value_offset,
            _FakeViable(ref_region.price_offset),
        )
        with pytest.raises(Infeasible):
            sample_constant_exploitation(squeezed, seed=1)

    def test_impossible_pinned_value_exhausts(self, ref_region):
        # A pivot coordinate worth more than the whole bundle value leaves
        # a negative remainder for the tail; no proposal can succeed.
        bad = EqualOffPivot(pivot=1, value=2.0)
        with pytest.raises(SamplingExhausted):
            sample_constant_exploitation(ref_region, seed=1, strategy=bad)

    def test_unknown_strategy_rejected(self, ref_region):
        with pytest.raises(TypeError):
            sample_constant_exploitation(ref_region, seed=1, strategy="uniform")


class TestRisingExploitationSampler:
    def test_sample_is_strictly_inside(self, ref_region):
        for seed in (1, 7, 2026):
            bundle = sample_rising_exploitation(ref_region, seed=seed)
            cost = float(ref_region.prices @ bundle.quantities)
            worth = float(ref_region.new_values @ bundle.quantities)
            assert cost > ref_region.price_offset + 1e-12
            assert worth < ref_region.value_offset - 1e-12

    def test_on_plane_point_rejected_by_membership(self, ref_region):
        # A constant-exploitation sample sits on the value plane, so it
        # must fail the rising sampler's strict below-value requirement.
        on_plane = sample_constant_exploitation(ref_region, seed=3)
        worth = float(ref_region.new_values @ on_plane.quantities)
        assert not worth < ref_region.value_offset - 1e-12

    def test_shrunken_published_bundle_is_inside(self, ref_region):
        # Radial shrink of the published bundle: dearer than break-even,
        # value strictly below par.
        shrunk = 0.999 * np.array(
            [0.008613446793178136, 1.170977, 0.008613446793178136]
        )
        cost = float(ref_region.prices @ shrunk)
        worth = float(ref_region.new_values @ shrunk)
        assert cost > ref_region.price_offset + 1e-12
        assert worth < ref_region.value_offset - 1e-12

    def test_midpoint_with_shrink_is_inside(self, ref_region):
        base = sample_constant_exploitation(ref_region, seed=12)
        midpoint = 0.5 * (base.quantities + 0.98 * base.quantities)
        cost = float(ref_region.prices @ midpoint)
        worth = float(ref_region.new_values @ midpoint)
        assert cost > ref_region.price_offset + 1e-12
        assert worth < ref_region.value_offset - 1e-12

    def test_deterministic(self, ref_region):
        first = sample_rising_exploitation(ref_region, seed=31)
        second = sample_rising_exploitation(ref_region, seed=31)
        np.testing.assert_array_equal(first.quantities, second.quantities)

    def test_one_sector(self, one_sector_region):
        bundle = sample_rising_exploitation(one_sector_region, seed=2)
        cost = float(one_sector_region.prices @ bundle.quantities)
        worth = float(one_sector_region.new_values @ bundle.quantities)
        assert cost > one_sector_region.price_offset + 1e-12
        assert worth < one_sector_region.value_offset - 1e-12


class TestSynthesize:
    def test_reference_construction_midpoint(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        synth = synthesize_culs_change(ref_tech, ref_bundle, eq, sector=2)
        # increment = 0.5 * 0.25 / 3, window scaled by 0.5 * 0.25.
        assert synth.column_increment == pytest.approx(1.0 / 24.0, abs=1e-9)
        lo, hi = synth.labor_interval
        assert hi == pytest.approx(0.125, abs=1e-12)
        assert lo == pytest.approx(0.1203125, abs=1e-9)
        assert synth.change.new_labor == pytest.approx(0.12265625, abs=1e-9)
        assert synth.interval_ratio == pytest.approx(80.0 / 77.0, abs=1e-9)
        assert synth.pivot_sector == 1
        np.testing.assert_allclose(
            synth.change.new_column,
            [0.25 + 1 / 24, 0.05 + 1 / 24, 0.35 + 1 / 24],
            atol=1e-9,
        )

    def test_new_labor_strictly_inside_window(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        for labor_frac in (0.05, 0.5, 0.95):
            synth = synthesize_culs_change(
                ref_tech, ref_bundle, eq, sector=2, labor_frac=labor_frac
            )
            lo, hi = synth.labor_interval
            assert lo < synth.change.new_labor < hi

    def test_output_classifies_viable_culs(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        synth = synthesize_culs_change(ref_tech, ref_bundle, eq, sector=2)
        cls = classify(ref_tech, eq, synth.change)
        assert cls.viable
        assert cls.culs

    def test_output_region_feasible(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        synth = synthesize_culs_change(ref_tech, ref_bundle, eq, sector=2)
        cls = classify(ref_tech, eq, synth.change)
        values = labor_values(ref_tech)
        new_values = labor_values(apply_change(ref_tech, synth.change))
        region = build_region(
            eq, new_values, value_of_bundle(values, ref_bundle), cls
        )
        assert region.feasible
        assert ratio_condition_holds(region)

    def test_every_sector_works(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        for sector in range(3):
            synth = synthesize_culs_change(ref_tech, ref_bundle, eq, sector=sector)
            cls = classify(ref_tech, eq, synth.change)
            assert cls.viable and cls.culs

    def test_extreme_labor_frac_still_viable(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        synth = synthesize_culs_change(
            ref_tech, ref_bundle, eq, sector=2, labor_frac=0.999
        )
        cls = classify(ref_tech, eq, synth.change)
        assert cls.viable
        assert cls.cost_drop > 0

    def test_equal_organic_composition_rejected(
        self, equal_organic_tech, equal_organic_bundle
    ):
        eq = uniform_profit_rate(equal_organic_tech, equal_organic_bundle)
        with pytest.raises(NotInB, match="ratio"):
            synthesize_culs_change(
                equal_organic_tech, equal_organic_bundle, eq, sector=0
            )

    def test_bad_fractions_rejected(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        for bad in (0.0, 1.0, -0.1, 1.5):
            with pytest.raises(InvalidFraction):
                synthesize_culs_change(
                    ref_tech, ref_bundle, eq, sector=0, epsilon_frac=bad
                )
            with pytest.raises(InvalidFraction):
                synthesize_culs_change(
                    ref_tech, ref_bundle, eq, sector=0, labor_frac=bad
                )

    def test_bad_sector_rejected(self, ref_tech, ref_bundle):
        eq = uniform_profit_rate(ref_tech, ref_bundle)
        with pytest.raises(InvalidSector):
            synthesize_culs_change(ref_tech, ref_bundle, eq, sector=3)
        with pytest.raises(InvalidSector):
            synthesize_culs_change(ref_tech, ref_bundle, eq, sector=-1)


class TestFeasibilityFormsAgree:
    def test_intercept_and_markup_forms_match_on_random_regions(self):
        # The two routes compute the same predicate from different
        # arithmetic; they must agree sector by sector, bit for bit.
        from okishio_lab import Technology

        rng = np.random.default_rng(314)
        agreements = 0
        for _ in range(60):
            n = int(rng.integers(2, 7))
            inputs = rng.uniform(0.01, 0.3, (n, n))
            inputs *= rng.uniform(0.3, 0.8) / np.max(np.abs(np.linalg.eigvals(inputs)))
            tech = Technology(inputs, rng.uniform(0.05, 0.5, n))
            values = labor_values(tech)
            direction = rng.uniform(0.1, 1.0, n)
            bundle = WageBundle(
                direction * (rng.uniform(0.3, 0.9) / float(values @ direction))
            )
            eq = uniform_profit_rate(tech, bundle)
            from okishio_lab import TechChange

            sector = int(rng.integers(n))
            change = TechChange(
                sector=sector,
                new_column=tech.input_column(sector) + rng.uniform(1e-4, 2e-3),
                new_labor=float(tech.labor[sector]) * rng.uniform(0.6, 0.95),
            )
            cls = classify(tech, eq, change)
            if not cls.viable:
                continue
            new_values = labor_values(apply_change(tech, change))
            region = build_region(
                eq, new_values, value_of_bundle(values, bundle), cls
            )
            assert ratio_condition_holds(region) == region.feasible
            np.testing.assert_array_equal(
                ratio_condition_sectors(region), region.feasible_sectors
            )
            agreements += 1
        assert agreements >= 40
