"""Verification suite plumbing: configs, reports, determinism, and the
pass/fail behavior of every registered check."""

import math

import pytest

from qnetdet.checks import (
    CHECKS,
    GROUPS,
    CheckConfig,
    CheckReport,
    reproduce_counterexample,
    run_checks,
)
from qnetdet.errors import DimensionNotTwo, DimensionTooLarge, DimensionTooSmall

FAST = CheckConfig(dimension=2, trials=25, seed=3)


class TestConfig:
    def test_defaults(self):
        cfg = CheckConfig()
        assert cfg.dimension == 2 and cfg.trials == 1000 and cfg.seed == 0
        assert cfg.tolerance == 1e-9 and cfg.povm_size is None

    def test_resolved_povm_size(self):
        assert CheckConfig(dimension=3).resolved_povm_size == 9
        assert CheckConfig(dimension=3, povm_size=12).resolved_povm_size == 12

    def test_dimension_bounds(self):
        with pytest.raises(DimensionTooSmall):
            CheckConfig(dimension=1)
        with pytest.raises(DimensionTooLarge):
            CheckConfig(dimension=9)

    def test_scalar_bounds(self):
        with pytest.raises(ValueError):
            CheckConfig(trials=0)
        with pytest.raises(ValueError):
            CheckConfig(tolerance=0.0)
        with pytest.raises(ValueError):
            CheckConfig(povm_size=0)

    def test_frozen(self):
        with pytest.raises(Exception):
            CheckConfig().trials = 5


class TestRegistry:
    def test_groups_cover_all_checks(self):
        grouped = set(GROUPS["all"])
        assert grouped == set(CHECKS)
        assert len(GROUPS["all"]) == len(CHECKS) == 15

    def test_group_contents(self):
        assert set(GROUPS["theorems"]) == {
            "theorem_single_link",
            "theorem_simple_series",
            "theorem_simple_parallel",
            "theorem_parallel_then_series",
            "theorem_worst_case_d2",
        }
        assert GROUPS["amgm"] == ("reverse_amgm",)
        assert GROUPS["counterexample"] == ("counterexample",)
        assert len(GROUPS["lemmas"]) == 8

    def test_unknown_selector(self):
        with pytest.raises(KeyError):
            run_checks("nonexistent", FAST)


@pytest.mark.parametrize("name", sorted(CHECKS))
@pytest.mark.parametrize("dimension", [2, 3])
def test_every_check_passes(name, dimension):
    if name == "theorem_worst_case_d2" and dimension != 2:
        pytest.skip("qubit-only statement")
    cfg = CheckConfig(dimension=dimension, trials=25, seed=3)
    rep = CHECKS[name](cfg)
    assert rep.passed
    assert rep.violations == ()
    assert rep.name == name
    # randomized checks sit at the floating-point floor; the fixed-instance
    # check compares against rounded reference values
    assert rep.max_slack < (1e-3 if name == "counterexample" else 1e-6)


class TestReportContract:
    def test_to_dict_keys(self):
        rep = CHECKS["lemma_det_preserving"](FAST)
        doc = rep.to_dict()
        assert list(doc)[:5] == ["name", "trials_run", "passed", "max_slack", "violations"]

    def test_passed_iff_no_violations(self):
        good = CHECKS["lemma_det_preserving"](FAST)
        assert good.passed and not good.violations
        bad = CHECKS["lemma_det_preserving"](
            CheckConfig(dimension=2, trials=25, seed=3, tolerance=1e-18)
        )
        assert not bad.passed and bad.violations

    def test_violation_payload_replayable(self):
        cfg = CheckConfig(dimension=2, trials=25, seed=3, tolerance=1e-18)
        a = CHECKS["lemma_det_preserving"](cfg)
        b = CHECKS["lemma_det_preserving"](cfg)
        assert a.to_dict() == b.to_dict()
        v = a.violations[0]
        assert {"trial", "x", "y", "lhs", "rhs"} <= set(v)

    def test_violation_cap_keeps_total(self):
        cfg = CheckConfig(dimension=2, trials=60, seed=3, tolerance=1e-18)
        rep = CHECKS["lemma_det_preserving"](cfg)
        assert len(rep.violations) == 25
        assert rep.extras["violations_truncated_from"] > 25

    def test_determinism_across_runs(self):
        cfg = CheckConfig(dimension=2, trials=40, seed=11)
        for name in ("lemma_convexity_swap", "reverse_amgm", "theorem_simple_series"):
            assert CHECKS[name](cfg).to_dict() == CHECKS[name](cfg).to_dict()

    def test_seed_changes_slack(self):
        a = CHECKS["lemma_det_preserving"](CheckConfig(trials=40, seed=1))
        b = CHECKS["lemma_det_preserving"](CheckConfig(trials=40, seed=2))
        assert a.max_slack != b.max_slack


class TestGroupRuns:
    def test_all_order_and_names(self):
        reports = run_checks("all", FAST)
        assert [r.name for r in reports] == list(GROUPS["all"])

    def test_worst_case_skipped_at_higher_dimension(self):
        reports = run_checks("theorems", CheckConfig(dimension=3, trials=10, seed=3))
        by_name = {r.name: r for r in reports}
        skipped = by_name["theorem_worst_case_d2"]
        assert skipped.passed and skipped.trials_run == 0
        assert "skipped" in skipped.extras
        assert all(r.passed for r in reports)

    def test_direct_call_raises_at_higher_dimension(self):
        with pytest.raises(DimensionNotTwo):
            run_checks("theorem_worst_case_d2", CheckConfig(dimension=3, trials=10))

    def test_single_check_selector(self):
        reports = run_checks("reverse_amgm", FAST)
        assert len(reports) == 1 and reports[0].name == "reverse_amgm"


class TestEqualityTracking:
    def test_amgm_equality_cases_at_float_floor(self):
        rep = CHECKS["reverse_amgm"](CheckConfig(trials=200, seed=5))
        assert rep.extras["equality_trials"] > 0
        assert rep.extras["equality_max_abs_slack"] <= 1e-12

    def test_series_deterministic_equality_gap(self):
        rep = CHECKS["theorem_simple_series"](CheckConfig(trials=30, seed=5))
        assert rep.extras["deterministic_equality_gap"] <= 1e-10

    def test_series_low_order_witness_logged_not_asserted(self):
        rep = CHECKS["theorem_simple_series"](
            CheckConfig(dimension=3, trials=20, seed=5)
        )
        wit = rep.extras["low_order_witness"]
        # the order-2 average beats the rule value, yet the check passes:
        # only the top order is claimed
        assert wit["order"] == 2
        assert wit["ensemble_average"] == pytest.approx(math.sqrt(3.0) / 2.0, abs=1e-12)
        assert wit["rule_value"] == pytest.approx(0.75, abs=1e-12)
        assert wit["gap"] > 0.11
        assert rep.passed

    def test_nested_demo_below_rule(self):
        rep = CHECKS["theorem_parallel_then_series"](CheckConfig(trials=10, seed=5))
        demo = rep.extras["nested_qubit_demo"]
        assert demo["rule_value"] == pytest.approx(0.6156, abs=1e-12)
        assert demo["nested_average"] == pytest.approx(0.5344277544238201, abs=1e-12)
        assert demo["nested_average"] < demo["rule_value"]


class TestCounterexample:
    def test_reference_values(self):
        data = reproduce_counterexample()
        top = 9.0 * (25.0 + 4.0 * math.sqrt(34.0)) / 500.0
        assert data["det_vector"][0] == pytest.approx(top, abs=1e-9)
        assert data["det_value"] == pytest.approx(0.673, abs=5e-4)
        assert data["zz_value"] == pytest.approx(0.695, abs=5e-4)
        assert data["mixture"] == pytest.approx([0.819, 0.181], abs=1e-3)
        assert data["swap_vector"] == pytest.approx([0.966, 0.034], abs=5e-4)
        assert data["mixture_majorizes_swap"] is False
        assert data["zz_value"] > data["det_value"]
        assert data["worst_case_value"] <= data["det_value"]

    def test_check_wrapper_passes(self):
        rep = CHECKS["counterexample"](FAST)
        assert rep.passed and rep.trials_run == 1
        assert rep.extras["det_value"] == pytest.approx(0.673, abs=5e-4)


@pytest.mark.slow
@pytest.mark.parametrize("dimension", [2, 3, 4])
def test_series_check_thousand_trials(dimension):
    # documented contract: zero violations at a thousand trials
    rep = CHECKS["theorem_simple_series"](
        CheckConfig(dimension=dimension, trials=1000, seed=0)
    )
    assert rep.passed and rep.trials_run == 1000
