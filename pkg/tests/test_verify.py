"""Tests for the self-check suite behind `npwigner verify`."""

import pytest

from npwigner.verify import CHECK_TOLERANCES, all_passed, run_verification


@pytest.fixture(scope="module")
def report():
    return run_verification(16, seed=7)


class TestRunVerification:
    def test_covers_every_registered_check(self, report):
        assert sorted(report) == sorted(CHECK_TOLERANCES)
        assert len(report) == 12

    def test_entry_schema(self, report):
        for entry in report.values():
            assert set(entry) == {"pass", "max_error"}
            assert isinstance(entry["pass"], bool)
            assert entry["max_error"] >= 0.0

    def test_default_run_passes_everything(self, report):
        failing = {name: e for name, e in report.items() if not e["pass"]}
        assert not failing, f"checks out of tolerance: {failing}"
        assert all_passed(report)

    def test_errors_sit_within_registered_tolerances(self, report):
        for name, entry in report.items():
            assert entry["max_error"] <= CHECK_TOLERANCES[name]

    def test_exact_algebra_check_is_bitwise(self, report):
        # Shift-operator identities hold without rounding, so the registered
        # tolerance is zero and the measured error must be zero too.
        assert CHECK_TOLERANCES["sg_algebra"] == 0.0
        assert report["sg_algebra"]["max_error"] == 0.0

    def test_deterministic_for_fixed_seed(self, report):
        again = run_verification(16, seed=7)
        assert again == report

    def test_other_dimensions_pass(self):
        assert all_passed(run_verification(8, seed=3))

    def test_corruption_fails_only_round_trip(self):
        corrupted = run_verification(16, seed=7, corrupt=True)
        failing = {name for name, e in corrupted.items() if not e["pass"]}
        assert failing == {"round_trip"}
        assert not all_passed(corrupted)
        assert corrupted["round_trip"]["max_error"] > CHECK_TOLERANCES["round_trip"]
