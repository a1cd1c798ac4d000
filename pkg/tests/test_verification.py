import math

import pytest

from hilbertlab.errors import HilbertLabError, QuadratureError
from hilbertlab.experiments import (
    EXPERIMENT_REGISTRY,
    ExperimentDef,
    batch_jobs,
    run_experiment,
    run_safely,
    verify_lemma_2_2,
    verify_remark_2_1,
    verify_thm_1_2,
    verify_thm_1_3,
    verify_thm_1_4,
    verify_thm_1_5,
)
from hilbertlab.experiments.base import ReportBuilder, is_decreasing, is_increasing
from hilbertlab.experiments.criteria import log_weight_integral
from hilbertlab.experiments.norms import (
    LOWER_BOUND,
    UPPER_BOUND,
    bloch_kernel,
    fejer_riesz_series,
    lower_curve,
    upper_envelope,
)
from hilbertlab.measures import BUNDLED_FAMILIES, Atomic, carleson_constant
from hilbertlab.models import GridConfig, Provenance, TrendStatus, VerdictStatus
from hilbertlab.services import VerificationService


def statuses(report) -> dict[str, VerdictStatus]:
    return {verdict.name: verdict.status for verdict in report.verdicts}


class TestReportBuilder:
    def test_unconverged_check_is_inconclusive(self):
        report = ReportBuilder("demo")
        report.check("converged", True)
        report.check("unconverged", True, converged=False)
        built = report.build()
        assert statuses(built) == {
            "converged": VerdictStatus.PASS,
            "unconverged": VerdictStatus.INCONCLUSIVE,
        }
        assert not built.passed

    def test_limit_on_coarse_grid(self):
        report = ReportBuilder("demo")
        report.limit("short", False, "0.9 against 1", reached=False)
        report.limit("reached", False, "0.9 against 1", reached=True)
        report.limit("met_early", True, reached=False)
        verdicts = {v.name: v for v in report.build().verdicts}
        assert verdicts["short"].status is VerdictStatus.INCONCLUSIVE
        assert verdicts["short"].detail.startswith("grid too coarse")
        assert verdicts["reached"].status is VerdictStatus.FAIL
        assert verdicts["met_early"].status is VerdictStatus.PASS

    @pytest.mark.parametrize(
        ("verdicts", "expected"),
        [
            ({"a": "stable", "b": "stable"}, VerdictStatus.PASS),
            ({"a": "finite", "b": "divergent"}, VerdictStatus.FAIL),
            ({"a": "finite", "b": "undetermined"}, VerdictStatus.INCONCLUSIVE),
        ],
    )
    def test_agreement(self, verdicts, expected):
        assert ReportBuilder("demo").agree("agree", verdicts) is expected

    def test_non_finite_values_become_null(self):
        report = ReportBuilder("demo")
        report.computed("value", math.inf, [1.0, 2.0])
        report.target("target", 1.0, Provenance.PAPER)
        built = report.build()
        assert built.computed[0].value is None
        assert built.computed[0].trace == [1.0, 2.0]
        assert built.passed

    def test_monotonicity_helpers(self):
        assert is_increasing([1.0, 2.0, 3.0])
        assert not is_increasing([1.0, 1.0, 2.0])
        assert is_increasing([1.0, 1.0, 2.0], strict=False)
        assert is_increasing([1.0, 1.0 - 1e-12, 2.0], rel_slack=1e-9)
        assert is_decreasing([3.0, 2.0, 1.0])


class TestClosedForms:
    def test_norm_bracket_constants(self):
        assert LOWER_BOUND == pytest.approx(1.5 + 2.0 / math.pi)
        assert UPPER_BOUND == pytest.approx(1.5 + 4.0 / math.pi)

    def test_lower_curve_tends_to_two(self):
        assert float(lower_curve(1.0)) == pytest.approx(2.0 / 3.0)
        assert float(lower_curve(2.0**-30)) == pytest.approx(2.0, abs=1e-6)

    def test_fejer_riesz_series_at_origin(self):
        # sum (n+2)/(n+3) r^n at r = 0
        assert float(fejer_riesz_series(1.0)) == pytest.approx(2.0 / 3.0)

    def test_upper_envelope_limit(self):
        assert float(upper_envelope(2.0**-30)) == pytest.approx(4.0 / math.pi, rel=1e-6)

    def test_bloch_kernel(self):
        assert float(bloch_kernel(1.0)) == pytest.approx(0.5)
        assert 1.0 + float(bloch_kernel(2.0**-40)) == pytest.approx(3.0, abs=1e-9)

    @pytest.mark.parametrize("q", [0.25, 0.5, 0.9])
    def test_log_weight_integral(self, q):
        a = 1.0 / q - 2.0
        exact = 1.0 / (a + 1.0) + 1.0 / (a + 1.0) ** 2
        assert log_weight_integral(q) == pytest.approx(exact, rel=1e-9)


class TestExperiments:
    def test_registry(self):
        assert list(EXPERIMENT_REGISTRY) == [
            "thm1.1", "thm1.2", "thm1.3", "thm1.4", "thm1.5", "lem2.2", "rem2.1",
        ]

    def test_batch_covers_families(self):
        jobs = batch_jobs()
        measured = [key for key, measure in jobs if measure is not None]
        assert measured.count("thm1.4") == len(BUNDLED_FAMILIES)
        assert measured.count("thm1.5") == len(BUNDLED_FAMILIES)
        assert len(jobs) == 5 + 2 * len(BUNDLED_FAMILIES)

    def test_zygmund_norm_bracket(self, coarse_grid):
        report = verify_thm_1_2(coarse_grid)
        found = statuses(report)
        for name in (
            "lower_curve_increasing",
            "psi_positive",
            "upper_envelope_increasing",
            "upper_series_identity",
        ):
            assert found[name] is VerdictStatus.PASS
        assert found["lower_curve_reaches_2"] is not VerdictStatus.FAIL
        assert "zygmund_norm_H(1)" in {c.name for c in report.computed}

    def test_zygmund_norm_from_integral_form(self):
        grid = GridConfig(J=14, angular_nodes=256, truncation=2000, rel_tol=1e-9)
        report = verify_thm_1_2(grid)
        assert statuses(report)["norm_in_bracket"] is VerdictStatus.PASS
        (value,) = [c.value for c in report.computed if c.name == "zygmund_norm_H(1)"]
        assert LOWER_BOUND - 0.01 <= value <= UPPER_BOUND + 0.01

    def test_bloch_norm(self, coarse_grid):
        found = statuses(verify_thm_1_3(coarse_grid))
        assert found["G(0)"] is VerdictStatus.PASS
        assert found["G_increasing"] is VerdictStatus.PASS
        assert found["G_limit"] is VerdictStatus.PASS
        assert found["cesaro_below_3"] is VerdictStatus.PASS
        assert found["bloch_trace_below_3"] is not VerdictStatus.FAIL

    def test_kernel_brackets(self, coarse_grid):
        report = verify_lemma_2_2(coarse_grid)
        found = statuses(report)
        for c in ("2", "1", "0.5", "0", "-0.5"):
            assert found[f"c={c}/bracket"] is VerdictStatus.PASS
        assert found["c=0/sharp_at_origin"] is VerdictStatus.PASS
        assert VerdictStatus.FAIL not in found.values()
        assert report.notes

    def test_kernel_brackets_reject_empty_list(self, coarse_grid):
        with pytest.raises(ValueError):
            verify_lemma_2_2(coarse_grid, c_list=())

    def test_disk_integral(self, coarse_grid):
        report = verify_remark_2_1(coarse_grid)
        found = statuses(report)
        assert found["value_at_origin"] is VerdictStatus.PASS
        assert found["increasing"] is VerdictStatus.PASS
        assert found["sup_is_8_over_pi"] is not VerdictStatus.FAIL
        assert {c.name for c in report.computed} == {
            "disk_integral", "disk_integral_unnormalised_area",
        }

    def test_criterion_for_atom(self, coarse_grid, atom_half):
        report = verify_thm_1_4(coarse_grid, atom_half, 2.0)
        assert report.id == "thm1.4[atomic:t=0.5,w=1,q=2]"
        found = statuses(report)
        assert found["criterion_value"] is VerdictStatus.PASS
        assert found["norm_finiteness_matches_criterion"] is VerdictStatus.PASS
        assert found["compactness_proxy_decreasing"] is VerdictStatus.PASS

    def test_criterion_for_lebesgue(self, coarse_grid, lebesgue):
        found = statuses(verify_thm_1_4(coarse_grid, lebesgue, 2.0))
        assert found["criterion_value"] is VerdictStatus.PASS
        assert found["norm_finiteness_matches_criterion"] is not VerdictStatus.FAIL

    def test_criterion_rejects_small_q(self, coarse_grid, lebesgue):
        with pytest.raises(ValueError):
            verify_thm_1_4(coarse_grid, lebesgue, 0.5)

    def test_compactness_for_atom(self, coarse_grid, atom_half):
        report = verify_thm_1_5(coarse_grid, atom_half, 0.5)
        found = statuses(report)
        assert found["strictly_decreasing"] is VerdictStatus.PASS
        assert found["decay_threshold"] is VerdictStatus.PASS
        assert found["log_weight_integral_finite"] is VerdictStatus.PASS
        assert any("engineering choice" in note for note in report.notes)

    def test_compactness_rejects_q(self, coarse_grid, lebesgue):
        with pytest.raises(ValueError):
            verify_thm_1_5(coarse_grid, lebesgue, 1.0)

    def test_carleson_on_single_atom(self, coarse_grid):
        report = run_experiment("thm1.1", coarse_grid, measure=Atomic(((0.5, 1.0),)))
        found = statuses(report)
        assert report.id == "thm1.1"
        assert VerdictStatus.FAIL not in found.values()

    def test_run_safely_turns_errors_into_reports(self, coarse_grid, monkeypatch):
        def broken(grid):
            raise QuadratureError("did not settle", 1.0, 2.0)

        monkeypatch.setitem(EXPERIMENT_REGISTRY, "lem2.2", ExperimentDef("lem2.2", broken, "x"))
        report = run_safely("lem2.2", coarse_grid)
        assert not report.passed
        assert report.verdicts[0].name == "completed"
        assert report.verdicts[0].detail.startswith("QuadratureError")

    @pytest.mark.parametrize("error", [FloatingPointError, ZeroDivisionError])
    def test_run_safely_catches_arithmetic_errors(self, coarse_grid, monkeypatch, error):
        def broken(grid):
            raise error("overflow in kernel")

        monkeypatch.setitem(EXPERIMENT_REGISTRY, "lem2.2", ExperimentDef("lem2.2", broken, "x"))
        report = run_safely("lem2.2", coarse_grid)
        assert not report.passed
        assert report.verdicts[0].detail.startswith(error.__name__)


class TestAcceptance:
    def test_power_half_constant_grows(self, acceptance_grid, power_half):
        result = carleson_constant(power_half, 1.0, acceptance_grid)
        assert result.verdict is TrendStatus.DIVERGING
        assert result.trace[-1] >= 100.0 * result.trace[0]

    @pytest.mark.slow
    def test_carleson_iff_bounded(self, acceptance_grid, power_two, power_half):
        report = run_experiment("thm1.1", acceptance_grid, family=[power_two, power_half])
        found = statuses(report)
        for name in ("power:alpha=2", "power:alpha=0.5"):
            assert found[f"{name}/carleson_iff_bounded"] is VerdictStatus.PASS
            assert found[f"{name}/kernel_characterisations_agree"] is VerdictStatus.PASS
        assert carleson_constant(power_two, 1.0, acceptance_grid).verdict is TrendStatus.STABLE

    @pytest.mark.slow
    def test_zygmund_norm_bracket(self, acceptance_grid):
        report = verify_thm_1_2(acceptance_grid)
        found = statuses(report)
        assert found["norm_in_bracket"] is VerdictStatus.PASS
        assert VerdictStatus.FAIL not in found.values()

    @pytest.mark.slow
    def test_compactness_on_lebesgue(self, acceptance_grid, lebesgue):
        found = statuses(verify_thm_1_5(acceptance_grid, lebesgue, 0.5))
        for name in ("strictly_decreasing", "decay_threshold", "log_weight_integral_finite"):
            assert found[name] is VerdictStatus.PASS
        assert VerdictStatus.FAIL not in found.values()

    @pytest.mark.slow
    def test_disk_integral_sup(self, acceptance_grid):
        report = verify_remark_2_1(acceptance_grid)
        assert statuses(report)["sup_is_8_over_pi"] is VerdictStatus.PASS
        (sup,) = [c.value for c in report.computed if c.name == "disk_integral"]
        assert sup == pytest.approx(8.0 / math.pi, rel=0.01)


class TestVerificationService:
    async def test_run_is_cached(self, coarse_grid):
        service = VerificationService(coarse_grid)
        first = await service.run("lem2.2", grid=coarse_grid)
        second = await service.run("lem2.2", grid=coarse_grid)
        assert first is second

    async def test_measure_descriptor(self, coarse_grid):
        service = VerificationService(coarse_grid)
        (report,) = await service.verify("thm1.4", "atomic:t=0.5,w=1", 2.0, coarse_grid)
        assert report.id.startswith("thm1.4[atomic:t=0.5,w=1")

    async def test_unknown_experiment(self, coarse_grid):
        with pytest.raises(HilbertLabError, match="unknown experiment"):
            await VerificationService(coarse_grid).run("thm9.9")

    async def test_cache_is_scoped_to_service_grid(self, coarse_grid):
        finer = GridConfig(J=9, angular_nodes=256, truncation=2000, rel_tol=1e-9)
        first = await VerificationService(coarse_grid).run("rem2.1")
        second = await VerificationService(finer).run("rem2.1")
        assert first is not second
        (coarse,) = [c for c in first.computed if c.name == "disk_integral"]
        (fine,) = [c for c in second.computed if c.name == "disk_integral"]
        assert len(fine.trace) == len(coarse.trace) + 1

    @pytest.mark.parametrize(("measure", "q"), [("lebesgue", None), (None, 2.0)])
    async def test_all_rejects_measure_and_q(self, coarse_grid, measure, q):
        with pytest.raises(HilbertLabError, match="bundled measure families"):
            await VerificationService(coarse_grid).verify("all", measure, q)

    def test_experiment_names(self):
        assert VerificationService.experiments()[-1] == "all"
