"""Experiment registry and the batch runner."""

from loguru import logger

from hilbertlab.errors import HilbertLabError
from hilbertlab.measures import RadialMeasure, bundled_families
from hilbertlab.models import GridConfig, Report

from .base import ExperimentDef, ReportBuilder, failed_report
from .carleson import verify_thm_1_1
from .criteria import verify_thm_1_4, verify_thm_1_5
from .kernels import verify_lemma_2_2, verify_remark_2_1
from .norms import verify_thm_1_2, verify_thm_1_3

THM_1_1 = ExperimentDef(
    "thm1.1", verify_thm_1_1, "Carleson condition iff boundedness into the Zygmund-type space"
)
THM_1_2 = ExperimentDef("thm1.2", verify_thm_1_2, "norm bracket into the Zygmund-type space")
THM_1_3 = ExperimentDef("thm1.3", verify_thm_1_3, "norm 3 into the Bloch space")
THM_1_4 = ExperimentDef(
    "thm1.4", verify_thm_1_4, "l^q moment criterion for D^q_{q-1}, H^q and HL(q)",
    takes_measure=True, default_q=2.0,
)
THM_1_5 = ExperimentDef(
    "thm1.5", verify_thm_1_5, "compactness into B_q", takes_measure=True, default_q=0.5
)
LEMMA_2_2 = ExperimentDef("lem2.2", verify_lemma_2_2, "sharp kernel-mean brackets")
REMARK_2_1 = ExperimentDef("rem2.1", verify_remark_2_1, "disk kernel integral sup 8/pi")

EXPERIMENT_REGISTRY: dict[str, ExperimentDef] = {
    e.key: e for e in [THM_1_1, THM_1_2, THM_1_3, THM_1_4, THM_1_5, LEMMA_2_2, REMARK_2_1]
}


def run_experiment(
    key: str,
    grid: GridConfig,
    *,
    measure: RadialMeasure | None = None,
    q: float | None = None,
    family: list[RadialMeasure] | None = None,
) -> Report:
    """Run one registered experiment.

    Measure-based experiments default to Lebesgue measure and their registered q;
    ``thm1.1`` takes a whole family (default: the bundled families).
    """
    definition = EXPERIMENT_REGISTRY[key]
    if definition.takes_measure:
        measure = bundled_families()[0] if measure is None else measure
        return definition.run(grid, measure, definition.default_q if q is None else q)
    if key == THM_1_1.key:
        if family is None and measure is not None:
            family = [measure]
        return definition.run(grid, family)
    return definition.run(grid)


def batch_jobs() -> list[tuple[str, RadialMeasure | None]]:
    """Every (experiment, measure) pair of the full batch."""
    jobs: list[tuple[str, RadialMeasure | None]] = []
    for definition in EXPERIMENT_REGISTRY.values():
        if definition.takes_measure:
            jobs += [(definition.key, measure) for measure in bundled_families()]
        else:
            jobs.append((definition.key, None))
    return jobs


def run_safely(key: str, grid: GridConfig, measure: RadialMeasure | None = None) -> Report:
    """``run_experiment`` that turns library and floating-point errors into a failed report."""
    try:
        return run_experiment(key, grid, measure=measure)
    except (HilbertLabError, ArithmeticError, ValueError) as exc:
        label = key if measure is None else f"{key}[{measure.descriptor}]"
        return failed_report(label, exc)


def run_all(grid: GridConfig | None = None) -> list[Report]:
    """Every experiment on the bundled measure families; failures do not stop the batch."""
    grid = GridConfig() if grid is None else grid
    reports = [run_safely(key, grid, measure) for key, measure in batch_jobs()]
    logger.info(
        "Batch completed",
        reports=len(reports),
        passed=sum(report.passed for report in reports),
    )
    return reports


__all__ = [
    "EXPERIMENT_REGISTRY",
    "ExperimentDef",
    "ReportBuilder",
    "batch_jobs",
    "run_all",
    "run_experiment",
    "run_safely",
    "verify_lemma_2_2",
    "verify_remark_2_1",
    "verify_thm_1_1",
    "verify_thm_1_2",
    "verify_thm_1_3",
    "verify_thm_1_4",
    "verify_thm_1_5",
]
