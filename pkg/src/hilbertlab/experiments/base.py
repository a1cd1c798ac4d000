"""Experiment definitions and the report builder shared by every verification."""

import math
import time
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from loguru import logger

from hilbertlab.models import (
    Computed,
    Provenance,
    Report,
    SeriesVerdict,
    Target,
    TrendStatus,
    Verdict,
    VerdictStatus,
)


@dataclass(frozen=True)
class ExperimentDef:
    """Declarative definition of a verification experiment.

    ``run`` receives the grid as its first argument; experiments that act on a single
    measure also take ``measure`` and, where a space exponent applies, ``q``.
    """

    key: str
    run: Callable[..., Report]
    description: str
    takes_measure: bool = False
    default_q: float | None = None


class ReportBuilder:
    """Collects targets, computed values and verdicts for one experiment run."""

    def __init__(self, experiment_id: str) -> None:
        self.id = experiment_id
        self._targets: list[Target] = []
        self._computed: list[Computed] = []
        self._verdicts: list[Verdict] = []
        self._notes: list[str] = []
        self._start = time.perf_counter()
        logger.info("Experiment started", experiment=experiment_id)

    def target(
        self, name: str, value: float, provenance: Provenance, tolerance: float | None = None
    ) -> None:
        self._targets.append(
            Target(name=name, value=value, provenance=provenance, tolerance=tolerance)
        )

    def computed(
        self, name: str, value: float | None, trace=(), *, converged: bool = True
    ) -> None:
        if value is not None and not math.isfinite(value):
            value = None
        trace = [float(v) for v in np.asarray(trace, dtype=float).ravel()]
        self._computed.append(
            Computed(name=name, value=value, trace=trace, converged=converged)
        )

    def check(
        self, name: str, ok: bool, detail: str | None = None, *, converged: bool = True
    ) -> bool:
        """Pass/fail verdict; unconverged numerics make it inconclusive."""
        if not converged:
            status = VerdictStatus.INCONCLUSIVE
        else:
            status = VerdictStatus.PASS if ok else VerdictStatus.FAIL
        self._verdicts.append(Verdict(name=name, status=status, detail=detail))
        return status is VerdictStatus.PASS

    def limit(
        self,
        name: str,
        ok: bool,
        detail: str | None = None,
        *,
        reached: bool,
        converged: bool = True,
    ) -> bool:
        """Verdict for a limit or sharpness claim.

        A grid that stops short of the level the claim is stated at cannot fail it:
        an unmet threshold there is inconclusive.
        """
        if not reached and not ok:
            self._verdicts.append(
                Verdict(
                    name=name,
                    status=VerdictStatus.INCONCLUSIVE,
                    detail=f"grid too coarse; {detail}" if detail else "grid too coarse",
                )
            )
            return False
        return self.check(name, ok, detail, converged=converged)

    def agree(self, name: str, verdicts: dict[str, str]) -> VerdictStatus:
        """Agreement of several finiteness verdicts.

        ``undetermined`` anywhere makes the outcome inconclusive; otherwise all must match.
        """
        detail = ", ".join(f"{key}={value}" for key, value in verdicts.items())
        values = set(verdicts.values())
        if values & {TrendStatus.UNDETERMINED.value, SeriesVerdict.UNDETERMINED.value}:
            status = VerdictStatus.INCONCLUSIVE
        elif len(values) == 1:
            status = VerdictStatus.PASS
        else:
            status = VerdictStatus.FAIL
        self._verdicts.append(Verdict(name=name, status=status, detail=detail))
        return status

    def inconclusive(self, name: str, detail: str) -> None:
        self._verdicts.append(Verdict(name=name, status=VerdictStatus.INCONCLUSIVE, detail=detail))

    def note(self, text: str) -> None:
        self._notes.append(text)

    def build(self) -> Report:
        report = Report(
            id=self.id,
            targets=self._targets,
            computed=self._computed,
            verdicts=self._verdicts,
            notes=self._notes,
            wall_time_s=round(time.perf_counter() - self._start, 6),
        )
        logger.info(
            "Experiment completed",
            experiment=self.id,
            passed=report.passed,
            verdicts=len(report.verdicts),
            wall_time_s=report.wall_time_s,
        )
        return report


def failed_report(experiment_id: str, exc: Exception) -> Report:
    """Report standing in for an experiment that raised."""
    logger.error("Experiment aborted", experiment=experiment_id, error=str(exc))
    return Report(
        id=experiment_id,
        verdicts=[
            Verdict(
                name="completed",
                status=VerdictStatus.FAIL,
                detail=f"{type(exc).__name__}: {exc}",
            )
        ],
    )


def is_increasing(values, *, strict: bool = True, rel_slack: float = 0.0) -> bool:
    """Monotone increase; ``rel_slack`` tolerates rounding-level wiggles."""
    values = np.asarray(values, dtype=float)
    diffs = np.diff(values)
    if rel_slack:
        return bool(np.all(diffs >= -rel_slack * np.abs(values[1:])))
    return bool(np.all(diffs > 0.0) if strict else np.all(diffs >= 0.0))


def is_decreasing(values, *, strict: bool = True) -> bool:
    return is_increasing(-np.asarray(values, dtype=float), strict=strict)
