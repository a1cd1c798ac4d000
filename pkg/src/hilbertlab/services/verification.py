"""Verification service running the registered experiments."""

import asyncio

from loguru import logger

from hilbertlab.cache import async_cached, report_cache
from hilbertlab.errors import HilbertLabError
from hilbertlab.experiments import EXPERIMENT_REGISTRY, batch_jobs, run_experiment, run_safely
from hilbertlab.measures import parse_measure
from hilbertlab.models import GridConfig, Report

ALL = "all"


class VerificationService:
    """Runs experiments in worker threads; reports are cached per (experiment, args, grid)."""

    def __init__(self, grid: GridConfig | None = None) -> None:
        self._grid = GridConfig() if grid is None else grid

    @property
    def grid(self) -> GridConfig:
        return self._grid

    @staticmethod
    def experiments() -> list[str]:
        return [*EXPERIMENT_REGISTRY, ALL]

    @async_cached(report_cache, scope=lambda service: service.grid)
    async def run(
        self,
        experiment: str,
        measure: str | None = None,
        q: float | None = None,
        grid: GridConfig | None = None,
    ) -> Report:
        """Run one experiment.

        Raises:
            HilbertLabError: for an unknown experiment id or a malformed measure.
        """
        if experiment not in EXPERIMENT_REGISTRY:
            raise HilbertLabError(
                f"unknown experiment {experiment!r} (expected one of {self.experiments()})"
            )
        grid = self._grid if grid is None else grid
        parsed = parse_measure(measure) if measure else None
        logger.info("Verification requested", experiment=experiment, measure=measure, q=q)
        return await asyncio.to_thread(run_experiment, experiment, grid, measure=parsed, q=q)

    @async_cached(report_cache, scope=lambda service: service.grid)
    async def run_all(self, grid: GridConfig | None = None) -> list[Report]:
        """The full batch on the bundled measure families, experiments run concurrently."""
        grid = self._grid if grid is None else grid
        reports = await asyncio.gather(
            *(asyncio.to_thread(run_safely, key, grid, measure) for key, measure in batch_jobs())
        )
        logger.info(
            "Batch completed", reports=len(reports), passed=sum(r.passed for r in reports)
        )
        return list(reports)

    async def verify(
        self,
        experiment: str,
        measure: str | None = None,
        q: float | None = None,
        grid: GridConfig | None = None,
    ) -> list[Report]:
        """``run`` or ``run_all`` behind one entry point, always returning a list.

        Raises:
            HilbertLabError: for ``all`` combined with a measure or q, since the batch
                runs on the bundled families with the registered exponents.
        """
        if experiment == ALL:
            if measure is not None or q is not None:
                raise HilbertLabError(
                    "'all' runs the bundled measure families; measure and q apply to "
                    "single experiments"
                )
            return await self.run_all(grid)
        return [await self.run(experiment, measure, q, grid)]
