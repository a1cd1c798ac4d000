"""Evaluation service: H_mu(f) at a point and function-space norms."""

import asyncio

from loguru import logger

from hilbertlab.analytic import make_function
from hilbertlab.cache import async_cached, report_cache
from hilbertlab.measures import parse_measure
from hilbertlab.models import ApplyResult, ComplexValue, GridConfig, NormResult, OperatorForm
from hilbertlab.operator import HilbertOperator
from hilbertlab.spaces import norm, parse_space


class EvaluationService:
    """Parses descriptors and runs the numerics off the event loop."""

    def __init__(self, grid: GridConfig | None = None) -> None:
        self._grid = GridConfig() if grid is None else grid

    @property
    def grid(self) -> GridConfig:
        return self._grid

    @staticmethod
    def _apply(
        measure: str, function: str, at: complex, derivative: int, form: OperatorForm,
        truncation: int,
    ) -> ApplyResult:
        op = HilbertOperator(parse_measure(measure), max_degree=truncation)
        value, error = op.apply(make_function(function), at, derivative=derivative, form=form)
        return ApplyResult(
            value=ComplexValue.of(value), form=form, derivative=derivative, error_bound=error
        )

    @async_cached(report_cache, scope=lambda service: service.grid)
    async def apply(
        self,
        measure: str,
        function: str,
        at: complex,
        derivative: int = 0,
        form: OperatorForm = OperatorForm.COEFF,
        truncation: int | None = None,
    ) -> ApplyResult:
        """``H_mu(f)^(derivative)(at)`` in the requested representation."""
        truncation = self._grid.truncation if truncation is None else truncation
        logger.info("Applying operator", measure=measure, function=function, form=form.value)
        return await asyncio.to_thread(
            self._apply, measure, function, at, derivative, form, truncation
        )

    @async_cached(report_cache, scope=lambda service: service.grid)
    async def norm(self, function: str, space: str, grid: GridConfig | None = None) -> NormResult:
        """Grid estimate of ``||f||`` in the space named by ``space``."""
        grid = self._grid if grid is None else grid
        f, spec = make_function(function), parse_space(space)
        logger.info("Evaluating norm", function=function, space=spec.label, J=grid.J)
        return await asyncio.to_thread(norm, f, spec, grid)
