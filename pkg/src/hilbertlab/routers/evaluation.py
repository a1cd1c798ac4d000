"""Operator evaluation and norm endpoints."""

from typing import Annotated

from fastapi import APIRouter, Depends, Query

from hilbertlab.descriptors import parse_point
from hilbertlab.models import ApplyResult, GridConfig, NormResult, OperatorForm
from hilbertlab.services.evaluation import EvaluationService

router = APIRouter(tags=["Evaluation"])


def get_evaluation_service() -> EvaluationService:
    """Dependency for evaluation service - injected at app level."""
    raise NotImplementedError("Must be overridden by dependency_overrides")


@router.get("/apply", response_model=ApplyResult)
async def apply(
    measure: Annotated[str, Query(description="Measure descriptor, e.g. power:alpha=2")],
    function: Annotated[str, Query(description="Function descriptor, e.g. poly:1,0.5")],
    at: Annotated[str, Query(description="Point of the unit disk, e.g. 0.3+0.4i")],
    service: Annotated[EvaluationService, Depends(get_evaluation_service)],
    derivative: Annotated[int, Query(ge=0, le=2, description="Derivative order")] = 0,
    form: Annotated[OperatorForm, Query(description="coeff, integral or contour")] = (
        OperatorForm.COEFF
    ),
) -> ApplyResult:
    """Value of H_mu(f) or of its first or second derivative at a point."""
    return await service.apply(measure, function, parse_point(at), derivative, form)


@router.get("/norm", response_model=NormResult)
async def norm(
    function: Annotated[str, Query(description="Function descriptor")],
    space: Annotated[str, Query(description="Space descriptor, e.g. hardy:q=2")],
    service: Annotated[EvaluationService, Depends(get_evaluation_service)],
    grid: Annotated[str | None, Query(description="Grid overrides, e.g. J=12,nodes=256")] = None,
) -> NormResult:
    """Grid estimate of a function-space norm with its running-sup trace."""
    return await service.norm(function, space, GridConfig.parse(grid))
