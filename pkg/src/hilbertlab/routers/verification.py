"""Verification endpoints."""

from typing import Annotated

from fastapi import APIRouter, Depends, Path, Query

from hilbertlab.models import GridConfig, Report
from hilbertlab.services.verification import VerificationService

router = APIRouter(prefix="/verify", tags=["Verification"])


def get_verification_service() -> VerificationService:
    """Dependency for verification service - injected at app level."""
    raise NotImplementedError("Must be overridden by dependency_overrides")


@router.get("/{experiment}", response_model=list[Report])
async def verify(
    experiment: Annotated[str, Path(description="Experiment id, e.g. thm1.3, or all")],
    service: Annotated[VerificationService, Depends(get_verification_service)],
    measure: Annotated[str | None, Query(description="Measure descriptor")] = None,
    q: Annotated[float | None, Query(description="Space exponent")] = None,
    grid: Annotated[str | None, Query(description="Grid overrides, e.g. J=12")] = None,
) -> list[Report]:
    """Run one experiment (or the full batch) and return its reports."""
    return await service.verify(experiment, measure, q, GridConfig.parse(grid))
