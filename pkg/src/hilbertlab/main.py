"""FastAPI application for the hilbertlab service."""

from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from loguru import logger

from hilbertlab.errors import HilbertLabError
from hilbertlab.log_config import setup_logging
from hilbertlab.middleware import TimingMiddleware
from hilbertlab.models import GridConfig
from hilbertlab.routers import evaluation_router, health_router, verification_router
from hilbertlab.routers.evaluation import get_evaluation_service
from hilbertlab.routers.verification import get_verification_service
from hilbertlab.services import EvaluationService, VerificationService


def create_evaluation_service(request: Request) -> EvaluationService:
    """Dependency that creates EvaluationService from app state."""
    return EvaluationService(request.app.state.grid)


def create_verification_service(request: Request) -> VerificationService:
    """Dependency that creates VerificationService from app state."""
    return VerificationService(request.app.state.grid)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan handler."""
    setup_logging()
    app.state.grid = GridConfig.from_settings()
    logger.info("Starting hilbertlab service", J=app.state.grid.J)

    yield

    logger.info("Service shutdown complete")


app = FastAPI(
    title="hilbertlab",
    description="Generalized Hilbert matrix operator: evaluation, norms and verification",
    version="0.1.0",
    lifespan=lifespan,
)

# Middleware
app.add_middleware(TimingMiddleware)

# Dependency overrides
app.dependency_overrides[get_evaluation_service] = create_evaluation_service
app.dependency_overrides[get_verification_service] = create_verification_service

# Routers
app.include_router(health_router)
app.include_router(evaluation_router)
app.include_router(verification_router)


async def reject(request: Request, exc: Exception) -> JSONResponse:
    """Library and validation errors are client errors."""
    logger.warning("Request rejected", path=request.url.path, error=type(exc).__name__)
    return JSONResponse(
        status_code=422, content={"error": type(exc).__name__, "detail": str(exc)}
    )


# ValueError covers invalid measures and pydantic validation raised inside the services
app.add_exception_handler(HilbertLabError, reject)
app.add_exception_handler(ValueError, reject)


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8000)
