"""API routers."""

from hilbertlab.routers.evaluation import router as evaluation_router
from hilbertlab.routers.health import router as health_router
from hilbertlab.routers.verification import router as verification_router

__all__ = ["evaluation_router", "health_router", "verification_router"]
