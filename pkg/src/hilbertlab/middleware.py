"""HTTP middleware for the hilbertlab service."""

import time
from uuid import uuid4

from fastapi import Request
from loguru import logger
from starlette.middleware.base import BaseHTTPMiddleware

from hilbertlab.config import settings


class TimingMiddleware(BaseHTTPMiddleware):
    """Tags every response with a request id and the seconds spent computing it.

    Experiments on fine grids can run for minutes; those crossing
    ``settings.slow_request_seconds`` are logged at WARNING together with the grid asked for.
    """

    async def dispatch(self, request: Request, call_next):
        request_id = request.headers.get("X-Request-ID") or uuid4().hex[:8]
        grid = request.query_params.get("grid", "default")
        start_time = time.perf_counter()

        with logger.contextualize(request_id=request_id):
            logger.info("Request started", method=request.method, path=request.url.path, grid=grid)
            response = await call_next(request)
            elapsed = time.perf_counter() - start_time

            level = "WARNING" if elapsed > settings.slow_request_seconds else "INFO"
            logger.log(
                level,
                "Request completed",
                path=request.url.path,
                status_code=response.status_code,
                elapsed_s=round(elapsed, 4),
            )

        response.headers["X-Request-ID"] = request_id
        response.headers["X-Elapsed-Seconds"] = f"{elapsed:.4f}"
        return response
