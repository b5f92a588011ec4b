"""FastAPI application exposing the pipeline stages.

The service is stateless: every endpoint is a pure transform of
its request body, so instances can be scaled or restarted freely.
Toolbox errors map onto HTTP statuses with a structured body the
thin client can convert back into the original error class.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import (
    EXIT_IO,
    EXIT_NUMERIC,
    EXIT_USAGE,
    DoelabError,
)
from . import handlers, models

_STATUS_FOR_EXIT = {
    EXIT_USAGE: 400,
    EXIT_IO: 400,  # paths never reach the service; treat as bad request
    EXIT_NUMERIC: 422,
}


def create_app() -> FastAPI:
    app = FastAPI(
        title="doelab",
        version=__version__,
        description=(
            "Design-of-experiments service: sample experiment recipes from a "
            "scenario configuration, run built-in demo models, and analyze "
            "campaign results."
        ),
    )

    @app.exception_handler(DoelabError)
    async def _doelab_error(_request: Request, exc: DoelabError) -> JSONResponse:
        status = _STATUS_FOR_EXIT.get(exc.exit_code, 422)
        body = models.ErrorInfo(error_type=type(exc).__name__, message=str(exc))
        return JSONResponse(status_code=status, content={"error": body.model_dump()})

    @app.get("/health", response_model=models.HealthResponse)
    def health() -> models.HealthResponse:
        return models.HealthResponse(status="ok", version=__version__)

    @app.post("/v1/sample", response_model=models.SampleResponse)
    def sample(req: models.SampleRequest) -> models.SampleResponse:
        return handlers.sample(req)

    @app.post("/v1/run-demo", response_model=models.RunDemoResponse)
    def run_demo(req: models.RunDemoRequest) -> models.RunDemoResponse:
        return handlers.run_demo(req)

    @app.post("/v1/analyze", response_model=models.AnalyzeResponse)
    def analyze(req: models.AnalyzeRequest) -> models.AnalyzeResponse:
        return handlers.analyze(req)

    @app.post("/v1/surface", response_model=models.SurfaceResponse)
    def surface(req: models.SurfaceRequest) -> models.SurfaceResponse:
        return handlers.surface(req)

    @app.post("/v1/dump-design", response_model=models.DumpDesignResponse)
    def dump_design(req: models.DumpDesignRequest) -> models.DumpDesignResponse:
        return handlers.dump_design(req)

    return app


app = create_app()
