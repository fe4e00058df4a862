"""HTTP front end.

Run with::

    uvicorn toepscope.service.app:app

Package errors map to HTTP status: bad input is 400, numerical failures
and certified-identity violations are 500.  The error body is always
``{"error": {"type": ..., "message": ...}}``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import InputError, ToepscopeError
from ..render import csv_text, ppm_bytes
from . import handlers
from .schemas import (
    AnalyzeRequest,
    AnalyzeResponse,
    DeficiencyRequest,
    DeficiencyResponse,
    HealthResponse,
    PortraitRequest,
    PullbackRequest,
    PullbackResponse,
    SpectrumRequest,
    SpectrumResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="toepscope", version=__version__)

    @app.exception_handler(ToepscopeError)
    async def _package_error(request: Request, exc: ToepscopeError) -> JSONResponse:
        status = 400 if isinstance(exc, InputError) else 500
        return JSONResponse(
            status_code=status,
            content={"error": {"type": type(exc).__name__, "message": str(exc)}},
        )

    @app.exception_handler(RequestValidationError)
    async def _validation_error(
        request: Request, exc: RequestValidationError
    ) -> JSONResponse:
        first = exc.errors()[0] if exc.errors() else {}
        loc = ".".join(str(part) for part in first.get("loc", ()))
        msg = first.get("msg", "invalid request")
        return JSONResponse(
            status_code=400,
            content={"error": {"type": "ValidationError",
                               "message": f"{loc}: {msg}" if loc else msg}},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return handlers.run_health()

    @app.post("/analyze", response_model=AnalyzeResponse)
    def analyze(req: AnalyzeRequest) -> AnalyzeResponse:
        return handlers.run_analyze(req)

    @app.post("/spectrum", response_model=SpectrumResponse)
    def spectrum(req: SpectrumRequest) -> SpectrumResponse:
        return handlers.run_spectrum(req)

    @app.post("/deficiency", response_model=DeficiencyResponse)
    def deficiency(req: DeficiencyRequest) -> DeficiencyResponse:
        return handlers.run_deficiency(req)

    @app.post("/pullback", response_model=PullbackResponse)
    def pullback(req: PullbackRequest) -> PullbackResponse:
        return handlers.run_pullback(req)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        return handlers.run_verify(req)

    @app.post("/portrait")
    def portrait_route(req: PortraitRequest) -> Response:
        if req.format == "json":
            doc = handlers.run_portrait(req)
            return JSONResponse(doc.model_dump(by_alias=True))
        _, grid = handlers.compute_portrait(req)
        if req.format == "csv":
            return Response(content=csv_text(grid), media_type="text/csv")
        return Response(content=ppm_bytes(grid),
                        media_type="image/x-portable-pixmap")

    return app


app = create_app()
