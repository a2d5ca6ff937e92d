"""FastAPI application wrapping the counting library.

Heavy state (convolution-exponential measures, sieves, validated zero
tables) is cached inside the core modules, so a long-running service
amortizes it across requests.  CSV output is byte-identical to the CLI's.
"""

from __future__ import annotations

from fastapi import FastAPI, Query
from fastapi.responses import PlainTextResponse

from .. import __version__
from ..errors import (
    BudgetError,
    ConditioningError,
    DomainError,
    IdentityError,
    RadsumError,
    ZeroTableDataError,
    ZeroTableParseError,
)
from . import handlers
from .models import (
    CountRequest,
    CountResponse,
    EstimateSRequest,
    HealthResponse,
    StaircaseRequest,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
    ZerosValidateRequest,
    ZerosValidateResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(
        title="radsum",
        version=__version__,
        description="Counting sums of rational powers of integers, exactly and by estimate.",
    )

    @app.exception_handler(RadsumError)
    async def _radsum_error(request, exc: RadsumError):
        from fastapi.responses import JSONResponse

        status = 422
        if isinstance(exc, (DomainError, BudgetError, ZeroTableParseError, ZeroTableDataError)):
            status = 422
        elif isinstance(exc, ConditioningError):
            status = 409
        elif isinstance(exc, IdentityError):
            status = 500
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "message": str(exc)},
        )

    @app.get("/api/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/api/count", response_model=CountResponse)
    def count(req: CountRequest) -> CountResponse:
        return handlers.handle_count(req)

    @app.post("/api/staircase", response_model=TableResponse)
    def staircase(req: StaircaseRequest, format: str = Query("json")):
        result = handlers.handle_staircase(req)
        if format == "csv":
            return PlainTextResponse(result.csv, media_type="text/csv")
        return result

    @app.post("/api/estimate-s", response_model=TableResponse)
    def estimate_s(req: EstimateSRequest, format: str = Query("json")):
        result = handlers.handle_estimate_s(req)
        if format == "csv":
            return PlainTextResponse(result.csv, media_type="text/csv")
        return result

    @app.post("/api/verify", response_model=VerifyResponse)
    def verify_endpoint(req: VerifyRequest) -> VerifyResponse:
        return handlers.handle_verify(req)

    @app.post("/api/zeros/validate", response_model=ZerosValidateResponse)
    def zeros_validate(req: ZerosValidateRequest) -> ZerosValidateResponse:
        return handlers.handle_zeros_validate(req)

    return app


app = create_app()
