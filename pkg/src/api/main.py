"""
FastAPI Application - HTTP entry point for the Raman pair correlator.
"""
import logging
import time
from contextlib import asynccontextmanager

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import ValidationError

from src import __version__
from src.api.routes import router
from src.exceptions import InputError, RamanPairError
from src.observability.metrics import metrics_collector
from src.spectrum.reference import available_media

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info("[OK] Raman Pair Correlator API %s starting", __version__)
    logger.info("[OK] Reference media: %s", ", ".join(available_media()))
    yield
    stats = metrics_collector.get_aggregated_stats()
    logger.info("Shutting down after %d run(s), %d failed", stats["total_runs"], stats["failed_runs"])


# Create FastAPI app
app = FastAPI(
    title="Raman Pair Correlator API",
    description="Stokes/anti-Stokes pair correlation predictions and photon-count statistics.",
    version=__version__,
    docs_url="/docs",
    redoc_url="/redoc",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)


# Request timing middleware
@app.middleware("http")
async def add_timing_header(request: Request, call_next):
    """Add request timing to response headers."""
    start_time = time.time()
    response = await call_next(request)
    process_time = (time.time() - start_time) * 1000
    response.headers["X-Process-Time-Ms"] = str(round(process_time, 2))
    return response


@app.exception_handler(RamanPairError)
async def library_exception_handler(request: Request, exc: RamanPairError):
    """Input problems are the client's (422); numerical failures are ours (500)."""
    status = 422 if isinstance(exc, InputError) else 500
    if status == 500:
        logger.warning("[WARN] %s on %s: %s", type(exc).__name__, request.url.path, exc)
    return JSONResponse(status_code=status, content={**exc.to_dict(), "path": str(request.url)})


@app.exception_handler(ValidationError)
async def model_validation_handler(request: Request, exc: ValidationError):
    """Library models rejecting request-derived values are client errors."""
    first = exc.errors()[0]
    return JSONResponse(
        status_code=422,
        content={"error": "ValidationError", "detail": first["msg"], "path": str(request.url)},
    )


@app.exception_handler(Exception)
async def global_exception_handler(request: Request, exc: Exception):
    """Handle uncaught exceptions."""
    return JSONResponse(
        status_code=500,
        content={
            "error": "Internal server error",
            "detail": str(exc),
            "path": str(request.url),
        },
    )


app.include_router(router, prefix="/api/v1", tags=["Pair Correlator"])


@app.get("/")
async def root():
    """Root endpoint with API information."""
    return {
        "name": "Raman Pair Correlator API",
        "version": __version__,
        "docs": "/docs",
        "health": "/api/v1/health",
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
