"""HTTP service exposing the computations.

One POST endpoint per command; each accepts the resolved physical parameters
plus command options and returns the summary scalars together with the exact
CSV document the CLI writes to disk.
"""

from __future__ import annotations

from typing import Literal

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, reports
from .errors import ModelError, ParameterError
from .params import C_LIGHT, HBAR, PhysicalParams


class ParamsModel(BaseModel):
    """Physical parameters; defaults match the 10 um MEMS-scale cavity."""

    L0_m: float = Field(default=10e-6, gt=0.0)
    M_kg: float = Field(default=1e-11, gt=0.0)
    omega_osc: float = Field(default=1e5, gt=0.0)
    omega_cut: float = Field(default=1e16, gt=0.0)
    hbar: float = Field(default=HBAR, gt=0.0)
    c: float = Field(default=C_LIGHT, gt=0.0)

    def to_params(self) -> PhysicalParams:
        return PhysicalParams(
            L0=self.L0_m,
            M=self.M_kg,
            omega_osc=self.omega_osc,
            omega_cut=self.omega_cut,
            hbar=self.hbar,
            c=self.c,
        )


class SpectrumRequest(BaseModel):
    params: ParamsModel = ParamsModel()


class BudgetRequest(BaseModel):
    params: ParamsModel = ParamsModel()


class ForceRequest(BaseModel):
    params: ParamsModel = ParamsModel()
    delta: float = Field(default=1e-4, gt=0.0, lt=0.1)
    strict: bool = False


class DensityRequest(BaseModel):
    params: ParamsModel = ParamsModel()
    grid_size: int = Field(default=1000, ge=2, le=100_000)
    workers: int = Field(default=1, ge=1, le=64)


class SweepRequest(BaseModel):
    params: ParamsModel = ParamsModel()
    axis: Literal["omega_osc", "omega_cut", "M", "L0"]
    values: list[float] = Field(min_length=1)
    target: Literal["spectrum", "density"] = "spectrum"
    grid_size: int = Field(default=1000, ge=2, le=100_000)
    workers: int = Field(default=1, ge=1, le=64)


class OracleCheckRequest(BaseModel):
    """Runs in natural units (hbar = c = L0 = 1); see reports.oracle_report."""

    n_modes: int = Field(default=2, ge=1, le=4)
    max_total_photons: int = Field(default=4, ge=1)
    max_mirror_quanta: int = Field(default=2, ge=1)
    lambdas: list[float] = Field(default=list(reports.ORACLE_DEFAULT_LAMBDAS), min_length=1)
    mirror_mass: float = Field(default=reports.ORACLE_DEFAULT_MASS, gt=0.0)
    omega_osc: float = Field(default=reports.ORACLE_DEFAULT_OMEGA_OSC, gt=0.0)


class ComputeResponse(BaseModel):
    command: str
    summary: str
    scalars: dict[str, float]
    warnings: list[str] = []
    csv: str


def _respond(command: str, result: reports.ReportResult) -> ComputeResponse:
    return ComputeResponse(
        command=command,
        summary=result.summary,
        scalars=result.scalars,
        warnings=result.warnings,
        csv=result.csv,
    )


def create_app() -> FastAPI:
    app = FastAPI(title="mirrorcavity", version=__version__)

    @app.exception_handler(ParameterError)
    async def _parameter_error(_: Request, exc: ParameterError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.exception_handler(ModelError)
    async def _model_error(_: Request, exc: ModelError) -> JSONResponse:
        return JSONResponse(status_code=500, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict[str, str]:
        return {"status": "ok", "version": __version__}

    @app.post("/spectrum", response_model=ComputeResponse)
    def spectrum(request: SpectrumRequest) -> ComputeResponse:
        return _respond("spectrum", reports.spectrum_report(request.params.to_params()))

    @app.post("/budget", response_model=ComputeResponse)
    def budget(request: BudgetRequest) -> ComputeResponse:
        return _respond("budget", reports.budget_report(request.params.to_params()))

    @app.post("/force", response_model=ComputeResponse)
    def force(request: ForceRequest) -> ComputeResponse:
        return _respond(
            "force",
            reports.force_report(request.params.to_params(), delta=request.delta, strict=request.strict),
        )

    @app.post("/density", response_model=ComputeResponse)
    def density(request: DensityRequest) -> ComputeResponse:
        return _respond(
            "density",
            reports.density_report(
                request.params.to_params(), grid_size=request.grid_size, workers=request.workers
            ),
        )

    @app.post("/sweep", response_model=ComputeResponse)
    def sweep(request: SweepRequest) -> ComputeResponse:
        return _respond(
            "sweep",
            reports.sweep_report(
                request.params.to_params(),
                axis=request.axis,
                values=request.values,
                target=request.target,
                grid_size=request.grid_size,
                workers=request.workers,
            ),
        )

    @app.post("/oracle-check", response_model=ComputeResponse)
    def oracle_check(request: OracleCheckRequest) -> ComputeResponse:
        return _respond(
            "oracle-check",
            reports.oracle_report(
                n_modes=request.n_modes,
                max_total_photons=request.max_total_photons,
                max_mirror_quanta=request.max_mirror_quanta,
                lambdas=tuple(request.lambdas),
                mirror_mass=request.mirror_mass,
                omega_osc=request.omega_osc,
            ),
        )

    return app


app = create_app()
