"""FastAPI application exposing the toolkit.

Every endpoint is a thin wrapper over library calls; numeric work never
happens here. Error mapping: malformed documents (FormatError) and malformed
requests land as HTTP 400 with kind "parse"; well-formed inputs that violate
numeric invariants land as HTTP 422 with kind "numeric".
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from .. import __version__
from ..config import DEFAULT_TOLERANCES, FormatError, NumericValidationError, Tolerances
from ..fock import DensityMatrix
from ..grids import PhaseGrid, PolarGrid
from ..cahill_glauber import (
    gaussian_p_samples,
    npw_from_p,
    npw_from_w_s,
    w_s_from_density,
)
from ..reconstruct import assemble_density, ladder_closed_form, ladder_recursive
from ..npw import npw_from_density
from ..serialization import (
    cg_table_from_csv,
    cg_table_to_csv,
    density_from_json,
    density_to_json,
    format_float,
    ladder_to_debug_json,
    npw_table_from_csv,
    npw_table_to_csv,
    polar_grid_from_json,
    polar_grid_to_json,
)
from ..states import density_from_descriptor
from ..verify import all_passed, run_verification
from .schemas import (
    BridgeRequest,
    CGRequest,
    CGResponse,
    DensityResponse,
    HealthResponse,
    NPWRequest,
    PBridgeRequest,
    ReconstructRequest,
    ReconstructResponse,
    StateRequest,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
)

__all__ = ["create_app", "app"]

DEFAULT_NORM_TOL = 1e-10


def _tolerances(tol: float | None) -> Tolerances:
    """Single-knob override: --tol relaxes every validation threshold at once."""
    if tol is None:
        return DEFAULT_TOLERANCES
    return Tolerances(herm=tol, trace=tol, psd=tol, norm=tol, tail=tol)


def _resolve_density(dim: int, state: str | None, density_json: str | None, *,
                     seed: int, allow_tail: bool, tolerances: Tolerances) -> DensityMatrix:
    if (state is None) == (density_json is None):
        raise NumericValidationError("provide exactly one of 'state' or 'density_json'")
    if state is not None:
        return density_from_descriptor(dim, state, seed=seed, allow_tail=allow_tail,
                                       tolerances=tolerances)
    rho = density_from_json(density_json, tolerances=tolerances)
    if rho.dim != dim:
        raise NumericValidationError(
            f"density has dimension {rho.dim}, request says {dim}"
        )
    return rho


def _phase_grid(dim: int, grid_points: int | None) -> PhaseGrid:
    if grid_points is None:
        return PhaseGrid.default_for(dim)
    grid = PhaseGrid(grid_points)
    grid.require_resolves(dim)
    return grid


def _reconstruct_report(route: str, table, ladder, rho: DensityMatrix,
                        reference: DensityMatrix | None) -> str:
    mat = rho.matrix
    herm = float(np.max(np.abs(mat - mat.conj().T)))
    eigmin = float(np.linalg.eigvalsh(mat).min())
    diag_dev = abs(float(ladder.diag_sum.sum()) - 1.0)
    lines = [
        f"dimension: {rho.dim}",
        f"grid points: {table.grid.m_points}",
        f"route: {route}",
        f"diagonal sum deviation from 1: {format_float(diag_dev)}",
    ]
    off = np.abs(ladder.coeffs[1:])  # row m = 0 is structural padding
    if off.size:
        m_star, n_star = np.unravel_index(int(off.argmax()), off.shape)
        lines.append(
            f"largest ladder coefficient: |c[{m_star + 1}][{n_star}]| = {format_float(float(off.max()))}"
        )
    lines += [
        f"hermiticity residual: {format_float(herm)}",
        f"trace: {format_float(float(mat.trace().real))}",
        f"smallest eigenvalue: {format_float(eigmin)}",
    ]
    if reference is not None:
        dist = float(np.linalg.norm(mat - reference.matrix))
        lines.append(f"frobenius distance to reference: {format_float(dist)}")
    return "\n".join(lines) + "\n"


def create_app() -> FastAPI:
    app = FastAPI(title="npwigner", version=__version__)

    @app.exception_handler(FormatError)
    async def _format_error(request: Request, exc: FormatError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"kind": "parse", "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"kind": "parse", "message": str(exc)})

    @app.exception_handler(NumericValidationError)
    async def _numeric_error(request: Request, exc: NumericValidationError) -> JSONResponse:
        return JSONResponse(status_code=422, content={"kind": "numeric", "message": str(exc)})

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/state", response_model=DensityResponse)
    async def state(req: StateRequest) -> DensityResponse:
        rho = density_from_descriptor(req.dim, req.state, seed=req.seed,
                                      allow_tail=req.allow_tail,
                                      tolerances=DEFAULT_TOLERANCES)
        return DensityResponse(density_json=density_to_json(rho))

    @app.post("/npw", response_model=TableResponse)
    async def npw(req: NPWRequest) -> TableResponse:
        tolerances = _tolerances(req.tol)
        rho = _resolve_density(req.dim, req.state, req.density_json,
                               seed=req.seed, allow_tail=req.allow_tail,
                               tolerances=tolerances)
        grid = _phase_grid(req.dim, req.grid_points)
        table = npw_from_density(rho, grid, norm_tol=req.tol or DEFAULT_NORM_TOL)
        return TableResponse(csv=npw_table_to_csv(table, rows=req.rows))

    @app.post("/reconstruct", response_model=ReconstructResponse)
    async def reconstruct(req: ReconstructRequest) -> ReconstructResponse:
        norm_tol = req.tol or DEFAULT_NORM_TOL
        table = npw_table_from_csv(req.csv, norm_tol=norm_tol)
        if req.route == "closed_form":
            ladder = ladder_closed_form(table, norm_tol=norm_tol)
        elif req.route == "recursive":
            ladder = ladder_recursive(table, norm_tol=norm_tol)
        else:
            raise NumericValidationError(
                f"unknown route {req.route!r}; expected 'closed_form' or 'recursive'"
            )
        tolerances = _tolerances(req.tol)
        rho = assemble_density(ladder, tolerances=tolerances)
        reference = None
        if req.reference_json is not None:
            reference = density_from_json(req.reference_json, tolerances=tolerances)
            if reference.dim != rho.dim:
                raise NumericValidationError(
                    f"reference has dimension {reference.dim}, table gives {rho.dim}"
                )
        report = _reconstruct_report(req.route, table, ladder, rho, reference)
        return ReconstructResponse(
            density_json=density_to_json(rho),
            report=report,
            ladder_json=ladder_to_debug_json(ladder),
        )

    @app.post("/cg", response_model=CGResponse)
    async def cg(req: CGRequest) -> CGResponse:
        tolerances = _tolerances(req.tol)
        rho = _resolve_density(req.dim, req.state, req.density_json,
                               seed=req.seed, allow_tail=req.allow_tail,
                               tolerances=tolerances)
        grid = PolarGrid.default_for(req.dim, r_max=req.r_max, n_r=req.n_r,
                                     m_gamma=req.m_gamma)
        table = w_s_from_density(rho, grid, req.s)
        return CGResponse(csv=cg_table_to_csv(table), grid_json=polar_grid_to_json(grid))

    @app.post("/bridge", response_model=TableResponse)
    async def bridge(req: BridgeRequest) -> TableResponse:
        grid = polar_grid_from_json(req.grid_json)
        table = cg_table_from_csv(req.csv, grid)
        phase_grid = _phase_grid(req.dim, req.grid_points)
        out = npw_from_w_s(table, phase_grid, req.dim, method=req.method)
        return TableResponse(csv=npw_table_to_csv(out))

    @app.post("/pbridge", response_model=TableResponse)
    async def pbridge(req: PBridgeRequest) -> TableResponse:
        if (req.state is None) == (req.p_csv is None):
            raise NumericValidationError("provide exactly one of 'state' or 'p_csv'")
        if req.p_csv is not None:
            if req.grid_json is None:
                raise NumericValidationError("P samples need the polar-grid JSON that produced them")
            grid = polar_grid_from_json(req.grid_json)
            table = cg_table_from_csv(req.p_csv, grid)
            if table.s != 1.0:
                raise NumericValidationError(
                    f"P samples must carry s = 1 (the P function), got s = {table.s}"
                )
            imag = float(np.max(np.abs(table.values.imag)))
            if imag > 1e-12:
                raise NumericValidationError(f"P samples must be real; max |im| = {imag:.3e}")
            p_values = table.values.real
        else:
            kind, _, arg = req.state.partition(":")
            if kind.strip() != "thermal":
                raise NumericValidationError(
                    "only 'thermal:<nbar>' has a smooth analytic P here; "
                    "pass sampled P values via 'p_csv' for anything else"
                )
            try:
                nbar = float(arg)
            except ValueError:
                raise FormatError(f"malformed thermal descriptor {req.state!r}") from None
            grid = PolarGrid.default_for(req.dim, r_max=req.r_max, n_r=req.n_r,
                                         m_gamma=req.m_gamma)
            p_values = gaussian_p_samples(grid, 0.0, nbar)
        phase_grid = _phase_grid(req.dim, req.grid_points)
        out = npw_from_p(p_values, grid, phase_grid, req.dim)
        return TableResponse(csv=npw_table_to_csv(out))

    @app.post("/verify", response_model=VerifyResponse)
    async def verify(req: VerifyRequest) -> VerifyResponse:
        report = run_verification(req.dim, seed=req.seed, corrupt=req.corrupt)
        return VerifyResponse(passed=all_passed(report), checks=report)

    return app


app = create_app()
