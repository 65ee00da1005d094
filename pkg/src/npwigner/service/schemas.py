"""Request/response models for the HTTP service.

File-shaped payloads (density JSON, table CSVs, grid JSON) travel as opaque
strings produced and parsed by the serialization module, so service responses
are byte-identical to what the library writes to disk.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class HealthResponse(StrictModel):
    status: str
    version: str


class StateRequest(StrictModel):
    dim: int = Field(ge=2)
    state: str
    seed: int = 0
    allow_tail: bool = False


class DensityResponse(StrictModel):
    density_json: str


class NPWRequest(StrictModel):
    dim: int = Field(ge=2)
    state: str | None = None
    density_json: str | None = None
    grid_points: int | None = Field(default=None, ge=1)
    rows: list[int] | None = None
    seed: int = 0
    allow_tail: bool = False
    tol: float | None = Field(default=None, gt=0.0)


class TableResponse(StrictModel):
    csv: str


class ReconstructRequest(StrictModel):
    csv: str
    route: str = "closed_form"
    reference_json: str | None = None
    tol: float | None = Field(default=None, gt=0.0)


class ReconstructResponse(StrictModel):
    density_json: str
    report: str
    ladder_json: str


class CGRequest(StrictModel):
    dim: int = Field(ge=2)
    s: float
    state: str | None = None
    density_json: str | None = None
    r_max: float | None = Field(default=None, gt=0.0)
    n_r: int | None = Field(default=None, ge=1)
    m_gamma: int | None = Field(default=None, ge=1)
    seed: int = 0
    allow_tail: bool = False
    tol: float | None = Field(default=None, gt=0.0)


class CGResponse(StrictModel):
    csv: str
    grid_json: str


class BridgeRequest(StrictModel):
    dim: int = Field(ge=2)
    csv: str
    grid_json: str
    grid_points: int | None = Field(default=None, ge=1)
    method: str = "direct"


class PBridgeRequest(StrictModel):
    dim: int = Field(ge=2)
    state: str | None = None
    p_csv: str | None = None
    grid_json: str | None = None
    grid_points: int | None = Field(default=None, ge=1)
    r_max: float | None = Field(default=None, gt=0.0)
    n_r: int | None = Field(default=None, ge=1)
    m_gamma: int | None = Field(default=None, ge=1)


class VerifyRequest(StrictModel):
    dim: int = Field(default=16, ge=2)
    seed: int = 7
    corrupt: bool = False


class CheckResult(StrictModel):
    # JSON key "pass" is a Python keyword; the model field uses an alias.
    passed: bool = Field(alias="pass")
    max_error: float

    model_config = ConfigDict(extra="forbid", populate_by_name=True)


class VerifyResponse(StrictModel):
    passed: bool
    checks: dict[str, CheckResult]
