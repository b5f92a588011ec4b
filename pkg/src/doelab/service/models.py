"""Request/response models for the HTTP service.

Documents travel as text (configs may use the lenient JSON dialect)
or as already-parsed JSON structures; artifacts come back as
structured objects plus rendered table texts, so a thin client only
has to write them to disk.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class SampleRequest(BaseModel):
    config_text: str
    strict_json: bool = False
    fallback_seed: Optional[int] = None  # used only when the config has no seed


class SampleResponse(BaseModel):
    recipe_set: dict
    recipe_count: int
    design_rows: int
    doe_type: str
    seed: int
    summary: str
    validation_warnings: list[str] = Field(default_factory=list)


class RunDemoRequest(BaseModel):
    recipe_set: dict
    model: str
    options: dict = Field(default_factory=dict)


class RunDemoResponse(BaseModel):
    results: list[dict]
    row_count: int


class AnalyzeRequest(BaseModel):
    recipe_set: dict
    results_text: Optional[str] = None
    results_format: Optional[str] = None  # json | csv; required with results_text
    results_rows: Optional[list[dict]] = None
    alpha: float = 0.05
    n_boot: int = 100
    seed: Optional[int] = None  # defaults to the campaign seed
    force_analyzer: Optional[str] = None
    charts: bool = False


class AnalyzeResponse(BaseModel):
    analyzer: str
    tables: dict[str, str]
    summary: dict
    charts: dict[str, str] = Field(default_factory=dict)


class SurfaceRequest(BaseModel):
    recipe_set: dict
    results_text: Optional[str] = None
    results_format: Optional[str] = None
    results_rows: Optional[list[dict]] = None
    factor_x: str
    factor_y: str
    metric: str
    resolution: int = 25
    fixed: dict[str, float] = Field(default_factory=dict)
    chart: bool = False


class SurfaceResponse(BaseModel):
    csv: str
    svg: Optional[str] = None


class DumpDesignRequest(BaseModel):
    config_text: str
    strict_json: bool = False


class DumpDesignResponse(BaseModel):
    csv: str
    design_rows: int


class ErrorInfo(BaseModel):
    error_type: str
    message: str


class HealthResponse(BaseModel):
    status: str
    version: str
