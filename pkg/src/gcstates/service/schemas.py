"""Pydantic request/response models for the verification service."""

from typing import Literal, Optional

from pydantic import BaseModel, Field, computed_field, model_validator


class Check(BaseModel):
    """One named numerical check; `passed` is recomputed from the stored
    numbers at every serialization."""

    name: str
    value: float
    expected: float
    tolerance: float = Field(gt=0)

    @computed_field(alias="pass")  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return abs(self.value - self.expected) <= self.tolerance


class RunReport(BaseModel):
    command: str
    parameters: dict
    checks: list[Check]
    runtime_ms: float
    extra: Optional[dict] = None

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


class GridOverrides(BaseModel):
    n_theta: Optional[int] = Field(None, ge=2)
    n_phi: Optional[int] = Field(None, ge=2)
    n_r: Optional[int] = Field(None, ge=2)
    radius: Optional[float] = Field(None, gt=0)
    eps: Optional[float] = Field(None, gt=0, lt=1)


class VerifyRequest(BaseModel):
    group: Literal["weyl", "su2", "su11"]
    j: Optional[float] = None
    mu: Optional[float] = None
    k: Optional[float] = None
    cutoff: int = Field(64, ge=4)
    probe_dim: Optional[int] = Field(None, ge=1)
    tol: Optional[float] = Field(None, gt=0)
    grid: GridOverrides = GridOverrides()

    @model_validator(mode="after")
    def _required_parameters(self):
        if self.group == "su2" and self.j is None:
            raise ValueError("su2 requires j")
        if self.group == "su11" and self.k is None:
            raise ValueError("su11 requires k")
        return self


class FieldSpec(BaseModel):
    type: Literal["constant", "rotating", "chirped"] = "rotating"
    a: Optional[list[float]] = None          # constant field vector
    amplitude: float = 1.0
    omega: float = 1.0
    rate: float = 0.1
    a3: float = 2.0

    @model_validator(mode="after")
    def _constant_needs_vector(self):
        if self.type == "constant" and (self.a is None or len(self.a) != 3):
            raise ValueError("constant field requires a 3-vector 'a'")
        return self


class DynamicsRequest(BaseModel):
    j: float = Field(gt=0)
    mu: Optional[float] = None               # defaults to j
    theta0: float = 2.0
    phi0: float = 0.5
    field: FieldSpec = FieldSpec()
    t_end: float = Field(10.0, gt=0)
    dt: float = Field(1e-3, gt=0)
    tol: Optional[float] = Field(None, gt=0)
    include_trajectory: bool = False


class TrajectoryPayload(BaseModel):
    times: list[float]
    states_re: list[list[float]]
    states_im: list[list[float]]
    classical: list[list[float]]
    fidelity: list[float]


class DynamicsResponse(BaseModel):
    report: RunReport
    trajectory: Optional[TrajectoryPayload] = None


class LatticeRequest(BaseModel):
    group: Literal["weyl", "su2", "su11"]
    lattice: Optional[dict] = None                 # weyl period spec
    points: Optional[list[list[float]]] = None     # su2 (theta, phi) or
                                                   # su11/weyl (re, im)
    probe_dim: int = Field(6, ge=1)
    index_range: int = Field(6, ge=0)
    cutoff: int = Field(64, ge=4)
    j: Optional[float] = None
    mu: Optional[float] = None
    k: Optional[float] = None
    tol: float = Field(1e-9, gt=0)

    @model_validator(mode="after")
    def _required_parameters(self):
        if self.group == "weyl" and self.lattice is None:
            raise ValueError("weyl requires a lattice spec")
        if self.group in ("su2", "su11") and self.points is None:
            raise ValueError(f"{self.group} requires an explicit point list")
        if self.group == "su2" and self.j is None:
            raise ValueError("su2 requires j")
        if self.group == "su11" and self.k is None:
            raise ValueError("su11 requires k")
        return self


class OverlapRequest(BaseModel):
    group: Literal["weyl", "su2", "su11"]
    j: Optional[float] = None
    mu: Optional[float] = None
    k: Optional[float] = None
    cutoff: int = Field(64, ge=4)
    # two base-space points: su2 (theta, phi); su11/weyl (re, im)
    x1: list[float]
    x2: list[float]
    tol: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def _required_parameters(self):
        if self.group == "su2" and (self.j is None or self.mu is None):
            raise ValueError("su2 requires j and mu")
        if self.group == "su11" and self.k is None:
            raise ValueError("su11 requires k")
        for name in ("x1", "x2"):
            if len(getattr(self, name)) != 2:
                raise ValueError(f"{name} must have 2 components")
        return self


class OverlapResponse(BaseModel):
    report: RunReport
    overlap_re: float
    overlap_im: float


class PQRequest(BaseModel):
    j: float = Field(gt=0)
    mu: Optional[float] = None
    seed: int = 0
    tol: Optional[float] = Field(None, gt=0)
