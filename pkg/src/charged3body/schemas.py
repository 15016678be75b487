"""Pydantic request/response models for the service layer."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator


class GridModel(BaseModel):
    b1_min: float = -5.0
    b1_max: float = 5.0
    n1: int = Field(default=201, ge=1)
    b2_min: float = -5.0
    b2_max: float = 5.0
    n2: int = Field(default=201, ge=1)


class CouplingSelector(BaseModel):
    """Exactly one of alpha, beta, or gravitational selects the couplings."""

    alpha: tuple[float, float, float] | None = None
    beta: tuple[float, float] | None = None
    gravitational: bool = False

    @model_validator(mode="after")
    def _exactly_one(self):
        picked = sum([self.alpha is not None, self.beta is not None, bool(self.gravitational)])
        if picked != 1:
            raise ValueError("give exactly one of alpha, beta, or gravitational")
        return self


class RootsRequest(CouplingSelector):
    m: tuple[float, float, float] = (1.0, 1.0, 1.0)
    tol: float = Field(default=1e-8, gt=0)


class CentralConfigModel(BaseModel):
    positions: list[list[float]]
    multiplier: float
    potential: float
    inertia: float
    residual: float
    effective_couplings: tuple[float, float, float]
    kind: str


class RootInfo(BaseModel):
    u: float
    interval: str
    multiplicity: int
    enclosure: tuple[float, float]
    enclosure_width: float
    reduced_potential: float | None
    u_sign: str
    central_configuration: CentralConfigModel | None = None


class RootsReport(BaseModel):
    masses: tuple[float, float, float]
    couplings: tuple[float, float, float]
    beta: tuple[float, float] | None
    coefficients: tuple[float, float, float, float, float, float]
    degree: int
    triple: tuple[int, int, int]
    region: int | None
    region_alt: int | None
    boundary: bool
    boundary_reason: str | None
    infinity_multiplicity: int
    roots: list[RootInfo]


class RegionsRequest(BaseModel):
    m: tuple[float, float, float] = (1.0, 1.0, 1.0)
    grid: GridModel = GridModel()
    include_svg: bool = False


class RegionsResponse(BaseModel):
    csv: str
    svg: str | None
    distinct_triples: list[tuple[int, int, int]]
    regions_seen: list[str]
    cells: int
    boundary_cells: int


class CurveRequest(BaseModel):
    m: tuple[float, float, float] | None = None
    mu: float | None = None
    samples: int = Field(default=200, ge=2)

    @model_validator(mode="after")
    def _mass_choice(self):
        if (self.m is None) == (self.mu is None):
            raise ValueError("give exactly one of m or mu")
        if self.mu is not None and not self.mu > 0:
            raise ValueError("mu must be positive")
        return self

    def masses(self) -> tuple[float, float, float]:
        if self.m is not None:
            return self.m
        return (float(self.mu), float(self.mu), 1.0)


class CurveResponse(BaseModel):
    csv: str
    samples: int
    cusps: list[float]
    infinity_parameters: list[float]


class SpecialPointsRequest(BaseModel):
    mu: float = Field(gt=0)


class SpecialPointsResponse(BaseModel):
    mu: float
    xi_minus: float
    xi_zero: float
    xi_plus: float
    eta_minus: float
    eta_zero: float
    eta_plus: float
    xi_product: float
    eta_product: float
    ordering_ok: bool
    residual_g3_at_xi: float
    residual_curve_derivative_at_eta: float


class ReleqRequest(CouplingSelector):
    m: tuple[float, float, float] = (1.0, 1.0, 1.0)
    u: float | None = None
    noncollinear: bool = False
    lam: float | None = Field(default=None, description="multiplier gauge; default fixes I = 1")
    tol: float = Field(default=1e-9, gt=0)

    @model_validator(mode="after")
    def _target(self):
        if (self.u is None) == (not self.noncollinear):
            raise ValueError("give exactly one of u or noncollinear")
        return self


class ReleqResponse(BaseModel):
    masses: tuple[float, float, float]
    couplings: tuple[float, float, float]
    effective_couplings: tuple[float, float, float]
    u: float | None
    positions: list[list[float]]
    momenta: list[list[float]]
    multiplier: float
    cc_residual: float
    energy: float
    angular_momentum: tuple[float, float, float]
    total_momentum: tuple[float, float, float]
    center_of_mass: tuple[float, float, float]
    singular_values: list[float]
    rank: int
    rank_gap: float
    classification: str


class VerifyRequest(BaseModel):
    seed: int = 2024
    iterations: int = Field(default=100, ge=0)


class SuiteModel(BaseModel):
    name: str
    passed: bool
    checks: int
    max_residual: float
    tolerance: float
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    seed: int
    iterations: int
    suites: list[SuiteModel]
    lines: list[str]


class ErrorBody(BaseModel):
    kind: str
    message: str
