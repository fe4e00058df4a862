"""Request and response documents for the service layer.

Complex numbers travel as ``[re, im]`` pairs so every document is plain
JSON.  Response models mirror the frozen report dataclasses of the core
package; the service and the CLI both serialize them, so field order
here fixes the order in every emitted document.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..factorization import DELTA_COPRIME, EPS_CIRCLE, RationalSymbol, make_symbol
from ..polynomial import Poly, _expand

SCHEMA_VERSION = "1"

Pair = tuple[float, float]


class PolynomialInput(BaseModel):
    """One polynomial, given either by ascending coefficients or by roots.

    Exactly one of ``coeffs`` and ``roots`` must be present.  ``leading``
    scales the root form (default 1) and is rejected alongside ``coeffs``.
    """

    model_config = ConfigDict(extra="forbid")

    coeffs: Optional[list[Pair]] = None
    roots: Optional[list[Pair]] = None
    leading: Optional[Pair] = None

    @model_validator(mode="after")
    def _exactly_one_form(self) -> "PolynomialInput":
        if (self.coeffs is None) == (self.roots is None):
            raise ValueError("give exactly one of 'coeffs' or 'roots'")
        if self.coeffs is not None:
            if not self.coeffs:
                raise ValueError("'coeffs' must be nonempty")
            if self.leading is not None:
                raise ValueError("'leading' only combines with 'roots'")
        return self

    def to_poly(self) -> Poly:
        if self.coeffs is not None:
            return Poly(tuple(complex(re, im) for re, im in self.coeffs))
        lead = complex(*self.leading) if self.leading is not None else 1.0 + 0.0j
        pairs = [(complex(re, im), 1) for re, im in self.roots or []]
        return _expand(pairs, lead)


class SymbolInput(BaseModel):
    """A rational symbol R/S plus optional tolerance overrides."""

    model_config = ConfigDict(extra="forbid")

    R: PolynomialInput
    S: PolynomialInput
    eps_circle: Optional[float] = Field(default=None, gt=0.0, lt=0.5)
    delta_coprime: Optional[float] = Field(default=None, gt=0.0, lt=0.5)

    def build(self) -> RationalSymbol:
        return make_symbol(
            self.R.to_poly(),
            self.S.to_poly(),
            eps_circle=self.eps_circle if self.eps_circle is not None else EPS_CIRCLE,
            delta_coprime=(
                self.delta_coprime if self.delta_coprime is not None else DELTA_COPRIME
            ),
        )


class GridSpec(BaseModel):
    """Rectangular lambda grid, endpoints inclusive."""

    model_config = ConfigDict(extra="forbid")

    x0: float
    x1: float
    y0: float
    y1: float
    nx: int = Field(ge=1)
    ny: int = Field(ge=1)


# ---------------------------------------------------------------------------
# Requests


class AnalyzeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: SymbolInput


class SpectrumRequest(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    symbol: SymbolInput
    lam: Pair = Field(alias="lambda")


class PortraitRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: SymbolInput
    grid: GridSpec
    format: Literal["json", "csv", "ppm"] = "json"


class DeficiencyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: SymbolInput


class PullbackRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: SymbolInput
    alpha: float = 0.0
    n_points: int = Field(default=32, ge=4, le=1024)


class VerifyRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    symbol: SymbolInput
    level: Literal["quick", "full"] = "full"
    seed: int = 0


# ---------------------------------------------------------------------------
# Response building blocks


class RootDoc(BaseModel):
    value: Pair
    multiplicity: int


class PolyDoc(BaseModel):
    coeffs: list[Pair]
    degree: int
    roots: list[RootDoc]


class RationalFunDoc(BaseModel):
    num: PolyDoc
    den: PolyDoc


class CoeffsDoc(BaseModel):
    coeffs: list[Pair]


class SymbolEcho(BaseModel):
    """The symbol as actually parsed, normalized to coefficient form."""

    R: CoeffsDoc
    S: CoeffsDoc
    eps_circle: float
    delta_coprime: float


class DegreesDoc(BaseModel):
    s_in: int
    rl_in: int
    rl_in_bar: int


class CheckDoc(BaseModel):
    name: str
    passed: bool
    residual: Optional[float] = None
    detail: str = ""


# ---------------------------------------------------------------------------
# Responses


class AnalyzeResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: Literal["analyze"] = "analyze"
    symbol: SymbolEcho
    real_on_circle: bool
    bounded: bool
    domain_on_factor: PolyDoc
    kernel_basis: list[RationalFunDoc]
    cokernel_basis: list[RationalFunDoc]
    dim_ker: int
    dim_coker: int
    fredholm: bool
    index: Optional[int]
    formal_degree_gap: int
    range_numerator: PolyDoc
    range_denominator: PolyDoc
    ill_conditioned: bool


class SpectrumResponse(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = SCHEMA_VERSION
    command: Literal["spectrum"] = "spectrum"
    symbol: SymbolEcho
    lam: Pair = Field(alias="lambda")
    on_curve: bool
    fredholm: bool
    part: str
    regular_value: bool
    dim_ker: int
    dim_coker: int
    index: Optional[int]
    degrees: DegreesDoc
    infinite_dimensional: bool
    ill_conditioned: bool


class DeficiencyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: Literal["deficiency"] = "deficiency"
    symbol: SymbolEcho
    p: PolyDoc
    q: PolyDoc
    l: int
    n_plus: int
    n_minus: int
    basis_plus: list[RationalFunDoc]
    basis_minus: list[RationalFunDoc]
    symmetry_class: str
    c_scale: Pair
    plus_identity_residual: float


class PullbackResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: Literal["pullback"] = "pullback"
    symbol: SymbolEcho
    P: PolyDoc
    Q: PolyDoc
    alpha: float
    n_points: int
    residual: float


class PortraitResponse(BaseModel):
    """Grid summary; cell-level data goes out as CSV or PPM instead."""

    schema_version: str = SCHEMA_VERSION
    command: Literal["portrait"] = "portrait"
    symbol: SymbolEcho
    grid: GridSpec
    counts: dict[str, int]
    ill_conditioned_count: int
    infinite_dimensional_count: int


class VerifyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    command: Literal["verify"] = "verify"
    symbol: SymbolEcho
    level: str
    seed: int
    checks: list[CheckDoc]
    passed: bool
    theory_violation: bool


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str
