from datetime import datetime
from fractions import Fraction
from typing import Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

RationalValue = Union[int, float, str]


def to_fraction(value: RationalValue) -> Fraction:
    """Reads an int, a float or a string such as ``"3/4"`` as an exact rational."""
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _check_rationals(values: list) -> list:
    for value in values:
        try:
            to_fraction(value)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a rational number: {value!r}") from None
    return values


class GraphModel(BaseModel):
    n: int = Field(ge=0, le=64, examples=[5])
    edges: list[tuple[int, int]] = Field(default_factory=list, examples=[[[1, 2], [2, 3], [1, 3]]])


class WeightingModel(BaseModel):
    values: list[RationalValue] = Field(examples=[["1", "1", "0"], ["1/2", "1/2", "1/2"]])

    @field_validator("values")
    @classmethod
    def rational_values(cls, values: list) -> list:
        return _check_rationals(values)


class StatesModel(BaseModel):
    dim: int = Field(ge=1, le=16)
    states: list[list[tuple[float, float]]] = Field(title="[re, im] amplitudes per state")


class DistributionsModel(BaseModel):
    ontic_size: int = Field(ge=1)
    mus: list[list[RationalValue]]

    @field_validator("mus")
    @classmethod
    def rational_entries(cls, mus: list) -> list:
        for mu in mus:
            _check_rationals(mu)
        return mus


class InequalityModel(BaseModel):
    coeffs: list[int]
    rhs: int
    text: Optional[str] = None


class PolytopeResponse(BaseModel):
    graph_key: str
    dim: int
    vertex_count: int
    facet_count: Optional[int] = None
    vertices: list[list[str]] = []
    facets: list[InequalityModel] = []
    equalities: list[InequalityModel] = []


class CheckRequest(BaseModel):
    graph: GraphModel
    weighting: WeightingModel


class MembershipResponse(BaseModel):
    member: bool
    violated: Optional[InequalityModel] = None
    excess: str = "0"
    detail: str


class VerifyRequest(BaseModel):
    graph: GraphModel
    inequality: InequalityModel


class FacetCheckResponse(BaseModel):
    valid: bool
    facet: bool
    face_dimension: int
    saturating_count: int


class OrbitClassResponse(BaseModel):
    representative: InequalityModel
    size: int
    trivial: bool


class AutomorphismResponse(BaseModel):
    count: int
    permutations: list[list[int]]


class DerivationResponse(BaseModel):
    inequalities: list[InequalityModel]
    stab: list[InequalityModel]
    isomorphic: bool


class FamilyResponse(BaseModel):
    family: str
    n: int
    graph: GraphModel
    inequalities: list[InequalityModel]


class TableEntryResponse(BaseModel):
    name: str
    inequality: InequalityModel
    class_size: int
    violation: str
    hilbert_dimension: int


class EvaluateRequest(BaseModel):
    graph: GraphModel
    inequality: InequalityModel
    states: Optional[StatesModel] = None
    witness: Optional[str] = Field(default=None, examples=["equatorial5", "triangle-poles", "qutrit-k4"])


class EvaluationResponse(BaseModel):
    value: float
    violation: float


class SearchRequest(BaseModel):
    graph: GraphModel
    inequality: InequalityModel
    dim: int = Field(ge=2, le=8)
    budget: int = Field(default=10_000, ge=1, le=1_000_000)
    restarts: int = Field(default=8, ge=1, le=64)
    seed: int = Field(default=7, ge=0)


class ViolationResponse(BaseModel):
    value: float
    violation: float
    restart: int
    evaluations: int
    states: StatesModel


class PrepNCRequest(BaseModel):
    distributions: DistributionsModel
    inequalities: list[InequalityModel] = Field(default_factory=list,
                                                title="extra inequalities evaluated without a bound")


class ComplianceResponse(BaseModel):
    n: int
    bound: int
    values: list[str]
    compliant: bool
    extra_values: list[str] = []


class PolytopeRecordResponse(BaseModel):
    id: int
    graph_key: str
    n: int
    m: int
    vertex_count: int
    facet_count: Optional[int]
    created_at: datetime

    model_config = ConfigDict(from_attributes=True)
