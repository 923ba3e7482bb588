"""Pydantic request/response models for the HTTP service.

The profile wire format is the package-wide JSON schema:
``{"m": <int>, "n": <int>, "rankings": [[<id top> ... <id bottom>], ...]}``
with 0-based alternative ids.
"""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

from ..model import Profile


class ProfileModel(BaseModel):
    m: int = Field(ge=0)
    n: int = Field(ge=1)
    rankings: list[list[int]]

    @classmethod
    def from_profile(cls, profile: Profile) -> "ProfileModel":
        return cls(**profile.to_dict())

    def to_profile(self) -> Profile:
        # permutation validity is checked by the domain type
        return Profile.from_dict(self.model_dump())


Pattern = list[int]


class ClassifyRequest(BaseModel):
    pattern: Pattern


class ClassifyResponse(BaseModel):
    pattern: Pattern
    verdict: Literal["in_range", "not_in_range", "unknown"]
    rule: str | None
    applicable_n: str


class ConstructRequest(BaseModel):
    pattern: Pattern
    n: int = 3
    seed: int = 0


class ConstructResponse(BaseModel):
    status: Literal["ok", "not_in_range", "unsupported"]
    pattern: Pattern
    n: int
    rule: str | None = None
    detail: str | None = None
    profile: ProfileModel | None = None
    scores: list[int] | None = None
    plan: list[str] | None = None


class VerifyRequest(BaseModel):
    profile: ProfileModel
    expect: Pattern | None = None


class VerifyResponse(BaseModel):
    m: int
    n: int
    scores: list[int]
    pattern: Pattern
    levels: list[list[int]]
    matches_expected: bool | None = None


class SearchRequest(BaseModel):
    pattern: Pattern
    n: int = 3
    budget: int | None = None
    seed: int = 0


class SearchResponse(BaseModel):
    status: Literal["found", "not_found"]
    pattern: Pattern
    n: int
    exhaustive: bool
    evaluations: int
    profile: ProfileModel | None = None
    cached: bool = False


class EnumerateRequest(BaseModel):
    m: int = Field(ge=2)
    n: int = 3
    mode: Literal["exhaustive", "sampled"] = "exhaustive"
    trials: int = 10_000
    seed: int = 0


class AtlasEntryModel(BaseModel):
    pattern: Pattern
    count: int
    witness: ProfileModel


class EnumerateResponse(BaseModel):
    m: int
    n: int
    mode: str
    trials: int | None
    achieved: list[AtlasEntryModel]


class CrossCheckRequest(BaseModel):
    max_m: int = Field(ge=2)
    n: int = 3


class ContradictionModel(BaseModel):
    pattern: Pattern
    verdict: str
    achieved: bool


class UnknownStatusModel(BaseModel):
    pattern: Pattern
    achieved: bool


class CrossCheckResponse(BaseModel):
    max_m: int
    n: int
    patterns_checked: int
    consistent: bool
    contradictions: list[ContradictionModel]
    unknown: list[UnknownStatusModel]
    in_range_present: int
    not_in_range_absent: int


class ErrorResponse(BaseModel):
    detail: str
