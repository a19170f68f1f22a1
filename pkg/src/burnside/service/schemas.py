"""Pydantic request/response models for the service."""

from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator


class FamilySpec(BaseModel):
    kind: str = Field(..., examples=["dihedral"])
    order: int = Field(..., ge=1, examples=[16])


class GroupIngestion(BaseModel):
    """One group given by family, Cayley table, or permutation generators."""

    name: str
    family: Optional[FamilySpec] = None
    order: Optional[int] = None
    cayley: Optional[list[list[int]]] = None
    degree: Optional[int] = None
    permutation_generators: Optional[list[list[int]]] = None

    @model_validator(mode="after")
    def _one_source(self) -> "GroupIngestion":
        sources = [self.family is not None, self.cayley is not None,
                   self.permutation_generators is not None]
        if sum(sources) != 1:
            raise ValueError(
                "provide exactly one of family, cayley, permutation_generators")
        return self

    def payload(self) -> dict[str, Any]:
        return self.model_dump(exclude_none=True)


class GroupRequest(BaseModel):
    descriptor: Optional[str] = Field(None, examples=["D16"])
    group: Optional[GroupIngestion] = None

    @model_validator(mode="after")
    def _one_of(self) -> "GroupRequest":
        if (self.descriptor is None) == (self.group is None):
            raise ValueError("provide exactly one of descriptor or group")
        return self

    def spec(self) -> Union[str, dict[str, Any]]:
        if self.descriptor is not None:
            return self.descriptor
        return self.group.payload()


class MarksRequest(GroupRequest):
    include_idempotents: bool = False


class UnitsRequest(GroupRequest):
    method: Literal["brute", "genetic", "both"] = "both"
    budget: Optional[int] = None


class ExpRequest(GroupRequest):
    budget: Optional[int] = None


class VerifyRequest(BaseModel):
    groups: Optional[list[Union[str, GroupIngestion]]] = None
    budget: Optional[int] = None
    jobs: int = Field(1, ge=1, le=16)
    include_timings: bool = False
    check_exp: bool = True
    check_faithful: bool = True

    def corpus_payload(self) -> dict[str, Any]:
        payload: dict[str, Any] = {
            "budget": self.budget,
            "checks": {"exp": self.check_exp, "faithful": self.check_faithful},
        }
        if self.groups is not None:
            payload["groups"] = [
                g if isinstance(g, str) else g.payload() for g in self.groups]
        return payload


class DescribeResponse(BaseModel):
    name: str
    order: int
    type: str
    abelian: bool
    cyclic: bool
    center_order: int
    subgroups: int
    classes: int


class SubgroupInfo(BaseModel):
    index: int
    mask: int
    order: int
    class_index: int
    normal: bool


class LatticeResponse(BaseModel):
    name: str
    order: int
    subgroups: list[SubgroupInfo]
    class_representatives: list[int]
    mobius: list[list[int]]


class MarksClassInfo(BaseModel):
    index: int
    mask: int
    order: int


class IdempotentInfo(BaseModel):
    class_index: int
    coeffs: list[str]


class MarksResponse(BaseModel):
    name: str
    classes: list[MarksClassInfo]
    matrix: list[list[int]]
    idempotents: Optional[list[IdempotentInfo]] = None


class UnitBasisVector(BaseModel):
    signs: str
    coeffs: list[int]


class UnitsResponse(BaseModel):
    name: str
    method: str
    rank: int
    order: int
    basis: list[UnitBasisVector]
    agreement: Optional[bool] = None


class GeneticEntryInfo(BaseModel):
    subgroup_mask: int
    subgroup_order: int
    section_order: int
    type: str


class GeneticResponse(BaseModel):
    name: str
    count: int
    oracle_count: int
    agrees_with_oracle: bool
    entries: list[GeneticEntryInfo]
    classes: list[list[int]]


class ExpResponse(BaseModel):
    name: str
    image_rank: int
    unit_rank: int
    surjective: bool
    formula_rank: int
    formula_matches: bool


class GroupVerification(BaseModel):
    name: str
    order: int
    subgroup_classes: int
    genetic_count: int
    oracle_count: int
    types: dict[str, int]
    brute_rank: int
    genetic_rank: int
    formula_rank: int
    faithful_order: Optional[int] = None
    exp_image_rank: Optional[int] = None
    exp_surjective: Optional[bool] = None
    checks: dict[str, bool]
    passed: bool
    time_ms: Optional[float] = None


class VerifyResponse(BaseModel):
    corpus: list[str]
    budget: Optional[int] = None
    groups: list[GroupVerification]
    passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str


class CorpusResponse(BaseModel):
    groups: list[str]
