"""Data models for verification reports and census results."""
from typing import Any, List, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator


class FactCheck(BaseModel):
    """Outcome of checking one identity over a set of element pairs."""
    name: str
    passed: bool
    checked_pairs: int = 0
    counterexample: Optional[str] = None


class FactsReport(BaseModel):
    """A list of identity checks for one algebra."""
    entries: List[FactCheck] = Field(default_factory=list)
    exhaustive: bool = Field(..., description="True when every pair in V x V was checked")

    @property
    def passed(self) -> bool:
        return all(entry.passed for entry in self.entries)

    @property
    def count_passed(self) -> int:
        return sum(entry.passed for entry in self.entries)

    def entry(self, name: str) -> FactCheck:
        for entry in self.entries:
            if entry.name == name:
                return entry
        raise KeyError(name)

    def summary(self) -> str:
        return f"{self.count_passed}/{len(self.entries)}"


class ClassFingerprint(BaseModel):
    """Isomorphism invariants recorded per census class."""
    model_config = ConfigDict(frozen=True)

    abelian_type: List[int]
    dim_u: int = Field(..., ge=1)
    nil_class: int = Field(..., ge=2)
    normalized_by_n: bool

    @field_validator('abelian_type')
    @classmethod
    def sorted_descending(cls, value: List[int]) -> List[int]:
        return sorted(value, reverse=True)


class CensusClass(BaseModel):
    """One isomorphism class: a representative, its members and invariants."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    representative: Any
    members: List[Any] = Field(default_factory=list)
    fingerprint: ClassFingerprint

    @property
    def size(self) -> int:
        return len(self.members)


class CensusResult(BaseModel):
    """All nilpotent algebras on GF(p)^d, partitioned into isomorphism classes."""
    model_config = ConfigDict(arbitrary_types_allowed=True)

    p: int
    d: int
    algebras: List[Any] = Field(default_factory=list)
    classes: List[CensusClass] = Field(default_factory=list)
    two_route_agreement: Optional[bool] = Field(
        None,
        description="Result of the group-side cross-check, None when it was not run"
    )

    @property
    def class_reps(self) -> List[Any]:
        return [c.representative for c in self.classes]

    @property
    def class_sizes(self) -> List[int]:
        return [c.size for c in self.classes]


class ClassRecord(BaseModel):
    """One class as read back from a census report."""
    size: int
    fingerprint: ClassFingerprint
    representative_text: str


class CensusReport(BaseModel):
    """Parsed form of a census report file."""
    p: int
    d: int
    n_algebras: int
    classes: List[ClassRecord] = Field(default_factory=list)

    @property
    def n_classes(self) -> int:
        return len(self.classes)
