from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class AxiomMode(str, Enum):
    LTS = "lts"
    BOL = "bol"
    MALCEV = "malcev"


class SeriesMode(str, Enum):
    NILPOTENCY = "nilpotency"
    SOLVABILITY = "solvability"


class OutputFormat(str, Enum):
    TEXT = "text"
    JSON = "json"


class CentralizerStrategy(str, Enum):
    GRADED = "graded"
    FULL = "full"


class CheckResult(BaseModel):
    """Outcome of one identity or axiom check.

    ``witness`` is whatever pins the failure down: basis indices, a monomial
    key, or a short description of the random case.
    """

    model_config = ConfigDict(populate_by_name=True)

    name: str
    passed: bool = Field(alias="pass")
    witness: Optional[Any] = None
    detail: Optional[str] = None


class AxiomReport(BaseModel):
    mode: AxiomMode
    dim: int
    checks: List[CheckResult] = []

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def first_failure(self) -> Optional[CheckResult]:
        return next((check for check in self.checks if not check.passed), None)


class CentralizerReport(BaseModel):
    """Centralizer of V inside U(V) truncated at a degree bound."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    system: str
    degree: int
    dim: int
    verdict: bool
    strategy: CentralizerStrategy = CentralizerStrategy.GRADED
    unknowns: int = 0
    checks: List[CheckResult] = []
    # UVElement instances; serialised by the CLI renderer
    basis: List[Any] = Field(default_factory=list, exclude=True)
    note: str = "bounded-degree evidence, not a proof"


class DecompositionReport(BaseModel):
    """Result of splitting A = Q + R around a commuting subsystem V."""

    dim: int
    v_hat: List[List[Any]] = []
    q_basis: List[List[Any]] = []
    r_basis: List[List[Any]] = []
    checks: List[CheckResult] = []
    verdict: bool = False
    explanation: str = ""


class Report(BaseModel):
    """Top-level document written by every CLI verb."""

    model_config = ConfigDict(populate_by_name=True)

    command: str
    system: Optional[str] = None
    checks: List[CheckResult] = []
    timing_ms: Optional[Any] = None
    data: Dict[str, Any] = {}

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
