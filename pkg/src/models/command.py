from enum import Enum
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from src.models.report import AxiomMode, CentralizerStrategy, OutputFormat


class Verb(str, Enum):
    AXIOMS = "axioms"
    ENVELOPE = "envelope"
    MUL = "mul"
    CENTRALIZER = "centralizer"
    NUCLEI = "nuclei"
    DECOMPOSE = "decompose"
    VERIFY = "verify"
    CATALOG = "catalog"


# verbs that read a ternary system / a multiplication table
SYSTEM_VERBS = {Verb.AXIOMS, Verb.ENVELOPE, Verb.MUL, Verb.CENTRALIZER}
ALGEBRA_VERBS = {Verb.NUCLEI, Verb.DECOMPOSE}


class Command(BaseModel):
    """One CLI invocation after option parsing."""

    verb: Verb
    system: Optional[str] = None
    algebra: Optional[str] = None
    file: Optional[Path] = None
    degree: Optional[int] = Field(default=None, ge=1)
    scale: int = Field(default=1, ge=1)
    mode: AxiomMode = AxiomMode.LTS
    strategy: CentralizerStrategy = CentralizerStrategy.GRADED
    output_format: OutputFormat = OutputFormat.TEXT
    output: Optional[Path] = None
    timing: bool = False
    # verb-specific arguments
    target: Optional[str] = None
    expressions: List[str] = []
    vectors: List[str] = []
    max_n: Optional[int] = Field(default=None, ge=1)
    cases: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = None
    strict: bool = False

    @model_validator(mode="after")
    def check_source(self):
        sources = [s for s in (self.system, self.algebra, self.file) if s is not None]
        if self.verb in SYSTEM_VERBS | ALGEBRA_VERBS and len(sources) != 1:
            raise ValueError("exactly one input source (catalog name or --file) is required")
        if self.verb in SYSTEM_VERBS and self.algebra is not None:
            raise ValueError(f"'{self.verb.value}' reads a ternary system, not an algebra")
        if self.verb in ALGEBRA_VERBS and self.system is not None:
            raise ValueError(f"'{self.verb.value}' reads a multiplication table, not a ternary system")
        return self
