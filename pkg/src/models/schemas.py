from typing import List, Optional, Union

from pydantic import BaseModel, Field, model_validator


class StructureConstantsFile(BaseModel):
    """Ternary (and optional binary) structure constants.

    ``ternary`` rows are ``[i, j, k, l, num, den]`` meaning the coefficient of
    e_l in [e_i, e_j, e_k]; ``binary`` rows are ``[i, j, l, num, den]``.
    Indices are 0-based and omitted entries are zero.
    """

    dim: int = Field(ge=0)
    ternary: List[List[int]] = []
    binary: List[List[int]] = []
    names: Optional[List[str]] = None
    label: str = "custom"

    @model_validator(mode="after")
    def check_entries(self):
        for field, width in (("ternary", 6), ("binary", 5)):
            for position, row in enumerate(getattr(self, field)):
                where = f"{field}[{position}]"
                if len(row) != width:
                    raise ValueError(f"{where}: expected {width} integers, got {len(row)}")
                if any(not 0 <= index < self.dim for index in row[: width - 2]):
                    raise ValueError(f"{where}: index out of range for dim {self.dim}")
                if row[-1] == 0:
                    raise ValueError(f"{where}: zero denominator")
        if self.names is not None and len(self.names) != self.dim:
            raise ValueError(f"names: {len(self.names)} names for dim {self.dim}")
        return self


class MultiplicationTableFile(BaseModel):
    """Unital algebra table: rows ``[i, j, k, num, den]`` give the e_k
    coefficient of e_i e_j; ``unit`` is a basis index or a coordinate vector
    of ``[num, den]`` pairs."""

    dim: int = Field(ge=1)
    unit: Union[int, List[List[int]]] = 0
    table: List[List[int]] = []
    names: Optional[List[str]] = None
    label: str = "custom"

    @model_validator(mode="after")
    def check_entries(self):
        for position, row in enumerate(self.table):
            where = f"table[{position}]"
            if len(row) != 5:
                raise ValueError(f"{where}: expected 5 integers, got {len(row)}")
            if any(not 0 <= index < self.dim for index in row[:3]):
                raise ValueError(f"{where}: index out of range for dim {self.dim}")
            if row[4] == 0:
                raise ValueError(f"{where}: zero denominator")
        if isinstance(self.unit, int):
            if not 0 <= self.unit < self.dim:
                raise ValueError(f"unit: index {self.unit} out of range")
        elif len(self.unit) != self.dim or any(len(pair) != 2 or pair[1] == 0 for pair in self.unit):
            raise ValueError("unit: expected dim [num, den] pairs with nonzero denominators")
        if self.names is not None and len(self.names) != self.dim:
            raise ValueError(f"names: {len(self.names)} names for dim {self.dim}")
        return self
