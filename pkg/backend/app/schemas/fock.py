from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional


class SpectrumLevelResponse(BaseModel):
    n: int
    lambda_: float = Field(..., alias="lambda")
    degeneracy: int
    spread: float = 0.0
    reference_lambda: float
    relative_error: float
    p0_over_mc: Optional[float] = None
    E: Optional[float] = None

    class Config:
        populate_by_name = True


class SpectrumResponse(BaseModel):
    route: str
    levels: List[SpectrumLevelResponse]
    params: Dict[str, Any] = Field(default_factory=dict)
    energy_unit: Optional[str] = None


class FockResidualResponse(BaseModel):
    lambda_: float = Field(..., alias="lambda")
    alpha: float
    mc_over_p0: float
    residual: float

    class Config:
        populate_by_name = True
