from pydantic import BaseModel, Field
from typing import Any, Dict, List, Literal, Optional

# 复数编码为 [re, im]，矩阵按行优先编码
ComplexPair = List[float]
ComplexVector = List[ComplexPair]
ComplexMatrix = List[List[ComplexPair]]


class Tolerances(BaseModel):
    tol_identity: Optional[float] = Field(None, gt=0)
    tol_null: Optional[float] = Field(None, gt=0)
    tol_reject: Optional[float] = Field(None, gt=0)
    tol_rank: Optional[float] = Field(None, gt=0)
    tol_convergence: Optional[float] = Field(None, gt=0)

    class Config:
        extra = "forbid"


class RunConfig(BaseModel):
    """一次运行的完整配置：相同配置（含种子）输出逐字节一致"""
    command: str
    params: Dict[str, Any] = Field(default_factory=dict)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    output_format: Literal["json", "csv", "text"] = "json"
    seed: int = Field(..., ge=0, lt=2 ** 64)
    constants_file: Optional[str] = None
    timing: bool = False

    class Config:
        extra = "forbid"


class ReportEnvelope(BaseModel):
    tool: str = "spinorlab"
    version: str
    status: Literal["ok", "failed"] = "ok"
    config: Dict[str, Any]
    timing: Optional[Dict[str, float]] = None
    result: Dict[str, Any]
    warnings: List[str] = Field(default_factory=list)


class ErrorResponse(BaseModel):
    code: str
    detail: str
    diagnostics: Dict[str, Any] = Field(default_factory=dict)
