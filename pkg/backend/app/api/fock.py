from fastapi import APIRouter, Query
from pydantic import BaseModel, Field
from typing import List, Optional

from ..schemas.common import ReportEnvelope
from .runner import run_command

router = APIRouter()


class FockSolveRequest(BaseModel):
    levels: int = Field(3, ge=1)
    grid: List[int] = Field([16, 16, 32], min_length=3, max_length=3)
    reg: Optional[str] = None
    alpha: str = "measured"
    mc2: Optional[float] = None
    cluster_tol: Optional[float] = Field(None, gt=0)
    method: str = "auto"


@router.post("/fock/solve", response_model=ReportEnvelope)
def solve(request: FockSolveRequest):
    """Nyström 求解 Fock 方程"""
    return run_command("fock.solve", request.model_dump())


@router.get("/fock/levels", response_model=ReportEnvelope)
def levels(
    levels: int = Query(4, ge=1),
    alpha: str = Query("measured"),
    mc2: Optional[float] = None,
):
    """Balmer 能级（闭式本征值）"""
    return run_command("fock.levels", {"levels": levels, "alpha": alpha, "mc2": mc2})
