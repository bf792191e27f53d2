from fastapi import APIRouter, Query
from typing import Optional

from ..schemas.common import ReportEnvelope
from .runner import run_command

router = APIRouter()


@router.get("/clifford/build", response_model=ReportEnvelope)
def build_representation(
    n: int = Query(..., ge=1),
    sig: Optional[str] = Query(None, description="签名 P,Q"),
):
    """构造 Cl(2n) 的 gamma 矩阵表示"""
    return run_command("clifford.build", {"n": n, "sig": sig})


@router.get("/clifford/check", response_model=ReportEnvelope)
def check_representation(n: int = Query(..., ge=1), sig: Optional[str] = None):
    return run_command("clifford.check", {"n": n, "sig": sig})
