from fastapi import APIRouter, Query
from typing import Optional

from ..schemas.common import ReportEnvelope
from .runner import run_command

router = APIRouter()


@router.get("/constants/wyler", response_model=ReportEnvelope)
def wyler():
    return run_command("const.wyler", {})


@router.get("/constants/dirac", response_model=ReportEnvelope)
def dirac(mass_ev: Optional[float] = Query(None, gt=0), h: Optional[float] = Query(None, gt=0)):
    """Δt = h/(Mc²)，缺省为质子"""
    return run_command("const.dirac", {"mass_ev": mass_ev, "h": h})


@router.get("/constants/torus", response_model=ReportEnvelope)
def torus(n: int = Query(..., ge=1), t: float = Query(..., gt=0), h: Optional[float] = Query(None, gt=0)):
    return run_command("const.torus", {"n": n, "t": t, "h": h})
