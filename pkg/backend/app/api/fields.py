from fastapi import APIRouter
from pydantic import BaseModel, Field
from typing import List, Optional

from ..schemas.common import ReportEnvelope
from .spinor import Component
from .runner import run_command

router = APIRouter()


class PauliRequest(BaseModel):
    phi: List[Component] = Field(..., min_length=2, max_length=2)


class MaxwellRequest(BaseModel):
    p: List[float] = Field(..., min_length=4, max_length=4)
    random_spinor: bool = False
    seed: Optional[int] = None


@router.post("/fields/pauli", response_model=ReportEnvelope)
def pauli_bilinear(request: PauliRequest):
    """p^μ = φ†σ^μφ"""
    return run_command("fields.pauli", {"phi": request.phi})


@router.post("/fields/maxwell", response_model=ReportEnvelope)
def maxwell(request: MaxwellRequest):
    """Weyl 旋量 -> F^(±) -> Maxwell 残差"""
    return run_command(
        "fields.maxwell",
        {"p": request.p, "random_spinor": request.random_spinor or None},
        request.seed,
    )
