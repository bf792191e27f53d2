from fastapi import APIRouter
from pydantic import BaseModel
from typing import List, Optional, Union

from ..schemas.common import ReportEnvelope
from .runner import run_command

router = APIRouter()

# 分量可以是 "1+2j" 字符串、实数或 [re, im]
Component = Union[str, float, List[float]]


class SpinorSelectionRequest(BaseModel):
    n: int
    sig: Optional[str] = None
    components: Optional[List[Component]] = None
    basis: Optional[int] = None
    random: bool = False
    random_pure: bool = False
    chirality: Optional[str] = None
    seed: Optional[int] = None


def _selection_params(request: SpinorSelectionRequest):
    params = request.model_dump(exclude={"seed"})
    params["random"] = params["random"] or None
    params["random_pure"] = params["random_pure"] or None
    return params


@router.post("/spinor/check-pure", response_model=ReportEnvelope)
def check_pure(request: SpinorSelectionRequest):
    """纯旋量判定"""
    return run_command("spinor.check-pure", _selection_params(request), request.seed)


@router.post("/spinor/null-plane", response_model=ReportEnvelope)
def null_plane(request: SpinorSelectionRequest):
    return run_command("spinor.null-plane", _selection_params(request), request.seed)
