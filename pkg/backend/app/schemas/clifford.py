from pydantic import BaseModel
from typing import Dict, List, Optional

from .common import ComplexMatrix


class GammaRepResponse(BaseModel):
    n: int
    signature: List[int]
    vector_dim: int
    spinor_dim: int
    timelike_index: Optional[int] = None
    generators: List[ComplexMatrix]
    volume_element: ComplexMatrix
    volume_square: int
    chirality: ComplexMatrix
    B: ComplexMatrix
    B_minus: ComplexMatrix
    C: ComplexMatrix


class AntiautomorphismSolve(BaseModel):
    sign: int
    solution_dimension: int
    max_deviation_from_constructed: float
    B: ComplexMatrix


class RepresentationCheckResponse(BaseModel):
    n: int
    signature: List[int]
    errors: Dict[str, float]
    tolerance: float
    passed: bool
    antiautomorphisms: List[AntiautomorphismSolve]
