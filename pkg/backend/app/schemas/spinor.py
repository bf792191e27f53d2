from pydantic import BaseModel
from typing import Dict, List, Optional

from .common import ComplexPair, ComplexVector


class BilinearVectorResponse(BaseModel):
    components: ComplexVector
    signature: List[int]
    square: ComplexPair
    null_ratio: float
    is_null: bool
    tolerance: float


class RealNullVectorResponse(BaseModel):
    components: List[float]
    signature: List[int]
    square: float
    null_ratio: float
    is_null: bool
    tolerance: float


class PurityResponse(BaseModel):
    n: int
    chirality: str
    is_pure: bool
    residual: float
    tolerance: float
    reject_tolerance: float
    codimension_estimate: Optional[int] = None
    spinor: ComplexVector


class CodimensionResponse(BaseModel):
    n: int
    codimension: int
    rank_histogram: Dict[str, int]
    chiral_dimension: int
    variety_dimension: int
    constraint_equations: Optional[int] = None
    samples: int


class NullPlaneResponse(BaseModel):
    n: int
    dimension: int
    is_maximal: bool
    max_pairing: float
    tolerance: float
    basis: List[ComplexVector]


class BilinearDecompositionResponse(BaseModel):
    n: int
    signature: List[int]
    sign: int
    grade_norms: List[float]
    dominant_grade: int
    vector_components: ComplexVector
    reconstruction_error: float
    cartan_residual: float
    cartan_tolerance: float
    cartan_satisfied: bool
