from pydantic import BaseModel
from typing import List

from .common import ComplexMatrix, ComplexPair, ComplexVector


class MinkowskiVectorResponse(BaseModel):
    components: List[float]
    square: float
    unit: str = "dimensionless"


class DecompositionResponse(BaseModel):
    z: ComplexVector
    square: ComplexPair
    determinant: ComplexPair
    matrix: ComplexMatrix


class WeylKernelResponse(BaseModel):
    momentum: List[float]
    momentum_square: float
    chirality: str
    full_dimension: int
    chiral_dimension: int
    full_kernel: List[ComplexVector]
    chiral_solutions: List[ComplexVector]


class FieldTensorResponse(BaseModel):
    chirality: str
    F: ComplexMatrix
    rank: int


class MaxwellResponse(BaseModel):
    momentum: List[float]
    spinor: ComplexVector
    F_plus: FieldTensorResponse
    F_minus: FieldTensorResponse
    r1: ComplexVector
    r2: ComplexVector
    max_abs: float
    scale: float
    relative_residual: float
    tolerance: float
    satisfied: bool


class MassSphereResponse(BaseModel):
    minkowski_part: List[float]
    extra_components: List[float]
    M_n: float
    orientation: int
    minkowski_square: float
    mismatch: float
    tolerance: float
