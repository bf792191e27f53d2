from pydantic import BaseModel, Field
from typing import Dict, Optional


class ReferenceConstants(BaseModel):
    """参考常数文件（测量值，作为输入数据而非几何常数）"""
    source: Optional[str] = None
    planck_constant_J_s: float = Field(..., gt=0)
    electron_volt_J: float = Field(..., gt=0)
    fine_structure_constant: float = Field(..., gt=0, lt=1)
    electron_rest_energy_eV: float = Field(..., gt=0)
    proton_rest_energy_eV: float = Field(..., gt=0)
    age_of_universe_s: float = Field(..., gt=0)

    class Config:
        extra = "forbid"


class WylerResponse(BaseModel):
    alpha: float
    inverse_alpha: float
    volume_inputs: Dict[str, float]
    printed_inverse_alpha: float
    printed_discrepancy: float
    claimed_deviation: float
    measured_alpha: Optional[float] = None
    measured_deviation: Optional[float] = None


class DiracTimeResponse(BaseModel):
    rest_energy_eV: float
    rest_energy_J: float
    h: float
    delta_t_s: float


class TorusResponse(BaseModel):
    N: int
    T: float
    h: float
    delta_t: float
    delta_E: float
    energy_radius: float
    product: float
    convention_factor: float


class CosmicRatioResponse(BaseModel):
    age_s: float
    delta_t_s: float
    ratio: float
    quoted_ratio: float = 3.4e39
