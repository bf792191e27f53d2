from dataclasses import dataclass
from typing import Dict


@dataclass(frozen=True)
class WylerResult:
    alpha: float
    inverse_alpha: float
    volume_inputs: Dict[str, float]
    printed_inverse_alpha: float
    claimed_deviation: float


@dataclass(frozen=True)
class TorusLattice:
    N: int
    T: float
    delta_t: float
    energy_radius: float


@dataclass(frozen=True)
class TorusReport:
    lattice: TorusLattice
    delta_E: float
    product: float
    h: float
    convention_factor: float
