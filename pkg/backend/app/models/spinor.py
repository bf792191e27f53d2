from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .clifford import Signature

CHIRALITIES = ("plus", "minus", "none")


@dataclass(frozen=True)
class Spinor:
    components: np.ndarray
    chirality: str = "none"

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.components))


@dataclass(frozen=True)
class BilinearVector:
    """带度量签名的（复）向量 z_a"""

    components: np.ndarray
    signature: Signature

    @property
    def square(self) -> complex:
        """η 双线性形式 z_a z^a（不取复共轭）"""
        return complex(np.sum(self.signature.eta * self.components * self.components))

    @property
    def scale(self) -> float:
        return float(np.sum(np.abs(self.components) ** 2))

    def is_null(self, tol: float = 1e-10) -> bool:
        return abs(self.square) <= tol * self.scale


@dataclass(frozen=True)
class PurityReport:
    is_pure: bool
    residual: float
    codimension_estimate: Optional[int] = None
    tolerance: float = 1e-10


@dataclass(frozen=True)
class NullPlane:
    """全零平面的基，以及正交性检验"""

    basis: List[BilinearVector]
    max_pairing: float
    is_maximal: bool = False

    @property
    def dimension(self) -> int:
        return len(self.basis)
