from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np


@dataclass(frozen=True)
class SphereGridS3:
    """S³ 上的求积节点（单位4维向量）与正权重"""

    nodes: np.ndarray
    weights: np.ndarray
    orders: Optional[Tuple[int, int, int]] = None

    @property
    def size(self) -> int:
        return self.weights.shape[0]

    @property
    def is_product(self) -> bool:
        """节点仍按 (χ, θ, φ) 乘积结构排列时可走分块循环路径"""
        return self.orders is not None


@dataclass
class SpectrumLevel:
    principal_n: int
    kernel_eigenvalue: float
    degeneracy: int
    spread: float = 0.0
    p0: Optional[float] = None
    E_n: Optional[float] = None


@dataclass
class SpectrumResult:
    route: str
    levels: List[SpectrumLevel] = field(default_factory=list)
    eigenvalues: Optional[np.ndarray] = None
    params: dict = field(default_factory=dict)
