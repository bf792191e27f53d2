from dataclasses import dataclass

import numpy as np

MINKOWSKI_ETA = np.array([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class MinkowskiVector:
    """闵可夫斯基动量（逆变分量 p^μ，度量 (+,-,-,-)，无量纲单位）"""

    components: np.ndarray
    unit: str = "dimensionless"

    @classmethod
    def of(cls, p0, p1, p2, p3) -> "MinkowskiVector":
        return cls(np.array([p0, p1, p2, p3], dtype=float))

    @property
    def p0(self) -> float:
        return float(self.components[0])

    @property
    def lowered(self) -> np.ndarray:
        return MINKOWSKI_ETA * self.components

    @property
    def square(self) -> float:
        return float(np.sum(MINKOWSKI_ETA * self.components ** 2))

    @property
    def scale(self) -> float:
        return float(np.sum(self.components ** 2))


@dataclass(frozen=True)
class FieldTensor:
    """反对称张量 F_{μν}（下指标）"""

    F: np.ndarray
    chirality: str = "plus"

    @property
    def raised(self) -> np.ndarray:
        """F^{μν}"""
        return MINKOWSKI_ETA[:, None] * self.F * MINKOWSKI_ETA[None, :]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.F))


@dataclass(frozen=True)
class WeylKernel:
    """
    p̸(1±γ5)ψ = 0 的解空间

    full_kernel 与 chiral_solutions 的列是正交归一基。
    """

    momentum: MinkowskiVector
    chirality: str
    full_kernel: np.ndarray
    chiral_solutions: np.ndarray

    @property
    def full_dimension(self) -> int:
        return self.full_kernel.shape[1]

    @property
    def chiral_dimension(self) -> int:
        return self.chiral_solutions.shape[1]


@dataclass(frozen=True)
class MaxwellResidual:
    r1: np.ndarray
    r2: np.ndarray
    scale: float

    @property
    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.r1)), np.max(np.abs(self.r2))))


@dataclass(frozen=True)
class MassSphereDecomposition:
    """
    orientation=+1 时 P·P 按 (+,-,-,-) 计算，-1 时按 (-,+,+,+)；
    两种约定下都有 orientation·P·P = M_n²。
    """

    minkowski_part: MinkowskiVector
    extra_components: np.ndarray
    M_n: float
    orientation: int
    minkowski_square: float

    @property
    def mismatch(self) -> float:
        return abs(self.orientation * self.minkowski_square - self.M_n ** 2)
