from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import InvalidArgumentError


@dataclass(frozen=True)
class Signature:
    """度量签名 (p, q)，正方向在前、负方向在后"""

    positive_count: int
    negative_count: int

    def __post_init__(self):
        if self.positive_count < 0 or self.negative_count < 0:
            raise InvalidArgumentError(
                f"签名计数不能为负: ({self.positive_count}, {self.negative_count})"
            )

    @classmethod
    def parse(cls, text: str) -> "Signature":
        """解析 "P,Q" 形式的字符串"""
        try:
            p, q = (int(part) for part in text.split(","))
        except ValueError:
            raise InvalidArgumentError(f"无法解析签名: {text!r}，应为 P,Q")
        return cls(p, q)

    @classmethod
    def euclidean(cls, dim: int) -> "Signature":
        return cls(dim, 0)

    @classmethod
    def lorentzian(cls, dim: int) -> "Signature":
        return cls(1, dim - 1)

    @property
    def dim(self) -> int:
        return self.positive_count + self.negative_count

    @property
    def eta(self) -> np.ndarray:
        """度量对角元"""
        return np.array([1.0] * self.positive_count + [-1.0] * self.negative_count)

    @property
    def metric(self) -> np.ndarray:
        return np.diag(self.eta)

    @property
    def is_lorentzian(self) -> bool:
        return self.dim >= 2 and (self.positive_count == 1 or self.negative_count == 1)

    @property
    def timelike_index(self) -> Optional[int]:
        """洛伦兹签名中唯一方向的生成元下标"""
        if not self.is_lorentzian:
            return None
        if self.positive_count == 1:
            return 0
        return self.positive_count

    def as_list(self):
        return [self.positive_count, self.negative_count]


@dataclass(frozen=True)
class GammaRep:
    """
    Clifford 代数 Cl(p,q) 的矩阵表示

    generators 形状为 (2n, 2^n, 2^n)；chirality 为归一化体积元（平方为单位阵，
    左上角元素为 +1）；B 满足 Bγ = γᵗB，B_minus 满足 Bγ = -γᵗB；
    C_conjugation 满足 Cγ = conj(γ)C。
    """

    n: int
    signature: Signature
    generators: np.ndarray
    volume_element: np.ndarray
    volume_square: int
    chirality: np.ndarray
    B: np.ndarray
    B_minus: np.ndarray
    C_conjugation: np.ndarray

    @property
    def vector_dim(self) -> int:
        return self.signature.dim

    @property
    def spinor_dim(self) -> int:
        return self.generators.shape[1]

    @property
    def eta(self) -> np.ndarray:
        return self.signature.eta

    @property
    def timelike_index(self) -> Optional[int]:
        return self.signature.timelike_index

    def intertwiner(self, sign: int = 1) -> np.ndarray:
        if sign not in (1, -1):
            raise InvalidArgumentError(f"B 的符号只能是 +1 或 -1，收到 {sign}")
        return self.B if sign == 1 else self.B_minus


@dataclass(frozen=True)
class BilinearDecomposition:
    """
    M = φ⊗Bψ 按 Clifford 阶数展开 M = Σ_j T_j

    grades[j] 是 j 阶反对称部分 T_j；vector_components 为 z_a = tr(γ_a M)。
    cartan_residual = ‖z_a γ^a ψ‖ / (‖φ‖‖ψ‖²)，ψ 为纯旋量时为零。
    """

    matrix: np.ndarray
    grades: np.ndarray
    vector_components: np.ndarray
    reconstruction_error: float
    cartan_residual: float

    @property
    def grade_norms(self) -> np.ndarray:
        return np.linalg.norm(self.grades, axis=(1, 2))

    @property
    def dominant_grade(self) -> int:
        return int(np.argmax(self.grade_norms))
