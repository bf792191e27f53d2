"""
Clifford 代数表示的构建与校验

生成元由 Pauli 矩阵递归张量积构造：
    n=1:   {σ1, σ2}
    n→n+1: {σ1⊗1, σ2⊗γ_a, σ2⊗ω}
其中 ω = σ3⊗1 是上一级的归一化体积元。负签名方向乘以 -i。
"""

import logging
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg as sla
from scipy import sparse
from scipy.sparse.linalg import eigsh

from ..utils.tolerances import tol
from ..exceptions import (
    InvalidArgumentError,
    NormalizationRequiredError,
    RepresentationInconsistentError,
    UnsupportedSizeError,
)
from ..models.clifford import BilinearDecomposition, GammaRep, Signature
from ..utils.linalg import anticommutator, max_abs, normalize_by_largest

logger = logging.getLogger(__name__)

MAX_N = 6

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_0, SIGMA_1, SIGMA_2, SIGMA_3)

# 稠密求解 B 的规模上限（未知量个数）
DENSE_SOLVE_LIMIT = 1024


def _euclidean_generators(n: int) -> List[np.ndarray]:
    gens = [SIGMA_1, SIGMA_2]
    for _ in range(2, n + 1):
        d = gens[0].shape[0]
        omega = np.kron(SIGMA_3, np.eye(d // 2))
        gens = (
            [np.kron(SIGMA_1, np.eye(d))]
            + [np.kron(SIGMA_2, g) for g in gens]
            + [np.kron(SIGMA_2, omega)]
        )
    return gens


def _reflection_signs(gens: Sequence[np.ndarray], op) -> List[int]:
    """γ 在 op（转置或复共轭）下的符号：op(γ) = ±γ"""
    signs = []
    for g in gens:
        image = op(g)
        if np.array_equal(image, g):
            signs.append(1)
        elif np.array_equal(image, -g):
            signs.append(-1)
        else:
            raise RepresentationInconsistentError("生成元不是单项式矩阵，无法解析构造 B/C")
    return signs


def _parity_intertwiner(gens: Sequence[np.ndarray], targets: Sequence[int]) -> np.ndarray:
    """
    构造 M 使 Mγ_a = s_a γ_a M

    M 取生成元子集的乘积：若 s=+1 的个数为奇数则取这些生成元，
    否则取 s=-1 的那些（个数必为偶数，空集对应单位阵）。
    """
    plus = [a for a, s in enumerate(targets) if s == 1]
    minus = [a for a, s in enumerate(targets) if s == -1]
    subset = plus if len(plus) % 2 == 1 else minus
    m = np.eye(gens[0].shape[0], dtype=complex)
    for a in subset:
        m = m @ gens[a]
    return normalize_by_largest(m)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@lru_cache(maxsize=32)
def _build_cached(n: int, signature: Signature) -> GammaRep:
    gens = _euclidean_generators(n)
    gens = [g if a < signature.positive_count else -1j * g for a, g in enumerate(gens)]
    d = gens[0].shape[0]

    vol = np.eye(d, dtype=complex)
    for g in gens:
        vol = vol @ g
    vol_sq = vol @ vol
    volume_square = 1 if np.allclose(vol_sq, np.eye(d)) else -1

    # 体积元正比于 σ3⊗1，乘以四次单位根使左上角为 +1
    phase = 1.0 / vol[0, 0]
    phase = complex(np.round(phase.real), np.round(phase.imag))
    chirality = phase * vol

    t = _reflection_signs(gens, lambda g: g.T)
    r = _reflection_signs(gens, np.conj)
    B = _parity_intertwiner(gens, t)
    B_minus = _parity_intertwiner(gens, [-s for s in t])
    C = _parity_intertwiner(gens, r)

    logger.debug(f"构建 Cl({signature.positive_count},{signature.negative_count}) 表示，旋量维数 {d}")

    return GammaRep(
        n=n,
        signature=signature,
        generators=_freeze(np.array(gens)),
        volume_element=_freeze(vol),
        volume_square=volume_square,
        chirality=_freeze(chirality),
        B=_freeze(B),
        B_minus=_freeze(B_minus),
        C_conjugation=_freeze(C),
    )


def build_gamma(n: int, signature: Optional[Signature] = None) -> GammaRep:
    """
    构建 Cl(p,q) 的确定性矩阵表示（p+q = 2n）

    Args:
        n: 1..6，旋量维数 2^n
        signature: 默认欧氏签名 (2n, 0)
    """
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidArgumentError(f"n 必须是整数，收到 {n!r}")
    if n < 1 or n > MAX_N:
        raise UnsupportedSizeError(f"n={n} 超出支持范围 1..{MAX_N}")
    if signature is None:
        signature = Signature.euclidean(2 * n)
    if signature.dim != 2 * n:
        raise InvalidArgumentError(
            f"签名维数 {signature.dim} 与 n={n} 不符（应为 {2 * n}）"
        )
    return _build_cached(int(n), signature)


def volume_element(rep: GammaRep) -> np.ndarray:
    """γ_1 γ_2 … γ_2n（未归一化）"""
    return rep.volume_element


def chirality_operator(rep: GammaRep) -> np.ndarray:
    """归一化体积元，平方为单位阵"""
    return rep.chirality


def weyl_projectors(rep: GammaRep, normalize: bool = True) -> Tuple[np.ndarray, np.ndarray]:
    if normalize:
        J = rep.chirality
    else:
        if rep.volume_square != 1:
            raise NormalizationRequiredError(
                "体积元平方为 -1，需要先乘以 ±i 归一化"
            )
        J = rep.volume_element
    identity = np.eye(rep.spinor_dim)
    return 0.5 * (identity + J), 0.5 * (identity - J)


def solve_antiautomorphism(rep: GammaRep, sign: int = 1) -> Tuple[np.ndarray, int]:
    """
    数值求解 Bγ_a = sign·γ_aᵗB 的联立线性方程组

    Returns:
        (归一化后的 B, 解空间维数)
    """
    if sign not in (1, -1):
        raise InvalidArgumentError(f"sign 只能是 +1 或 -1，收到 {sign}")
    d = rep.spinor_dim
    size = d * d
    identity = sparse.identity(d, dtype=complex, format="csr")

    # 行优先向量化：vec(X·g) = (1⊗gᵗ)vec(X)，vec(gᵗ·X) = (gᵗ⊗1)vec(X)
    gram = sparse.csr_matrix((size, size), dtype=complex)
    for g in rep.generators:
        gt = sparse.csr_matrix(g.T)
        block = sparse.kron(identity, gt) - sign * sparse.kron(gt, identity)
        gram = gram + (block.conj().T @ block)

    scale = max(1.0, float(abs(gram).max()))
    if size <= DENSE_SOLVE_LIMIT:
        w, v = sla.eigh(gram.toarray())
    else:
        # 移位求逆取最靠近 0 的几个特征值
        w, v = eigsh(gram.tocsc(), k=4, sigma=-1e-3, which="LM", v0=np.ones(size, dtype=complex))
        order = np.argsort(w)
        w, v = w[order], v[:, order]

    null_mask = w <= tol("tol_rank") * scale
    dimension = int(np.sum(null_mask))
    if dimension == 0:
        logger.error(f"B 方程组无非零解，最小特征值 {w.min():.3e}")
        raise RepresentationInconsistentError(
            "Bγ = ±γᵗB 的解空间在数值上为空",
            {"smallest_eigenvalue": float(w.min())},
        )

    B = normalize_by_largest(v[:, np.argmax(null_mask)].reshape(d, d))
    B[np.abs(B) < 1e-14] = 0.0
    return B, dimension


def main_antiautomorphism(rep: GammaRep, sign: int = 1) -> np.ndarray:
    B, _ = solve_antiautomorphism(rep, sign)
    return B


def odd_generators(rep: GammaRep) -> np.ndarray:
    """2n 个生成元再加上归一化体积元，生成 Cl(2n+1)"""
    return np.concatenate([rep.generators, rep.chirality[None, :, :]])


def unit_vector_element(rep: GammaRep, x: np.ndarray) -> np.ndarray:
    """
    v = Σ x_a ẽ_a，其中负签名方向 ẽ_a = iγ_a

    x 为实单位向量时 v 厄米且 v² = 1。
    """
    coeffs = np.where(rep.eta > 0, 1.0, 1j) * np.asarray(x)
    return np.tensordot(coeffs, rep.generators, axes=1)


def random_even_element(rep: GammaRep, rng: np.random.Generator, factors: Optional[int] = None) -> np.ndarray:
    """偶数个随机单位向量之积（复化偶 Clifford 群中的可逆元）"""
    count = factors if factors is not None else 2 * rep.n
    if count % 2:
        raise InvalidArgumentError(f"偶元素需要偶数个因子，收到 {count}")
    g = np.eye(rep.spinor_dim, dtype=complex)
    for _ in range(count):
        x = rng.standard_normal(rep.vector_dim)
        x /= np.linalg.norm(x)
        g = g @ unit_vector_element(rep, x)
    return g


def conjugate_spinor(rep: GammaRep, psi: np.ndarray) -> np.ndarray:
    """ψ ↦ C⁻¹ψ̄，与 γ 作用交换"""
    return np.linalg.solve(rep.C_conjugation, np.conj(psi))


def basis_products(rep: GammaRep) -> Iterator[Tuple[Tuple[int, ...], np.ndarray]]:
    """
    遍历 (a1 < … < aj, γ_{a1}…γ_{aj})，共 2^{2n} 项

    深度优先展开，每个积只在父节点上多乘一个生成元。
    """
    gens = rep.generators
    stack = [((), np.eye(rep.spinor_dim, dtype=complex))]
    while stack:
        subset, product = stack.pop()
        yield subset, product
        start = subset[-1] + 1 if subset else 0
        for a in range(len(gens) - 1, start - 1, -1):
            stack.append((subset + (a,), product @ gens[a]))


def bilinear_decomposition(rep: GammaRep, phi, psi, sign: int = 1) -> BilinearDecomposition:
    """
    φ⊗Bψ = Σ_{j=0}^{2n} T_j(ψ, φ)

    γ_A 都是酉矩阵且 tr(γ_A†γ_B) = 2^n δ_AB，系数由迹投影得到。
    """
    d = rep.spinor_dim
    phi = np.asarray(phi, dtype=complex)
    psi = np.asarray(psi, dtype=complex)
    for name, arr in (("phi", phi), ("psi", psi)):
        if arr.shape != (d,):
            raise InvalidArgumentError(f"{name} 需要 {d} 个分量，收到形状 {arr.shape}")
        if np.linalg.norm(arr) == 0.0:
            raise InvalidArgumentError(f"{name} 不能是零旋量")

    matrix = np.outer(phi, rep.intertwiner(sign) @ psi)
    grades = np.zeros((rep.vector_dim + 1, d, d), dtype=complex)
    for subset, product in basis_products(rep):
        grades[len(subset)] += (np.vdot(product, matrix) / d) * product

    reconstruction_error = float(np.linalg.norm(matrix - grades.sum(axis=0)) / np.linalg.norm(matrix))
    if reconstruction_error > tol("tol_identity") * d:
        logger.warning(f"阶数分解重构误差 {reconstruction_error:.3e}")

    z = np.einsum("aij,ji->a", rep.generators, matrix)
    annihilated = np.tensordot(rep.eta * z, rep.generators, axes=1) @ psi
    cartan_residual = float(
        np.linalg.norm(annihilated) / (np.linalg.norm(phi) * np.linalg.norm(psi) ** 2)
    )
    return BilinearDecomposition(
        matrix=matrix,
        grades=grades,
        vector_components=z,
        reconstruction_error=reconstruction_error,
        cartan_residual=cartan_residual,
    )


def representation_report(rep: GammaRep) -> Dict[str, float]:
    """全部代数恒等式的最大逐元素误差"""
    gens = rep.generators
    d = rep.spinor_dim
    identity = np.eye(d)

    clifford_error = 0.0
    for a in range(len(gens)):
        for b in range(a, len(gens)):
            expected = 2 * rep.eta[a] * identity if a == b else 0 * identity
            clifford_error = max(clifford_error, max_abs(anticommutator(gens[a], gens[b]) - expected))

    vol = rep.volume_element
    return {
        "clifford_relation": clifford_error,
        "volume_anticommutation": max(max_abs(anticommutator(vol, g)) for g in gens),
        "volume_square": max_abs(vol @ vol - rep.volume_square * identity),
        "chirality_square": max_abs(rep.chirality @ rep.chirality - identity),
        "B_intertwining": max(max_abs(rep.B @ g - g.T @ rep.B) for g in gens),
        "B_minus_intertwining": max(max_abs(rep.B_minus @ g + g.T @ rep.B_minus) for g in gens),
        "C_intertwining": max(max_abs(rep.C_conjugation @ g - np.conj(g) @ rep.C_conjugation) for g in gens),
        "B_condition": float(np.linalg.cond(rep.B)),
        "C_condition": float(np.linalg.cond(rep.C_conjugation)),
    }
