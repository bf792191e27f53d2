"""
闵可夫斯基动量空间中的场：Pauli 双线性、Cartan-Weyl 方程、电磁张量与 Maxwell 残差

约定：度量 (+,-,-,-)，ε_{0123} = +1，MinkowskiVector 存逆变分量 p^μ，
p̸ = p^μ γ_μ。表示固定为 build_gamma(2, Signature(1, 3))，γ5 为归一化体积元。
"""

import itertools
import logging
from typing import Tuple

import numpy as np

from ..utils.tolerances import tol
from ..exceptions import InvalidArgumentError, NotOnConeError, SignatureMismatchError
from ..models.clifford import GammaRep, Signature
from ..models.fields import (
    MINKOWSKI_ETA,
    FieldTensor,
    MassSphereDecomposition,
    MaxwellResidual,
    MinkowskiVector,
    WeylKernel,
)
from ..models.spinor import BilinearVector
from ..utils.linalg import null_space
from .clifford_core import PAULI, weyl_projectors
from .spinor_algebra import chiral_basis, components_of

logger = logging.getLogger(__name__)

MINKOWSKI_SIGNATURE = Signature(1, 3)

# 二维情形的主反自同构
B_TWO = np.array([[0, -1], [1, 0]], dtype=complex)


def _levi_civita() -> np.ndarray:
    eps = np.zeros((4, 4, 4, 4))
    for perm in itertools.permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


LEVI_CIVITA = _levi_civita()


def _two_spinor(values) -> np.ndarray:
    arr = np.asarray(values, dtype=complex).reshape(-1)
    if arr.shape[0] != 2:
        raise InvalidArgumentError(f"Pauli 旋量需要 2 个分量，收到 {arr.shape[0]}")
    return arr


def _momentum(p) -> MinkowskiVector:
    if isinstance(p, MinkowskiVector):
        return p
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.shape[0] != 4:
        raise InvalidArgumentError(f"闵可夫斯基向量需要 4 个分量，收到 {arr.shape[0]}")
    return MinkowskiVector(arr)


def _require_minkowski(rep: GammaRep) -> None:
    if rep.n != 2 or rep.signature != MINKOWSKI_SIGNATURE:
        raise SignatureMismatchError(
            f"需要 Cl(1,3) 表示，收到 Cl{tuple(rep.signature.as_list())}"
        )


def _projector(rep: GammaRep, chirality: str) -> np.ndarray:
    p_plus, p_minus = weyl_projectors(rep)
    if chirality == "plus":
        return p_plus
    if chirality == "minus":
        return p_minus
    raise InvalidArgumentError(f"手征只能是 plus 或 minus，收到 {chirality!r}")


def pauli_bilinear(phi) -> MinkowskiVector:
    """p^μ = φ†σ_μφ，σ_0 为单位阵"""
    arr = _two_spinor(phi)
    if np.linalg.norm(arr) == 0.0:
        raise InvalidArgumentError("零旋量没有对应的动量")
    p = np.array([np.vdot(arr, s @ arr) for s in PAULI])
    return MinkowskiVector(p.real.astype(float))


def matrix_decomposition(phi, psi) -> BilinearVector:
    """
    把 φ⊗Bψ（B = -iσ2）写成 z_0 + z^jσ_j，返回下指标 z_μ

    z_0 = ½tr(M)，z_j = -½tr(σ_j M)，det M = z_0² - Σz_j²。
    """
    m = np.outer(_two_spinor(phi), B_TWO @ _two_spinor(psi))
    z = np.array([0.5 * MINKOWSKI_ETA[mu] * np.trace(PAULI[mu] @ m) for mu in range(4)])
    return BilinearVector(z.astype(complex), MINKOWSKI_SIGNATURE)


def decomposition_matrix(phi, psi) -> np.ndarray:
    return np.outer(_two_spinor(phi), B_TWO @ _two_spinor(psi))


def conjugate_partner(phi) -> np.ndarray:
    """使 Bψ = φ̄ 的伴随旋量 ψ = (φ̄_1, -φ̄_0)"""
    arr = _two_spinor(phi)
    return np.array([np.conj(arr[1]), -np.conj(arr[0])])


def hermitian_decomposition(phi) -> BilinearVector:
    """厄米情形：2·z_μ = η_μν p^ν，其中 p 为 pauli_bilinear(φ)"""
    return matrix_decomposition(phi, conjugate_partner(phi))


def slash(rep: GammaRep, p) -> np.ndarray:
    return np.tensordot(_momentum(p).components, rep.generators, axes=1)


def boost(rapidity: float, axis: int = 3) -> np.ndarray:
    """沿空间轴 axis (1..3) 的洛伦兹推动"""
    if axis not in (1, 2, 3):
        raise InvalidArgumentError(f"推动轴必须是 1..3，收到 {axis}")
    lam = np.eye(4)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    lam[0, 0] = lam[axis, axis] = ch
    lam[0, axis] = lam[axis, 0] = sh
    return lam


def weyl_operator_kernel(rep: GammaRep, p, chirality: str) -> WeylKernel:
    """
    p̸(1±γ5)ψ = 0 的完整解空间及其手征部分

    完整核包含 (1±γ5) 的核（对侧手征，维数 2）；手征解为 P±ψ = ψ 且 p̸ψ = 0，
    p 类光时一维，否则为空。
    """
    _require_minkowski(rep)
    mom = _momentum(p)
    if mom.scale == 0.0:
        raise InvalidArgumentError("动量不能为零")

    pslash = slash(rep, mom)
    operator = pslash @ (2.0 * _projector(rep, chirality))

    full = null_space(operator, rcond=tol("tol_rank"))
    basis = chiral_basis(rep, chirality)
    coeffs = null_space(pslash @ basis, rcond=tol("tol_rank"))
    chiral = basis @ coeffs

    logger.debug(f"Weyl 核: p={mom.components.tolist()} 完整维数 {full.shape[1]} 手征维数 {chiral.shape[1]}")
    return WeylKernel(momentum=mom, chirality=chirality, full_kernel=full, chiral_solutions=chiral)


def weyl_pair_spinor(rep: GammaRep, p) -> np.ndarray:
    """同一类光动量下正、负手征解之和"""
    plus = weyl_operator_kernel(rep, p, "plus").chiral_solutions
    minus = weyl_operator_kernel(rep, p, "minus").chiral_solutions
    if plus.shape[1] == 0 or minus.shape[1] == 0:
        raise NotOnConeError("动量不是类光的，Cartan-Weyl 方程没有手征解")
    return plus[:, 0] + minus[:, 0]


def em_tensor(rep: GammaRep, psi, chirality: str) -> FieldTensor:
    """F^{(±)}_{μν} = ψ̃[γ_μ, γ_ν](1±γ5)ψ，ψ̃ = ψ†γ_0"""
    _require_minkowski(rep)
    arr = components_of(rep, psi)
    proj = 2.0 * _projector(rep, chirality)
    gens = rep.generators
    left = np.conj(arr) @ gens[rep.timelike_index]
    right = proj @ arr

    F = np.zeros((4, 4), dtype=complex)
    for mu in range(4):
        for nu in range(mu + 1, 4):
            value = left @ (gens[mu] @ gens[nu] - gens[nu] @ gens[mu]) @ right
            F[mu, nu] = value
            F[nu, mu] = -value
    return FieldTensor(F=F, chirality=chirality)


def chiral_currents(rep: GammaRep, psi) -> Tuple[np.ndarray, np.ndarray, float]:
    """
    p^{(±)}_μ = ψ̃γ_μ(1±γ5)ψ

    在本表示中 γ_0γ_μ(1±γ5) 为厄米算子，两个流都是实的；返回最大虚部以供核对。
    """
    _require_minkowski(rep)
    arr = components_of(rep, psi)
    left = np.conj(arr) @ rep.generators[rep.timelike_index]
    p_plus, p_minus = weyl_projectors(rep)
    currents = []
    for proj in (p_plus, p_minus):
        currents.append(np.array([left @ g @ (2.0 * proj) @ arr for g in rep.generators]))
    max_imag = float(max(np.max(np.abs(c.imag)) for c in currents))
    return currents[0].real, currents[1].real, max_imag


def maxwell_residual(p, F_plus: FieldTensor, F_minus: FieldTensor) -> MaxwellResidual:
    """
    r1^ν = p_μ F₊^{μν}
    r2_λ = ε_{λρμν} p^ρ F₋^{μν}
    """
    mom = _momentum(p)
    r1 = mom.lowered @ F_plus.raised
    r2 = np.einsum("lrmn,r,mn->l", LEVI_CIVITA, mom.components, F_minus.raised)
    scale = max(F_plus.norm, F_minus.norm) * float(np.linalg.norm(mom.components))
    return MaxwellResidual(r1=r1, r2=r2, scale=scale)


def plane_wave(psi_hat: np.ndarray, p, x: np.ndarray, hbar: float = 1.0) -> np.ndarray:
    """ψ(x) = ψ̂·exp(-i p·x/ħ)"""
    mom = _momentum(p)
    phase = float(np.sum(mom.lowered * np.asarray(x, dtype=float)))
    return np.asarray(psi_hat, dtype=complex) * np.exp(-1j * phase / hbar)


def plane_wave_residual(
    rep: GammaRep,
    psi_hat,
    p,
    chirality: str,
    x,
    hbar: float = 1.0,
    step: float = 1e-4,
) -> float:
    """
    iħ∂_μγ^μ(1±γ5)ψ(x) 的范数，导数用中心差分

    对 Cartan-Weyl 方程的解，残差只剩 O(step²) 的差分误差。
    """
    _require_minkowski(rep)
    psi_hat = components_of(rep, psi_hat)
    x = np.asarray(x, dtype=float)
    proj = 2.0 * _projector(rep, chirality)

    total = np.zeros(rep.spinor_dim, dtype=complex)
    for mu in range(4):
        dx = np.zeros(4)
        dx[mu] = step
        derivative = (plane_wave(psi_hat, p, x + dx, hbar) - plane_wave(psi_hat, p, x - dx, hbar)) / (2 * step)
        # γ^μ = η^{μμ}γ_μ
        total += 1j * hbar * MINKOWSKI_ETA[mu] * (rep.generators[mu] @ proj @ derivative)
    return float(np.linalg.norm(total))


def mass_sphere(p, orientation: int = 1) -> MassSphereDecomposition:
    """
    把 2n+2 维洛伦兹类光向量拆成闵可夫斯基部分与内部分量

    M_n² = Σ 内部分量²，orientation 选择 P·P 的度量约定。
    """
    if orientation not in (1, -1):
        raise InvalidArgumentError(f"orientation 只能是 +1 或 -1，收到 {orientation}")
    arr = np.asarray(p, dtype=float).reshape(-1)
    if arr.shape[0] < 4 or arr.shape[0] % 2:
        raise InvalidArgumentError(f"输入长度必须为不小于 4 的偶数，收到 {arr.shape[0]}")

    full_square = arr[0] ** 2 - float(np.sum(arr[1:] ** 2))
    scale = float(np.sum(arr ** 2))
    if abs(full_square) > tol("tol_null") * scale:
        raise NotOnConeError(
            "输入向量在洛伦兹度量下不是类光的",
            {"square": full_square, "scale": scale},
        )

    head = MinkowskiVector(arr[:4].copy())
    extra = arr[4:].copy()
    M_n = float(np.sqrt(np.sum(extra ** 2)))
    return MassSphereDecomposition(
        minkowski_part=head,
        extra_components=extra,
        M_n=M_n,
        orientation=orientation,
        minkowski_square=orientation * head.square,
    )
