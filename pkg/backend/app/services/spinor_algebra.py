"""
旋量双线性零向量、纯旋量判定、全零平面

核心约定：z_a = φᵗ B γ_a ψ，约束矩阵 M(ψ) = Σ_a η_aa (Bγ_aψ)(Bγ_aψ)ᵗ，
于是 z_a z^a = φᵗ M(ψ) φ，对任意 φ 为零当且仅当 M(ψ) = 0。
"""

import logging
from collections import Counter
from typing import Dict, List, Optional, Union

import numpy as np
from scipy import linalg as sla

from ..config import settings
from ..utils.tolerances import tol
from ..exceptions import (
    ChiralityRequiredError,
    DegenerateOrbitError,
    IndeterminateError,
    InvalidArgumentError,
    NumericalFailureError,
    SignatureMismatchError,
)
from ..models.clifford import GammaRep
from ..models.spinor import BilinearVector, NullPlane, PurityReport, Spinor
from ..utils.linalg import max_abs, null_space, numerical_rank
from .clifford_core import random_even_element, weyl_projectors

logger = logging.getLogger(__name__)

SpinorLike = Union[Spinor, np.ndarray, list, tuple]

# 纯旋量约束方程个数（n = 4, 5, 6）
CONSTRAINT_EQUATION_COUNTS = {4: 1, 5: 10, 6: 64}

CHIRALITY_TOL = 1e-10


def components_of(rep: GammaRep, psi: SpinorLike) -> np.ndarray:
    values = psi.components if isinstance(psi, Spinor) else psi
    arr = np.asarray(values, dtype=complex).reshape(-1)
    if arr.shape[0] != rep.spinor_dim:
        raise InvalidArgumentError(
            f"旋量长度 {arr.shape[0]} 与表示的旋量维数 {rep.spinor_dim} 不符"
        )
    return arr


def classify_chirality(rep: GammaRep, psi: SpinorLike, tol: float = CHIRALITY_TOL) -> str:
    arr = components_of(rep, psi)
    norm = np.linalg.norm(arr)
    if norm == 0.0:
        return "none"
    p_plus, p_minus = weyl_projectors(rep)
    if np.linalg.norm(p_minus @ arr) <= tol * norm:
        return "plus"
    if np.linalg.norm(p_plus @ arr) <= tol * norm:
        return "minus"
    return "none"


def make_spinor(rep: GammaRep, values) -> Spinor:
    arr = components_of(rep, values)
    return Spinor(arr, classify_chirality(rep, arr))


def basis_pure_spinor(rep: GammaRep, chirality: str = "plus") -> Spinor:
    """e_0 是正手征纯旋量；γ_0 e_0 是负手征纯旋量"""
    e0 = np.zeros(rep.spinor_dim, dtype=complex)
    e0[0] = 1.0
    if chirality == "plus":
        return Spinor(e0, "plus")
    if chirality == "minus":
        return Spinor(rep.generators[0] @ e0, "minus")
    raise InvalidArgumentError(f"未知手征: {chirality}")


def chiral_basis(rep: GammaRep, chirality: str = "plus") -> np.ndarray:
    """指定手征子空间的标准正交基（列）"""
    diag = np.real(np.diag(rep.chirality))
    target = 1.0 if chirality == "plus" else -1.0
    idx = np.nonzero(np.isclose(diag, target))[0]
    return np.eye(rep.spinor_dim, dtype=complex)[:, idx]


def random_spinor(rep: GammaRep, rng: np.random.Generator) -> Spinor:
    arr = rng.standard_normal(rep.spinor_dim) + 1j * rng.standard_normal(rep.spinor_dim)
    return Spinor(arr / np.linalg.norm(arr), "none")


def random_chiral_spinor(rep: GammaRep, rng: np.random.Generator, chirality: str = "plus") -> Spinor:
    basis = chiral_basis(rep, chirality)
    k = basis.shape[1]
    coeffs = rng.standard_normal(k) + 1j * rng.standard_normal(k)
    arr = basis @ coeffs
    return Spinor(arr / np.linalg.norm(arr), chirality)


def random_pure_spinor(rep: GammaRep, rng: np.random.Generator, chirality: str = "plus") -> Spinor:
    """基纯旋量在偶 Clifford 群随机元下的像"""
    base = basis_pure_spinor(rep, chirality).components
    arr = random_even_element(rep, rng) @ base
    norm = np.linalg.norm(arr)
    if norm < 1e-8:
        raise DegenerateOrbitError(f"轨道采样得到近零旋量，范数 {norm:.3e}")
    return Spinor(arr / norm, chirality)


def vector_from_spinors(rep: GammaRep, phi: SpinorLike, psi: SpinorLike, sign: int = 1) -> BilinearVector:
    phi_arr = components_of(rep, phi)
    psi_arr = components_of(rep, psi)
    B = rep.intertwiner(sign)
    z = np.einsum("i,ij,ajk,k->a", phi_arr, B, rep.generators, psi_arr)
    return BilinearVector(z, rep.signature)


def null_ratio(z: BilinearVector) -> float:
    """|z_a z^a| / Σ|z_a|²，零向量返回 0"""
    scale = z.scale
    if scale == 0.0:
        return 0.0
    return abs(z.square) / scale


def constraint_matrix(rep: GammaRep, psi: SpinorLike, sign: int = 1) -> np.ndarray:
    psi_arr = components_of(rep, psi)
    w = np.einsum("ij,ajk,k->ai", rep.intertwiner(sign), rep.generators, psi_arr)
    return np.einsum("a,ai,aj->ij", rep.eta, w, w)


def is_pure(
    rep: GammaRep,
    psi: SpinorLike,
    sign: int = 1,
    tol_null: Optional[float] = None,
    tol_reject: Optional[float] = None,
) -> PurityReport:
    tol_null = tol("tol_null") if tol_null is None else tol_null
    tol_reject = tol("tol_reject") if tol_reject is None else tol_reject

    arr = components_of(rep, psi)
    norm_sq = float(np.vdot(arr, arr).real)
    if norm_sq == 0.0:
        raise InvalidArgumentError("零旋量没有纯性可言")
    if classify_chirality(rep, arr) == "none":
        raise ChiralityRequiredError("纯性检验要求 Weyl 旋量（确定手征）")

    residual = float(np.linalg.norm(constraint_matrix(rep, arr, sign)) / norm_sq)
    if residual <= tol_null:
        return PurityReport(True, residual, tolerance=tol_null)
    if residual > tol_reject:
        return PurityReport(False, residual, tolerance=tol_null)

    logger.warning(f"纯性残差 {residual:.3e} 落在判定区间 ({tol_null}, {tol_reject}] 内")
    raise IndeterminateError(
        "纯性残差落在接受与拒绝阈值之间",
        {"residual": residual, "tol_null": tol_null, "tol_reject": tol_reject},
    )


def _constraint_jacobian(rep: GammaRep, psi: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """δψ ↦ dM 在手征子空间基上的矩阵（取对称矩阵上三角）"""
    ops = np.einsum("ij,ajk->aik", rep.B, rep.generators)
    w = ops @ psi
    iu = np.triu_indices(rep.spinor_dim)
    columns = []
    for k in range(basis.shape[1]):
        dw = ops @ basis[:, k]
        dm = np.einsum("a,ai,aj->ij", rep.eta, w, dw)
        dm = dm + dm.T
        columns.append(dm[iu])
    return np.array(columns).T


def purity_codimension_details(
    rep: GammaRep,
    samples: int,
    rng: np.random.Generator,
    chirality: str = "plus",
) -> Dict[str, object]:
    if samples < 1:
        raise InvalidArgumentError(f"samples 必须为正，收到 {samples}")
    basis = chiral_basis(rep, chirality)
    ranks: List[int] = []
    for _ in range(samples):
        psi = random_pure_spinor(rep, rng, chirality).components
        report = is_pure(rep, psi)
        if not report.is_pure:
            raise DegenerateOrbitError(
                "轨道采样得到的旋量不是纯旋量",
                {"residual": report.residual},
            )
        ranks.append(numerical_rank(_constraint_jacobian(rep, psi, basis), rtol=1e-8))

    counts = Counter(ranks)
    modal = max(sorted(counts), key=lambda r: counts[r])
    logger.info(f"n={rep.n} 纯旋量约束雅可比秩分布: {dict(counts)}")
    return {
        "n": rep.n,
        "codimension": modal,
        "rank_histogram": {str(k): v for k, v in sorted(counts.items())},
        "chiral_dimension": basis.shape[1],
        "variety_dimension": basis.shape[1] - modal,
        "constraint_equations": CONSTRAINT_EQUATION_COUNTS.get(rep.n),
        "samples": samples,
    }


def purity_codimension(rep: GammaRep, samples: int, rng: Optional[np.random.Generator] = None) -> int:
    rng = rng if rng is not None else np.random.default_rng(settings.default_seed)
    return int(purity_codimension_details(rep, samples, rng)["codimension"])


def null_plane(rep: GammaRep, psi: SpinorLike) -> NullPlane:
    """
    {z : z^a γ_a ψ = 0} 的基

    核空间自动全零；再做一次一阶各向同性修正并重新正交化，
    使 η 配对的数值残差保持在舍入误差量级。
    """
    arr = components_of(rep, psi)
    if np.linalg.norm(arr) == 0.0:
        raise InvalidArgumentError("零旋量的全零平面没有定义")

    action = np.einsum("ajk,k->ja", rep.generators, arr)
    V = null_space(action, rcond=tol("tol_rank"))
    eta = rep.eta

    if V.shape[1] > 0:
        gram = V.T @ (eta[:, None] * V)
        V = V - 0.5 * (eta[:, None] * np.conj(V)) @ gram
        V, _ = sla.qr(V, mode="economic")

    pairing = max_abs(V.T @ (eta[:, None] * V)) if V.shape[1] else 0.0
    # 返回下指标分量 z_a = η_aa z^a
    basis = [BilinearVector(eta * V[:, k], rep.signature) for k in range(V.shape[1])]
    return NullPlane(basis=basis, max_pairing=pairing, is_maximal=len(basis) == rep.n)


def real_null_vector(rep: GammaRep, psi: SpinorLike) -> BilinearVector:
    """p_a = ψ̃ γ_a ψ，ψ̃ = ψ†γ_0（γ_0 为类时生成元）"""
    if not rep.signature.is_lorentzian:
        raise SignatureMismatchError(
            f"签名 {tuple(rep.signature.as_list())} 不是洛伦兹签名"
        )
    arr = components_of(rep, psi)
    norm_sq = float(np.vdot(arr, arr).real)
    if norm_sq == 0.0:
        raise InvalidArgumentError("零旋量")

    g0 = rep.generators[rep.timelike_index]
    p = np.einsum("j,jk,akl,l->a", np.conj(arr), g0, rep.generators, arr)
    imag = float(np.max(np.abs(p.imag)))
    if imag > tol("tol_identity") * norm_sq:
        logger.error(f"实零向量虚部过大: {imag:.3e}")
        raise NumericalFailureError("ψ̃γψ 的虚部超出容差", {"max_imag": imag})
    return BilinearVector(p.real.astype(float), rep.signature)
