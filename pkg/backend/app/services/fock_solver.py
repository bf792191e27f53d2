"""
S³ 上的 Fock 积分方程：核 K(u,u') = 1/|u-u'|²

两条独立路线：
  - Funk-Hecke：带状核在 n 级超球谐函数上的本征值化为一维 Gauss-Jacobi 积分
  - Nyström：乘积求积网格上的对称加权核矩阵，取最大的若干本征值簇
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg as sla
from scipy.special import comb, eval_gegenbauer, roots_chebyu, roots_jacobi, roots_legendre
from scipy.stats import special_ortho_group

from ..config import settings
from ..utils.tolerances import tol
from ..exceptions import (
    AccuracyNotReachedError,
    ClusteringAmbiguousError,
    InvalidArgumentError,
    NumericalFailureError,
)
from ..models.fock import SphereGridS3, SpectrumLevel, SpectrumResult
from .constants import sphere_volume

logger = logging.getLogger(__name__)

V_S3 = sphere_volume(3)

REGULARIZATIONS = ("puncture", "subtract", "mollify")

# 每个线程一次组装的行数
ROW_CHUNK = 64


def parse_regularization(text: str) -> Tuple[str, Optional[float]]:
    """解析 "puncture" / "subtract" / "mollify:EPS" """
    kind, _, arg = text.partition(":")
    kind = kind.strip().lower()
    if kind not in REGULARIZATIONS:
        raise InvalidArgumentError(f"未知的正则化方式: {text!r}")
    if kind == "mollify":
        try:
            eps = float(arg)
        except ValueError:
            raise InvalidArgumentError(f"mollify 需要正数参数，例如 mollify:0.05，收到 {text!r}")
        if eps <= 0:
            raise InvalidArgumentError(f"mollify 参数必须为正，收到 {eps}")
        return kind, eps
    if arg:
        raise InvalidArgumentError(f"{kind} 不接受参数: {text!r}")
    return kind, None


def harmonic_degeneracy(n: int) -> int:
    """S³ 上 n-1 次调和函数空间维数"""
    l = n - 1
    return int(comb(l + 3, 3, exact=True) - comb(l + 1, 3, exact=True))


# ---------------------------------------------------------------- 网格

def _ring_coordinates(order_chi: int, order_theta: int):
    t_chi, w_chi = roots_chebyu(order_chi)
    t_theta, w_theta = roots_legendre(order_theta)
    cos_chi = np.repeat(t_chi, order_theta)
    sin_chi = np.sqrt(1.0 - cos_chi ** 2)
    cos_theta = np.tile(t_theta, order_chi)
    sin_theta = np.sqrt(1.0 - cos_theta ** 2)
    ring_weights = np.outer(w_chi, w_theta).reshape(-1)
    return cos_chi, sin_chi, cos_theta, sin_theta, ring_weights


def build_s3_grid(order_chi: int, order_theta: int, order_phi: int) -> SphereGridS3:
    """
    超球坐标乘积求积，测度 sin²χ sinθ dχ dθ dφ

    χ：t = cosχ 上的第二类 Chebyshev 节点（权 √(1-t²)）；
    θ：cosθ 上的 Gauss-Legendre 节点；φ：均匀节点。φ 变化最快。
    """
    for name, order in (("order_chi", order_chi), ("order_theta", order_theta), ("order_phi", order_phi)):
        if order < 2:
            raise InvalidArgumentError(f"{name} 必须 ≥ 2，收到 {order}")

    cos_chi, sin_chi, cos_theta, sin_theta, ring_weights = _ring_coordinates(order_chi, order_theta)
    phi = 2.0 * np.pi * np.arange(order_phi) / order_phi
    radius = sin_chi * sin_theta

    nodes = np.empty((cos_chi.size, order_phi, 4))
    nodes[:, :, 0] = cos_chi[:, None]
    nodes[:, :, 1] = (sin_chi * cos_theta)[:, None]
    nodes[:, :, 2] = radius[:, None] * np.cos(phi)[None, :]
    nodes[:, :, 3] = radius[:, None] * np.sin(phi)[None, :]
    weights = np.repeat(ring_weights * (2.0 * np.pi / order_phi), order_phi)

    return SphereGridS3(
        nodes=nodes.reshape(-1, 4),
        weights=weights,
        orders=(order_chi, order_theta, order_phi),
    )


def rotate_grid(grid: SphereGridS3, rotation: np.ndarray) -> SphereGridS3:
    """旋转后的节点不再保持乘积结构，走稠密路径"""
    return SphereGridS3(nodes=grid.nodes @ np.asarray(rotation).T, weights=grid.weights.copy(), orders=None)


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    return special_ortho_group.rvs(4, random_state=rng)


def integrate(grid: SphereGridS3, values: np.ndarray) -> float:
    return float(np.dot(grid.weights, values))


# ---------------------------------------------------------------- Funk-Hecke

def _funk_hecke_once(n_max: int, quad_order: int) -> np.ndarray:
    t, w = roots_jacobi(quad_order, -0.5, 0.5)
    # (1-t)^(-1/2)(1+t)^(1/2) = √(1-t²)/(1-t)，核 1/(2(1-t)) 中的 1/2 并入前面的 4π
    return np.array([
        2.0 * np.pi * np.dot(w, eval_gegenbauer(n - 1, 1.0, t)) / n
        for n in range(1, n_max + 1)
    ])


def funk_hecke_eigenvalues(n_max: int, quad_order: int = 32, tolerance: Optional[float] = None) -> List[float]:
    """
    带状核 1/(2(1-u·u')) 在主量子数 n 的超球谐函数上的本征值

    与两倍求积阶的结果比较，差异超过 tolerance 时报 accuracy-not-reached。
    """
    if n_max < 1:
        raise InvalidArgumentError(f"n_max 必须 ≥ 1，收到 {n_max}")
    if quad_order < 1:
        raise InvalidArgumentError(f"quad_order 必须 ≥ 1，收到 {quad_order}")
    tolerance = tol("tol_convergence") if tolerance is None else tolerance

    coarse = _funk_hecke_once(n_max, quad_order)
    fine = _funk_hecke_once(n_max, 2 * quad_order)
    change = float(np.max(np.abs(fine - coarse) / np.abs(fine)))
    if change > tolerance:
        raise AccuracyNotReachedError(
            f"求积阶 {quad_order} 未收敛，相邻阶相对变化 {change:.3e}",
            {"quad_order": quad_order, "relative_change": change, "tolerance": tolerance},
        )
    return [float(x) for x in fine]


def funk_hecke_spectrum(n_max: int, quad_order: int = 32) -> SpectrumResult:
    values = funk_hecke_eigenvalues(n_max, quad_order)
    levels = [
        SpectrumLevel(principal_n=n, kernel_eigenvalue=lam, degeneracy=harmonic_degeneracy(n))
        for n, lam in enumerate(values, start=1)
    ]
    return SpectrumResult(route="funk-hecke", levels=levels, params={"quad_order": quad_order})


# ---------------------------------------------------------------- Nyström

def _assemble_circulant_rows(rows: range, ring, order_phi: int, kind: str, eps: Optional[float]):
    """
    分块循环组装：返回该行段在各 φ 模式下的块 K̂_m（不含对角修正）以及行和

    节点对的距离只依赖于环对 (a, b) 与 Δφ。
    """
    cos_chi, sin_chi, cos_theta, sin_theta, ring_weights = ring
    a = np.asarray(rows)
    radius = sin_chi * sin_theta
    delta = 2.0 * np.pi * np.arange(order_phi) / order_phi

    base = (
        (cos_chi[a, None] - cos_chi[None, :]) ** 2
        + (sin_chi[a, None] * cos_theta[a, None] - sin_chi[None, :] * cos_theta[None, :]) ** 2
        + (radius[a, None] - radius[None, :]) ** 2
    )
    d2 = base[:, :, None] + 4.0 * (radius[a, None] * radius[None, :])[:, :, None] * np.sin(delta / 2.0)[None, None, :] ** 2
    if kind == "mollify":
        d2 = d2 + eps ** 2

    local = np.arange(a.size)
    with np.errstate(divide="ignore"):
        kernel = 1.0 / d2
    # 自身节点 (a, a, Δφ=0)
    kernel[local, a, 0] = 0.0

    node_w = ring_weights * (2.0 * np.pi / order_phi)
    row_sums = np.einsum("abl,b->a", kernel, node_w)
    if kind == "mollify":
        self_term = node_w[a] / eps ** 2
    else:
        self_term = np.zeros(a.size)

    sym = kernel * np.sqrt(node_w[a, None] * node_w[None, :])[:, :, None]
    blocks = np.fft.rfft(sym, axis=2).real
    return blocks, row_sums, self_term


def _diagonal(kind: str, row_sums: np.ndarray, self_term: np.ndarray) -> np.ndarray:
    if kind == "subtract":
        return V_S3 - row_sums
    if kind == "mollify":
        return self_term
    return np.zeros_like(row_sums)


def _circulant_eigenvalues(grid: SphereGridS3, kind: str, eps: Optional[float], workers: int) -> np.ndarray:
    order_chi, order_theta, order_phi = grid.orders
    ring = _ring_coordinates(order_chi, order_theta)
    n_rings = order_chi * order_theta
    chunks = [range(s, min(s + ROW_CHUNK, n_rings)) for s in range(0, n_rings, ROW_CHUNK)]

    with ThreadPoolExecutor(max_workers=workers) as executor:
        parts = list(executor.map(
            lambda rows: _assemble_circulant_rows(rows, ring, order_phi, kind, eps), chunks
        ))

    blocks = np.concatenate([p[0] for p in parts], axis=0)
    diag = _diagonal(
        kind,
        np.concatenate([p[1] for p in parts]),
        np.concatenate([p[2] for p in parts]),
    )
    idx = np.arange(n_rings)
    blocks[idx, idx, :] += diag[:, None]

    n_modes = blocks.shape[2]

    def solve_mode(m: int) -> np.ndarray:
        return sla.eigvalsh(blocks[:, :, m])

    with ThreadPoolExecutor(max_workers=workers) as executor:
        spectra = list(executor.map(solve_mode, range(n_modes)))

    values = []
    for m, spectrum in enumerate(spectra):
        multiplicity = 1 if m == 0 or (order_phi % 2 == 0 and m == order_phi // 2) else 2
        values.extend([spectrum] * multiplicity)
    return np.sort(np.concatenate(values))[::-1]


def _assemble_dense_rows(rows: range, nodes: np.ndarray, weights: np.ndarray, kind: str, eps: Optional[float]):
    a = np.asarray(rows)
    diff = nodes[a, None, :] - nodes[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    if kind == "mollify":
        d2 = d2 + eps ** 2
    local = np.arange(a.size)
    with np.errstate(divide="ignore"):
        kernel = 1.0 / d2
    kernel[local, a] = 0.0
    row_sums = kernel @ weights
    self_term = weights[a] / eps ** 2 if kind == "mollify" else np.zeros(a.size)
    sym = kernel * np.sqrt(weights[a, None] * weights[None, :])
    return sym, row_sums, self_term


def kernel_matrix(grid: SphereGridS3, regularization: str = "subtract", workers: Optional[int] = None) -> np.ndarray:
    """稠密对称核矩阵 S_ij = √(w_i w_j) k_ij（含对角正则化）"""
    kind, eps = parse_regularization(regularization)
    workers = workers or settings.max_workers
    size = grid.size
    chunks = [range(s, min(s + ROW_CHUNK, size)) for s in range(0, size, ROW_CHUNK)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        parts = list(executor.map(
            lambda rows: _assemble_dense_rows(rows, grid.nodes, grid.weights, kind, eps), chunks
        ))
    matrix = np.concatenate([p[0] for p in parts], axis=0)
    diag = _diagonal(kind, np.concatenate([p[1] for p in parts]), np.concatenate([p[2] for p in parts]))
    matrix[np.arange(size), np.arange(size)] = diag
    return matrix


def cluster_levels(values: Sequence[float], n_levels: int, cluster_tol: float) -> List[SpectrumLevel]:
    """
    降序本征值按相对展宽分簇

    一簇内的值与簇首的相对差不超过 cluster_tol；簇尾与下一个值的相对间隔
    小于 2·cluster_tol 时判为歧义。
    """
    values = np.asarray(values, dtype=float)
    levels: List[SpectrumLevel] = []
    i = 0
    for n in range(1, n_levels + 1):
        if i >= values.size:
            raise ClusteringAmbiguousError(
                f"本征值不足以构成第 {n} 个能级",
                {"eigenvalues": values.tolist(), "levels_found": len(levels)},
            )
        head = values[i]
        j = i + 1
        while j < values.size and (head - values[j]) <= cluster_tol * abs(head):
            j += 1
        if j >= values.size:
            raise ClusteringAmbiguousError(
                f"第 {n} 个能级之后没有可用于检验间隔的本征值",
                {"eigenvalues": values.tolist(), "levels_found": len(levels)},
            )
        gap = (values[j - 1] - values[j]) / abs(values[j - 1])
        if gap < 2 * cluster_tol:
            raise ClusteringAmbiguousError(
                f"第 {n} 个能级与下一簇的相对间隔 {gap:.3e} 小于 2×{cluster_tol}",
                {"eigenvalues": values.tolist(), "level": n, "gap": float(gap)},
            )
        cluster = values[i:j]
        levels.append(SpectrumLevel(
            principal_n=n,
            kernel_eigenvalue=float(np.mean(cluster)),
            degeneracy=int(cluster.size),
            spread=float((cluster[0] - cluster[-1]) / abs(cluster[0])),
        ))
        i = j
    return levels


def nystrom_spectrum(
    grid: SphereGridS3,
    n_levels: int,
    regularization: Optional[str] = None,
    cluster_tol: Optional[float] = None,
    method: str = "auto",
    workers: Optional[int] = None,
) -> SpectrumResult:
    """
    Nyström 离散化的最大 n_levels 个本征值簇

    Args:
        regularization: "puncture" | "subtract" | "mollify:EPS"
        method: "auto"（乘积网格走分块循环）| "circulant" | "dense"
    """
    if n_levels < 1:
        raise InvalidArgumentError(f"n_levels 必须 ≥ 1，收到 {n_levels}")
    regularization = regularization or settings.nystrom_regularization
    cluster_tol = settings.nystrom_cluster_tol if cluster_tol is None else cluster_tol
    workers = workers or settings.max_workers
    kind, eps = parse_regularization(regularization)

    if method == "auto":
        method = "circulant" if grid.is_product else "dense"
    if method == "circulant" and not grid.is_product:
        raise InvalidArgumentError("分块循环路径只适用于未旋转的乘积网格")

    wanted = sum(harmonic_degeneracy(n) for n in range(1, n_levels + 2))
    if wanted > grid.size:
        raise InvalidArgumentError(f"网格只有 {grid.size} 个节点，不足以求 {n_levels} 个能级")

    logger.info(f"Nyström 求解: 节点 {grid.size}，路径 {method}，正则化 {regularization}")
    try:
        if method == "circulant":
            values = _circulant_eigenvalues(grid, kind, eps, workers)[:wanted]
        elif method == "dense":
            matrix = kernel_matrix(grid, regularization, workers)
            values = sla.eigh(
                matrix, eigvals_only=True, subset_by_index=[grid.size - wanted, grid.size - 1]
            )[::-1]
        else:
            raise InvalidArgumentError(f"未知求解路径: {method}")
    except (np.linalg.LinAlgError, ValueError) as e:
        logger.error(f"本征值求解失败: {e}")
        raise NumericalFailureError(f"本征值求解失败: {e}")

    levels = cluster_levels(values, n_levels, cluster_tol)
    return SpectrumResult(
        route="nystrom",
        levels=levels,
        eigenvalues=np.asarray(values),
        params={
            "nodes": grid.size,
            "orders": list(grid.orders) if grid.orders else None,
            "regularization": regularization,
            "method": method,
            "cluster_tol": cluster_tol,
        },
    )


def relative_errors(spectrum: SpectrumResult) -> List[float]:
    """各能级相对于 2π²/n 的相对误差"""
    return [abs(level.kernel_eigenvalue - V_S3 / level.principal_n) / (V_S3 / level.principal_n)
            for level in spectrum.levels]


# ---------------------------------------------------------------- Balmer 能级

def _check_physical(alpha: float, mc2: float) -> None:
    if not 0.0 < alpha < 1.0:
        raise InvalidArgumentError(f"α 必须在 (0, 1) 内，收到 {alpha}")
    if mc2 <= 0.0:
        raise InvalidArgumentError(f"mc² 必须为正，收到 {mc2}")


def attach_energies(spectrum: SpectrumResult, alpha: float, mc2: float) -> SpectrumResult:
    """
    由 Fock 条件 (α/V(S3))(mc/p0)λ = 1 得 p0/mc = αλ/V(S3)，
    E = -½mc²(p0/mc)²。p0 以 mc 为单位，E 与 mc² 同单位。
    """
    _check_physical(alpha, mc2)
    for level in spectrum.levels:
        p0 = alpha * level.kernel_eigenvalue / V_S3
        level.p0 = p0
        level.E_n = -0.5 * mc2 * p0 ** 2
    spectrum.params.update({"alpha": alpha, "mc2": mc2})
    return spectrum


def hydrogen_levels(
    alpha: float,
    mc2: float,
    n_max: int,
    eigenvalues: Optional[Sequence[float]] = None,
) -> SpectrumResult:
    _check_physical(alpha, mc2)
    if n_max < 1:
        raise InvalidArgumentError(f"n_max 必须 ≥ 1，收到 {n_max}")
    if eigenvalues is None:
        values = [V_S3 / n for n in range(1, n_max + 1)]
        route = "closed-form"
    else:
        values = list(eigenvalues)[:n_max]
        if len(values) < n_max:
            raise InvalidArgumentError(f"只提供了 {len(values)} 个本征值，需要 {n_max}")
        route = "eigenvalues"
    levels = [
        SpectrumLevel(principal_n=n, kernel_eigenvalue=float(lam), degeneracy=harmonic_degeneracy(n))
        for n, lam in enumerate(values, start=1)
    ]
    return attach_energies(SpectrumResult(route=route, levels=levels), alpha, mc2)


def fock_condition_residual(lam: float, alpha: float, mc_over_p0: float) -> float:
    """|(α/2π²)(mc/p0)λ - 1|"""
    if lam <= 0 or alpha <= 0 or mc_over_p0 <= 0:
        raise InvalidArgumentError("λ、α 与 mc/p0 都必须为正")
    return abs(alpha / V_S3 * mc_over_p0 * lam - 1.0)
