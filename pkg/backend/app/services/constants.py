"""
几何常数：Wyler 精细结构常数公式、环面时间-能量对偶、Dirac 时间单位

所有测量常数（h、静能、宇宙年龄）只作为输入或来自参考常数文件。
"""

import json
import logging
from functools import lru_cache
from pathlib import Path
from typing import Optional

import numpy as np
from pydantic import ValidationError
from scipy.special import gamma

from ..config import settings
from ..exceptions import ConstantsFileError, InvalidArgumentError
from ..models.constants import TorusLattice, TorusReport, WylerResult
from ..schemas.constants import ReferenceConstants

logger = logging.getLogger(__name__)

BUNDLED_CONSTANTS_FILE = Path(__file__).resolve().parent.parent / "data" / "reference_constants.json"

PRINTED_INVERSE_ALPHA = 137.0608
CLAIMED_DEVIATION = 1e-6
QUOTED_COSMIC_RATIO = 3.4e39


def sphere_volume(k: int) -> float:
    """单位球面 S_k 的体积 2π^((k+1)/2) / Γ((k+1)/2)"""
    if k < 0:
        raise InvalidArgumentError(f"球面维数不能为负: {k}")
    return float(2.0 * np.pi ** ((k + 1) / 2.0) / gamma((k + 1) / 2.0))


def classical_domain_volumes() -> dict:
    """五维 Lie 球 D5、其 Šilov 边界 Q5 与 S4 的体积"""
    return {
        "V_D5": float(np.pi ** 5 / (2 ** 4 * 120)),
        "V_S4": sphere_volume(4),
        "V_Q5": float(8.0 * np.pi ** 3 / 3.0),
    }


def wyler_alpha() -> WylerResult:
    """α = 8π·V(D5)^(1/4) / (V(S4)·V(Q5))"""
    volumes = classical_domain_volumes()
    alpha = 8.0 * np.pi * volumes["V_D5"] ** 0.25 / (volumes["V_S4"] * volumes["V_Q5"])
    return WylerResult(
        alpha=float(alpha),
        inverse_alpha=float(1.0 / alpha),
        volume_inputs=volumes,
        printed_inverse_alpha=PRINTED_INVERSE_ALPHA,
        claimed_deviation=CLAIMED_DEVIATION,
    )


def alpha_deviation(result: WylerResult, measured_alpha: float) -> float:
    if measured_alpha <= 0:
        raise InvalidArgumentError(f"测量的 α 必须为正，收到 {measured_alpha}")
    return abs(result.alpha - measured_alpha) / measured_alpha


def dirac_time_unit(rest_energy: float, h: float) -> float:
    """Δt = h / (Mc²)"""
    if rest_energy <= 0 or h <= 0:
        raise InvalidArgumentError("静能与作用量都必须为正")
    return h / rest_energy


def torus_duality(N: int, T: float, h: float) -> TorusReport:
    """
    时间圆 S¹_T 上内接 2N 边形：Δt = πT/N

    离散 Fourier 约定：2N 个时间点、间距 Δt 的能量对偶间距 ΔE = h/(2NΔt)，
    能量半径 N·ΔE = h/(2Δt)，因而 Δt·(能量半径) = h/2，与 h 相差因子 2。
    """
    if N < 1:
        raise InvalidArgumentError(f"N 必须 ≥ 1，收到 {N}")
    if T <= 0 or h <= 0:
        raise InvalidArgumentError("T 与 h 都必须为正")
    delta_t = np.pi * T / N
    delta_E = h / (2 * N * delta_t)
    energy_radius = N * delta_E
    product = delta_t * energy_radius
    return TorusReport(
        lattice=TorusLattice(N=N, T=T, delta_t=float(delta_t), energy_radius=float(energy_radius)),
        delta_E=float(delta_E),
        product=float(product),
        h=h,
        convention_factor=float(h / product),
    )


def cosmic_ratio(age: float, delta_t: float) -> float:
    if age <= 0 or delta_t <= 0:
        raise InvalidArgumentError("年龄与时间间隔都必须为正")
    return age / delta_t


def resolve_constants_path(path: Optional[str] = None) -> Path:
    chosen = path or settings.constants_file
    return Path(chosen) if chosen else BUNDLED_CONSTANTS_FILE


@lru_cache(maxsize=8)
def _load_cached(path: str, mtime: float) -> ReferenceConstants:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
        return ReferenceConstants(**data)
    except (OSError, json.JSONDecodeError, TypeError) as e:
        logger.error(f"参考常数文件读取失败: {path}: {e}")
        raise ConstantsFileError(f"参考常数文件读取失败: {path}: {e}")
    except ValidationError as e:
        logger.error(f"参考常数文件校验失败: {path}")
        raise ConstantsFileError(
            f"参考常数文件校验失败: {path}",
            {"errors": [err["msg"] for err in e.errors()]},
        )


def load_reference_constants(path: Optional[str] = None) -> ReferenceConstants:
    resolved = resolve_constants_path(path)
    try:
        mtime = resolved.stat().st_mtime
    except OSError:
        raise ConstantsFileError(f"参考常数文件不存在: {resolved}")
    return _load_cached(str(resolved), mtime)
