"""
自检：运行不变量套件并逐项报告

用法与健康检查类似，每个 check_* 方法把结果写入 self.results，
单项失败不会中断其余检查。
"""

import logging
from typing import Any, Callable, Dict, List, Optional

import numpy as np

from ..exceptions import SpinorLabError
from ..models.clifford import Signature
from ..schemas.selftest import SelfTestCheck, SelfTestResponse
from ..utils.tolerances import tol
from . import clifford_core, constants, fock_solver, momentum_fields, spinor_algebra

logger = logging.getLogger(__name__)

# 快速模式用较小的网格与样本数
QUICK_GRID = (16, 16, 32)
FULL_GRID = (24, 24, 48)
NYSTROM_ERROR = 1e-2
MEASURED_ALPHA_BAND = 1e-5


class SelfTestRunner:
    """不变量自检"""

    def __init__(self, quick: bool = False, seed: int = 0, constants_file: Optional[str] = None):
        self.quick = quick
        self.seed = seed
        self.constants_file = constants_file
        self.results: Dict[str, SelfTestCheck] = {}

    def _rng(self) -> np.random.Generator:
        # 每项检查独立取种子，结果不依赖检查顺序
        return np.random.default_rng(self.seed)

    def _record(self, name: str, check: Callable[[], Dict[str, Any]]) -> None:
        try:
            detail = check()
            passed = bool(detail.pop("passed"))
        except SpinorLabError as e:
            passed = False
            detail = {"error": e.to_dict()}
        status = "✅" if passed else "❌"
        logger.info(f"自检 {name} {status}")
        self.results[name] = SelfTestCheck(name=name, passed=passed, detail=detail)

    def check_anticommutation(self) -> Dict[str, Any]:
        """{γ_a, γ_b} = 2η_ab 以及体积元的反交换"""
        max_n = 4 if self.quick else clifford_core.MAX_N
        worst = 0.0
        for n in range(1, max_n + 1):
            for signature in (Signature.euclidean(2 * n), Signature.lorentzian(2 * n)):
                report = clifford_core.representation_report(clifford_core.build_gamma(n, signature))
                worst = max(worst, report["clifford_relation"], report["volume_anticommutation"])
        tolerance = tol("tol_identity")
        return {"passed": worst <= tolerance, "max_error": worst, "tolerance": tolerance, "max_n": max_n}

    def check_pure_spinor_nullity(self) -> Dict[str, Any]:
        """纯旋量 ψ 与任意 φ 生成的向量 z_a = φᵗBγ_aψ 为零向量"""
        rng = self._rng()
        samples = 10 if self.quick else 40
        max_n = 4 if self.quick else 5
        worst = 0.0
        for n in range(1, max_n + 1):
            rep = clifford_core.build_gamma(n)
            for _ in range(samples):
                phi = spinor_algebra.random_spinor(rep, rng)
                psi = spinor_algebra.random_pure_spinor(rep, rng)
                z = spinor_algebra.vector_from_spinors(rep, phi, psi)
                worst = max(worst, spinor_algebra.null_ratio(z))
        tolerance = tol("tol_null")
        return {"passed": worst <= tolerance, "max_null_ratio": worst, "tolerance": tolerance}

    def check_non_pure_rejection(self) -> Dict[str, Any]:
        """n ≥ 4 时随机手征旋量一般不是纯旋量，且存在 φ 使 z 非零向量"""
        rng = self._rng()
        samples = 10 if self.quick else 40
        rejected = 0
        non_null = 0
        for _ in range(samples):
            rep = clifford_core.build_gamma(4)
            psi = spinor_algebra.random_chiral_spinor(rep, rng)
            if not spinor_algebra.is_pure(rep, psi).is_pure:
                rejected += 1
            phi = spinor_algebra.random_spinor(rep, rng)
            if spinor_algebra.null_ratio(spinor_algebra.vector_from_spinors(rep, phi, psi)) > tol("tol_reject"):
                non_null += 1
        return {"passed": rejected == samples and non_null == samples,
                "samples": samples, "rejected": rejected, "non_null": non_null}

    def check_codimension(self) -> Dict[str, Any]:
        rng = self._rng()
        expected = {2: 0, 3: 0, 4: 1} if self.quick else {2: 0, 3: 0, 4: 1, 5: 5}
        measured = {
            n: spinor_algebra.purity_codimension(clifford_core.build_gamma(n), 3, rng)
            for n in expected
        }
        return {"passed": measured == expected,
                "measured": {str(k): v for k, v in measured.items()},
                "expected": {str(k): v for k, v in expected.items()}}

    def check_maxwell(self) -> Dict[str, Any]:
        """Weyl 对旋量在零动量上给出满足 Maxwell 方程的 F^(±)"""
        rep = clifford_core.build_gamma(2, momentum_fields.MINKOWSKI_SIGNATURE)
        momenta = [(1.0, 0.0, 0.0, 1.0), (1.0, 1.0, 0.0, 0.0)]
        if not self.quick:
            momenta.append(tuple(momentum_fields.boost(0.7, axis=1) @ np.array([2.0, 0.0, 0.0, 2.0])))
        worst = 0.0
        for p in momenta:
            psi = momentum_fields.weyl_pair_spinor(rep, p)
            residual = momentum_fields.maxwell_residual(
                p,
                momentum_fields.em_tensor(rep, psi, "plus"),
                momentum_fields.em_tensor(rep, psi, "minus"),
            )
            worst = max(worst, residual.max_abs / residual.scale)
        tolerance = tol("tol_identity")
        return {"passed": worst <= tolerance, "max_relative_residual": worst, "tolerance": tolerance}

    def check_funk_hecke(self) -> Dict[str, Any]:
        values = fock_solver.funk_hecke_eigenvalues(6)
        errors = [abs(lam - fock_solver.V_S3 / n) / (fock_solver.V_S3 / n) for n, lam in enumerate(values, start=1)]
        tolerance = tol("tol_convergence")
        return {"passed": max(errors) <= tolerance, "max_relative_error": max(errors), "tolerance": tolerance}

    def check_nystrom_agreement(self) -> Dict[str, Any]:
        """Nyström 与 Funk-Hecke 两条路线在前三个能级上一致，简并度 1, 4, 9"""
        grid_orders = QUICK_GRID if self.quick else FULL_GRID
        nystrom = fock_solver.nystrom_spectrum(
            fock_solver.build_s3_grid(*grid_orders), 3, regularization="subtract"
        )
        reference = fock_solver.funk_hecke_eigenvalues(3)
        errors = [abs(level.kernel_eigenvalue - lam) / lam for level, lam in zip(nystrom.levels, reference)]
        degeneracies = [level.degeneracy for level in nystrom.levels]
        return {
            "passed": max(errors) <= NYSTROM_ERROR and degeneracies == [1, 4, 9],
            "grid": list(grid_orders),
            "relative_errors": errors,
            "degeneracies": degeneracies,
            "bound": NYSTROM_ERROR,
        }

    def check_wyler(self) -> Dict[str, Any]:
        result = constants.wyler_alpha()
        return {
            "passed": abs(result.inverse_alpha - 137.03608) < 1e-4,
            "inverse_alpha": result.inverse_alpha,
        }

    def check_constants_file(self) -> Dict[str, Any]:
        """参考常数文件可读，且测量 α 与 Wyler 值的偏差在预期范围内"""
        reference = constants.load_reference_constants(self.constants_file)
        deviation = constants.alpha_deviation(constants.wyler_alpha(), reference.fine_structure_constant)
        return {
            "passed": deviation <= MEASURED_ALPHA_BAND,
            "source": reference.source,
            "measured_deviation": deviation,
        }

    def run_all(self) -> SelfTestResponse:
        checks: List[Callable[[], Dict[str, Any]]] = [
            self.check_anticommutation,
            self.check_pure_spinor_nullity,
            self.check_non_pure_rejection,
            self.check_codimension,
            self.check_maxwell,
            self.check_funk_hecke,
            self.check_nystrom_agreement,
            self.check_wyler,
            self.check_constants_file,
        ]
        for check in checks:
            self._record(check.__name__[len("check_"):], check)

        failed = [name for name, check in self.results.items() if not check.passed]
        if failed:
            logger.warning(f"自检未通过: {failed}")
        return SelfTestResponse(
            passed=not failed,
            quick=self.quick,
            failed=failed,
            checks=list(self.results.values()),
        )
