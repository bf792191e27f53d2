"""
命令分发：RunConfig -> ReportEnvelope

命令行与 HTTP API 共用这一入口。所有随机数都来自按种子初始化的生成器，
计时信息只在显式要求时写入结果。
"""

import logging
import time
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from .. import __version__
from ..exceptions import InvalidArgumentError
from ..models.clifford import GammaRep, Signature
from ..models.fields import FieldTensor
from ..models.fock import SpectrumResult
from ..models.spinor import BilinearVector, Spinor
from ..schemas.clifford import AntiautomorphismSolve, GammaRepResponse, RepresentationCheckResponse
from ..schemas.common import ReportEnvelope, RunConfig
from ..schemas.constants import (
    CosmicRatioResponse,
    DiracTimeResponse,
    ReferenceConstants,
    TorusResponse,
    WylerResponse,
)
from ..schemas.fields import (
    DecompositionResponse,
    FieldTensorResponse,
    MassSphereResponse,
    MaxwellResponse,
    MinkowskiVectorResponse,
    WeylKernelResponse,
)
from ..schemas.fock import FockResidualResponse, SpectrumLevelResponse, SpectrumResponse
from ..schemas.spinor import (
    BilinearDecompositionResponse,
    BilinearVectorResponse,
    CodimensionResponse,
    NullPlaneResponse,
    PurityResponse,
    RealNullVectorResponse,
)
from ..utils.linalg import encode_complex, encode_matrix, encode_vector, max_abs, numerical_rank
from ..utils.tolerances import tol, tolerance_override
from . import clifford_core, constants, fock_solver, momentum_fields, spinor_algebra

logger = logging.getLogger(__name__)

Handler = Callable[["RunContext"], Dict[str, Any]]

_REGISTRY: Dict[str, Tuple[Handler, FrozenSet[str]]] = {}

SPINOR_SELECTION = frozenset({"components", "basis", "random", "random_pure", "chirality"})


def command(name: str, params=()):
    """注册命令及其允许的参数"""
    def decorator(func: Handler) -> Handler:
        _REGISTRY[name] = (func, frozenset(params))
        return func
    return decorator


def available_commands() -> List[str]:
    return sorted(_REGISTRY)


class RunContext:
    def __init__(self, config: RunConfig):
        self.config = config
        self.params = config.params
        self.rng = np.random.default_rng(config.seed)
        self.warnings: List[str] = []
        self.status = "ok"
        self._constants: Optional[ReferenceConstants] = None

    @property
    def constants(self) -> ReferenceConstants:
        if self._constants is None:
            self._constants = constants.load_reference_constants(self.config.constants_file)
        return self._constants

    def has(self, name: str) -> bool:
        return self.params.get(name) is not None

    def get(self, name: str, cast, default=None, required: bool = False):
        value = self.params.get(name)
        if value is None:
            if required:
                raise InvalidArgumentError(f"缺少参数: {name}")
            return default
        try:
            return cast(value)
        except (TypeError, ValueError) as e:
            raise InvalidArgumentError(f"参数 {name} 无法解析: {value!r} ({e})")


# ---------------------------------------------------------------- 参数解析

def _split(value) -> List[Any]:
    if isinstance(value, str):
        return [part.strip() for part in value.split(",") if part.strip()]
    return list(value)


def _complex_item(item) -> complex:
    if isinstance(item, (list, tuple)) and len(item) == 2:
        return complex(float(item[0]), float(item[1]))
    if isinstance(item, str):
        return complex(item.replace(" ", ""))
    return complex(item)


def complex_vector(value) -> np.ndarray:
    return np.array([_complex_item(item) for item in _split(value)], dtype=complex)


def real_vector(value) -> np.ndarray:
    return np.array([float(item) for item in _split(value)], dtype=float)


def int_triple(value) -> Tuple[int, int, int]:
    items = [int(item) for item in _split(value)]
    if len(items) != 3:
        raise ValueError("需要三个整数")
    return items[0], items[1], items[2]


def _flag(value) -> bool:
    if isinstance(value, str):
        return value.strip().lower() in ("1", "true", "yes", "on")
    return bool(value)


def _signature(ctx: RunContext, n: int, default: Optional[Signature] = None) -> Signature:
    value = ctx.params.get("sig")
    if value is None:
        return default if default is not None else Signature.euclidean(2 * n)
    if isinstance(value, str):
        return Signature.parse(value)
    p, q = (int(x) for x in value)
    return Signature(p, q)


def _rep(ctx: RunContext, default_lorentzian: bool = False) -> GammaRep:
    n = ctx.get("n", int, required=True)
    default = Signature.lorentzian(2 * n) if default_lorentzian else None
    return clifford_core.build_gamma(n, _signature(ctx, n, default))


def _chirality(ctx: RunContext, default: Optional[str] = "plus") -> Optional[str]:
    value = ctx.get("chirality", str, default)
    if value not in (None, "plus", "minus"):
        raise InvalidArgumentError(f"手征只能是 plus 或 minus，收到 {value!r}")
    return value


def _select_spinor(ctx: RunContext, rep: GammaRep) -> Spinor:
    """--components / --basis / --random / --random-pure，缺省为基纯旋量"""
    chosen = [name for name in ("components", "basis", "random", "random_pure")
              if ctx.has(name) and (name in ("components", "basis") or _flag(ctx.params[name]))]
    if len(chosen) > 1:
        raise InvalidArgumentError(f"旋量来源只能指定一个，收到 {chosen}")
    chirality = _chirality(ctx)

    source = chosen[0] if chosen else None
    if source == "components":
        return spinor_algebra.make_spinor(rep, ctx.get("components", complex_vector))
    if source == "basis":
        k = ctx.get("basis", int)
        if not 0 <= k < rep.spinor_dim:
            raise InvalidArgumentError(f"基向量下标 {k} 超出 0..{rep.spinor_dim - 1}")
        e = np.zeros(rep.spinor_dim, dtype=complex)
        e[k] = 1.0
        return spinor_algebra.make_spinor(rep, e)
    if source == "random":
        return spinor_algebra.random_chiral_spinor(rep, ctx.rng, chirality)
    if source == "random_pure":
        return spinor_algebra.random_pure_spinor(rep, ctx.rng, chirality)
    return spinor_algebra.basis_pure_spinor(rep, chirality)


# ---------------------------------------------------------------- 序列化

def gamma_rep_payload(rep: GammaRep) -> Dict[str, Any]:
    return GammaRepResponse(
        n=rep.n,
        signature=rep.signature.as_list(),
        vector_dim=rep.vector_dim,
        spinor_dim=rep.spinor_dim,
        timelike_index=rep.timelike_index,
        generators=[encode_matrix(g) for g in rep.generators],
        volume_element=encode_matrix(rep.volume_element),
        volume_square=rep.volume_square,
        chirality=encode_matrix(rep.chirality),
        B=encode_matrix(rep.B),
        B_minus=encode_matrix(rep.B_minus),
        C=encode_matrix(rep.C_conjugation),
    ).model_dump()


def bilinear_payload(z: BilinearVector) -> Dict[str, Any]:
    tolerance = tol("tol_null")
    ratio = spinor_algebra.null_ratio(z)
    return BilinearVectorResponse(
        components=encode_vector(z.components),
        signature=z.signature.as_list(),
        square=encode_complex(z.square),
        null_ratio=ratio,
        is_null=ratio <= tolerance,
        tolerance=tolerance,
    ).model_dump()


def tensor_payload(F: FieldTensor) -> FieldTensorResponse:
    return FieldTensorResponse(
        chirality=F.chirality,
        F=encode_matrix(F.F),
        rank=numerical_rank(F.F, rtol=1e-9) if F.norm > 0 else 0,
    )


def spectrum_payload(spectrum: SpectrumResult, energy_unit: Optional[str] = None) -> Dict[str, Any]:
    levels = []
    for level in spectrum.levels:
        reference = fock_solver.V_S3 / level.principal_n
        levels.append(SpectrumLevelResponse(
            n=level.principal_n,
            lambda_=level.kernel_eigenvalue,
            degeneracy=level.degeneracy,
            spread=level.spread,
            reference_lambda=reference,
            relative_error=abs(level.kernel_eigenvalue - reference) / reference,
            p0_over_mc=level.p0,
            E=level.E_n,
        ))
    return SpectrumResponse(
        route=spectrum.route,
        levels=levels,
        params=spectrum.params,
        energy_unit=energy_unit,
    ).model_dump(by_alias=True)


# ---------------------------------------------------------------- clifford

@command("clifford.build", params=("n", "sig"))
def _clifford_build(ctx: RunContext) -> Dict[str, Any]:
    return gamma_rep_payload(_rep(ctx))


@command("clifford.check", params=("n", "sig"))
def _clifford_check(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx)
    errors = clifford_core.representation_report(rep)
    tolerance = tol("tol_identity")
    identity_errors = {k: v for k, v in errors.items() if not k.endswith("_condition")}
    solves = []
    for sign in (1, -1):
        B, dimension = clifford_core.solve_antiautomorphism(rep, sign)
        solves.append(AntiautomorphismSolve(
            sign=sign,
            solution_dimension=dimension,
            max_deviation_from_constructed=max_abs(B - rep.intertwiner(sign)),
            B=encode_matrix(B),
        ))
    passed = all(v <= tolerance for v in identity_errors.values()) and all(s.solution_dimension == 1 for s in solves)
    return RepresentationCheckResponse(
        n=rep.n,
        signature=rep.signature.as_list(),
        errors=errors,
        tolerance=tolerance,
        passed=passed,
        antiautomorphisms=solves,
    ).model_dump()


# ---------------------------------------------------------------- spinor

@command("spinor.vector", params=("n", "sig", "phi", "psi", "random", "sign"))
def _spinor_vector(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx)
    sign = ctx.get("sign", int, 1)
    if _flag(ctx.params.get("random", False)):
        phi = spinor_algebra.random_spinor(rep, ctx.rng)
        psi = spinor_algebra.random_pure_spinor(rep, ctx.rng)
    else:
        phi = ctx.get("phi", complex_vector, required=True)
        psi = ctx.get("psi", complex_vector, required=True)
    return bilinear_payload(spinor_algebra.vector_from_spinors(rep, phi, psi, sign))


@command("spinor.decompose", params=("n", "sig", "phi", "psi", "random", "sign"))
def _spinor_decompose(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx)
    sign = ctx.get("sign", int, 1)
    if _flag(ctx.params.get("random", False)):
        phi = spinor_algebra.random_spinor(rep, ctx.rng).components
        psi = spinor_algebra.random_pure_spinor(rep, ctx.rng).components
    else:
        phi = ctx.get("phi", complex_vector, required=True)
        psi = ctx.get("psi", complex_vector, required=True)
    decomposition = clifford_core.bilinear_decomposition(rep, phi, psi, sign)
    tolerance = tol("tol_null")
    norms = decomposition.grade_norms
    return BilinearDecompositionResponse(
        n=rep.n,
        signature=rep.signature.as_list(),
        sign=sign,
        grade_norms=(norms / np.linalg.norm(decomposition.matrix)).tolist(),
        dominant_grade=decomposition.dominant_grade,
        vector_components=encode_vector(decomposition.vector_components),
        reconstruction_error=decomposition.reconstruction_error,
        cartan_residual=decomposition.cartan_residual,
        cartan_tolerance=tolerance,
        cartan_satisfied=decomposition.cartan_residual <= tolerance,
    ).model_dump()


@command("spinor.check-pure", params=("n", "sig") + tuple(SPINOR_SELECTION))
def _spinor_check_pure(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx)
    psi = _select_spinor(ctx, rep)
    report = spinor_algebra.is_pure(rep, psi)
    return PurityResponse(
        n=rep.n,
        chirality=spinor_algebra.classify_chirality(rep, psi),
        is_pure=report.is_pure,
        residual=report.residual,
        tolerance=report.tolerance,
        reject_tolerance=tol("tol_reject"),
        codimension_estimate=report.codimension_estimate,
        spinor=encode_vector(psi.components),
    ).model_dump()


@command("spinor.codim", params=("n", "sig", "samples"))
def _spinor_codim(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx)
    samples = ctx.get("samples", int, 20)
    details = spinor_algebra.purity_codimension_details(rep, samples, ctx.rng)
    if details["constraint_equations"] is not None and details["constraint_equations"] != details["codimension"]:
        ctx.warnings.append(
            f"约束方程个数 {details['constraint_equations']} 与测得的余维数 {details['codimension']} 不同：方程之间不独立"
        )
    return CodimensionResponse(**details).model_dump()


@command("spinor.null-plane", params=("n", "sig") + tuple(SPINOR_SELECTION))
def _spinor_null_plane(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx)
    plane = spinor_algebra.null_plane(rep, _select_spinor(ctx, rep))
    return NullPlaneResponse(
        n=rep.n,
        dimension=plane.dimension,
        is_maximal=plane.is_maximal,
        max_pairing=plane.max_pairing,
        tolerance=tol("tol_null"),
        basis=[encode_vector(z.components) for z in plane.basis],
    ).model_dump()


@command("spinor.real-null", params=("n", "sig") + tuple(SPINOR_SELECTION))
def _spinor_real_null(ctx: RunContext) -> Dict[str, Any]:
    rep = _rep(ctx, default_lorentzian=True)
    p = spinor_algebra.real_null_vector(rep, _select_spinor(ctx, rep))
    tolerance = tol("tol_null")
    ratio = spinor_algebra.null_ratio(p)
    return RealNullVectorResponse(
        components=p.components.real.tolist(),
        signature=rep.signature.as_list(),
        square=float(np.real(p.square)),
        null_ratio=ratio,
        is_null=ratio <= tolerance,
        tolerance=tolerance,
    ).model_dump()


# ---------------------------------------------------------------- fields

def _minkowski_rep() -> GammaRep:
    return clifford_core.build_gamma(2, momentum_fields.MINKOWSKI_SIGNATURE)


@command("fields.pauli", params=("phi",))
def _fields_pauli(ctx: RunContext) -> Dict[str, Any]:
    p = momentum_fields.pauli_bilinear(ctx.get("phi", complex_vector, required=True))
    return MinkowskiVectorResponse(components=p.components.tolist(), square=p.square).model_dump()


@command("fields.decompose", params=("phi", "psi"))
def _fields_decompose(ctx: RunContext) -> Dict[str, Any]:
    phi = ctx.get("phi", complex_vector, required=True)
    psi = ctx.get("psi", complex_vector, required=True)
    z = momentum_fields.matrix_decomposition(phi, psi)
    matrix = momentum_fields.decomposition_matrix(phi, psi)
    return DecompositionResponse(
        z=encode_vector(z.components),
        square=encode_complex(z.square),
        determinant=encode_complex(np.linalg.det(matrix)),
        matrix=encode_matrix(matrix),
    ).model_dump()


@command("fields.kernel", params=("p", "chirality"))
def _fields_kernel(ctx: RunContext) -> Dict[str, Any]:
    kernel = momentum_fields.weyl_operator_kernel(
        _minkowski_rep(), ctx.get("p", real_vector, required=True), _chirality(ctx)
    )
    return WeylKernelResponse(
        momentum=kernel.momentum.components.tolist(),
        momentum_square=kernel.momentum.square,
        chirality=kernel.chirality,
        full_dimension=kernel.full_dimension,
        chiral_dimension=kernel.chiral_dimension,
        full_kernel=[encode_vector(c) for c in kernel.full_kernel.T],
        chiral_solutions=[encode_vector(c) for c in kernel.chiral_solutions.T],
    ).model_dump()


@command("fields.maxwell", params=("p", "random_spinor"))
def _fields_maxwell(ctx: RunContext) -> Dict[str, Any]:
    rep = _minkowski_rep()
    p = ctx.get("p", real_vector, required=True)
    if _flag(ctx.params.get("random_spinor", False)):
        psi = spinor_algebra.random_spinor(rep, ctx.rng).components
    else:
        psi = momentum_fields.weyl_pair_spinor(rep, p)
    F_plus = momentum_fields.em_tensor(rep, psi, "plus")
    F_minus = momentum_fields.em_tensor(rep, psi, "minus")
    residual = momentum_fields.maxwell_residual(p, F_plus, F_minus)
    relative = residual.max_abs / residual.scale if residual.scale > 0 else 0.0
    tolerance = tol("tol_identity")
    return MaxwellResponse(
        momentum=[float(x) for x in p],
        spinor=encode_vector(psi),
        F_plus=tensor_payload(F_plus),
        F_minus=tensor_payload(F_minus),
        r1=encode_vector(residual.r1),
        r2=encode_vector(residual.r2),
        max_abs=residual.max_abs,
        scale=residual.scale,
        relative_residual=relative,
        tolerance=tolerance,
        satisfied=relative <= tolerance,
    ).model_dump()


@command("fields.mass-sphere", params=("p", "orientation"))
def _fields_mass_sphere(ctx: RunContext) -> Dict[str, Any]:
    decomposition = momentum_fields.mass_sphere(
        ctx.get("p", real_vector, required=True), ctx.get("orientation", int, 1)
    )
    return MassSphereResponse(
        minkowski_part=decomposition.minkowski_part.components.tolist(),
        extra_components=decomposition.extra_components.tolist(),
        M_n=decomposition.M_n,
        orientation=decomposition.orientation,
        minkowski_square=decomposition.minkowski_square,
        mismatch=decomposition.mismatch,
        tolerance=tol("tol_null"),
    ).model_dump()


# ---------------------------------------------------------------- fock

def _alpha(ctx: RunContext) -> float:
    value = ctx.params.get("alpha", "measured")
    if value == "measured":
        return ctx.constants.fine_structure_constant
    if value == "wyler":
        return constants.wyler_alpha().alpha
    return ctx.get("alpha", float)


def _mc2(ctx: RunContext) -> float:
    return ctx.get("mc2", float) if ctx.has("mc2") else ctx.constants.electron_rest_energy_eV


@command("fock.solve", params=("levels", "grid", "reg", "alpha", "mc2", "cluster_tol", "method"))
def _fock_solve(ctx: RunContext) -> Dict[str, Any]:
    levels = ctx.get("levels", int, 3)
    grid = fock_solver.build_s3_grid(*ctx.get("grid", int_triple, (16, 16, 32)))
    regularization = ctx.get("reg", str, None)
    spectrum = fock_solver.nystrom_spectrum(
        grid,
        levels,
        regularization=regularization,
        cluster_tol=ctx.get("cluster_tol", float, None),
        method=ctx.get("method", str, "auto"),
    )
    for level in spectrum.levels:
        expected = fock_solver.harmonic_degeneracy(level.principal_n)
        if level.degeneracy != expected:
            ctx.warnings.append(f"第 {level.principal_n} 能级簇大小 {level.degeneracy}，期望 {expected}")
    if spectrum.params["regularization"] == "puncture":
        ctx.warnings.append("puncture 正则化有 O(网格间距) 的系统偏差")
    fock_solver.attach_energies(spectrum, _alpha(ctx), _mc2(ctx))
    return spectrum_payload(spectrum, energy_unit="eV" if not ctx.has("mc2") else None)


@command("fock.funk-hecke", params=("levels", "quad_order"))
def _fock_funk_hecke(ctx: RunContext) -> Dict[str, Any]:
    spectrum = fock_solver.funk_hecke_spectrum(ctx.get("levels", int, 6), ctx.get("quad_order", int, 32))
    return spectrum_payload(spectrum)


@command("fock.levels", params=("levels", "alpha", "mc2"))
def _fock_levels(ctx: RunContext) -> Dict[str, Any]:
    spectrum = fock_solver.hydrogen_levels(_alpha(ctx), _mc2(ctx), ctx.get("levels", int, 4))
    return spectrum_payload(spectrum, energy_unit="eV" if not ctx.has("mc2") else None)


@command("fock.residual", params=("lambda", "alpha", "mc_over_p0"))
def _fock_residual(ctx: RunContext) -> Dict[str, Any]:
    lam = ctx.get("lambda", float, required=True)
    alpha = ctx.get("alpha", float, required=True)
    ratio = ctx.get("mc_over_p0", float, required=True)
    return FockResidualResponse(
        lambda_=lam,
        alpha=alpha,
        mc_over_p0=ratio,
        residual=fock_solver.fock_condition_residual(lam, alpha, ratio),
    ).model_dump(by_alias=True)


# ---------------------------------------------------------------- const

@command("const.wyler", params=())
def _const_wyler(ctx: RunContext) -> Dict[str, Any]:
    result = constants.wyler_alpha()
    measured = ctx.constants.fine_structure_constant
    printed_discrepancy = abs(result.printed_inverse_alpha - result.inverse_alpha) / result.inverse_alpha
    ctx.warnings.append(
        f"公式求值 1/α = {result.inverse_alpha:.6f}，与印刷值 {result.printed_inverse_alpha} 不一致"
    )
    return WylerResponse(
        alpha=result.alpha,
        inverse_alpha=result.inverse_alpha,
        volume_inputs=result.volume_inputs,
        printed_inverse_alpha=result.printed_inverse_alpha,
        printed_discrepancy=printed_discrepancy,
        claimed_deviation=result.claimed_deviation,
        measured_alpha=measured,
        measured_deviation=constants.alpha_deviation(result, measured),
    ).model_dump()


def _rest_energy(ctx: RunContext) -> float:
    return ctx.get("mass_ev", float) if ctx.has("mass_ev") else ctx.constants.proton_rest_energy_eV


@command("const.dirac", params=("mass_ev", "h"))
def _const_dirac(ctx: RunContext) -> Dict[str, Any]:
    energy_ev = _rest_energy(ctx)
    energy_j = energy_ev * ctx.constants.electron_volt_J
    h = ctx.get("h", float, ctx.constants.planck_constant_J_s)
    return DiracTimeResponse(
        rest_energy_eV=energy_ev,
        rest_energy_J=energy_j,
        h=h,
        delta_t_s=constants.dirac_time_unit(energy_j, h),
    ).model_dump()


@command("const.torus", params=("n", "t", "h"))
def _const_torus(ctx: RunContext) -> Dict[str, Any]:
    h = ctx.get("h", float) if ctx.has("h") else ctx.constants.planck_constant_J_s
    report = constants.torus_duality(ctx.get("n", int, required=True), ctx.get("t", float, required=True), h)
    if report.convention_factor != 1.0:
        ctx.warnings.append(f"Δt·(能量半径) = h/{report.convention_factor:g}（离散 Fourier 约定因子）")
    return TorusResponse(
        N=report.lattice.N,
        T=report.lattice.T,
        h=report.h,
        delta_t=report.lattice.delta_t,
        delta_E=report.delta_E,
        energy_radius=report.lattice.energy_radius,
        product=report.product,
        convention_factor=report.convention_factor,
    ).model_dump()


@command("const.ratio", params=("age", "dt", "mass_ev"))
def _const_ratio(ctx: RunContext) -> Dict[str, Any]:
    age = ctx.get("age", float) if ctx.has("age") else ctx.constants.age_of_universe_s
    if ctx.has("dt"):
        dt = ctx.get("dt", float)
    else:
        dt = constants.dirac_time_unit(
            _rest_energy(ctx) * ctx.constants.electron_volt_J, ctx.constants.planck_constant_J_s
        )
    return CosmicRatioResponse(
        age_s=age,
        delta_t_s=dt,
        ratio=constants.cosmic_ratio(age, dt),
        quoted_ratio=constants.QUOTED_COSMIC_RATIO,
    ).model_dump()


# ---------------------------------------------------------------- selftest

@command("selftest", params=("quick",))
def _selftest(ctx: RunContext) -> Dict[str, Any]:
    from .selftest_service import SelfTestRunner

    runner = SelfTestRunner(
        quick=_flag(ctx.params.get("quick", False)),
        seed=ctx.config.seed,
        constants_file=ctx.config.constants_file,
    )
    result = runner.run_all()
    if not result.passed:
        ctx.status = "failed"
        ctx.warnings.append(f"自检失败: {', '.join(result.failed)}")
    return result.model_dump()


# ---------------------------------------------------------------- 入口

def dispatch(config: RunConfig) -> ReportEnvelope:
    if config.command not in _REGISTRY:
        raise InvalidArgumentError(
            f"未知命令: {config.command}",
            {"available": available_commands()},
        )
    handler, allowed = _REGISTRY[config.command]
    unknown = sorted(set(config.params) - allowed)
    if unknown:
        raise InvalidArgumentError(f"命令 {config.command} 不接受参数: {unknown}")

    ctx = RunContext(config)
    start = time.perf_counter()
    with tolerance_override(**config.tolerances.model_dump()) as effective:
        result = handler(ctx)
    elapsed = time.perf_counter() - start
    logger.info(f"{config.command} 完成，用时 {elapsed:.3f}s")

    echo = config.model_dump()
    echo["effective_tolerances"] = effective
    return ReportEnvelope(
        version=__version__,
        status=ctx.status,
        config=echo,
        timing={"elapsed_s": elapsed} if config.timing else None,
        result=result,
        warnings=ctx.warnings,
    )
