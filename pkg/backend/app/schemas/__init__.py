import json
from pathlib import Path

from .common import ErrorResponse, ReportEnvelope, RunConfig, Tolerances
from .clifford import GammaRepResponse, RepresentationCheckResponse
from .spinor import (
    BilinearDecompositionResponse,
    BilinearVectorResponse,
    CodimensionResponse,
    NullPlaneResponse,
    PurityResponse,
    RealNullVectorResponse,
)
from .fields import (
    DecompositionResponse,
    MassSphereResponse,
    MaxwellResponse,
    MinkowskiVectorResponse,
    WeylKernelResponse,
)
from .fock import FockResidualResponse, SpectrumResponse
from .constants import (
    CosmicRatioResponse,
    DiracTimeResponse,
    ReferenceConstants,
    TorusResponse,
    WylerResponse,
)
from .selftest import SelfTestResponse

# `spinorlab schema NAME` 可导出的 JSON schema
SCHEMAS = {
    "run-config": RunConfig,
    "envelope": ReportEnvelope,
    "error": ErrorResponse,
    "gamma-rep": GammaRepResponse,
    "representation-check": RepresentationCheckResponse,
    "bilinear-vector": BilinearVectorResponse,
    "bilinear-decomposition": BilinearDecompositionResponse,
    "real-null-vector": RealNullVectorResponse,
    "purity": PurityResponse,
    "codimension": CodimensionResponse,
    "null-plane": NullPlaneResponse,
    "minkowski-vector": MinkowskiVectorResponse,
    "decomposition": DecompositionResponse,
    "weyl-kernel": WeylKernelResponse,
    "maxwell": MaxwellResponse,
    "mass-sphere": MassSphereResponse,
    "spectrum": SpectrumResponse,
    "fock-residual": FockResidualResponse,
    "wyler": WylerResponse,
    "dirac": DiracTimeResponse,
    "torus": TorusResponse,
    "cosmic-ratio": CosmicRatioResponse,
    "reference-constants": ReferenceConstants,
    "selftest": SelfTestResponse,
}

# 仓库内随附的 schema 文件，用 `spinorlab schema --out-dir` 重新生成
SCHEMA_DIR = Path(__file__).parent / "json"


def schema_text(name: str) -> str:
    return json.dumps(SCHEMAS[name].model_json_schema(), indent=2, ensure_ascii=False) + "\n"


__all__ = ["SCHEMAS", "SCHEMA_DIR", "schema_text", "RunConfig", "ReportEnvelope", "ErrorResponse", "Tolerances"]
