"""
统一异常体系

每个异常携带错误类型代码、命令行退出码和HTTP状态码，
命令行和API层据此映射，服务层只负责抛出。
"""

from typing import Any, Dict, Optional


class SpinorLabError(Exception):
    code = "spinor-lab-error"
    exit_code = 3
    http_status = 500

    def __init__(self, detail: str, diagnostics: Optional[Dict[str, Any]] = None):
        super().__init__(detail)
        self.detail = detail
        self.diagnostics = diagnostics or {}

    def to_dict(self) -> Dict[str, Any]:
        return {
            "code": self.code,
            "detail": self.detail,
            "diagnostics": self.diagnostics,
        }


# 参数类错误：退出码 2
class InvalidArgumentError(SpinorLabError):
    code = "invalid-argument"
    exit_code = 2
    http_status = 400


class UnsupportedSizeError(SpinorLabError):
    code = "unsupported-size"
    exit_code = 2
    http_status = 400


class SignatureMismatchError(SpinorLabError):
    code = "signature-mismatch"
    exit_code = 2
    http_status = 400


class ChiralityRequiredError(SpinorLabError):
    code = "chirality-required"
    exit_code = 2
    http_status = 400


class NormalizationRequiredError(SpinorLabError):
    code = "normalization-required"
    exit_code = 2
    http_status = 400


class NotOnConeError(SpinorLabError):
    code = "not-on-cone"
    exit_code = 2
    http_status = 400


# 数值类错误：退出码 3
class IndeterminateError(SpinorLabError):
    """残差落在接受阈值与拒绝阈值之间"""
    code = "indeterminate"
    http_status = 422


class RepresentationInconsistentError(SpinorLabError):
    code = "representation-inconsistent"


class DegenerateOrbitError(SpinorLabError):
    code = "degenerate-orbit"


class NumericalFailureError(SpinorLabError):
    code = "numerical-failure"


class AccuracyNotReachedError(SpinorLabError):
    code = "accuracy-not-reached"


class ClusteringAmbiguousError(SpinorLabError):
    code = "clustering-ambiguous"


class ConstantsFileError(SpinorLabError):
    code = "constants-file"
