"""
单次运行的容差覆盖

默认值来自 settings；dispatch 通过 tolerance_override 在当前上下文中覆盖，
不修改全局配置，并发请求互不影响。
"""

from contextlib import contextmanager
from contextvars import ContextVar
from typing import Dict, Optional

from ..config import settings

TOLERANCE_NAMES = ("tol_identity", "tol_null", "tol_reject", "tol_rank", "tol_convergence")

_override: ContextVar[Optional[Dict[str, float]]] = ContextVar("tolerance_override", default=None)


def tol(name: str) -> float:
    values = _override.get()
    if values and name in values:
        return values[name]
    return getattr(settings, name)


def effective_tolerances() -> Dict[str, float]:
    return {name: tol(name) for name in TOLERANCE_NAMES}


@contextmanager
def tolerance_override(**values: Optional[float]):
    active = {k: float(v) for k, v in values.items() if v is not None}
    token = _override.set(active)
    try:
        yield effective_tolerances()
    finally:
        _override.reset(token)
