from fastapi import APIRouter
from typing import Any, Dict, Optional
import logging

from ..config import settings
from ..schemas.common import ReportEnvelope, RunConfig
from ..services.dispatch_service import available_commands, dispatch

logger = logging.getLogger(__name__)

router = APIRouter()


def run_command(command: str, params: Dict[str, Any], seed: Optional[int] = None) -> ReportEnvelope:
    """类型化路由的公共入口：构造 RunConfig 后交给 dispatch"""
    config = RunConfig(
        command=command,
        params={k: v for k, v in params.items() if v is not None},
        seed=settings.default_seed if seed is None else seed,
    )
    logger.info(f"API 调用: {command} {config.params}")
    return dispatch(config)


@router.post("/dispatch", response_model=ReportEnvelope)
def dispatch_run_config(config: RunConfig):
    """按完整 RunConfig 执行任意命令"""
    logger.info(f"API dispatch: {config.command}")
    return dispatch(config)


@router.get("/commands")
def list_commands():
    return {"commands": available_commands()}
