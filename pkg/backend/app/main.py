from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
import logging

from . import __version__
from .api import clifford, constants, fields, fock, runner, spinor
from .config import settings
from .exceptions import SpinorLabError
from .utils.logging_config import setup_logging

# 配置日志
setup_logging(settings)
logger = logging.getLogger(__name__)

# 创建FastAPI应用
app = FastAPI(
    title="Pure Spinor Lab API",
    description="纯旋量几何与动量空间谱的计算接口",
    version=__version__,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins_list,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(runner.router, prefix=settings.api_prefix, tags=["dispatch"])
app.include_router(clifford.router, prefix=settings.api_prefix, tags=["clifford"])
app.include_router(spinor.router, prefix=settings.api_prefix, tags=["spinor"])
app.include_router(fields.router, prefix=settings.api_prefix, tags=["fields"])
app.include_router(fock.router, prefix=settings.api_prefix, tags=["fock"])
app.include_router(constants.router, prefix=settings.api_prefix, tags=["constants"])


@app.exception_handler(SpinorLabError)
async def spinor_lab_error_handler(request: Request, exc: SpinorLabError):
    logger.warning(f"{request.url.path} 失败: {exc.code}: {exc.detail}")
    return JSONResponse(status_code=exc.http_status, content=exc.to_dict())


@app.get("/")
async def root():
    return {
        "message": "Pure Spinor Lab API",
        "version": __version__,
        "docs": "/docs"
    }


@app.get("/health")
async def health_check():
    return {
        "status": "healthy",
        "version": __version__,
    }


if __name__ == "__main__":
    import uvicorn
    uvicorn.run(app, host="0.0.0.0", port=8000)
