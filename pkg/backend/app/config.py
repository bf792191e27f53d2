from pydantic_settings import BaseSettings
from typing import Optional, List


class Settings(BaseSettings):
    # 数值容差配置
    tol_identity: float = 1e-12
    tol_null: float = 1e-10
    tol_reject: float = 1e-6
    tol_rank: float = 1e-9
    tol_convergence: float = 1e-8

    # Nyström 求解配置
    nystrom_cluster_tol: float = 1e-3
    nystrom_regularization: str = "subtract"
    max_workers: int = 4

    # 随机数配置
    default_seed: int = 20240601

    # 参考常数文件（为空时使用内置文件）
    constants_file: Optional[str] = None

    # 输出配置
    output_format: str = "json"

    # 日志配置
    log_level: str = "WARNING"
    log_format: str = "text"
    log_file: Optional[str] = None
    log_max_size: int = 10485760  # 10MB
    log_backup_count: int = 5

    # API配置
    api_prefix: str = "/api/v1"
    cors_origins: str = "*"

    @property
    def cors_origins_list(self) -> List[str]:
        return [origin.strip() for origin in self.cors_origins.split(",")]

    class Config:
        env_file = ".env"
        case_sensitive = False


settings = Settings()
