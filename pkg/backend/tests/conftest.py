import sys
from pathlib import Path

import numpy as np
import pytest

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from app.models.clifford import Signature  # noqa: E402
from app.services import clifford_core  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def minkowski_rep():
    return clifford_core.build_gamma(2, Signature(1, 3))


@pytest.fixture
def bundled_constants_path():
    return project_root / "app" / "data" / "reference_constants.json"


@pytest.fixture(autouse=True)
def keep_pytest_log_capture(monkeypatch):
    # 日志交给 pytest 捕获，避免处理器绑定到 CliRunner 的临时 stderr
    from app.utils import logging_config
    monkeypatch.setattr(logging_config, "_configured", True)
