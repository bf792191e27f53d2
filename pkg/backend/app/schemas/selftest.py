from pydantic import BaseModel
from typing import Any, Dict, List


class SelfTestCheck(BaseModel):
    name: str
    passed: bool
    detail: Dict[str, Any] = {}


class SelfTestResponse(BaseModel):
    passed: bool
    quick: bool
    failed: List[str]
    checks: List[SelfTestCheck]
