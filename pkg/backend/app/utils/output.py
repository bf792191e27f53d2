"""
结果输出渲染：json / csv / text（tabulate表格）
"""

import csv
import io
import json
from typing import Any, Dict, List, Tuple

from tabulate import tabulate


def _is_scalar(value: Any) -> bool:
    return value is None or isinstance(value, (str, int, float, bool))


def _flatten(data: Dict[str, Any], prefix: str = "") -> List[Tuple[str, Any]]:
    items = []
    for key, value in data.items():
        name = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, dict):
            items.extend(_flatten(value, name))
        elif _is_scalar(value):
            items.append((name, value))
        else:
            items.append((name, json.dumps(value, ensure_ascii=False)))
    return items


def result_table(result: Dict[str, Any]) -> Tuple[List[str], List[List[Any]]]:
    """
    把结果负载转换为表格

    优先使用第一个由标量字典组成的列表（如能级列表），
    否则展开为 key/value 两列。
    """
    for value in result.values():
        if isinstance(value, list) and value and all(isinstance(v, dict) for v in value):
            if all(_is_scalar(x) for row in value for x in row.values()):
                headers = list(value[0].keys())
                rows = [[row.get(h) for h in headers] for row in value]
                return headers, rows
    return ["key", "value"], [list(item) for item in _flatten(result)]


def render(envelope: Dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(envelope, indent=2, ensure_ascii=False) + "\n"

    headers, rows = result_table(envelope.get("result") or {})
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
        return buffer.getvalue()

    lines = [tabulate(rows, headers=headers, tablefmt="grid")]
    for warning in envelope.get("warnings") or []:
        lines.append(f"⚠️ {warning}")
    return "\n".join(lines) + "\n"
