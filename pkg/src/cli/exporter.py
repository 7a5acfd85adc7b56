"""
报告导出模块，将计算结果输出为 json、csv 或 text 格式

JSON 中的浮点数使用可无损还原的最短表示，csv 与 text 按固定有效位数格式化；
同样的输入得到逐字节相同的输出。
"""
import csv
import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

from src.utils.config import config
from src.utils.errors import ValidationError
from src.utils.logger import setup_logger

logger = setup_logger("exporter")

SWEEP_COLUMNS = (
    "omega",
    "expansion",
    "oracle",
    "rel_err",
    "singular_term",
    "naive_sum",
    "terms_used",
    "dominant_pred",
)


@dataclass
class Report:
    """一次命令的输出：命令名、参数、结果行与诊断信息"""
    command: str
    params: Dict[str, Any]
    results: List[Dict[str, Any]] = field(default_factory=list)
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    columns: Optional[Sequence[str]] = None


def format_float(value: float, digits: Optional[int] = None) -> str:
    """固定有效位数的浮点数文本；nan/inf 输出为 nan、inf、-inf"""
    digits = digits or config.get("output.float_digits", 17)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.{digits}g}"


def _json_safe(value: Any) -> Any:
    """nan/inf 不是合法JSON数值，转成与CSV一致的文本"""
    if isinstance(value, float) and not math.isfinite(value):
        return format_float(value)
    if isinstance(value, dict):
        return {str(k): _json_safe(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(v) for v in value]
    return value


def _cell(value: Any, digits: int) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format_float(value, digits)
    return str(value)


class ReportExporter:
    """
    报告导出器，按格式分派
    """

    supported_formats = ("json", "csv", "text")

    def __init__(self, digits: Optional[int] = None):
        self.digits = digits or config.get("output.float_digits", 17)

    def render(self, report: Report, format_type: str) -> str:
        """
        将报告渲染为文本

        Args:
            report: 报告
            format_type: json、csv 或 text

        Returns:
            str: 渲染结果，以换行结尾
        """
        if format_type not in self.supported_formats:
            raise ValidationError(f"不支持的输出格式: {format_type}", {"supported": list(self.supported_formats)})
        if format_type == "json":
            return self._render_json(report)
        if format_type == "csv":
            return self._render_csv(report)
        return self._render_text(report)

    def export(self, report: Report, format_type: str, output_path: Optional[str] = None) -> str:
        """渲染报告并写入文件；output_path 为空时只返回文本"""
        text = self.render(report, format_type)
        if output_path:
            path = Path(output_path)
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(text, encoding="utf-8")
            logger.info(f"报告已导出为{format_type}格式: {path}")
        return text

    def _columns(self, report: Report) -> List[str]:
        if report.columns:
            return list(report.columns)
        columns: List[str] = []
        for row in report.results:
            for key in row:
                if key not in columns:
                    columns.append(key)
        return columns

    def _render_json(self, report: Report) -> str:
        body = {
            "command": report.command,
            "params": report.params,
            "results": report.results,
            "diagnostics": report.diagnostics,
        }
        return json.dumps(_json_safe(body), ensure_ascii=False, allow_nan=False, default=str) + "\n"

    def _render_csv(self, report: Report) -> str:
        buffer = io.StringIO()
        columns = self._columns(report)
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in report.results:
            writer.writerow([_cell(row.get(column), self.digits) for column in columns])
        return buffer.getvalue()

    def _render_text(self, report: Report) -> str:
        lines = [f"# {report.command}"]
        for key, value in report.params.items():
            lines.append(f"#   {key} = {_cell(value, self.digits)}")
        columns = self._columns(report)
        if len(report.results) == 1:
            width = max((len(c) for c in columns), default=0)
            for column in columns:
                lines.append(f"{column.ljust(width)} : {_cell(report.results[0].get(column), self.digits)}")
        elif report.results:
            lines.append("\t".join(columns))
            for row in report.results:
                lines.append("\t".join(_cell(row.get(column), self.digits) for column in columns))
        for key, value in report.diagnostics.items():
            lines.append(f"# {key}: {_cell(value, self.digits)}")
        return "\n".join(lines) + "\n"
