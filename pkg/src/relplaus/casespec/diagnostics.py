"""解析诊断 - 源码位置与错误/警告
"""

from dataclasses import dataclass
from enum import Enum


class Severity(Enum):
    """诊断级别"""
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class SourceSpan:
    """源码区间（行列从 1 开始）"""
    line: int
    column: int
    length: int = 0


@dataclass(frozen=True)
class ParseDiagnostic:
    """一条诊断"""
    severity: Severity
    code: str
    message: str
    span: SourceSpan

    def location(self, filename: str = "<input>") -> str:
        return f"{filename}:{self.span.line}:{self.span.column}"

    @property
    def summary(self) -> str:
        return f"{self.severity.value}[{self.code}]: {self.message}"

    def format(self, filename: str = "<input>") -> str:
        """格式化为 file:line:col: severity[code]: message"""
        return f"{self.location(filename)}: {self.summary}"


class ParseFailure(Exception):
    """解析器内部使用：遇到第一个语法错误即停止"""

    def __init__(self, diagnostic: ParseDiagnostic):
        super().__init__(diagnostic.message)
        self.diagnostic = diagnostic


def error(code: str, message: str, span: SourceSpan) -> ParseFailure:
    return ParseFailure(ParseDiagnostic(Severity.ERROR, code, message, span))
