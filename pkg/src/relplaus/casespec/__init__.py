"""案件规格语言 - 词法、语法、诊断与规范序列化
"""

from .diagnostics import ParseDiagnostic, ParseFailure, Severity, SourceSpan
from .lexer import decode_source
from .parser import ParseResult, parse_case
from .serializer import canonical_form, format_number, serialize_case

__all__ = [
    "ParseDiagnostic",
    "ParseFailure",
    "Severity",
    "SourceSpan",
    "decode_source",
    "ParseResult",
    "parse_case",
    "canonical_form",
    "format_number",
    "serialize_case",
]
