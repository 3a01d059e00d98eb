"""词法分析 - .case 文件的记号流

记号种类：KEYWORD、IDENT、STRING、NUMBER、LBRACE、RBRACE。
`#` 到行尾为注释；空白（含换行）只分隔记号。LF、CRLF 与单独的 CR 都算换行。
"""

import re
from dataclasses import dataclass

from ..core.model import IDENTIFIER as _WORD
from ..core.model import KEYWORDS
from .diagnostics import SourceSpan, error

TOKEN_NAMES = {
    "KEYWORD": "关键字",
    "IDENT": "标识符",
    "STRING": "字符串",
    "NUMBER": "数字",
    "LBRACE": "'{'",
    "RBRACE": "'}'",
}

_NUMBER = re.compile(r"-?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?", re.ASCII)
_ESCAPES = {'"': '"', "\\": "\\", "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class Token:
    """一个记号；STRING 的 value 是转义后的内容"""
    kind: str
    value: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind in ("KEYWORD", "IDENT"):
            return f"{TOKEN_NAMES[self.kind]} '{self.value}'"
        return TOKEN_NAMES[self.kind]


class Lexer:
    """把源码切分为记号；第一个词法错误即抛出 ParseFailure"""

    def __init__(self, source: str):
        self.source = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            ch = self.source[self.pos]
            if ch == "\n" or (ch == "\r" and self.source[self.pos + 1 : self.pos + 2] != "\n"):
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def end_span(self) -> SourceSpan:
        """文件末尾的零长度区间"""
        return SourceSpan(self.line, self.col, 0)

    def tokens(self) -> list[Token]:
        result: list[Token] = []
        src = self.source
        while self.pos < len(src):
            ch = src[self.pos]

            if ch.isspace():
                self._advance()
                continue

            if ch == "#":
                while self.pos < len(src) and src[self.pos] not in "\r\n":
                    self._advance()
                continue

            line, col, start = self.line, self.col, self.pos

            if ch in "{}":
                self._advance()
                result.append(Token("LBRACE" if ch == "{" else "RBRACE", ch, SourceSpan(line, col, 1)))
                continue

            if ch == '"':
                result.append(self._string(line, col))
                continue

            m = _NUMBER.match(src, self.pos)
            if m and (ch.isdigit() or ch in "-."):
                self._advance(m.end() - start)
                result.append(Token("NUMBER", m.group(), SourceSpan(line, col, m.end() - start)))
                continue

            m = _WORD.match(src, self.pos)
            if m:
                self._advance(m.end() - start)
                word = m.group()
                kind = "KEYWORD" if word in KEYWORDS else "IDENT"
                result.append(Token(kind, word, SourceSpan(line, col, len(word))))
                continue

            raise error("UNEXPECTED_CHARACTER", f"意外的字符 {ch!r}", SourceSpan(line, col, 1))
        return result

    def _string(self, line: int, col: int) -> Token:
        src = self.source
        start = self.pos
        self._advance()  # 开引号
        chars: list[str] = []
        while True:
            if self.pos >= len(src) or src[self.pos] == "\n":
                raise error(
                    "UNTERMINATED_STRING",
                    "字符串没有结束引号",
                    SourceSpan(line, col, self.pos - start),
                )
            ch = src[self.pos]
            if ch == '"':
                self._advance()
                return Token("STRING", "".join(chars), SourceSpan(line, col, self.pos - start))
            if ch == "\\":
                esc_line, esc_col = self.line, self.col
                if self.pos + 1 >= len(src) or src[self.pos + 1] not in _ESCAPES:
                    raise error("INVALID_ESCAPE", "无效的转义序列", SourceSpan(esc_line, esc_col, 1))
                chars.append(_ESCAPES[src[self.pos + 1]])
                self._advance(2)
                continue
            chars.append(ch)
            self._advance()


def decode_source(data: bytes) -> str:
    """把 .case 文件字节解码为文本

    Raises:
        ParseFailure: 不是有效的 UTF-8（INVALID_ENCODING），位置指向第一个坏字节
    """
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        prefix = Lexer(data[: e.start].decode("utf-8"))
        prefix._advance(len(prefix.source))
        span = SourceSpan(prefix.line, prefix.col, e.end - e.start)
        raise error("INVALID_ENCODING", f"文件不是有效的 UTF-8（字节偏移 {e.start}）", span) from None
