"""案件规格语言的递归下降解析器

    case        := "case" STRING header* claim*
    header      := "question" STRING | "standard" IDENT | "assume" IDENT STRING ["stipulated"]
    claim       := "claim" IDENT "{" hypo("for") hypo("against") ["prior_odds" NUM] group* "}"
    hypo        := ("for"|"against") IDENT STRING ["complexity" NUMBER] ("assuming" STRING)*
    group       := "group" IDENT ["coverage" NUMBER] "{" item* lr ["because" STRING] ["given" IDENT+] "}"
    lr          := "lr" NUM | "lr" "label" STRING
    item        := "evidence" IDENT STRING ["kind" IDENT]
    NUM         := NUMBER | "inf"

语法错误在第一处停止；结构完整后交给 validate_case，违规按记录的位置转成诊断。
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional

from ..core.model import (
    AssumptionKind,
    BackgroundAssumption,
    CaseSpec,
    Claim,
    EvidenceGroup,
    EvidenceItem,
    EvidenceKind,
    Hypothesis,
    StandardName,
)
from ..core.scale import ScaleTable, qualitative_to_lr
from ..core.validation import validate_case
from ..errors import ScaleError
from .diagnostics import ParseDiagnostic, ParseFailure, Severity, SourceSpan, error
from .lexer import Lexer, Token

logger = logging.getLogger(__name__)

Path = tuple[str, ...]


@dataclass(frozen=True)
class ParseResult:
    """解析结果：有错误诊断时 case 为 None"""
    case: Optional[CaseSpec]
    diagnostics: tuple[ParseDiagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.case is not None

    @property
    def errors(self) -> tuple[ParseDiagnostic, ...]:
        return tuple(d for d in self.diagnostics if d.severity is Severity.ERROR)


class Parser:
    """单个 .case 源文本的解析器"""

    def __init__(self, source: str, scale: ScaleTable):
        self.lexer = Lexer(source)
        self.scale = scale
        self.tokens: list[Token] = []
        self.index = 0
        self.spans: dict[Path, SourceSpan] = {}

    # === 记号操作 ===

    @property
    def nt(self) -> Optional[Token]:
        """下一个记号"""
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def peek(self, kind: str) -> bool:
        return self.nt is not None and self.nt.kind == kind

    def peek_kw(self, value: str) -> bool:
        return self.peek("KEYWORD") and self.nt.value == value  # type: ignore[union-attr]

    def _unexpected(self, expected: str, keyword: bool = False) -> ParseFailure:
        tok = self.nt
        if tok is None:
            return error("UNEXPECTED_EOF", f"期望{expected}，却遇到文件结尾", self.lexer.end_span())
        if keyword and tok.kind == "IDENT":
            return error("UNKNOWN_KEYWORD", f"未知关键字 '{tok.value}'（期望{expected}）", tok.span)
        return error("UNEXPECTED_TOKEN", f"期望{expected}，却遇到{tok.describe()}", tok.span)

    def match(self, kind: str, expected: str) -> Token:
        if not self.peek(kind):
            raise self._unexpected(expected)
        return self.advance()

    def match_kw(self, value: str) -> Token:
        if not self.peek_kw(value):
            raise self._unexpected(f"关键字 '{value}'", keyword=True)
        return self.advance()

    def match_ident(self) -> Token:
        if self.peek("KEYWORD"):
            tok = self.nt
            raise error(
                "RESERVED_WORD", f"'{tok.value}' 是关键字，不能用作标识符", tok.span  # type: ignore[union-attr]
            )
        return self.match("IDENT", "标识符")

    def match_number(self, allow_inf: bool = True) -> tuple[float, SourceSpan]:
        if allow_inf and self.peek_kw("inf"):
            tok = self.advance()
            return math.inf, tok.span
        tok = self.match("NUMBER", "数字")
        value = float(tok.value)
        if not math.isfinite(value):
            raise error("NUMBER_OUT_OF_RANGE", f"数字 {tok.value} 超出浮点范围", tok.span)
        return value, tok.span

    def remember(self, path: Path, span: SourceSpan) -> None:
        self.spans.setdefault(path, span)

    # === 文法 ===

    def parse(self) -> CaseSpec:
        self.tokens = self.lexer.tokens()

        case_tok = self.match_kw("case")
        self.remember(("case",), case_tok.span)
        case_id = self.match("STRING", "案件名字符串").value

        question = ""
        standard = StandardName.PREPONDERANCE
        background: list[BackgroundAssumption] = []
        seen_headers: set[str] = set()

        while self.peek_kw("question") or self.peek_kw("standard") or self.peek_kw("assume"):
            kw = self.advance()
            if kw.value in ("question", "standard"):
                if kw.value in seen_headers:
                    raise error("DUPLICATE_HEADER", f"'{kw.value}' 只能出现一次", kw.span)
                seen_headers.add(kw.value)

            if kw.value == "question":
                question = self.match("STRING", "问题字符串").value
            elif kw.value == "standard":
                tok = self.match("IDENT", "证明标准名称")
                try:
                    standard = StandardName(tok.value)
                except ValueError:
                    known = ", ".join(s.value for s in StandardName)
                    raise error("UNKNOWN_STANDARD", f"未知证明标准 '{tok.value}'，可用: {known}", tok.span)
            else:
                background.append(self.parse_assumption())

        claims: list[Claim] = []
        while self.peek_kw("claim"):
            claims.append(self.parse_claim())

        if self.nt is not None:
            raise self._unexpected("关键字 'claim'", keyword=True)

        return CaseSpec(
            case_id=case_id,
            question=question,
            background=tuple(background),
            claims=tuple(claims),
            standard=standard,
        )

    def parse_assumption(self) -> BackgroundAssumption:
        ident = self.match_ident()
        self.remember(("assume", ident.value), ident.span)
        text = self.match("STRING", "背景知识文本").value
        kind = AssumptionKind.GENERAL_KNOWLEDGE
        if self.peek_kw("stipulated"):
            self.advance()
            kind = AssumptionKind.STIPULATION
        return BackgroundAssumption(id=ident.value, text=text, kind=kind)

    def parse_claim(self) -> Claim:
        self.match_kw("claim")
        ident = self.match_ident()
        claim_id = ident.value
        base: Path = ("claim", claim_id)
        self.remember(base, ident.span)
        self.match("LBRACE", "'{'")

        claimant = self.parse_hypothesis("for", base)
        opposing = self.parse_hypothesis("against", base)

        prior = 1.0
        if self.peek_kw("prior_odds"):
            self.advance()
            prior, span = self.match_number()
            self.remember(base + ("prior_odds",), span)

        evidence: list[EvidenceItem] = []
        groups: list[EvidenceGroup] = []
        while self.peek_kw("group"):
            groups.append(self.parse_group(base, evidence))

        if not self.peek("RBRACE"):
            raise self._unexpected("'}' 或关键字 'group'", keyword=True)
        self.advance()
        return Claim(
            id=claim_id,
            claimant_hypothesis=claimant,
            opposing_hypothesis=opposing,
            prior_odds=prior,
            groups=tuple(groups),
            evidence=tuple(evidence),
        )

    def parse_hypothesis(self, side: str, base: Path) -> Hypothesis:
        self.match_kw(side)
        ident = self.match_ident()
        path = base + (side,)
        self.remember(path, ident.span)
        statement = self.match("STRING", "假设陈述字符串").value

        complexity = 1.0
        if self.peek_kw("complexity"):
            self.advance()
            complexity, span = self.match_number(allow_inf=False)
            self.remember(path + ("complexity",), span)

        assumptions: list[str] = []
        while self.peek_kw("assuming"):
            self.advance()
            assumptions.append(self.match("STRING", "假设文本").value)

        return Hypothesis(
            id=ident.value,
            statement=statement,
            complexity=complexity,
            assumptions=tuple(assumptions),
        )

    def parse_group(self, base: Path, evidence: list[EvidenceItem]) -> EvidenceGroup:
        self.match_kw("group")
        ident = self.match_ident()
        path = base + ("group", ident.value)
        self.remember(path, ident.span)

        coverage = 1.0
        if self.peek_kw("coverage"):
            self.advance()
            coverage, span = self.match_number(allow_inf=False)
            self.remember(path + ("coverage",), span)

        self.match("LBRACE", "'{'")

        items: list[str] = []
        while self.peek_kw("evidence"):
            items.append(self.parse_item(base, evidence))

        lr_kw = self.match_kw("lr")
        label: Optional[str] = None
        if self.peek_kw("label"):
            self.advance()
            label_tok = self.match("STRING", "强度标签字符串")
            label = label_tok.value
            try:
                lr = qualitative_to_lr(label, self.scale)
            except ScaleError as e:
                raise error("UNKNOWN_LABEL", str(e.args[0]), label_tok.span)
            self.remember(path + ("lr",), label_tok.span)
        else:
            lr, span = self.match_number()
            self.remember(path + ("lr",), span)
        logger.debug("组 %s: lr=%s (%s)", ident.value, lr, lr_kw.span)

        rationale = ""
        if self.peek_kw("because"):
            self.advance()
            rationale = self.match("STRING", "理由字符串").value

        conditions: list[str] = []
        if self.peek_kw("given"):
            self.advance()
            conditions.append(self.match_ident().value)
            while self.peek("IDENT"):
                conditions.append(self.advance().value)

        self.match("RBRACE", "'}'")
        return EvidenceGroup(
            id=ident.value,
            items=tuple(items),
            lr=lr,
            coverage=coverage,
            rationale=rationale,
            conditions_on=tuple(conditions),
            lr_label=label,
        )

    def parse_item(self, base: Path, evidence: list[EvidenceItem]) -> str:
        self.match_kw("evidence")
        ident = self.match_ident()
        # 全案路径指向最近一次出现，重复定义与重复计数都报告在后一处
        self.spans[("evidence", ident.value)] = ident.span
        self.remember(base + ("evidence", ident.value), ident.span)
        description = self.match("STRING", "证据描述字符串").value

        kind = EvidenceKind.OTHER
        if self.peek_kw("kind"):
            self.advance()
            tok = self.match("IDENT", "证据类型")
            try:
                kind = EvidenceKind(tok.value)
            except ValueError:
                known = ", ".join(k.value for k in EvidenceKind)
                raise error("UNKNOWN_KIND", f"未知证据类型 '{tok.value}'，可用: {known}", tok.span)

        item = EvidenceItem(id=ident.value, description=description, kind=kind)
        # 同一主张内完全相同的再次出现视为引用，不是新定义
        if item not in evidence:
            evidence.append(item)
        return item.id

    # === 语义诊断 ===

    def span_for(self, path: Path) -> SourceSpan:
        """找到路径（或其最长前缀）记录的位置"""
        for n in range(len(path), 0, -1):
            span = self.spans.get(path[:n])
            if span is not None:
                return span
        return self.spans.get(("case",), SourceSpan(1, 1, 0))


def parse_case(
    source: str,
    scale: Optional[ScaleTable] = None,
    validate: bool = True,
) -> ParseResult:
    """解析 .case 源文本

    Args:
        source: UTF-8 文本
        scale: 语言刻度，默认取配置
        validate: 是否对结构完整的案件运行 validate_case

    Returns:
        成功时带 CaseSpec（默认值已填充）；失败时至少一条带位置的错误诊断
    """
    if scale is None:
        from ..settings import get_settings

        scale = get_settings().scale.labels

    parser = Parser(source, scale)
    try:
        case = parser.parse()
    except ParseFailure as failure:
        return ParseResult(None, (failure.diagnostic,))

    if not validate:
        return ParseResult(case)

    report = validate_case(case)
    if report.ok:
        return ParseResult(case)

    diagnostics = tuple(
        ParseDiagnostic(Severity.ERROR, v.code.value, v.message, parser.span_for(v.path))
        for v in report
    )
    return ParseResult(None, diagnostics)
