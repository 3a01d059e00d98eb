"""规范序列化 - CaseSpec → .case 文本

输出省略所有默认值（complexity 1、prior_odds 1、coverage 1、kind other、standard preponderance），
条目定义写在首次引用它的组内。对任意有效案件：

    parse_case(serialize_case(c)).case == canonical_form(c)

解析器产出的案件本身已是规范形式，因此对它们往返是恒等。
"""

import math
from dataclasses import replace

from ..core.model import (
    DEFAULT_STANDARD,
    CaseSpec,
    Claim,
    EvidenceGroup,
    EvidenceKind,
    Hypothesis,
)

INDENT = "  "

_STRING_ESCAPES = str.maketrans({"\\": "\\\\", '"': '\\"', "\n": "\\n", "\t": "\\t"})


def format_number(value: float) -> str:
    """数字的规范文本：inf、整数形式，或 repr（最短可精确往返的表示）"""
    value = float(value)
    if value == math.inf:
        return "inf"
    if not math.isfinite(value):
        raise ValueError(f"{value} 不能序列化")
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def quote(text: str) -> str:
    return '"' + text.translate(_STRING_ESCAPES) + '"'


def canonical_form(case: CaseSpec) -> CaseSpec:
    """把每个主张的条目定义按组内首次出现的顺序重排

    不属于任何组的条目排在最后（这类案件本身通不过校验）。
    """
    return replace(case, claims=tuple(_canonical_claim(c) for c in case.claims))


def _canonical_claim(claim: Claim) -> Claim:
    order: dict[str, int] = {}
    for group in claim.groups:
        for eid in group.items:
            order.setdefault(eid, len(order))
    evidence = sorted(claim.evidence, key=lambda e: order.get(e.id, len(order)))
    return replace(claim, evidence=tuple(evidence))


def serialize_case(case: CaseSpec) -> str:
    """输出规范 .case 文本，以单个换行结尾"""
    lines = [f"case {quote(case.case_id)}"]
    if case.question:
        lines.append(f"question {quote(case.question)}")
    if case.standard is not DEFAULT_STANDARD:
        lines.append(f"standard {case.standard.value}")
    for a in case.background:
        suffix = " stipulated" if a.is_stipulation else ""
        lines.append(f"assume {a.id} {quote(a.text)}{suffix}")

    for claim in case.claims:
        lines.append("")
        lines.extend(_claim_lines(claim))

    return "\n".join(lines) + "\n"


def _hypothesis_line(side: str, h: Hypothesis) -> str:
    parts = [side, h.id, quote(h.statement)]
    if h.complexity != 1:
        parts += ["complexity", format_number(h.complexity)]
    for text in h.assumptions:
        parts += ["assuming", quote(text)]
    return INDENT + " ".join(parts)


def _claim_lines(claim: Claim) -> list[str]:
    lines = [
        f"claim {claim.id} {{",
        _hypothesis_line("for", claim.claimant_hypothesis),
        _hypothesis_line("against", claim.opposing_hypothesis),
    ]
    if claim.prior_odds != 1:
        lines.append(f"{INDENT}prior_odds {format_number(claim.prior_odds)}")
    for group in claim.groups:
        lines.extend(_group_lines(claim, group))
    lines.append("}")
    return lines


def _group_lines(claim: Claim, group: EvidenceGroup) -> list[str]:
    inner = INDENT * 2
    header = f"{INDENT}group {group.id}"
    if group.coverage != 1:
        header += f" coverage {format_number(group.coverage)}"
    lines = [header + " {"]

    for eid in group.items:
        item = claim.item(eid)
        description = item.description if item else ""
        line = f"{inner}evidence {eid} {quote(description)}"
        if item is not None and item.kind is not EvidenceKind.OTHER:
            line += f" kind {item.kind.value}"
        lines.append(line)

    if group.lr_label is not None:
        lines.append(f"{inner}lr label {quote(group.lr_label)}")
    else:
        lines.append(f"{inner}lr {format_number(group.lr)}")
    if group.rationale:
        lines.append(f"{inner}because {quote(group.rationale)}")
    if group.conditions_on:
        lines.append(f"{inner}given {' '.join(group.conditions_on)}")
    lines.append(INDENT + "}")
    return lines
