"""敏感性扫描 - 替换一个参数后逐行重新评估

目标引用语法：
    <claim>.prior_odds
    <claim>.<group>.lr | <claim>.<group>.coverage
    <claim>.for.complexity | <claim>.against.complexity
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from typing import Literal, Optional, Sequence

from ..core.model import CaseSpec, Claim, StandardOfProof
from ..core.validation import validate_case
from ..errors import SweepError
from .engine import apply_standard, claim_posterior_log_odds
from .logodds import LogOdds
from .report import Finding

Parameter = Literal["prior_odds", "lr", "coverage", "complexity"]


@dataclass(frozen=True)
class TargetRef:
    """扫描目标"""
    claim_id: str
    parameter: Parameter
    group_id: Optional[str] = None
    side: Optional[Literal["for", "against"]] = None

    def __str__(self) -> str:
        middle = self.group_id or self.side
        if middle:
            return f"{self.claim_id}.{middle}.{self.parameter}"
        return f"{self.claim_id}.{self.parameter}"


@dataclass(frozen=True)
class SweepRow:
    """一行：参数值 → 各主张后验与判定"""
    value: float
    claim_odds: tuple[tuple[str, LogOdds], ...]
    findings: tuple[tuple[str, Finding], ...]


@dataclass(frozen=True)
class SweepTable:
    """扫描结果，行序与输入取值顺序一致"""
    case_id: str
    target: TargetRef
    rows: tuple[SweepRow, ...]


def parse_target(text: str) -> TargetRef:
    """解析目标引用

    Raises:
        SweepError: UNKNOWN_TARGET
    """
    parts = text.strip().split(".")
    if len(parts) == 2 and parts[1] == "prior_odds":
        return TargetRef(claim_id=parts[0], parameter="prior_odds")
    if len(parts) == 3:
        claim_id, middle, parameter = parts
        if middle in ("for", "against") and parameter == "complexity":
            return TargetRef(claim_id=claim_id, parameter="complexity", side=middle)  # type: ignore[arg-type]
        if middle not in ("for", "against") and parameter in ("lr", "coverage"):
            return TargetRef(claim_id=claim_id, parameter=parameter, group_id=middle)  # type: ignore[arg-type]
    raise SweepError(
        f"无法识别的扫描目标 '{text}'，应为 <claim>.prior_odds、<claim>.<group>.lr|coverage "
        "或 <claim>.for|against.complexity",
        code="UNKNOWN_TARGET",
    )


def substitute(case: CaseSpec, target: TargetRef, value: float) -> CaseSpec:
    """返回替换了目标参数的新案件（原案件不变）

    Raises:
        SweepError: UNKNOWN_TARGET，或替换后的案件不能通过校验（DOMAIN）
    """
    claim = case.claim(target.claim_id)
    if claim is None:
        raise SweepError(f"案件中没有主张 '{target.claim_id}'", code="UNKNOWN_TARGET")

    new_claim = _substitute_claim(claim, target, float(value))
    new_case = replace(
        case,
        claims=tuple(new_claim if c.id == claim.id else c for c in case.claims),
    )

    report = validate_case(new_case)
    if not report.ok:
        details = "; ".join(v.message for v in report)
        raise SweepError(f"{target} = {value} 超出参数定义域: {details}", code="DOMAIN")
    return new_case


def _substitute_claim(claim: Claim, target: TargetRef, value: float) -> Claim:
    if target.parameter == "prior_odds":
        return replace(claim, prior_odds=value)

    if target.parameter == "complexity":
        if target.side == "for":
            return replace(claim, claimant_hypothesis=replace(claim.claimant_hypothesis, complexity=value))
        return replace(claim, opposing_hypothesis=replace(claim.opposing_hypothesis, complexity=value))

    group = claim.group(target.group_id or "")
    if group is None:
        raise SweepError(
            f"主张 '{claim.id}' 中没有证据组 '{target.group_id}'",
            code="UNKNOWN_TARGET",
        )
    if target.parameter == "lr":
        # 替换数值后不再对应语言标签
        new_group = replace(group, lr=value, lr_label=None)
    else:
        new_group = replace(group, coverage=value)
    return replace(claim, groups=tuple(new_group if g.id == group.id else g for g in claim.groups))


def _evaluate_row(case: CaseSpec, standard: StandardOfProof, value: float) -> SweepRow:
    odds = tuple((c.id, claim_posterior_log_odds(c)) for c in case.claims)
    findings = tuple((cid, apply_standard(o, standard)) for cid, o in odds)
    return SweepRow(value=value, claim_odds=odds, findings=findings)


def sweep(
    case: CaseSpec,
    target: TargetRef,
    values: Sequence[float],
    standard: StandardOfProof,
    max_workers: Optional[int] = None,
) -> SweepTable:
    """对每个取值做一次全新评估

    所有替换先行完成（定义域错误在求值前抛出），各行随后可并发求值；
    ThreadPoolExecutor.map 保证输出顺序与输入一致。
    """
    cases = [(float(v), substitute(case, target, v)) for v in values]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        rows = tuple(pool.map(lambda vc: _evaluate_row(vc[1], standard, vc[0]), cases))
    return SweepTable(case_id=case.case_id, target=target, rows=rows)
