"""推理引擎 - 后验赔率 = 先验赔率 × 各组（折扣后）似然比 × Occam 净因子

全部运算在自然对数空间进行；评估是 CaseSpec 的纯函数。
"""

import logging
import math

from ..core.model import CaseSpec, Claim, EvidenceGroup, StandardOfProof
from ..errors import InferenceError
from .logodds import LogOdds, OddsState, combine, probability_from_odds
from .report import (
    ClaimContribution,
    ContributionReport,
    Evaluation,
    Finding,
    GroupContribution,
)

logger = logging.getLogger(__name__)


def group_effective_log_lr(group: EvidenceGroup) -> LogOdds:
    """证据组的有效对数似然比 c·ln(lr)

    Raises:
        InferenceError: lr ∈ {0, ∞} 且 c < 1（NONFINITE_WITH_COVERAGE）
    """
    if math.isnan(group.lr) or group.lr < 0:
        raise InferenceError(f"证据组 '{group.id}' 的似然比非法: {group.lr}", code="NEGATIVE_LR")
    if not (0 < group.coverage <= 1):
        raise InferenceError(
            f"证据组 '{group.id}' 的覆盖度越界: {group.coverage}",
            code="COVERAGE_OUT_OF_RANGE",
        )
    return LogOdds.from_odds(group.lr).scaled(group.coverage)


def occam_net_log_factor(claimant_complexity: float, opposing_complexity: float) -> LogOdds:
    """Occam 净因子 ln(F_opposing / F_claimant)

    惩罚对立方乘以赔率，惩罚主张方除以赔率；只有比值起作用。
    """
    for f in (claimant_complexity, opposing_complexity):
        if not (math.isfinite(f) and f >= 1):
            raise InferenceError(f"复杂度必须是 ≥ 1 的有限数: {f}", code="COMPLEXITY_LT_ONE")
    return LogOdds.finite(math.log(opposing_complexity / claimant_complexity))


def _prior_log_odds(claim: Claim) -> LogOdds:
    try:
        return LogOdds.from_odds(claim.prior_odds)
    except ValueError as e:
        raise InferenceError(f"主张 '{claim.id}' 的先验赔率非法: {e}", code="NEGATIVE_PRIOR") from e


def _explain_group(group: EvidenceGroup) -> GroupContribution:
    effective = group_effective_log_lr(group)
    return GroupContribution(
        group_id=group.id,
        items=group.items,
        lr=group.lr,
        coverage=group.coverage,
        raw=LogOdds.from_odds(group.lr),
        effective=effective,
        rationale=group.rationale,
        conditions_on=group.conditions_on,
        lr_label=group.lr_label,
    )


def _explain_claim(claim: Claim) -> ClaimContribution:
    prior = _prior_log_odds(claim)
    groups = tuple(_explain_group(g) for g in claim.groups)
    occam = occam_net_log_factor(
        claim.claimant_hypothesis.complexity,
        claim.opposing_hypothesis.complexity,
    )
    total = combine((prior, *(g.effective for g in groups), occam))
    return ClaimContribution(
        claim_id=claim.id,
        claimant_id=claim.claimant_hypothesis.id,
        opposing_id=claim.opposing_hypothesis.id,
        prior=prior,
        groups=groups,
        occam=occam,
        total=total,
    )


def claim_posterior_log_odds(claim: Claim) -> LogOdds:
    """主张的后验对数赔率

    ln(prior) + Σ c·ln(lr) + ln(F_opp / F_claim)；没有证据组且先验为 1 时为 finite(0)。

    Raises:
        InferenceError: CONTRADICTORY_CONCLUSIVES，以及未通过校验的输入
    """
    return _explain_claim(claim).total


def case_combined_log_odds(case: CaseSpec) -> tuple[dict[str, LogOdds], LogOdds]:
    """逐主张后验与合并赔率

    合并赔率 = Σ 主张对数赔率，仅供参考；证明标准逐主张适用。

    Returns:
        (主张 id → 后验对数赔率（保持案件顺序）, 合并对数赔率)
    """
    per_claim = {c.id: claim_posterior_log_odds(c) for c in case.claims}
    return per_claim, combine(per_claim.values())


def apply_standard(odds: LogOdds, standard: StandardOfProof) -> Finding:
    """应用证明标准：赔率严格大于阈值才算满足（平局不满足）"""
    if odds.state is OddsState.ZERO:
        return Finding.NOT_MET
    if odds.state is OddsState.INFINITE:
        return Finding.MET
    if odds.value > math.log(standard.threshold_odds):
        return Finding.MET
    return Finding.NOT_MET


def explain(case: CaseSpec) -> ContributionReport:
    """生成贡献报告，顺序与案件一致，合计与顺序无关"""
    claims = tuple(_explain_claim(c) for c in case.claims)
    combined = combine(c.total for c in claims)
    logger.debug("案件 %s: %d 个主张, 合并 ln 赔率 %s", case.case_id, len(claims), combined.ln)
    return ContributionReport(case_id=case.case_id, claims=claims, combined=combined)


def evaluate(case: CaseSpec, standard: StandardOfProof) -> Evaluation:
    """完整评估：贡献报告 + 逐主张判定 + 朴素联合概率 Π p"""
    report = explain(case)
    findings = tuple((c.claim_id, apply_standard(c.total, standard)) for c in report.claims)
    naive = math.prod(probability_from_odds(c.total) for c in report.claims)
    return Evaluation(
        report=report,
        standard=standard,
        findings=findings,
        naive_joint_probability=naive,
    )
