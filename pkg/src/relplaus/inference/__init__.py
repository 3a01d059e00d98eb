"""推理模块 - 对数赔率、后验计算、贡献报告与敏感性扫描
"""

from .logodds import LogOdds, OddsState, combine, probability_from_odds

from .engine import (
    apply_standard,
    case_combined_log_odds,
    claim_posterior_log_odds,
    evaluate,
    explain,
    group_effective_log_lr,
    occam_net_log_factor,
)

from .report import (
    ClaimContribution,
    ContributionReport,
    Evaluation,
    Finding,
    GroupContribution,
)

from .sweep import SweepRow, SweepTable, TargetRef, parse_target, substitute, sweep

__all__ = [
    "LogOdds",
    "OddsState",
    "combine",
    "probability_from_odds",
    "apply_standard",
    "case_combined_log_odds",
    "claim_posterior_log_odds",
    "evaluate",
    "explain",
    "group_effective_log_lr",
    "occam_net_log_factor",
    "ClaimContribution",
    "ContributionReport",
    "Evaluation",
    "Finding",
    "GroupContribution",
    "SweepRow",
    "SweepTable",
    "TargetRef",
    "parse_target",
    "substitute",
    "sweep",
]
