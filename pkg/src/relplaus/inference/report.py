"""贡献报告 - 每个主张的对数赔率分解

不变式：每个主张的 total 与 prior + Σ effective + occam 在存储的实数上完全相等
（total 由同一组贡献经 combine 求得）。
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from ..core.model import StandardOfProof
from .logodds import LogOdds


class Finding(Enum):
    """证明标准判定"""
    MET = "met"
    NOT_MET = "not_met"


@dataclass(frozen=True)
class GroupContribution:
    """一个证据组的贡献"""
    group_id: str
    items: tuple[str, ...]
    lr: float
    coverage: float
    raw: LogOdds          # ln lr
    effective: LogOdds    # c · ln lr
    rationale: str = ""
    conditions_on: tuple[str, ...] = ()
    lr_label: Optional[str] = None


@dataclass(frozen=True)
class ClaimContribution:
    """一个主张的分解"""
    claim_id: str
    claimant_id: str
    opposing_id: str
    prior: LogOdds
    groups: tuple[GroupContribution, ...]
    occam: LogOdds
    total: LogOdds

    def contributions(self) -> tuple[LogOdds, ...]:
        """按报告顺序列出所有加数：先验、各组有效贡献、Occam 因子"""
        return (self.prior, *(g.effective for g in self.groups), self.occam)


@dataclass(frozen=True)
class ContributionReport:
    """案件级报告；combined 仅供参考，不参与判定"""
    case_id: str
    claims: tuple[ClaimContribution, ...]
    combined: LogOdds

    def claim(self, claim_id: str) -> ClaimContribution:
        for c in self.claims:
            if c.claim_id == claim_id:
                return c
        raise KeyError(claim_id)


@dataclass(frozen=True)
class Evaluation:
    """一次完整评估：贡献报告 + 逐主张判定 + 朴素联合概率"""
    report: ContributionReport
    standard: StandardOfProof
    findings: tuple[tuple[str, Finding], ...]
    naive_joint_probability: float   # Π p(claim)，仅用于解释合取悖论

    @property
    def all_met(self) -> bool:
        return all(f is Finding.MET for _, f in self.findings)

    def finding(self, claim_id: str) -> Finding:
        return dict(self.findings)[claim_id]
