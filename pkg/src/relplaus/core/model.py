"""领域模型 - 案件、假设、证据与证明标准

所有类型构造后不可变（frozen dataclass + tuple），可在并发上下文中安全共享。
数值评估只挂在证据组上：单个证据条目是原子，逐条评估用单元素组表达。
"""

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional


class EvidenceKind(Enum):
    """证据类型"""
    TESTIMONY = "testimony"        # 证言
    PHYSICAL = "physical"          # 物证
    DOCUMENTARY = "documentary"    # 书证
    OTHER = "other"                # 其他


class AssumptionKind(Enum):
    """背景知识类型"""
    GENERAL_KNOWLEDGE = "general_knowledge"  # 一般经验知识
    STIPULATION = "stipulation"              # 双方约定的事实


class StandardName(Enum):
    """证明标准名称"""
    PREPONDERANCE = "preponderance"                      # 优势证据
    CLEAR_AND_CONVINCING = "clear_and_convincing"        # 清楚且令人信服
    BEYOND_REASONABLE_DOUBT = "beyond_reasonable_doubt"  # 排除合理怀疑
    CUSTOM = "custom"                                    # 自定义阈值


DEFAULT_STANDARD = StandardName.PREPONDERANCE

# .case 文本中的标识符与保留字
IDENTIFIER = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
KEYWORDS = frozenset({
    "case", "question", "standard", "assume", "stipulated",
    "claim", "for", "against", "complexity", "assuming", "prior_odds",
    "group", "coverage", "lr", "label", "because", "given",
    "evidence", "kind", "inf",
})


def is_identifier(name: str) -> bool:
    """能否作为标识符写进 .case 文本"""
    return IDENTIFIER.fullmatch(name) is not None and name not in KEYWORDS


@dataclass(frozen=True)
class BackgroundAssumption:
    """背景知识 K 中的一条（不携带数值权重）"""
    id: str
    text: str
    kind: AssumptionKind = AssumptionKind.GENERAL_KNOWLEDGE

    @property
    def is_stipulation(self) -> bool:
        return self.kind is AssumptionKind.STIPULATION


@dataclass(frozen=True)
class Hypothesis:
    """一方提出的解释"""
    id: str
    statement: str                        # 必须是实质性的替代解释，而非单纯否定
    complexity: float = 1.0               # Occam 惩罚权重 F，≥ 1
    assumptions: tuple[str, ...] = ()     # 该解释所需的假设（仅回显）


@dataclass(frozen=True)
class EvidenceItem:
    """证据条目（原子，不带数值）"""
    id: str
    description: str
    kind: EvidenceKind = EvidenceKind.OTHER


@dataclass(frozen=True)
class EvidenceGroup:
    """联合评估的一组证据：一个似然比 + 一个覆盖度指数"""
    id: str
    items: tuple[str, ...]                 # 证据条目 id
    lr: float                              # P(E|H_P,K) / P(E|H_D,K)，可为 0 或 inf
    coverage: float = 1.0                  # c ∈ (0, 1]
    rationale: str = ""
    conditions_on: tuple[str, ...] = ()    # 背景知识 id
    lr_label: Optional[str] = None         # 来自语言刻度时保留标签，便于往返


@dataclass(frozen=True)
class Claim:
    """一个待证主张：主张方解释 vs 对立解释"""
    id: str
    claimant_hypothesis: Hypothesis
    opposing_hypothesis: Hypothesis
    prior_odds: float = 1.0                # 正实数，或 0 / inf 两个特殊状态
    groups: tuple[EvidenceGroup, ...] = ()
    evidence: tuple[EvidenceItem, ...] = ()

    def group(self, group_id: str) -> Optional[EvidenceGroup]:
        """按 id 查找证据组"""
        for g in self.groups:
            if g.id == group_id:
                return g
        return None

    def item(self, item_id: str) -> Optional[EvidenceItem]:
        """按 id 查找证据条目定义"""
        for e in self.evidence:
            if e.id == item_id:
                return e
        return None


@dataclass(frozen=True)
class StandardOfProof:
    """证明标准：后验赔率必须严格大于阈值"""
    name: StandardName
    threshold_odds: float

    def __post_init__(self):
        if not self.threshold_odds > 0:
            raise ValueError(f"证明标准阈值必须为正数: {self.threshold_odds}")


@dataclass(frozen=True)
class CaseSpec:
    """完整案件：问题、背景知识、主张、证明标准"""
    case_id: str
    question: str = ""
    background: tuple[BackgroundAssumption, ...] = ()
    claims: tuple[Claim, ...] = field(default_factory=tuple)
    standard: StandardName = DEFAULT_STANDARD

    def claim(self, claim_id: str) -> Optional[Claim]:
        """按 id 查找主张"""
        for c in self.claims:
            if c.id == claim_id:
                return c
        return None

    def assumption(self, assumption_id: str) -> Optional[BackgroundAssumption]:
        """按 id 查找背景知识"""
        for a in self.background:
            if a.id == assumption_id:
                return a
        return None


def pairwise_interactions(actors: int) -> int:
    """n 个互不相关的行为人产生的两两交互数 n(n-1)/2

    可作为复杂度惩罚 F 的下界，由用户在案件外部计算后写入 complexity；
    引擎本身只消费数字。
    """
    if actors < 0:
        raise ValueError(f"行为人数不能为负: {actors}")
    return actors * (actors - 1) // 2
