"""核心模块 - 领域模型、结构校验与语言刻度
"""

from .model import (
    AssumptionKind,
    BackgroundAssumption,
    CaseSpec,
    Claim,
    EvidenceGroup,
    EvidenceItem,
    EvidenceKind,
    Hypothesis,
    StandardName,
    StandardOfProof,
    pairwise_interactions,
)

from .validation import (
    ValidationReport,
    Violation,
    ViolationCode,
    validate_case,
)

from .scale import ScaleTable, qualitative_to_lr

__all__ = [
    "AssumptionKind",
    "BackgroundAssumption",
    "CaseSpec",
    "Claim",
    "EvidenceGroup",
    "EvidenceItem",
    "EvidenceKind",
    "Hypothesis",
    "StandardName",
    "StandardOfProof",
    "pairwise_interactions",
    "ValidationReport",
    "Violation",
    "ViolationCode",
    "validate_case",
    "ScaleTable",
    "qualitative_to_lr",
]
