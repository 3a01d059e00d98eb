"""结构校验 - 报告案件中的所有问题，从不抛出

校验通过的案件在推理模块中不会出错（全函数契约），因此决定性证据的
覆盖度折扣与 0/∞ 冲突也在这里拦截。
"""

import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .model import CaseSpec, Claim, EvidenceGroup, Hypothesis, is_identifier


class ViolationCode(Enum):
    """违规码"""
    DUPLICATE_ITEM = "DUPLICATE_ITEM"                  # 证据条目 id 重复定义
    ITEM_IN_TWO_GROUPS = "ITEM_IN_TWO_GROUPS"          # 同一条目出现在多个组（重复计数）
    COVERAGE_OUT_OF_RANGE = "COVERAGE_OUT_OF_RANGE"    # c ∉ (0, 1]
    NEGATIVE_LR = "NEGATIVE_LR"
    COMPLEXITY_LT_ONE = "COMPLEXITY_LT_ONE"
    EMPTY_CLAIM = "EMPTY_CLAIM"                        # 案件没有任何主张
    DUPLICATE_CLAIM = "DUPLICATE_CLAIM"
    DUPLICATE_GROUP = "DUPLICATE_GROUP"
    DUPLICATE_ASSUMPTION = "DUPLICATE_ASSUMPTION"
    EMPTY_GROUP = "EMPTY_GROUP"
    EMPTY_STATEMENT = "EMPTY_STATEMENT"
    UNKNOWN_ITEM = "UNKNOWN_ITEM"                      # 组引用了未定义的条目
    UNGROUPED_ITEM = "UNGROUPED_ITEM"                  # 条目不属于任何组
    UNKNOWN_ASSUMPTION = "UNKNOWN_ASSUMPTION"          # conditions_on 引用了未知背景知识
    STIPULATION_IS_EVIDENCE = "STIPULATION_IS_EVIDENCE"
    NEGATIVE_PRIOR = "NEGATIVE_PRIOR"
    NONFINITE_VALUE = "NONFINITE_VALUE"                # NaN 或不允许的 inf
    NONFINITE_WITH_COVERAGE = "NONFINITE_WITH_COVERAGE"
    CONTRADICTORY_CONCLUSIVES = "CONTRADICTORY_CONCLUSIVES"
    INVALID_IDENTIFIER = "INVALID_IDENTIFIER"          # id 不能作为标识符写回 .case 文本


@dataclass(frozen=True)
class Violation:
    """一条违规

    path 指向违规位置，例如 ("claim", "c1", "group", "g1", "coverage")，
    解析器据此把违规映射回源码位置。
    """
    code: ViolationCode
    subject: str
    path: tuple[str, ...]
    message: str

    def sort_key(self) -> tuple:
        return (self.code.value, self.subject, self.path, self.message)


@dataclass(frozen=True)
class ValidationReport:
    """校验报告；为空当且仅当案件可评估"""
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> list[ViolationCode]:
        return [v.code for v in self.violations]

    def __iter__(self) -> Iterator[Violation]:
        return iter(self.violations)

    def __len__(self) -> int:
        return len(self.violations)


def validate_case(case: CaseSpec) -> ValidationReport:
    """校验案件结构

    结果与主张、组、条目的排列顺序无关：违规集合去重后按固定键排序。
    """
    found: set[Violation] = set()

    def report(code: ViolationCode, subject: str, path: tuple[str, ...], message: str) -> None:
        found.add(Violation(code, subject, path, message))

    def check_id(ident: str, path: tuple[str, ...]) -> None:
        if not is_identifier(ident):
            report(
                ViolationCode.INVALID_IDENTIFIER, ident, path,
                f"'{ident}' 不能作为标识符写回 .case 文本",
            )

    # === 标识符 ===
    for a in case.background:
        check_id(a.id, ("assume", a.id))
    for c in case.claims:
        base = ("claim", c.id)
        check_id(c.id, base)
        check_id(c.claimant_hypothesis.id, base + ("for",))
        check_id(c.opposing_hypothesis.id, base + ("against",))
        for g in c.groups:
            check_id(g.id, base + ("group", g.id))
        for e in c.evidence:
            check_id(e.id, ("evidence", e.id))

    if not case.claims:
        report(ViolationCode.EMPTY_CLAIM, case.case_id, ("case",), "案件至少需要一个主张")

    # === 背景知识 ===
    assumption_counts = Counter(a.id for a in case.background)
    for aid, count in assumption_counts.items():
        if count > 1:
            report(ViolationCode.DUPLICATE_ASSUMPTION, aid, ("assume", aid), f"背景知识 '{aid}' 重复定义")
    assumption_ids = set(assumption_counts)
    stipulation_ids = {a.id for a in case.background if a.is_stipulation}

    claim_counts = Counter(c.id for c in case.claims)
    for cid, count in claim_counts.items():
        if count > 1:
            report(ViolationCode.DUPLICATE_CLAIM, cid, ("claim", cid), f"主张 '{cid}' 重复定义")

    # === 证据条目：全案唯一 ===
    definitions = Counter(e.id for c in case.claims for e in c.evidence)
    for eid, count in definitions.items():
        if count > 1:
            report(ViolationCode.DUPLICATE_ITEM, eid, ("evidence", eid), f"证据条目 '{eid}' 重复定义")
        if eid in stipulation_ids:
            report(
                ViolationCode.STIPULATION_IS_EVIDENCE, eid, ("assume", eid),
                f"'{eid}' 既是约定事实又是证据条目",
            )

    # 条目 → 所在的 (claim, group)
    placements: dict[str, set[tuple[str, str]]] = defaultdict(set)
    for claim in case.claims:
        for group in claim.groups:
            for eid in group.items:
                placements[eid].add((claim.id, group.id))
    for eid, where in placements.items():
        if len(where) > 1:
            groups = ", ".join(f"{c}/{g}" for c, g in sorted(where))
            report(
                ViolationCode.ITEM_IN_TWO_GROUPS, eid, ("evidence", eid),
                f"证据条目 '{eid}' 出现在多个组中（{groups}），会被重复计数",
            )

    for claim in case.claims:
        _validate_claim(claim, assumption_ids, report)

    return ValidationReport(tuple(sorted(found, key=Violation.sort_key)))


def _validate_claim(claim: Claim, assumption_ids: set[str], report) -> None:
    base = ("claim", claim.id)

    _validate_hypothesis(claim.claimant_hypothesis, base + ("for",), report)
    _validate_hypothesis(claim.opposing_hypothesis, base + ("against",), report)

    prior = claim.prior_odds
    if math.isnan(prior):
        report(ViolationCode.NONFINITE_VALUE, claim.id, base + ("prior_odds",), "先验赔率不是数")
    elif prior < 0:
        report(ViolationCode.NEGATIVE_PRIOR, claim.id, base + ("prior_odds",), f"先验赔率为负: {prior}")

    group_counts = Counter(g.id for g in claim.groups)
    for gid, count in group_counts.items():
        if count > 1:
            report(
                ViolationCode.DUPLICATE_GROUP, gid, base + ("group", gid),
                f"主张 '{claim.id}' 中证据组 '{gid}' 重复定义",
            )

    defined = {e.id for e in claim.evidence}
    grouped: set[str] = set()
    for group in claim.groups:
        _validate_group(claim, group, defined, assumption_ids, report)
        grouped.update(group.items)

    for eid in sorted(defined - grouped):
        report(
            ViolationCode.UNGROUPED_ITEM, eid, base + ("evidence", eid),
            f"证据条目 '{eid}' 不属于任何证据组",
        )

    # 决定性贡献：0 与 ∞ 同时出现时 0·∞ 无定义
    zero = prior == 0 or any(g.lr == 0 for g in claim.groups)
    infinite = prior == math.inf or any(g.lr == math.inf for g in claim.groups)
    if zero and infinite:
        report(
            ViolationCode.CONTRADICTORY_CONCLUSIVES, claim.id, base,
            f"主张 '{claim.id}' 同时含有决定性支持（∞）与决定性反驳（0）",
        )


def _validate_hypothesis(hypothesis: Hypothesis, path: tuple[str, ...], report) -> None:
    if not hypothesis.statement.strip():
        report(
            ViolationCode.EMPTY_STATEMENT, hypothesis.id, path,
            f"假设 '{hypothesis.id}' 必须给出实质性陈述",
        )
    complexity = hypothesis.complexity
    if math.isnan(complexity) or math.isinf(complexity):
        report(ViolationCode.NONFINITE_VALUE, hypothesis.id, path + ("complexity",), "复杂度必须是有限数")
    elif complexity < 1:
        report(
            ViolationCode.COMPLEXITY_LT_ONE, hypothesis.id, path + ("complexity",),
            f"复杂度必须 ≥ 1: {complexity}",
        )


def _validate_group(
    claim: Claim,
    group: EvidenceGroup,
    defined: set[str],
    assumption_ids: set[str],
    report,
) -> None:
    path = ("claim", claim.id, "group", group.id)

    if not group.items:
        report(ViolationCode.EMPTY_GROUP, group.id, path, f"证据组 '{group.id}' 没有证据条目")

    for eid, count in Counter(group.items).items():
        if count > 1:
            report(
                ViolationCode.DUPLICATE_ITEM, eid, ("evidence", eid),
                f"证据条目 '{eid}' 在组 '{group.id}' 中重复列出",
            )
        if eid not in defined:
            report(
                ViolationCode.UNKNOWN_ITEM, eid, path,
                f"证据组 '{group.id}' 引用了未定义的条目 '{eid}'",
            )

    lr = group.lr
    lr_ok = True
    if math.isnan(lr):
        report(ViolationCode.NONFINITE_VALUE, group.id, path + ("lr",), "似然比不是数")
        lr_ok = False
    elif lr < 0:
        report(ViolationCode.NEGATIVE_LR, group.id, path + ("lr",), f"似然比为负: {lr}")
        lr_ok = False

    c = group.coverage
    if not (0 < c <= 1):
        report(
            ViolationCode.COVERAGE_OUT_OF_RANGE, group.id, path + ("coverage",),
            f"覆盖度必须在 (0, 1] 内: {c}",
        )
    elif lr_ok and c < 1 and lr in (0.0, math.inf):
        report(
            ViolationCode.NONFINITE_WITH_COVERAGE, group.id, path + ("coverage",),
            f"决定性证据（lr={lr}）不能做覆盖度折扣",
        )

    for aid in group.conditions_on:
        if aid not in assumption_ids:
            report(
                ViolationCode.UNKNOWN_ASSUMPTION, aid, path,
                f"证据组 '{group.id}' 引用了未知背景知识 '{aid}'",
            )
