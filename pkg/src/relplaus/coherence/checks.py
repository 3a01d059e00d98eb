"""一致性检查 - 用精确 oracle 与随机探针检验引擎的性质

每个检查返回 CheckResult；witnesses 为空当且仅当通过。检查本身从不抛出：
评估中的异常会变成一条见证。
"""

import logging
import math
from dataclasses import dataclass, replace
from functools import reduce
from typing import Callable, Mapping, Optional, Sequence

import numpy as np

from ..casespec import canonical_form, parse_case, serialize_case
from ..core.model import CaseSpec, Claim, EvidenceGroup, EvidenceItem
from ..core.scale import ScaleTable
from ..core.validation import ViolationCode, validate_case
from ..errors import OracleError, PlausError
from ..inference.engine import claim_posterior_log_odds, explain
from ..inference.logodds import LogOdds, combine
from .oracle import marginal, marginal_table, observed_assignment, oracle_lr
from .world import HYPOTHESES, DiscreteWorld

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-12

Conditional = Callable[[DiscreteWorld, str, str, Mapping[str, str]], float]


@dataclass(frozen=True)
class Witness:
    """反例：输入描述 + 观察值与期望值"""
    code: str
    description: str
    observed: str = ""
    expected: str = ""


@dataclass(frozen=True)
class CheckResult:
    """一个检查的结果"""
    name: str
    witnesses: tuple[Witness, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.witnesses


def _show(odds: LogOdds) -> str:
    if odds.is_finite:
        return f"ln={odds.value!r}"
    return odds.state.value


# === 链式法则 ===

def sequential_conditional(
    world: DiscreteWorld, hypothesis: str, var_id: str, given: Mapping[str, str]
) -> float:
    """P(var = 观察值 | given)；given 的质量为 0 时返回 0"""
    base = marginal(world, hypothesis, given)
    if base == 0:
        return 0.0
    joint = marginal(world, hypothesis, {**given, var_id: world.observed[var_id]})
    return joint / base


def check_chain_rule(
    world: DiscreteWorld,
    orderings: Sequence[Sequence[str]],
    conditional: Optional[Conditional] = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckResult:
    """验证观察集的联合质量等于每种顺序下的条件概率连乘（相对容差），
    并验证全观察集的 oracle 似然比不随变量重排而变化

    Args:
        orderings: 观察变量的若干排列
        conditional: 条件概率的计算方式，测试中可注入损坏的实现
    """
    conditional = conditional or sequential_conditional
    observed = world.observed_ids()
    witnesses: list[Witness] = []

    for ordering in orderings:
        ordering = tuple(ordering)
        if sorted(ordering) != sorted(observed):
            witnesses.append(Witness(
                "BAD_ORDERING", f"{list(ordering)} 不是观察变量的排列",
                observed=" ".join(ordering), expected=" ".join(observed),
            ))
            continue

        for hypothesis in HYPOTHESES:
            joint = marginal(world, hypothesis, world.observed)
            product = 1.0
            given: dict[str, str] = {}
            for var_id in ordering:
                product *= conditional(world, hypothesis, var_id, given)
                given[var_id] = world.observed[var_id]
            if not math.isclose(product, joint, rel_tol=tolerance, abs_tol=0.0):
                witnesses.append(Witness(
                    "CHAIN_RULE",
                    f"表 {hypothesis} 顺序 {list(ordering)} 的条件概率连乘与联合质量不符",
                    observed=repr(product), expected=repr(joint),
                ))

    try:
        reference = oracle_lr(world, observed)
    except OracleError as e:
        witnesses.append(Witness(e.code, str(e)))
        return CheckResult("chain_rule", tuple(witnesses))

    unobserved = [v.id for v in world.variables if v.id not in world.observed]
    for ordering in orderings:
        if sorted(ordering) != sorted(observed):
            continue
        moved = world.reordered(list(ordering) + unobserved)
        lr = oracle_lr(moved, observed)
        if not math.isclose(lr, reference, rel_tol=tolerance, abs_tol=0.0):
            witnesses.append(Witness(
                "ORDER_DEPENDENT_LR",
                f"变量顺序 {list(ordering)} 下全观察集的似然比改变",
                observed=repr(lr), expected=repr(reference),
            ))

    return CheckResult("chain_rule", tuple(witnesses))


# === 引擎 vs oracle ===

def _resolve_binding(
    case: CaseSpec, binding: Mapping[str, Sequence[str]]
) -> tuple[dict[tuple[str, str], tuple[str, ...]], list[Witness]]:
    """把 'group' 或 'claim.group' 形式的绑定键解析到 (claim, group)"""
    resolved: dict[tuple[str, str], tuple[str, ...]] = {}
    witnesses: list[Witness] = []
    used: set[str] = set()

    for claim in case.claims:
        for group in claim.groups:
            for key in (f"{claim.id}.{group.id}", group.id):
                if key in binding:
                    resolved[(claim.id, group.id)] = tuple(binding[key])
                    used.add(key)
                    break
            else:
                witnesses.append(Witness(
                    "UNBOUND_GROUP", f"证据组 {claim.id}.{group.id} 没有绑定到世界变量"
                ))

    for key in sorted(set(binding) - used):
        witnesses.append(Witness("UNKNOWN_BINDING", f"绑定 '{key}' 不对应任何证据组"))
    return resolved, witnesses


def _factorizes(world: DiscreteWorld, subsets: Sequence[Sequence[str]], tolerance: float) -> bool:
    """各子集在两张表下是否相互独立（联合分布 = 边缘分布外积）"""
    if len(subsets) < 2:
        return True
    union = [v for s in subsets for v in s]
    for hypothesis in HYPOTHESES:
        joint = marginal_table(world, hypothesis, union)
        parts = [marginal_table(world, hypothesis, s) for s in subsets]
        product = reduce(np.multiply.outer, parts)
        if not np.allclose(joint, product, rtol=0.0, atol=tolerance):
            return False
    return True


def check_engine_vs_oracle(
    world: DiscreteWorld,
    case: CaseSpec,
    binding: Mapping[str, Sequence[str]],
    tolerance: float = DEFAULT_TOLERANCE,
) -> CheckResult:
    """对每个主张比较引擎后验与 ln(prior) + Σ ln oracle_lr(子集)

    前置条件（覆盖度为 1、无 Occam 惩罚、绑定完整、子集互斥且独立）不满足时，
    以见证形式报告，不做数值比较。
    """
    name = "engine_vs_oracle"
    resolved, witnesses = _resolve_binding(case, binding)

    for claim in case.claims:
        if claim.claimant_hypothesis.complexity != claim.opposing_hypothesis.complexity:
            witnesses.append(Witness(
                "OCCAM_PRECONDITION", f"主张 '{claim.id}' 含有 Occam 惩罚",
                observed=f"{claim.claimant_hypothesis.complexity!r} / {claim.opposing_hypothesis.complexity!r}",
                expected="相等",
            ))
        for group in claim.groups:
            if group.coverage != 1:
                witnesses.append(Witness(
                    "COVERAGE_PRECONDITION", f"证据组 {claim.id}.{group.id} 的覆盖度不为 1",
                    observed=repr(group.coverage), expected="1.0",
                ))

        subsets = [resolved[(claim.id, g.id)] for g in claim.groups if (claim.id, g.id) in resolved]
        flat = [v for s in subsets for v in s]
        if len(flat) != len(set(flat)):
            witnesses.append(Witness(
                "OVERLAPPING_BINDING", f"主张 '{claim.id}' 的绑定子集重叠，同一变量会被重复计数"
            ))
    if witnesses:
        return CheckResult(name, tuple(witnesses))

    for claim in case.claims:
        subsets = [resolved[(claim.id, g.id)] for g in claim.groups]
        try:
            for s in subsets:
                observed_assignment(world, s)
        except OracleError as e:
            witnesses.append(Witness(e.code, str(e)))
            continue
        if not _factorizes(world, subsets, tolerance):
            witnesses.append(Witness(
                "NOT_INDEPENDENT",
                f"主张 '{claim.id}' 的绑定子集在世界中不相互独立，不能逐组相乘",
            ))
            continue

        oracle_terms: list[LogOdds] = []
        mismatched = False
        for group, subset in zip(claim.groups, subsets):
            try:
                expected = LogOdds.from_odds(oracle_lr(world, subset))
            except OracleError as e:
                witnesses.append(Witness(e.code, f"{claim.id}.{group.id}: {e}"))
                mismatched = True
                continue
            oracle_terms.append(expected)
            actual = LogOdds.from_odds(group.lr)
            if not actual.close_to(expected, tolerance):
                witnesses.append(Witness(
                    "BINDING_MISMATCH",
                    f"证据组 {claim.id}.{group.id} 的似然比与世界 {list(subset)} 的精确值不符",
                    observed=repr(group.lr), expected=repr(expected.odds),
                ))
                mismatched = True
        if mismatched:
            continue

        try:
            engine = claim_posterior_log_odds(claim)
            reference = combine((LogOdds.from_odds(claim.prior_odds), *oracle_terms))
        except PlausError as e:
            witnesses.append(Witness("EVALUATION_ERROR", f"主张 '{claim.id}': {e}"))
            continue
        if not engine.close_to(reference, tolerance):
            witnesses.append(Witness(
                "ENGINE_MISMATCH", f"主张 '{claim.id}' 的引擎后验与 oracle 不符",
                observed=_show(engine), expected=_show(reference),
            ))

    return CheckResult(name, tuple(witnesses))


# === 案件一致性探针 ===

_PARTITION_CODES = {
    ViolationCode.ITEM_IN_TWO_GROUPS,
    ViolationCode.DUPLICATE_ITEM,
    ViolationCode.UNGROUPED_ITEM,
    ViolationCode.UNKNOWN_ITEM,
}


def _permuted(case: CaseSpec, rng: np.random.Generator) -> tuple[CaseSpec, list[int]]:
    order = [int(i) for i in rng.permutation(len(case.claims))]
    claims = []
    for i in order:
        claim = case.claims[i]
        groups = tuple(
            replace(g, items=tuple(g.items[int(j)] for j in rng.permutation(len(g.items))))
            for g in (claim.groups[int(k)] for k in rng.permutation(len(claim.groups)))
        )
        evidence = tuple(claim.evidence[int(k)] for k in rng.permutation(len(claim.evidence)))
        claims.append(replace(claim, groups=groups, evidence=evidence))
    return replace(case, claims=tuple(claims)), order


def _fresh_id(prefix: str, taken: set[str]) -> str:
    n = 0
    while f"{prefix}{n}" in taken:
        n += 1
    return f"{prefix}{n}"


def with_probe(case: CaseSpec, claim: Claim, lr: float, coverage: float = 1.0) -> Claim:
    """在主张末尾追加一个单条目探针组"""
    group_ids = {g.id for g in claim.groups}
    item_ids = {e.id for c in case.claims for e in c.evidence}
    group_id = _fresh_id("probe", group_ids)
    item_id = _fresh_id("probe_item", item_ids)
    group = EvidenceGroup(id=group_id, items=(item_id,), lr=lr, coverage=coverage)
    item = EvidenceItem(id=item_id, description="探针")
    return replace(claim, groups=claim.groups + (group,), evidence=claim.evidence + (item,))


def _check_permutations(case, rng, trials, tolerance) -> CheckResult:
    base = explain(case)
    witnesses: list[Witness] = []
    for trial in range(trials):
        permuted, order = _permuted(case, rng)
        report = explain(permuted)
        for pos, original in enumerate(order):
            got, want = report.claims[pos].total, base.claims[original].total
            if not got.close_to(want, tolerance):
                witnesses.append(Witness(
                    "PERMUTATION_VARIANCE",
                    f"第 {trial} 次排列后主张 '{base.claims[original].claim_id}' 的后验改变",
                    observed=_show(got), expected=_show(want),
                ))
        if not report.combined.close_to(base.combined, tolerance):
            witnesses.append(Witness(
                "PERMUTATION_VARIANCE", f"第 {trial} 次排列后合并赔率改变",
                observed=_show(report.combined), expected=_show(base.combined),
            ))
    return CheckResult("permutation_invariance", tuple(witnesses))


def _check_partition(case: CaseSpec) -> CheckResult:
    witnesses = tuple(
        Witness(v.code.value, v.message)
        for v in validate_case(case)
        if v.code in _PARTITION_CODES
    )
    return CheckResult("no_double_count", witnesses)


def _check_round_trip(case: CaseSpec, scale: Optional[ScaleTable]) -> CheckResult:
    text = serialize_case(case)
    result = parse_case(text, scale=scale, validate=False)
    if result.case is None:
        return CheckResult("round_trip", tuple(
            Witness("ROUND_TRIP_PARSE", d.format("<serialized>")) for d in result.diagnostics
        ))

    witnesses: list[Witness] = []
    if result.case != canonical_form(case):
        witnesses.append(Witness("ROUND_TRIP_MISMATCH", "序列化后重新解析得到的案件与原案件不同"))

    before = explain(case)
    after = explain(result.case)
    for old, new in zip(before.claims, after.claims):
        if old.total != new.total:
            witnesses.append(Witness(
                "EVALUATION_MISMATCH", f"主张 '{old.claim_id}' 往返后后验改变",
                observed=_show(new.total), expected=_show(old.total),
            ))
    return CheckResult("round_trip", tuple(witnesses))


def _check_probes(case, rng, trials, tolerance) -> CheckResult:
    witnesses: list[Witness] = []

    def probe(claim: Claim, lr: float, coverage: float, expect: str) -> None:
        before = claim_posterior_log_odds(claim)
        after = claim_posterior_log_odds(with_probe(case, claim, lr, coverage))
        label = f"主张 '{claim.id}' 追加 lr={lr!r} c={coverage!r}"
        if not before.is_finite:
            ok = after.state is before.state
        elif expect == "same":
            ok = after.close_to(before, tolerance)
        elif expect == "up":
            ok = after.is_finite and after.value > before.value
        else:
            ok = after.is_finite and after.value < before.value
        if not ok:
            witnesses.append(Witness(
                "QUALITATIVE_CORRESPONDENCE", f"{label} 后应为 {expect}",
                observed=_show(after), expected=_show(before),
            ))

    for claim in case.claims:
        probe(claim, 1.0, 1.0, "same")
        probe(claim, 2.0, 1.0, "up")
        probe(claim, 0.5, 1.0, "down")

    if case.claims:
        for _ in range(trials):
            claim = case.claims[int(rng.integers(len(case.claims)))]
            lr = float(10 ** rng.uniform(0.1, 3.0))
            probe(claim, lr, float(1.0 - 0.9 * rng.random()), "up")

    return CheckResult("qualitative_correspondence", tuple(witnesses))


def _check_occam_scale(case, rng, trials, tolerance) -> CheckResult:
    witnesses: list[Witness] = []
    factors = [2.0, 10.0] + [float(1.0 + 99.0 * rng.random()) for _ in range(trials)]
    for claim in case.claims:
        before = claim_posterior_log_odds(claim)
        for k in factors:
            scaled = replace(
                claim,
                claimant_hypothesis=replace(
                    claim.claimant_hypothesis, complexity=claim.claimant_hypothesis.complexity * k
                ),
                opposing_hypothesis=replace(
                    claim.opposing_hypothesis, complexity=claim.opposing_hypothesis.complexity * k
                ),
            )
            after = claim_posterior_log_odds(scaled)
            if not after.close_to(before, tolerance):
                witnesses.append(Witness(
                    "OCCAM_SCALE_VARIANCE", f"主张 '{claim.id}' 的两个复杂度同乘 {k!r} 后后验改变",
                    observed=_show(after), expected=_show(before),
                ))
    return CheckResult("occam_scale_invariance", tuple(witnesses))


def check_case_coherence(
    case: CaseSpec,
    trials: int,
    seed: int,
    tolerance: float = DEFAULT_TOLERANCE,
    scale: Optional[ScaleTable] = None,
) -> list[CheckResult]:
    """对案件运行五个一致性检查

    (a) 排列不变性  (b) 不重复计数  (c) 序列化往返与评估等价
    (d) 定性对应探针  (e) Occam 尺度不变性

    所有随机性来自 numpy.random.default_rng(seed)，结果对 (case, trials, seed) 确定。
    """
    rng = np.random.default_rng(seed)
    results = [_check_partition(case)]

    probes: list[tuple[str, Callable[[], CheckResult]]] = [
        ("permutation_invariance", lambda: _check_permutations(case, rng, trials, tolerance)),
        ("round_trip", lambda: _check_round_trip(case, scale)),
        ("qualitative_correspondence", lambda: _check_probes(case, rng, trials, tolerance)),
        ("occam_scale_invariance", lambda: _check_occam_scale(case, rng, trials, tolerance)),
    ]
    for name, run in probes:
        try:
            results.append(run())
        except PlausError as e:
            results.append(CheckResult(name, (Witness("EVALUATION_ERROR", str(e)),)))

    order = [
        "permutation_invariance", "no_double_count", "round_trip",
        "qualitative_correspondence", "occam_scale_invariance",
    ]
    results.sort(key=lambda r: order.index(r.name))
    logger.debug(
        "案件 %s: %d/%d 项检查通过",
        case.case_id, sum(r.passed for r in results), len(results),
    )
    return results
