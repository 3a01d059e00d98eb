"""随机生成器 - 受限随机案件与乘积形式的独立世界

所有函数只从传入的 numpy Generator 取随机数，调用方负责给定种子。
"""

import math

import numpy as np

from ..core.model import (
    CaseSpec,
    Claim,
    EvidenceGroup,
    EvidenceItem,
    EvidenceKind,
    Hypothesis,
)
from .world import DiscreteWorld, Variable

MAX_CLAIMS = 5
MAX_GROUPS = 8
LOG10_LR_RANGE = (-3.0, 3.0)
MAX_COMPLEXITY = 20.0

_KINDS = list(EvidenceKind)


def _coverage(rng: np.random.Generator) -> float:
    # 约三成的组不打折扣
    if rng.random() < 0.3:
        return 1.0
    return float(1.0 - rng.random())


def _complexity(rng: np.random.Generator) -> float:
    if rng.random() < 0.5:
        return 1.0
    return float(1.0 + (MAX_COMPLEXITY - 1.0) * rng.random())


def random_case(
    rng: np.random.Generator,
    max_claims: int = MAX_CLAIMS,
    max_groups: int = MAX_GROUPS,
) -> CaseSpec:
    """生成一个通过校验的随机案件

    1..max_claims 个主张，每个 0..max_groups 个组，每组 1..3 个条目；
    lr = 10^U(-3, 3)，c ∈ (0, 1]，复杂度 ∈ [1, 20]，条目定义按组内出现顺序排列。
    """
    claims = []
    for i in range(int(rng.integers(1, max_claims + 1))):
        groups = []
        evidence = []
        for j in range(int(rng.integers(0, max_groups + 1))):
            items = []
            for k in range(int(rng.integers(1, 4))):
                eid = f"c{i}g{j}e{k}"
                kind = _KINDS[int(rng.integers(len(_KINDS)))]
                evidence.append(EvidenceItem(id=eid, description=f"证据 {eid}", kind=kind))
                items.append(eid)
            groups.append(EvidenceGroup(
                id=f"g{j}",
                items=tuple(items),
                lr=float(10 ** rng.uniform(*LOG10_LR_RANGE)),
                coverage=_coverage(rng),
            ))
        prior = 1.0 if rng.random() < 0.5 else float(10 ** rng.uniform(-2.0, 2.0))
        claims.append(Claim(
            id=f"c{i}",
            claimant_hypothesis=Hypothesis(f"c{i}_p", f"主张方解释 {i}", complexity=_complexity(rng)),
            opposing_hypothesis=Hypothesis(f"c{i}_d", f"对立解释 {i}", complexity=_complexity(rng)),
            prior_odds=prior,
            groups=tuple(groups),
            evidence=tuple(evidence),
        ))
    return CaseSpec(case_id=f"random-{int(rng.integers(1 << 30))}", claims=tuple(claims))


def random_independent_world(
    rng: np.random.Generator,
    max_outcomes: int = 2 ** 10,
) -> tuple[DiscreteWorld, CaseSpec, dict[str, tuple[str, ...]]]:
    """生成乘积形式的世界，以及与之绑定的单主张案件

    变量全部被观察，随机划分为若干证据组；每组 lr 由逐变量分布的比值直接相乘得到，
    不经过 oracle，因此可以作为引擎与 oracle 的独立对照。

    Returns:
        (world, case, binding)，binding 为组 id → 变量 id
    """
    variables: list[Variable] = []
    size = 1
    while len(variables) < 8:
        k = int(rng.integers(2, 4))
        if size * k > max_outcomes:
            break
        size *= k
        variables.append(Variable(f"v{len(variables)}", tuple(f"o{n}" for n in range(k))))
        if len(variables) >= 2 and rng.random() < 0.2:
            break

    factors: dict[str, list[np.ndarray]] = {"P": [], "D": []}
    observed: dict[str, str] = {}
    ratios: dict[str, float] = {}
    for v in variables:
        p = rng.dirichlet(np.ones(len(v.outcomes)))
        d = rng.dirichlet(np.ones(len(v.outcomes)))
        factors["P"].append(p)
        factors["D"].append(d)
        pick = int(rng.integers(len(v.outcomes)))
        observed[v.id] = v.outcomes[pick]
        ratios[v.id] = float(p[pick] / d[pick])

    world = DiscreteWorld.from_factors(variables, factors, observed)

    order = [variables[int(i)].id for i in rng.permutation(len(variables))]
    cuts = sorted(int(c) for c in rng.choice(
        np.arange(1, len(order)), size=int(rng.integers(0, len(order))), replace=False
    ))
    chunks = [order[a:b] for a, b in zip([0, *cuts], [*cuts, len(order)])]

    groups = []
    evidence = []
    binding: dict[str, tuple[str, ...]] = {}
    for j, chunk in enumerate(chunks):
        gid = f"g{j}"
        binding[gid] = tuple(chunk)
        for var_id in chunk:
            evidence.append(EvidenceItem(id=var_id, description=f"观察 {var_id}={observed[var_id]}"))
        groups.append(EvidenceGroup(
            id=gid,
            items=tuple(chunk),
            lr=math.prod(ratios[var_id] for var_id in chunk),
        ))

    claim = Claim(
        id="c0",
        claimant_hypothesis=Hypothesis("hp", "主张方解释"),
        opposing_hypothesis=Hypothesis("hd", "对立解释"),
        prior_odds=float(10 ** rng.uniform(-1.0, 1.0)),
        groups=tuple(groups),
        evidence=tuple(evidence),
    )
    case = CaseSpec(case_id="independent-world", claims=(claim,))
    return world, case, binding
