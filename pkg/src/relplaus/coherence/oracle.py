"""精确枚举 oracle - 对未观察变量逐格求和得到边缘质量与似然比

求和按规范的行优先顺序取出格子，再用 math.fsum 正确舍入，
因此结果不依赖变量顺序。
"""

import math
from typing import Mapping, Sequence

import numpy as np

from ..errors import OracleError
from .world import DiscreteWorld


def marginal(world: DiscreteWorld, hypothesis: str, assignment: Mapping[str, str]) -> float:
    """表 hypothesis 中满足 assignment 的格子质量之和"""
    index = tuple(
        world.outcome_index(v.id, assignment[v.id]) if v.id in assignment else slice(None)
        for v in world.variables
    )
    return math.fsum(np.ravel(world.tables[hypothesis][index]))


def marginal_table(world: DiscreteWorld, hypothesis: str, var_ids: Sequence[str]) -> np.ndarray:
    """var_ids 上的边缘分布，轴按 var_ids 顺序排列"""
    table = world.tables[hypothesis]
    axes = [world.axis(v) for v in var_ids]
    others = tuple(i for i in range(table.ndim) if i not in axes)
    reduced = table.sum(axis=others) if others else table
    kept = sorted(axes)
    return np.transpose(reduced, [kept.index(a) for a in axes])


def observed_assignment(world: DiscreteWorld, subset: Sequence[str]) -> dict[str, str]:
    """subset 中各变量的观察值

    Raises:
        OracleError: UNKNOWN_VARIABLE、UNOBSERVED_VARIABLE
    """
    assignment = {}
    for var_id in subset:
        world.axis(var_id)
        if var_id not in world.observed:
            raise OracleError(f"变量 '{var_id}' 没有观察值", code="UNOBSERVED_VARIABLE")
        assignment[var_id] = world.observed[var_id]
    return assignment


def oracle_lr(world: DiscreteWorld, subset: Sequence[str]) -> float:
    """观察子集的精确似然比 P(E_S | P) / P(E_S | D)

    空子集 → 1；分母为 0 而分子为正 → inf。

    Raises:
        OracleError: UNDEFINED_LR（两个边缘质量都为 0），以及未观察的变量
    """
    assignment = observed_assignment(world, subset)
    if not assignment:
        return 1.0
    numerator = marginal(world, "P", assignment)
    denominator = marginal(world, "D", assignment)
    if denominator == 0:
        if numerator > 0:
            return math.inf
        raise OracleError(
            f"子集 {list(subset)} 在两张表下的质量都为 0，似然比无定义",
            code="UNDEFINED_LR",
        )
    return numerator / denominator
