"""一致性模块 - 离散世界、精确枚举 oracle 与一致性检查
"""

from .world import DiscreteWorld, Variable, load_world, parse_world
from .oracle import marginal, marginal_table, oracle_lr
from .checks import (
    CheckResult,
    Witness,
    check_case_coherence,
    check_chain_rule,
    check_engine_vs_oracle,
)
from .generator import random_case, random_independent_world

__all__ = [
    "DiscreteWorld",
    "Variable",
    "load_world",
    "parse_world",
    "marginal",
    "marginal_table",
    "oracle_lr",
    "CheckResult",
    "Witness",
    "check_case_coherence",
    "check_chain_rule",
    "check_engine_vs_oracle",
    "random_case",
    "random_independent_world",
]
