"""对数赔率 - 带显式 0 / ∞ 状态的自然对数赔率

所有组合在对数空间进行。有限值求和使用 math.fsum（正确舍入），
因此组合结果与加数顺序无关，路径无关性可以精确检验。
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from ..errors import InferenceError

LN10 = math.log(10.0)


class OddsState(Enum):
    """赔率状态"""
    FINITE = "finite"
    ZERO = "zero"          # 主张方解释不可能
    INFINITE = "infinite"  # 对立解释不可能


@dataclass(frozen=True)
class LogOdds:
    """自然对数单位的赔率

    有限状态的 value 必须是有限实数；0 与 ∞ 状态的 value 固定为 0.0。
    """
    state: OddsState
    value: float = 0.0

    def __post_init__(self):
        if self.state is OddsState.FINITE:
            if not math.isfinite(self.value):
                raise ValueError(f"有限对数赔率不能是 {self.value}")
        elif self.value != 0.0:
            raise ValueError(f"{self.state.value} 状态不携带数值")

    # === 构造 ===

    @classmethod
    def finite(cls, value: float) -> "LogOdds":
        return cls(OddsState.FINITE, float(value))

    @classmethod
    def zero(cls) -> "LogOdds":
        return cls(OddsState.ZERO)

    @classmethod
    def infinite(cls) -> "LogOdds":
        return cls(OddsState.INFINITE)

    @classmethod
    def from_odds(cls, odds: float) -> "LogOdds":
        """由原始赔率（≥ 0 或 inf）构造"""
        if math.isnan(odds) or odds < 0:
            raise ValueError(f"赔率必须 ≥ 0: {odds}")
        if odds == 0:
            return cls.zero()
        if odds == math.inf:
            return cls.infinite()
        return cls.finite(math.log(odds))

    # === 观察 ===

    @property
    def is_finite(self) -> bool:
        return self.state is OddsState.FINITE

    @property
    def ln(self) -> float:
        """自然对数；0 → -inf，∞ → inf"""
        if self.state is OddsState.ZERO:
            return -math.inf
        if self.state is OddsState.INFINITE:
            return math.inf
        return self.value

    @property
    def log10(self) -> float:
        """以 10 为底的对数（"证据权重"显示）"""
        if self.is_finite:
            return self.value / LN10
        return self.ln

    @property
    def odds(self) -> float:
        """原始赔率；极大值溢出时返回 inf"""
        if self.state is OddsState.ZERO:
            return 0.0
        if self.state is OddsState.INFINITE:
            return math.inf
        try:
            return math.exp(self.value)
        except OverflowError:
            return math.inf

    def scaled(self, c: float) -> "LogOdds":
        """幂似然折扣 c·ln(odds)；决定性状态不可折扣"""
        if self.is_finite:
            return LogOdds.finite(c * self.value)
        if c == 1:
            return self
        raise InferenceError(
            f"不能对决定性证据（{self.state.value}）做覆盖度折扣 c={c}",
            code="NONFINITE_WITH_COVERAGE",
        )

    def close_to(self, other: "LogOdds", tol: float) -> bool:
        """对数空间内的容差比较；非有限状态须完全相同"""
        if self.state is not other.state:
            return False
        return abs(self.value - other.value) <= tol

    def __add__(self, other: "LogOdds") -> "LogOdds":
        return combine((self, other))


def combine(terms: Iterable[LogOdds]) -> LogOdds:
    """对数赔率相加（赔率相乘）

    0 与 ∞ 在组合下封闭；两者同时出现是错误而不是值。

    Raises:
        InferenceError: CONTRADICTORY_CONCLUSIVES
    """
    finite_values: list[float] = []
    has_zero = has_infinite = False
    for t in terms:
        if t.state is OddsState.ZERO:
            has_zero = True
        elif t.state is OddsState.INFINITE:
            has_infinite = True
        else:
            finite_values.append(t.value)

    if has_zero and has_infinite:
        raise InferenceError(
            "决定性支持与决定性反驳同时出现，0·∞ 无定义",
            code="CONTRADICTORY_CONCLUSIVES",
        )
    if has_zero:
        return LogOdds.zero()
    if has_infinite:
        return LogOdds.infinite()
    return LogOdds.finite(math.fsum(finite_values))


def probability_from_odds(odds: LogOdds) -> float:
    """赔率 → 概率 p = odds / (1 + odds)

    以 logistic 形式计算，避免大赔率溢出；严格单调递增。
    """
    if odds.state is OddsState.ZERO:
        return 0.0
    if odds.state is OddsState.INFINITE:
        return 1.0
    v = odds.value
    if v >= 0:
        return 1.0 / (1.0 + math.exp(-v))
    e = math.exp(v)
    return e / (1.0 + e)
