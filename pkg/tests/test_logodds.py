"""对数赔率单元测试
"""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relplaus.errors import InferenceError
from relplaus.inference import LogOdds, OddsState, combine, probability_from_odds

finite_ln = st.floats(min_value=-700, max_value=700, allow_nan=False)


class TestLogOdds:
    """LogOdds 测试类"""

    def test_from_odds_states(self):
        """测试由原始赔率构造的三种状态"""
        assert LogOdds.from_odds(0).state is OddsState.ZERO
        assert LogOdds.from_odds(math.inf).state is OddsState.INFINITE
        one = LogOdds.from_odds(1.0)
        assert one.is_finite and one.value == 0.0

    @pytest.mark.parametrize("odds", [-1.0, math.nan])
    def test_from_odds_rejects(self, odds):
        """测试负数与 NaN"""
        with pytest.raises(ValueError):
            LogOdds.from_odds(odds)

    def test_state_carries_no_value(self):
        """测试非有限状态不携带数值"""
        with pytest.raises(ValueError):
            LogOdds(OddsState.ZERO, 1.0)
        with pytest.raises(ValueError):
            LogOdds.finite(math.inf)

    def test_observers(self):
        """测试 ln、log10 与 odds"""
        x = LogOdds.from_odds(100.0)
        assert x.log10 == pytest.approx(2.0)
        assert x.odds == pytest.approx(100.0)
        assert LogOdds.zero().ln == -math.inf
        assert LogOdds.infinite().log10 == math.inf

    def test_overflow_to_inf(self):
        """测试极大有限值的原始赔率溢出为 inf 而不抛异常"""
        assert LogOdds.finite(1e4).odds == math.inf
        assert LogOdds.finite(1e4).is_finite

    def test_scaled(self):
        """测试幂似然折扣"""
        assert LogOdds.from_odds(9.0).scaled(0.5).odds == pytest.approx(3.0)
        assert LogOdds.infinite().scaled(1.0) == LogOdds.infinite()
        with pytest.raises(InferenceError) as exc:
            LogOdds.zero().scaled(0.5)
        assert exc.value.code == "NONFINITE_WITH_COVERAGE"

    def test_close_to(self):
        """测试容差比较"""
        assert LogOdds.finite(1.0).close_to(LogOdds.finite(1.0 + 1e-13), 1e-12)
        assert not LogOdds.finite(1.0).close_to(LogOdds.infinite(), 1.0)
        assert LogOdds.zero().close_to(LogOdds.zero(), 0.0)


class TestCombine:
    """combine 测试类"""

    def test_empty_is_even_odds(self):
        """测试空组合为赔率 1"""
        assert combine([]) == LogOdds.finite(0.0)

    def test_absorbing_states(self):
        """测试 0 与 ∞ 吸收有限项"""
        assert combine([LogOdds.finite(5.0), LogOdds.zero()]) == LogOdds.zero()
        assert combine([LogOdds.infinite(), LogOdds.finite(-5.0)]) == LogOdds.infinite()

    def test_contradictory(self):
        """测试 0 与 ∞ 同时出现"""
        with pytest.raises(InferenceError) as exc:
            combine([LogOdds.zero(), LogOdds.infinite()])
        assert exc.value.code == "CONTRADICTORY_CONCLUSIVES"

    def test_add_operator(self):
        """测试 + 运算符"""
        total = LogOdds.from_odds(2.0) + LogOdds.from_odds(3.0)
        assert total.odds == pytest.approx(6.0)

    @given(st.lists(finite_ln, max_size=20), st.randoms())
    def test_order_independent(self, values, rnd):
        """测试组合结果与顺序无关（逐位相等）"""
        terms = [LogOdds.finite(v) for v in values]
        shuffled = list(terms)
        rnd.shuffle(shuffled)
        assert combine(terms) == combine(shuffled)


class TestProbability:
    """probability_from_odds 测试类"""

    def test_values(self):
        """测试典型值"""
        assert probability_from_odds(LogOdds.finite(0.0)) == 0.5
        assert probability_from_odds(LogOdds.zero()) == 0.0
        assert probability_from_odds(LogOdds.infinite()) == 1.0
        assert probability_from_odds(LogOdds.from_odds(7 / 3)) == pytest.approx(0.7)

    def test_extremes_do_not_overflow(self):
        """测试极端对数赔率"""
        assert probability_from_odds(LogOdds.finite(1e6)) == 1.0
        assert probability_from_odds(LogOdds.finite(-1e6)) == 0.0

    @given(finite_ln, finite_ln)
    def test_monotone(self, a, b):
        """测试单调不减"""
        lo, hi = sorted((a, b))
        assert probability_from_odds(LogOdds.finite(lo)) <= probability_from_odds(LogOdds.finite(hi))

    @given(
        st.floats(min_value=-20, max_value=20),
        st.floats(min_value=1e-3, max_value=10),
    )
    def test_strictly_increasing(self, a, delta):
        """测试严格单调递增"""
        assert probability_from_odds(LogOdds.finite(a)) < probability_from_odds(LogOdds.finite(a + delta))

    @given(st.floats(min_value=1e-6, max_value=1e6))
    def test_inverse_of_odds(self, odds):
        """测试与 p/(1-p) 互逆"""
        p = probability_from_odds(LogOdds.from_odds(odds))
        assert p / (1 - p) == pytest.approx(odds, rel=1e-8)

    @given(st.floats(min_value=1e-6, max_value=1 - 1e-6))
    def test_probability_round_trip(self, p):
        """测试概率 → 赔率 → 概率"""
        assert probability_from_odds(LogOdds.from_odds(p / (1 - p))) == pytest.approx(p, rel=1e-9)
