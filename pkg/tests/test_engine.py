"""推理引擎单元测试
"""

import math
from dataclasses import replace

import pytest
from hypothesis import given
from hypothesis import strategies as st

from relplaus.core.model import (
    CaseSpec,
    Claim,
    EvidenceGroup,
    EvidenceItem,
    Hypothesis,
    StandardName,
    StandardOfProof,
)
from relplaus.errors import InferenceError
from relplaus.inference import (
    Finding,
    LogOdds,
    OddsState,
    apply_standard,
    case_combined_log_odds,
    claim_posterior_log_odds,
    combine,
    evaluate,
    explain,
    group_effective_log_lr,
    occam_net_log_factor,
)
from relplaus.settings import resolve_standard

PREPONDERANCE = StandardOfProof(StandardName.PREPONDERANCE, 1.0)


def make_claim(cid="c1", groups=(), prior_odds=1.0, complexities=(1.0, 1.0)) -> Claim:
    return Claim(
        id=cid,
        claimant_hypothesis=Hypothesis("hp", "甲", complexity=complexities[0]),
        opposing_hypothesis=Hypothesis("hd", "乙", complexity=complexities[1]),
        groups=tuple(groups),
        evidence=tuple(EvidenceItem(e, "x") for g in groups for e in g.items),
        prior_odds=prior_odds,
    )


class TestAcceptance:
    """语料验收测试类"""

    def test_conjunction(self, corpus_case):
        """测试逐要件适用标准：两个要件各自满足，朴素联合概率低于 0.5"""
        case = corpus_case("conjunction")
        evaluation = evaluate(case, resolve_standard(case.standard))

        for claim in evaluation.report.claims:
            assert claim.total.odds == pytest.approx(7 / 3, abs=1e-12)
        assert evaluation.report.combined.odds == pytest.approx(5.444, abs=0.01)
        assert evaluation.naive_joint_probability == pytest.approx(0.49, abs=1e-12)
        assert evaluation.finding("breach") is Finding.MET
        assert evaluation.finding("damages") is Finding.MET
        assert evaluation.all_met

    def test_colonel(self, corpus_case):
        """测试复杂度惩罚单独决定结果"""
        case = corpus_case("colonel")
        evaluation = evaluate(case, resolve_standard(case.standard))
        murder = evaluation.report.claim("murder")
        assert murder.total.odds == pytest.approx(15.0, abs=1e-9)
        assert murder.occam.odds == pytest.approx(15.0)
        assert all(g.effective.value == 0.0 for g in murder.groups)
        assert evaluation.finding("murder") is Finding.MET

    def test_missing_body(self, corpus_case):
        """测试覆盖度折扣 9^0.5 = 3"""
        case = corpus_case("missing-body")
        evaluation = evaluate(case, resolve_standard(case.standard))
        assert evaluation.report.claim("homicide").total.odds == pytest.approx(3.0, abs=1e-9)
        assert evaluation.finding("homicide") is Finding.NOT_MET
        assert not evaluation.all_met

    def test_missing_body_full_coverage(self, corpus_case):
        """测试覆盖度为 1 时与未折扣的值逐位相等"""
        case = corpus_case("missing-body")
        claim = case.claims[0]
        full = replace(claim, groups=(replace(claim.groups[0], coverage=1.0),))
        odds = claim_posterior_log_odds(full)
        assert odds.value == math.log(9.0)
        assert odds.odds == pytest.approx(9.0, abs=1e-9)

    def test_witnesses(self, corpus_case):
        """测试联合评估的证言"""
        case = corpus_case("witnesses")
        per_claim, _ = case_combined_log_odds(case)
        assert per_claim["alibi"].odds == pytest.approx(640.0)


class TestGroupAndOccam:
    """组贡献与 Occam 因子测试类"""

    def test_effective_lr(self):
        """测试 c·ln(lr)"""
        g = EvidenceGroup("g", ("e",), lr=100.0, coverage=0.5)
        assert group_effective_log_lr(g).odds == pytest.approx(10.0)

    @given(
        st.floats(min_value=1e-300, max_value=1e300).filter(lambda lr: lr != 1.0),
        st.floats(min_value=1e-6, max_value=0.999999),
    )
    def test_coverage_shrinks_contribution(self, lr, coverage):
        """测试 c < 1 时 |c·ln lr| 严格小于 |ln lr|，c = 1 时相等"""
        full = group_effective_log_lr(EvidenceGroup("g", ("e",), lr=lr))
        partial = group_effective_log_lr(EvidenceGroup("g", ("e",), lr=lr, coverage=coverage))
        assert full.value == math.log(lr)
        assert abs(partial.value) < abs(full.value)

    @pytest.mark.parametrize(
        "group, code",
        [
            (EvidenceGroup("g", ("e",), lr=-1.0), "NEGATIVE_LR"),
            (EvidenceGroup("g", ("e",), lr=2.0, coverage=0.0), "COVERAGE_OUT_OF_RANGE"),
            (EvidenceGroup("g", ("e",), lr=math.inf, coverage=0.5), "NONFINITE_WITH_COVERAGE"),
        ],
    )
    def test_invalid_group(self, group, code):
        """测试非法组直接报错"""
        with pytest.raises(InferenceError) as exc:
            group_effective_log_lr(group)
        assert exc.value.code == code

    def test_occam_ratio_only(self):
        """测试只有复杂度比值起作用"""
        a = occam_net_log_factor(2.0, 30.0)
        b = occam_net_log_factor(1.0, 15.0)
        assert a.value == pytest.approx(b.value)
        assert occam_net_log_factor(15.0, 1.0).odds == pytest.approx(1 / 15)

    @pytest.mark.parametrize("pair", [(0.5, 1.0), (1.0, math.inf), (math.nan, 1.0)])
    def test_occam_domain(self, pair):
        """测试复杂度定义域"""
        with pytest.raises(InferenceError) as exc:
            occam_net_log_factor(*pair)
        assert exc.value.code == "COMPLEXITY_LT_ONE"


class TestPosterior:
    """后验与判定测试类"""

    def test_no_evidence(self):
        """测试没有证据组时后验等于先验"""
        assert claim_posterior_log_odds(make_claim()) == LogOdds.finite(0.0)
        assert claim_posterior_log_odds(make_claim(prior_odds=4.0)).odds == pytest.approx(4.0)

    def test_conclusive_states(self):
        """测试决定性证据"""
        refuted = make_claim(groups=[EvidenceGroup("g", ("e",), lr=0.0)], prior_odds=50.0)
        proven = make_claim(groups=[EvidenceGroup("g", ("e",), lr=math.inf)])
        assert claim_posterior_log_odds(refuted).state is OddsState.ZERO
        assert claim_posterior_log_odds(proven).state is OddsState.INFINITE
        assert apply_standard(LogOdds.zero(), PREPONDERANCE) is Finding.NOT_MET
        assert apply_standard(LogOdds.infinite(), PREPONDERANCE) is Finding.MET

    def test_contradictory(self):
        """测试先验为 0 而证据决定性支持"""
        claim = make_claim(groups=[EvidenceGroup("g", ("e",), lr=math.inf)], prior_odds=0.0)
        with pytest.raises(InferenceError) as exc:
            claim_posterior_log_odds(claim)
        assert exc.value.code == "CONTRADICTORY_CONCLUSIVES"

    def test_tie_is_not_met(self):
        """测试赔率恰好等于阈值时不满足"""
        standard = StandardOfProof(StandardName.CLEAR_AND_CONVINCING, 3.0)
        odds = claim_posterior_log_odds(make_claim(prior_odds=3.0))
        assert apply_standard(odds, standard) is Finding.NOT_MET
        assert apply_standard(LogOdds.from_odds(3.0000001), standard) is Finding.MET

    def test_even_odds_fail_preponderance(self):
        """测试证据势均力敌时优势证据标准不满足"""
        assert apply_standard(LogOdds.finite(0.0), PREPONDERANCE) is Finding.NOT_MET

    def test_multiplicative(self):
        """测试各组似然比相乘"""
        groups = [EvidenceGroup("g1", ("a",), lr=2.0), EvidenceGroup("g2", ("b",), lr=3.0)]
        claim = make_claim(groups=groups, prior_odds=0.5, complexities=(1.0, 4.0))
        assert claim_posterior_log_odds(claim).odds == pytest.approx(0.5 * 2 * 3 * 4)


class TestExplain:
    """贡献报告测试类"""

    def test_total_is_sum_of_contributions(self, corpus_case):
        """测试每个主张的合计与各加数之和完全相等"""
        for name in ("colonel", "conjunction", "missing-body", "witnesses"):
            report = explain(corpus_case(name))
            for claim in report.claims:
                assert claim.total == combine(claim.contributions())

    def test_report_order_and_details(self, corpus_case):
        """测试报告顺序与字段"""
        report = explain(corpus_case("colonel"))
        (murder,) = report.claims
        assert [g.group_id for g in murder.groups] == ["scene", "will"]
        assert murder.groups[0].items == ("e_body", "e_weapon")
        assert murder.groups[0].conditions_on == ("k_conceal",)
        assert murder.claimant_id == "hp" and murder.opposing_id == "hd"

    def test_claim_order_does_not_change_combined(self):
        """测试合并赔率与主张顺序无关"""
        a = make_claim("a", groups=[EvidenceGroup("g", ("x",), lr=0.3)], prior_odds=1.7)
        b = make_claim("b", groups=[EvidenceGroup("g", ("y",), lr=11.0)], prior_odds=0.2)
        one = explain(CaseSpec("t", claims=(a, b)))
        two = explain(CaseSpec("t", claims=(b, a)))
        assert one.combined == two.combined
        assert [c.claim_id for c in two.claims] == ["b", "a"]
        with pytest.raises(KeyError):
            one.claim("zzz")
