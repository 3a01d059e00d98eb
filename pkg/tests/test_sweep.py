"""敏感性扫描单元测试
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relplaus.core.model import StandardName, StandardOfProof
from relplaus.errors import SweepError
from relplaus.inference import Finding, TargetRef, parse_target, substitute, sweep
from relplaus.settings import resolve_standard

from .conftest import CASES_DIR, FIXTURES_DIR, load_case


class TestParseTarget:
    """parse_target 测试类"""

    @pytest.mark.parametrize(
        "text, expected",
        [
            ("c.prior_odds", TargetRef("c", "prior_odds")),
            ("c.g1.lr", TargetRef("c", "lr", group_id="g1")),
            ("c.g1.coverage", TargetRef("c", "coverage", group_id="g1")),
            ("c.for.complexity", TargetRef("c", "complexity", side="for")),
            ("c.against.complexity", TargetRef("c", "complexity", side="against")),
        ],
    )
    def test_valid(self, text, expected):
        """测试合法目标并能还原为文本"""
        target = parse_target(text)
        assert target == expected
        assert str(target) == text

    @pytest.mark.parametrize("text", ["c", "c.lr", "c.g.prior_odds", "c.for.lr", "a.b.c.d"])
    def test_invalid(self, text):
        """测试非法目标"""
        with pytest.raises(SweepError) as exc:
            parse_target(text)
        assert exc.value.code == "UNKNOWN_TARGET"


class TestSubstitute:
    """substitute 测试类"""

    def test_original_unchanged(self, corpus_case):
        """测试替换返回新案件"""
        case = corpus_case("missing-body")
        new = substitute(case, parse_target("homicide.circumstantial.coverage"), 1.0)
        assert new.claims[0].groups[0].coverage == 1.0
        assert case.claims[0].groups[0].coverage == 0.5

    def test_label_cleared(self):
        """测试替换 lr 后语言标签被清除"""
        case = load_case(FIXTURES_DIR / "explicit-defaults.case")
        new = substitute(case, parse_target("c1.g2.lr"), 5.0)
        group = new.claims[0].group("g2")
        assert group.lr == 5.0 and group.lr_label is None

    @pytest.mark.parametrize(
        "target, value, code",
        [
            ("nobody.prior_odds", 1.0, "UNKNOWN_TARGET"),
            ("homicide.ghost.lr", 1.0, "UNKNOWN_TARGET"),
            ("homicide.circumstantial.coverage", 1.5, "DOMAIN"),
            ("homicide.prior_odds", -1.0, "DOMAIN"),
            ("homicide.against.complexity", 0.5, "DOMAIN"),
        ],
    )
    def test_errors(self, corpus_case, target, value, code):
        """测试未知目标与越界取值"""
        with pytest.raises(SweepError) as exc:
            substitute(corpus_case("missing-body"), parse_target(target), value)
        assert exc.value.code == code


class TestSweep:
    """sweep 测试类"""

    def test_coverage_sweep(self, corpus_case):
        """测试覆盖度扫描的行序与判定"""
        case = corpus_case("missing-body")
        standard = StandardOfProof(StandardName.CUSTOM, 5.0)
        values = [1.0, 0.25, 0.5, 0.75]
        table = sweep(case, parse_target("homicide.circumstantial.coverage"), values, standard)

        assert table.case_id == "missing-body"
        assert [row.value for row in table.rows] == values
        odds = [dict(row.claim_odds)["homicide"].odds for row in table.rows]
        assert odds == pytest.approx([9.0 ** v for v in values])
        findings = [dict(row.findings)["homicide"] for row in table.rows]
        assert findings == [Finding.MET, Finding.NOT_MET, Finding.NOT_MET, Finding.MET]

    def test_complexity_sweep(self, corpus_case):
        """测试对立方复杂度扫描：赔率随复杂度线性增长"""
        case = corpus_case("colonel")
        table = sweep(
            case,
            parse_target("murder.against.complexity"),
            [1, 3, 6, 15],
            resolve_standard(case.standard),
            max_workers=2,
        )
        odds = [row.claim_odds[0][1].odds for row in table.rows]
        assert odds == pytest.approx([1.0, 3.0, 6.0, 15.0])
        assert [row.findings[0][1] for row in table.rows] == [
            Finding.NOT_MET, Finding.NOT_MET, Finding.MET, Finding.MET,
        ]

    def test_domain_error_before_evaluation(self, corpus_case):
        """测试任一取值越界时整次扫描失败"""
        case = corpus_case("conjunction")
        with pytest.raises(SweepError):
            sweep(case, parse_target("breach.prior_odds"), [1.0, -2.0], resolve_standard(case.standard))

    def test_empty_values(self, corpus_case):
        """测试空取值列表"""
        case = corpus_case("conjunction")
        table = sweep(case, parse_target("breach.prior_odds"), [], resolve_standard(case.standard))
        assert table.rows == ()

    @settings(max_examples=30, deadline=None)
    @given(st.lists(st.integers(min_value=-20, max_value=20), min_size=2, max_size=6, unique=True))
    def test_lr_sweep_strictly_increasing(self, exponents):
        """测试似然比递增时赔率严格递增"""
        case = load_case(CASES_DIR / "missing-body.case")
        values = [2.0 ** k for k in sorted(exponents)]
        table = sweep(case, parse_target("homicide.circumstantial.lr"), values, resolve_standard(case.standard))
        odds = [dict(row.claim_odds)["homicide"].value for row in table.rows]
        assert all(a < b for a, b in zip(odds, odds[1:]))
