"""一致性检查单元测试
"""

from dataclasses import replace

import numpy as np
import pytest

from relplaus.casespec import parse_case
from relplaus.coherence import (
    check_case_coherence,
    check_chain_rule,
    check_engine_vs_oracle,
    load_world,
    random_case,
    random_independent_world,
)
from relplaus.coherence.checks import sequential_conditional, with_probe
from relplaus.core.validation import validate_case
from relplaus.inference import claim_posterior_log_odds

from .conftest import CASES_DIR, CORPUS, FIXTURES_DIR, load_case

CHECK_NAMES = [
    "permutation_invariance",
    "no_double_count",
    "round_trip",
    "qualitative_correspondence",
    "occam_scale_invariance",
]


def codes(result) -> set[str]:
    return {w.code for w in result.witnesses}


@pytest.fixture
def independent():
    world = load_world(FIXTURES_DIR / "independent.world")
    case = load_case(FIXTURES_DIR / "independent.case")
    return world, case


class TestChainRule:
    """链式法则检查测试类"""

    @pytest.mark.parametrize("world_file", [CASES_DIR / "witnesses.world", FIXTURES_DIR / "independent.world"])
    def test_passes(self, world_file):
        """测试两种顺序都满足链式法则"""
        world = load_world(world_file)
        observed = list(world.observed_ids())
        result = check_chain_rule(world, [observed, observed[::-1]])
        assert result.name == "chain_rule"
        assert result.passed, result.witnesses

    def test_corrupted_conditional(self):
        """测试注入损坏的条件概率后检查失败"""
        world = load_world(CASES_DIR / "witnesses.world")
        broken = lambda w, h, v, g: 0.5 * sequential_conditional(w, h, v, g)  # noqa: E731
        result = check_chain_rule(world, [["w1", "w2"]], conditional=broken)
        assert not result.passed
        assert codes(result) == {"CHAIN_RULE"}
        assert len(result.witnesses) == 2

    def test_bad_ordering(self):
        """测试不是观察变量排列的顺序"""
        world = load_world(CASES_DIR / "witnesses.world")
        result = check_chain_rule(world, [["w1"]])
        assert codes(result) == {"BAD_ORDERING"}


class TestEngineVsOracle:
    """引擎与 oracle 对照测试类"""

    def test_passes(self, independent):
        """测试独立世界中 lr 2 与 3 的组与 oracle 一致"""
        world, case = independent
        result = check_engine_vs_oracle(world, case, {"ga": ("a",), "gb": ("b",)})
        assert result.name == "engine_vs_oracle"
        assert result.passed, result.witnesses

    def test_qualified_binding_keys(self, independent):
        """测试 claim.group 形式的绑定键"""
        world, case = independent
        assert check_engine_vs_oracle(world, case, {"c.ga": ("a",), "c.gb": ("b",)}).passed

    def test_mismatch(self, independent):
        """测试组 lr 5 与精确值 6 不符"""
        world, case = independent
        claim = case.claims[0]
        joint = replace(claim.groups[0], items=("a", "b"), lr=5.0)
        bad = replace(case, claims=(replace(claim, groups=(joint,)),))
        result = check_engine_vs_oracle(world, bad, {"ga": ("a", "b")})
        assert codes(result) == {"BINDING_MISMATCH"}
        assert result.witnesses[0].observed == "5.0"

    def test_empty_case(self, independent):
        """测试没有主张时平凡通过"""
        world, case = independent
        assert check_engine_vs_oracle(world, replace(case, claims=()), {}).passed

    def test_witnesses_world(self):
        """测试相依证言作为一个组联合评估时与 oracle 一致"""
        world = load_world(CASES_DIR / "witnesses.world")
        case = load_case(CASES_DIR / "witnesses.case")
        assert check_engine_vs_oracle(world, case, {"testimonies": ("w1", "w2")}).passed

    def test_dependent_subsets_rejected(self):
        """测试把相依证言拆成两个组时报告不独立"""
        world = load_world(CASES_DIR / "witnesses.world")
        source = (CASES_DIR / "witnesses.case").read_text(encoding="utf-8")
        source = source.replace(
            '    lr 640\n',
            '    lr 640\n  }\n  group second {\n    evidence w3 "占位"\n    lr 8\n',
        )
        case = parse_case(source).case
        result = check_engine_vs_oracle(world, case, {"testimonies": ("w1",), "second": ("w2",)})
        assert codes(result) == {"NOT_INDEPENDENT"}

    @pytest.mark.parametrize(
        "mutate, binding, code",
        [
            (lambda c: replace(c, opposing_hypothesis=replace(c.opposing_hypothesis, complexity=2.0)),
             {"ga": ("a",), "gb": ("b",)}, "OCCAM_PRECONDITION"),
            (lambda c: replace(c, groups=(replace(c.groups[0], coverage=0.5), c.groups[1])),
             {"ga": ("a",), "gb": ("b",)}, "COVERAGE_PRECONDITION"),
            (lambda c: c, {"ga": ("a",), "gb": ("a",)}, "OVERLAPPING_BINDING"),
            (lambda c: c, {"ga": ("a",)}, "UNBOUND_GROUP"),
            (lambda c: c, {"ga": ("a",), "gb": ("b",), "ghost": ("a",)}, "UNKNOWN_BINDING"),
        ],
    )
    def test_preconditions(self, independent, mutate, binding, code):
        """测试前置条件不满足时只报告见证"""
        world, case = independent
        case = replace(case, claims=(mutate(case.claims[0]),))
        result = check_engine_vs_oracle(world, case, binding)
        assert code in codes(result)

    def test_unobserved_variable(self, independent):
        """测试绑定到不存在的变量"""
        world, case = independent
        result = check_engine_vs_oracle(world, case, {"ga": ("a",), "gb": ("zz",)})
        assert codes(result) == {"UNKNOWN_VARIABLE"}

    @pytest.mark.parametrize("seed", range(8))
    def test_random_independent_worlds(self, seed):
        """测试随机生成的乘积世界"""
        world, case, binding = random_independent_world(np.random.default_rng(seed))
        assert validate_case(case).ok
        assert check_engine_vs_oracle(world, case, binding).passed
        observed = list(world.observed_ids())
        assert check_chain_rule(world, [observed, observed[::-1]]).passed


class TestCaseCoherence:
    """案件一致性检查测试类"""

    @pytest.mark.parametrize("name", CORPUS)
    def test_corpus_passes(self, name):
        """测试语料通过全部检查"""
        results = check_case_coherence(load_case(CASES_DIR / f"{name}.case"), trials=100, seed=7)
        assert [r.name for r in results] == CHECK_NAMES
        assert all(r.passed for r in results), [r.witnesses for r in results if not r.passed]

    def test_random_cases(self):
        """测试大量随机案件"""
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            case = random_case(rng)
            assert validate_case(case).ok
            results = check_case_coherence(case, trials=3, seed=int(rng.integers(1 << 31)))
            failed = [r for r in results if not r.passed]
            assert not failed, (case, failed)

    def test_deterministic(self):
        """测试相同种子得到相同结果"""
        case = random_case(np.random.default_rng(5))
        assert check_case_coherence(case, 20, 11) == check_case_coherence(case, 20, 11)

    def test_double_count_detected(self):
        """测试同一条目在两个组中出现"""
        source = (FIXTURES_DIR / "double-count.case").read_text(encoding="utf-8")
        case = parse_case(source, validate=False).case
        results = {r.name: r for r in check_case_coherence(case, trials=5, seed=0)}
        assert not results["no_double_count"].passed
        assert "ITEM_IN_TWO_GROUPS" in codes(results["no_double_count"])

    def test_contradictory_case_reports_error(self):
        """测试评估出错时以见证报告而不抛出"""
        source = (CASES_DIR / "colonel.case").read_text(encoding="utf-8")
        source = source.replace("    lr 1\n    because \"两种", "    lr inf\n    because \"两种")
        source = source.replace("  group scene {", "  prior_odds 0\n  group scene {")
        case = parse_case(source, validate=False).case
        results = check_case_coherence(case, trials=2, seed=0)
        assert [r.name for r in results] == CHECK_NAMES
        assert "EVALUATION_ERROR" in codes(results[0])


class TestProbe:
    """探针测试类"""

    def test_fresh_ids(self, corpus_case):
        """测试探针 id 不与已有 id 冲突"""
        case = corpus_case("colonel")
        claim = with_probe(case, case.claims[0], 2.0)
        assert claim.groups[-1].id == "probe0"
        assert claim.groups[-1].items == ("probe_item0",)
        assert claim_posterior_log_odds(claim).odds == pytest.approx(30.0)
        twice = with_probe(replace(case, claims=(claim,)), claim, 1.0)
        assert twice.groups[-1].id == "probe1"
