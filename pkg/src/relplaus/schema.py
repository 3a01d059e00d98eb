"""JSON 报告封套 - evaluation / check / sweep 三种报告的 Pydantic 模型

`relplaus schema` 打印 ReportEnvelope 的 JSON Schema；CLI 的 --format json 输出都可按它校验。
JSON 不能表示无穷：非有限的对数值记为 null，由 state 字段区分 0 与 ∞。
"""

from typing import Annotated, Any, Literal, Optional, Sequence, Union

from pydantic import BaseModel, Field, TypeAdapter

from .coherence.checks import CheckResult
from .core.model import CaseSpec, StandardOfProof
from .inference.logodds import LogOdds, probability_from_odds
from .inference.report import ClaimContribution, Evaluation, Finding, GroupContribution
from .inference.sweep import SweepTable

FindingName = Literal["met", "not_met"]


class LogOddsModel(BaseModel):
    """一个对数赔率的多种读法"""
    state: Literal["finite", "zero", "infinite"]
    ln: Optional[float] = None
    log10: Optional[float] = None
    odds: Optional[float] = None       # 溢出或无穷时为 null
    probability: float

    @classmethod
    def of(cls, value: LogOdds) -> "LogOddsModel":
        odds = value.odds
        return cls(
            state=value.state.value,
            ln=value.ln if value.is_finite else None,
            log10=value.log10 if value.is_finite else None,
            odds=odds if odds != float("inf") else None,
            probability=probability_from_odds(value),
        )


class GroupModel(BaseModel):
    group_id: str
    items: list[str]
    lr: Union[float, Literal["inf"]]
    lr_label: Optional[str] = None
    coverage: float
    raw: LogOddsModel
    effective: LogOddsModel
    rationale: str = ""
    conditions_on: list[str] = Field(default_factory=list)


class ClaimModel(BaseModel):
    claim_id: str
    claimant: str
    opposing: str
    prior: LogOddsModel
    groups: list[GroupModel]
    occam: LogOddsModel
    posterior: LogOddsModel
    finding: FindingName


class StandardModel(BaseModel):
    name: str
    threshold_odds: float


class CombinedModel(BaseModel):
    """合并赔率仅供参考；naive_joint_probability = Π p(claim)"""
    odds: LogOddsModel
    naive_joint_probability: float


class EvaluationEnvelope(BaseModel):
    kind: Literal["evaluation"] = "evaluation"
    case_id: str
    question: str = ""
    standard: StandardModel
    claims: list[ClaimModel]
    combined: CombinedModel
    all_met: bool


class WitnessModel(BaseModel):
    code: str
    description: str
    observed: str = ""
    expected: str = ""


class CheckModel(BaseModel):
    name: str
    passed: bool
    witnesses: list[WitnessModel]


class CheckEnvelope(BaseModel):
    kind: Literal["check"] = "check"
    case_id: str
    trials: int
    seed: int
    checks: list[CheckModel]
    passed: bool


class SweepCellModel(BaseModel):
    claim_id: str
    posterior: LogOddsModel
    finding: FindingName


class SweepRowModel(BaseModel):
    value: float
    claims: list[SweepCellModel]


class SweepEnvelope(BaseModel):
    kind: Literal["sweep"] = "sweep"
    case_id: str
    target: str
    standard: StandardModel
    rows: list[SweepRowModel]


ReportEnvelope = Annotated[
    Union[EvaluationEnvelope, CheckEnvelope, SweepEnvelope],
    Field(discriminator="kind"),
]

REPORT_ADAPTER: TypeAdapter = TypeAdapter(ReportEnvelope)


def report_schema() -> dict[str, Any]:
    """报告封套的 JSON Schema"""
    return REPORT_ADAPTER.json_schema()


# === 构造 ===

def _standard(standard: StandardOfProof) -> StandardModel:
    return StandardModel(name=standard.name.value, threshold_odds=standard.threshold_odds)


def _group(g: GroupContribution) -> GroupModel:
    return GroupModel(
        group_id=g.group_id,
        items=list(g.items),
        lr="inf" if g.lr == float("inf") else g.lr,
        lr_label=g.lr_label,
        coverage=g.coverage,
        raw=LogOddsModel.of(g.raw),
        effective=LogOddsModel.of(g.effective),
        rationale=g.rationale,
        conditions_on=list(g.conditions_on),
    )


def _claim(c: ClaimContribution, finding: Finding) -> ClaimModel:
    return ClaimModel(
        claim_id=c.claim_id,
        claimant=c.claimant_id,
        opposing=c.opposing_id,
        prior=LogOddsModel.of(c.prior),
        groups=[_group(g) for g in c.groups],
        occam=LogOddsModel.of(c.occam),
        posterior=LogOddsModel.of(c.total),
        finding=finding.value,
    )


def evaluation_envelope(case: CaseSpec, evaluation: Evaluation) -> EvaluationEnvelope:
    report = evaluation.report
    return EvaluationEnvelope(
        case_id=report.case_id,
        question=case.question,
        standard=_standard(evaluation.standard),
        claims=[_claim(c, evaluation.finding(c.claim_id)) for c in report.claims],
        combined=CombinedModel(
            odds=LogOddsModel.of(report.combined),
            naive_joint_probability=evaluation.naive_joint_probability,
        ),
        all_met=evaluation.all_met,
    )


def check_envelope(
    case_id: str, trials: int, seed: int, results: Sequence[CheckResult]
) -> CheckEnvelope:
    return CheckEnvelope(
        case_id=case_id,
        trials=trials,
        seed=seed,
        checks=[
            CheckModel(
                name=r.name,
                passed=r.passed,
                witnesses=[
                    WitnessModel(
                        code=w.code, description=w.description,
                        observed=w.observed, expected=w.expected,
                    )
                    for w in r.witnesses
                ],
            )
            for r in results
        ],
        passed=all(r.passed for r in results),
    )


def sweep_envelope(table: SweepTable, standard: StandardOfProof) -> SweepEnvelope:
    return SweepEnvelope(
        case_id=table.case_id,
        target=str(table.target),
        standard=_standard(standard),
        rows=[
            SweepRowModel(
                value=row.value,
                claims=[
                    SweepCellModel(
                        claim_id=cid,
                        posterior=LogOddsModel.of(odds),
                        finding=dict(row.findings)[cid].value,
                    )
                    for cid, odds in row.claim_odds
                ],
            )
            for row in table.rows
        ],
    )
