"""文本报告渲染 - rich 表格（ASCII 边框，固定宽度）"""
import math
from typing import Sequence

from rich import box
from rich.console import Console
from rich.markup import escape
from rich.table import Table
from rich.text import Text

from ..casespec.diagnostics import ParseDiagnostic
from ..coherence.checks import CheckResult
from ..core.model import CaseSpec, StandardOfProof
from ..inference.logodds import LogOdds, probability_from_odds
from ..inference.report import Evaluation, Finding
from ..inference.sweep import SweepTable


def num(value: float) -> str:
    """显示用数字：6 位有效数字"""
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.6g}"


def odds_text(odds: LogOdds) -> str:
    if odds.is_finite:
        return num(odds.odds)
    return "0" if odds.ln < 0 else "inf"


def _finding(finding: Finding) -> str:
    text = "满足" if finding is Finding.MET else "不满足"
    return f"[finding.{finding.value}]{text}[/]"


def _standard_line(standard: StandardOfProof) -> str:
    return f"证明标准 {standard.name.value}（阈值赔率 > {num(standard.threshold_odds)}）"


def render_evaluation(console: Console, case: CaseSpec, evaluation: Evaluation) -> None:
    report = evaluation.report
    console.print(f"[title]案件 {escape(report.case_id)}[/]  {_standard_line(evaluation.standard)}")
    if case.question:
        console.print(f"问题: {escape(case.question)}")

    for claim in report.claims:
        console.print()
        console.print(
            f"主张 {escape(claim.claim_id)}: {escape(claim.claimant_id)} 对 "
            f"{escape(claim.opposing_id)} → {_finding(evaluation.finding(claim.claim_id))}"
        )
        table = Table(box=box.ASCII, show_lines=False)
        table.add_column("贡献")
        table.add_column("lr", justify="right")
        table.add_column("c", justify="right")
        table.add_column("ln", justify="right")
        table.add_column("log10", justify="right")
        table.add_column("说明")

        table.add_row("先验", "", "", num(claim.prior.ln), num(claim.prior.log10), "")
        for g in claim.groups:
            note = g.rationale
            if g.lr_label:
                note = f"[{g.lr_label}] {note}".strip()
            if g.conditions_on:
                note = f"{note} 依据 {', '.join(g.conditions_on)}".strip()
            table.add_row(
                f"组 {escape(g.group_id)}",
                num(g.lr),
                num(g.coverage),
                num(g.effective.ln),
                num(g.effective.log10),
                escape(note),
            )
        table.add_row("Occam", "", "", num(claim.occam.ln), num(claim.occam.log10), "")
        table.add_row("合计", "", "", num(claim.total.ln), num(claim.total.log10), "")
        console.print(table)
        console.print(
            f"后验赔率 {odds_text(claim.total)}  概率 {num(probability_from_odds(claim.total))}"
        )

    console.print()
    console.print(
        f"合并赔率（仅供参考）{odds_text(report.combined)}  "
        f"朴素联合概率 Π p = {num(evaluation.naive_joint_probability)}"
    )


def render_checks(console: Console, case_id: str, results: Sequence[CheckResult]) -> None:
    console.print(f"[title]一致性检查 {escape(case_id)}[/]")
    table = Table(box=box.ASCII)
    table.add_column("检查")
    table.add_column("结果")
    table.add_column("反例数", justify="right")
    for r in results:
        status = "[check.pass]通过[/]" if r.passed else "[check.fail]失败[/]"
        table.add_row(r.name, status, str(len(r.witnesses)))
    console.print(table)

    for r in results:
        for w in r.witnesses:
            line = f"{r.name} [{w.code}] {w.description}"
            if w.observed or w.expected:
                line += f"（实际 {w.observed}，期望 {w.expected}）"
            console.print(escape(line))


def render_sweep(console: Console, table_data: SweepTable, standard: StandardOfProof) -> None:
    console.print(
        f"[title]敏感性扫描 {escape(table_data.case_id)}[/]  目标 {escape(str(table_data.target))}  "
        f"{_standard_line(standard)}"
    )
    claim_ids = [cid for cid, _ in table_data.rows[0].claim_odds] if table_data.rows else []
    table = Table(box=box.ASCII)
    table.add_column("取值", justify="right")
    for cid in claim_ids:
        table.add_column(f"{cid} 赔率", justify="right")
        table.add_column(f"{cid} 判定")
    for row in table_data.rows:
        findings = dict(row.findings)
        cells = [num(row.value)]
        for cid, odds in row.claim_odds:
            cells += [odds_text(odds), _finding(findings[cid])]
        table.add_row(*cells)
    console.print(table)


def render_diagnostics(console: Console, diagnostics: Sequence[ParseDiagnostic], filename: str) -> None:
    for d in diagnostics:
        line = Text.assemble(
            (d.location(filename) + ":", "diag.location"),
            " ",
            (d.summary, f"diag.{d.severity.value}"),
        )
        console.print(line, soft_wrap=True)
