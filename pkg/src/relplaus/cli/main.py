"""命令行入口

    relplaus evaluate <case> [--format text|json] [--standard NAME | --threshold ODDS]
    relplaus check <case> [--trials N] [--seed S] [--world FILE [--bind GROUP=V1,V2 ...]]
    relplaus sweep <case> --target REF (--values A,B,C | --range LO:HI:STEPS)
    relplaus fmt <case> [--write]
    relplaus schema

退出码：0 成功（evaluate 时所有主张满足标准），1 有主张未满足标准，
2 解析/校验/检查失败或用法错误，3 内部错误。
"""

import argparse
import json
import logging
import sys
from enum import IntEnum
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
import yaml
from dotenv import load_dotenv
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from ..casespec import ParseFailure, decode_source, parse_case, serialize_case
from ..coherence import (
    check_case_coherence,
    check_chain_rule,
    check_engine_vs_oracle,
    load_world,
)
from ..core.model import CaseSpec, StandardName, StandardOfProof
from ..errors import PlausError
from ..inference import evaluate, parse_target, sweep
from ..schema import check_envelope, evaluation_envelope, report_schema, sweep_envelope
from ..settings import Settings, get_settings, resolve_standard
from ..ui import err_console, make_report_console, setup_logging
from .render import render_checks, render_diagnostics, render_evaluation, render_sweep

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """进程退出码"""
    OK = 0
    NOT_MET = 1      # 仅 evaluate：至少一个主张未满足证明标准
    INVALID = 2      # 解析、校验、一致性检查失败或用法错误
    INTERNAL = 3


# === 参数类型 ===

def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析取值列表 '{text}'") from None


def _range_spec(text: str) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"范围应为 lo:hi:steps，得到 '{text}'")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"无法解析范围 '{text}'") from None
    if steps < 1:
        raise argparse.ArgumentTypeError(f"步数必须 ≥ 1: {steps}")
    return [float(v) for v in np.linspace(lo, hi, steps)]


def _binding(text: str) -> tuple[str, tuple[str, ...]]:
    key, sep, rest = text.partition("=")
    if not sep or not key:
        raise argparse.ArgumentTypeError(f"绑定应为 group=v1,v2，得到 '{text}'")
    return key, tuple(v for v in rest.split(",") if v)


def _add_standard_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument(
        "--standard",
        choices=[s.value for s in StandardName],
        help="证明标准（默认取案件中的 standard）",
    )
    group.add_argument("--threshold", type=float, help="自定义阈值赔率（覆盖配置）")


def build_parser() -> argparse.ArgumentParser:
    """构建命令行解析器"""
    parser = argparse.ArgumentParser(prog="relplaus", description="相对似真性证据推理引擎")
    parser.add_argument("--config", help="配置文件路径（默认 $PLAUS_CONFIG 或 config/plaus.yaml）")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evaluate", help="评估案件并应用证明标准")
    p.add_argument("case", help=".case 文件")
    p.add_argument("--format", choices=["text", "json"], default="text", help="输出格式")
    _add_standard_options(p)

    p = sub.add_parser("check", help="运行一致性检查")
    p.add_argument("case", help=".case 文件")
    p.add_argument("--trials", type=int, help="随机排列与探针次数")
    p.add_argument("--seed", type=int, help="随机种子")
    p.add_argument("--world", help=".world 文件；给出时追加链式法则与 oracle 对照")
    p.add_argument(
        "--bind",
        type=_binding,
        action="append",
        default=[],
        metavar="GROUP=V1,V2",
        help="证据组 → 世界变量（GROUP 可写成 claim.group；默认按条目 id 绑定）",
    )
    p.add_argument("--format", choices=["text", "json"], default="text", help="输出格式")

    p = sub.add_parser("sweep", help="对一个参数做敏感性扫描")
    p.add_argument("case", help=".case 文件")
    p.add_argument("--target", required=True, help="<claim>.prior_odds | <claim>.<group>.lr|coverage | <claim>.for|against.complexity")
    values = p.add_mutually_exclusive_group(required=True)
    values.add_argument("--values", type=_float_list, help="逗号分隔的取值")
    values.add_argument("--range", type=_range_spec, help="lo:hi:steps（含两端，等距）")
    p.add_argument("--format", choices=["text", "json"], default="text", help="输出格式")
    _add_standard_options(p)

    p = sub.add_parser("fmt", help="输出规范格式")
    p.add_argument("case", help=".case 文件")
    p.add_argument("--write", action="store_true", help="原地改写文件")

    sub.add_parser("schema", help="打印 JSON 报告的 Schema")
    return parser


# === 子命令 ===

def _load_case(path: str, settings: Settings) -> Optional[CaseSpec]:
    try:
        source = decode_source(Path(path).read_bytes())
    except ParseFailure as failure:
        render_diagnostics(err_console, (failure.diagnostic,), path)
        return None
    result = parse_case(source, scale=settings.scale.labels)
    render_diagnostics(err_console, result.diagnostics, path)
    return result.case


def _resolve(args: argparse.Namespace, case: CaseSpec, settings: Settings) -> StandardOfProof:
    if args.threshold is not None:
        return resolve_standard(StandardName.CUSTOM, settings, threshold=args.threshold)
    name = StandardName(args.standard) if args.standard else case.standard
    return resolve_standard(name, settings)


def _emit_raw(out: Console, text: str) -> None:
    # 原样写出，不经过 rich 的换行与裁剪
    out.file.write(text)
    out.file.flush()


def _emit_json(out: Console, envelope) -> None:
    _emit_raw(out, envelope.model_dump_json(indent=2) + "\n")


def cmd_evaluate(args: argparse.Namespace, settings: Settings, out: Console) -> ExitCode:
    case = _load_case(args.case, settings)
    if case is None:
        return ExitCode.INVALID
    standard = _resolve(args, case, settings)
    evaluation = evaluate(case, standard)

    if args.format == "json":
        _emit_json(out, evaluation_envelope(case, evaluation))
    else:
        render_evaluation(out, case, evaluation)
    return ExitCode.OK if evaluation.all_met else ExitCode.NOT_MET


def cmd_check(args: argparse.Namespace, settings: Settings, out: Console) -> ExitCode:
    case = _load_case(args.case, settings)
    if case is None:
        return ExitCode.INVALID
    trials = settings.coherence.trials if args.trials is None else args.trials
    seed = settings.coherence.seed if args.seed is None else args.seed
    tolerance = settings.coherence.tolerance

    results = check_case_coherence(
        case, trials=trials, seed=seed, tolerance=tolerance, scale=settings.scale.labels
    )
    if args.world:
        world = load_world(args.world)
        observed = list(world.observed_ids())
        results.append(check_chain_rule(world, [observed, observed[::-1]], tolerance=tolerance))
        binding = dict(args.bind) or {
            f"{c.id}.{g.id}": g.items for c in case.claims for g in c.groups
        }
        results.append(check_engine_vs_oracle(world, case, binding, tolerance=tolerance))

    if args.format == "json":
        _emit_json(out, check_envelope(case.case_id, trials, seed, results))
    else:
        render_checks(out, case.case_id, results)
    return ExitCode.OK if all(r.passed for r in results) else ExitCode.INVALID


def cmd_sweep(args: argparse.Namespace, settings: Settings, out: Console) -> ExitCode:
    case = _load_case(args.case, settings)
    if case is None:
        return ExitCode.INVALID
    standard = _resolve(args, case, settings)
    values = args.values if args.values is not None else args.range
    table = sweep(
        case,
        parse_target(args.target),
        values,
        standard,
        max_workers=settings.report.max_workers,
    )

    if args.format == "json":
        _emit_json(out, sweep_envelope(table, standard))
    else:
        render_sweep(out, table, standard)
    return ExitCode.OK


def cmd_fmt(args: argparse.Namespace, settings: Settings, out: Console) -> ExitCode:
    case = _load_case(args.case, settings)
    if case is None:
        return ExitCode.INVALID
    text = serialize_case(case)
    if args.write:
        Path(args.case).write_text(text, encoding="utf-8")
    else:
        _emit_raw(out, text)
    return ExitCode.OK


def cmd_schema(args: argparse.Namespace, settings: Settings, out: Console) -> ExitCode:
    _emit_raw(out, json.dumps(report_schema(), indent=2, ensure_ascii=False, sort_keys=True) + "\n")
    return ExitCode.OK


COMMANDS = {
    "evaluate": cmd_evaluate,
    "check": cmd_check,
    "sweep": cmd_sweep,
    "fmt": cmd_fmt,
    "schema": cmd_schema,
}


def run(argv: Sequence[str]) -> ExitCode:
    """执行一次命令，返回退出码（不调用 sys.exit）"""
    try:
        args = build_parser().parse_args(list(argv))
    except SystemExit as e:
        return ExitCode.OK if e.code == 0 else ExitCode.INVALID

    setup_logging(args.verbose)

    try:
        settings = get_settings(args.config)
    except (ValidationError, yaml.YAMLError, OSError) as e:
        err_console.print(escape(f"配置错误: {e}"), style="diag.error", soft_wrap=True)
        return ExitCode.INVALID

    out = make_report_console(settings.report.width)
    try:
        return COMMANDS[args.command](args, settings, out)
    except PlausError as e:
        err_console.print(escape(f"错误: {e}"), style="diag.error", soft_wrap=True)
        return ExitCode.INVALID
    except OSError as e:
        err_console.print(escape(f"无法读取文件: {e}"), style="diag.error", soft_wrap=True)
        return ExitCode.INVALID
    except Exception:
        logger.exception("内部错误")
        return ExitCode.INTERNAL


def main() -> None:
    """主入口"""
    load_dotenv()
    sys.exit(int(run(sys.argv[1:])))


if __name__ == "__main__":
    main()
