"""控制台配置"""
import logging
from typing import IO, Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.theme import Theme

# 报告主题
PlausTheme = Theme({
    "title": "bold cyan",
    "finding.met": "green",
    "finding.not_met": "red",
    "check.pass": "green",
    "check.fail": "red",
    "diag.error": "bold red",
    "diag.warning": "yellow",
    "diag.location": "cyan",
})

# 诊断与日志控制台（stderr）
err_console = Console(theme=PlausTheme, stderr=True, highlight=False)


def make_report_console(width: int = 100, file: Optional[IO[str]] = None) -> Console:
    """报告控制台：固定宽度、无颜色、无高亮，相同输入逐字节相同"""
    return Console(
        theme=PlausTheme,
        file=file,
        width=width,
        color_system=None,
        highlight=False,
        emoji=False,
    )


def setup_logging(verbose: bool = False) -> None:
    """把标准 logging 接到 stderr 控制台"""
    handler = RichHandler(console=err_console, show_time=False, show_path=False, markup=False)
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        handlers=[handler],
        force=True,
    )
