"""relplaus 命令行输出模块

提供报告控制台、诊断控制台与日志配置。
"""
from .console import PlausTheme, err_console, make_report_console, setup_logging


__all__ = [
    "PlausTheme",
    "err_console",
    "make_report_console",
    "setup_logging",
]
