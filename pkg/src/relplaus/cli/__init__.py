"""命令行模块
"""
from .main import ExitCode, build_parser, main, run

__all__ = ["ExitCode", "build_parser", "main", "run"]
