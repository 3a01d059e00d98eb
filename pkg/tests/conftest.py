"""测试公共夹具
"""

from pathlib import Path

import pytest

from relplaus.casespec import parse_case
from relplaus.core.model import CaseSpec
from relplaus.settings import CONFIG_ENV_VAR, get_settings

ROOT = Path(__file__).resolve().parent.parent
CASES_DIR = ROOT / "cases"
FIXTURES_DIR = Path(__file__).resolve().parent / "fixtures"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

CORPUS = ["colonel", "conjunction", "missing-body", "witnesses"]


@pytest.fixture(autouse=True)
def default_settings(tmp_path, monkeypatch):
    """每个测试都使用内置默认配置，不受工作目录下 config/plaus.yaml 影响"""
    monkeypatch.setenv(CONFIG_ENV_VAR, str(tmp_path / "absent.yaml"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


def load_case(path: Path) -> CaseSpec:
    """读取并解析 .case 文件，失败时直接让测试失败"""
    result = parse_case(path.read_text(encoding="utf-8"))
    assert result.ok, [d.format(str(path)) for d in result.diagnostics]
    return result.case


@pytest.fixture
def corpus_case():
    """按名称读取 cases/ 下的语料"""
    return lambda name: load_case(CASES_DIR / f"{name}.case")
